"""Finite directed graphs generating the categories of a presentation."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from kanrew.errors import CompositionError, PresentationError
from kanrew.models.path import Path


@dataclass(frozen=True)
class Arrow:
    """A named arrow ``name: source -> target``."""

    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Graph:
    """A finite graph with declaration-ordered objects and arrows."""

    objects: tuple[str, ...] = ()
    arrows: tuple[Arrow, ...] = ()
    _by_name: dict[str, Arrow] = field(
        init=False, repr=False, compare=False, hash=False, default_factory=dict
    )
    _outgoing: dict[str, tuple[Arrow, ...]] = field(
        init=False, repr=False, compare=False, hash=False, default_factory=dict
    )

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for obj in self.objects:
            if obj in seen:
                raise PresentationError("duplicate object", obj)
            seen.add(obj)

        for arrow in self.arrows:
            if arrow.name in self._by_name:
                raise PresentationError("duplicate arrow", arrow.name)
            for end in (arrow.source, arrow.target):
                if end not in seen:
                    raise PresentationError(
                        "undeclared object", end, f"endpoint of arrow {arrow.name}"
                    )
            self._by_name[arrow.name] = arrow

        for obj in self.objects:
            self._outgoing[obj] = tuple(a for a in self.arrows if a.source == obj)

    @classmethod
    def build(cls, objects: Iterable[str], arrows: Iterable[Sequence[str]]) -> Graph:
        """Build a graph from object ids and ``(name, source, target)`` triples."""
        return cls(
            objects=tuple(objects),
            arrows=tuple(Arrow(name, src, tgt) for name, src, tgt in arrows),
        )

    @property
    def arrow_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.arrows)

    def has_object(self, obj: str) -> bool:
        return obj in self._outgoing

    def arrow(self, name: str) -> Arrow:
        """Look up an arrow by name."""
        try:
            return self._by_name[name]
        except KeyError:
            raise PresentationError("undeclared arrow", name) from None

    def outgoing(self, obj: str) -> tuple[Arrow, ...]:
        """Arrows leaving ``obj``, in declaration order."""
        return self._outgoing.get(obj, ())

    def identity(self, obj: str) -> Path:
        if not self.has_object(obj):
            raise PresentationError("undeclared object", obj)
        return Path.identity(obj)

    def path(self, base: str, arrows: Iterable[str]) -> Path:
        """Build the path starting at ``base`` through ``arrows``.

        Raises:
            PresentationError: an arrow or the base object is not declared.
            CompositionError: consecutive arrows do not meet.
        """
        path = self.identity(base)
        for name in arrows:
            arrow = self.arrow(name)
            if arrow.source != path.target:
                raise CompositionError(
                    f"non-composable path: {name} starts at {arrow.source}, "
                    f"previous step ends at {path.target}"
                )
            path = path.extend(arrow.name, arrow.target)
        return path

    def path_of(self, arrows: Sequence[str]) -> Path:
        """Build a nonempty path, taking its base from the first arrow."""
        if not arrows:
            raise CompositionError("an empty arrow sequence needs an explicit base object")
        return self.path(self.arrow(arrows[0]).source, arrows)

    def walks(self, base: str, max_length: int) -> list[Path]:
        """All paths from ``base`` of length at most ``max_length``, shortest first."""
        layer = [self.identity(base)]
        result = list(layer)
        for _ in range(max_length):
            layer = [p.extend(a.name, a.target) for p in layer for a in self.outgoing(p.target)]
            result.extend(layer)
        return result
