"""Paths in the free category on a graph."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field

from kanrew.errors import CompositionError

IDENTITY_PREFIX = "id_"


@dataclass(frozen=True)
class Path:
    """A composable arrow sequence anchored at ``base``.

    The empty sequence is the identity at ``base``; identities at different
    objects are different values. ``nodes`` records the objects visited, so
    sub-paths can be cut out without consulting the graph.
    """

    base: str
    arrows: tuple[str, ...] = ()
    nodes: tuple[str, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.nodes:
            if self.arrows:
                raise CompositionError("a nonempty path needs its visited objects")
            object.__setattr__(self, "nodes", (self.base,))
        elif len(self.nodes) != len(self.arrows) + 1 or self.nodes[0] != self.base:
            raise CompositionError(f"inconsistent path nodes for {self.arrows}")

    @classmethod
    def identity(cls, obj: str) -> Path:
        return cls(base=obj)

    @property
    def source(self) -> str:
        return self.base

    @property
    def target(self) -> str:
        return self.nodes[-1]

    @property
    def is_identity(self) -> bool:
        return not self.arrows

    def __len__(self) -> int:
        return len(self.arrows)

    def __iter__(self) -> Iterator[str]:
        return iter(self.arrows)

    def __str__(self) -> str:
        if not self.arrows:
            return f"{IDENTITY_PREFIX}{self.base}"
        return ".".join(self.arrows)

    def extend(self, arrow: str, target: str) -> Path:
        """Append one arrow whose source is this path's target."""
        return Path(self.base, (*self.arrows, arrow), (*self.nodes, target))

    def compose(self, other: Path) -> Path:
        """Diagrammatic composition: first ``self``, then ``other``."""
        if self.target != other.source:
            raise CompositionError(
                f"cannot compose {self} (ending at {self.target}) "
                f"with {other} (starting at {other.source})"
            )
        return Path(self.base, self.arrows + other.arrows, self.nodes + other.nodes[1:])

    def sub(self, start: int, stop: int | None = None) -> Path:
        """The factor covering arrows ``start:stop``; empty factors are identities."""
        stop = len(self.arrows) if stop is None else stop
        return Path(self.nodes[start], self.arrows[start:stop], self.nodes[start : stop + 1])

    def prefix(self, length: int) -> Path:
        return self.sub(0, length)

    def drop(self, length: int) -> Path:
        """Everything after the first ``length`` arrows."""
        return self.sub(length)

    def startswith(self, other: Path) -> bool:
        return self.base == other.base and self.arrows[: len(other.arrows)] == other.arrows

    def occurrences(self, factor: Path) -> Iterator[int]:
        """Start positions of ``factor`` inside this path, left to right."""
        n, k = len(self.arrows), len(factor.arrows)
        if k == 0:
            return
        for i in range(n - k + 1):
            if self.arrows[i : i + k] == factor.arrows:
                yield i

    def find(self, factor: Path) -> int | None:
        """Leftmost start position of ``factor``, or None."""
        return next(self.occurrences(factor), None)

    def replace_at(self, position: int, length: int, replacement: Path) -> Path:
        """Replace the factor ``[position, position + length)`` by a parallel path."""
        return self.prefix(position).compose(replacement).compose(self.sub(position + length))


def compose_path(p: Path, q: Path) -> Path:
    """Compose ``p`` then ``q``; raises CompositionError unless tgt(p) = src(q)."""
    return p.compose(q)
