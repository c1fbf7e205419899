"""Length-lexicographic well-ordering on paths and terms, and rule orientation."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum

from kanrew.errors import OrderingError, PresentationError
from kanrew.models import KanPresentation, Path, PathRule, Term, TermRule


class Ordering(str, Enum):
    """Result of comparing two paths or two terms."""

    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


def _cmp(a: tuple[object, ...], b: tuple[object, ...]) -> Ordering:
    if a < b:  # type: ignore[operator]
        return Ordering.LESS
    if a > b:  # type: ignore[operator]
        return Ordering.GREATER
    return Ordering.EQUAL


@dataclass(frozen=True)
class OrderConfig:
    """Total orders on arrows and on elements, given as ranked sequences.

    ``objects`` only breaks ties between identity paths at different objects.
    """

    arrows: tuple[str, ...] = ()
    elements: tuple[str, ...] = ()
    objects: tuple[str, ...] = ()
    _arrow_rank: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)
    _element_rank: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)
    _object_rank: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        for name, family in (
            ("_arrow_rank", self.arrows),
            ("_element_rank", self.elements),
            ("_object_rank", self.objects),
        ):
            rank = {ident: i for i, ident in enumerate(family)}
            if len(rank) != len(family):
                duplicate = next(x for x in family if family.count(x) > 1)
                raise PresentationError("duplicate rank", duplicate)
            object.__setattr__(self, name, rank)

    @classmethod
    def for_presentation(
        cls,
        presentation: KanPresentation,
        arrow_order: Sequence[str] | None = None,
        element_order: Sequence[str] | None = None,
    ) -> OrderConfig:
        """Declaration order by default; overrides must name exactly the declared ids."""
        arrows = tuple(arrow_order) if arrow_order is not None else presentation.delta.arrow_names
        elements = tuple(element_order) if element_order is not None else presentation.elements
        _check_permutation("arrow order", arrows, presentation.delta.arrow_names)
        _check_permutation("element order", elements, presentation.elements)
        return cls(arrows=arrows, elements=elements, objects=presentation.delta.objects)

    def path_key(self, p: Path) -> tuple[int, tuple[int, ...], int]:
        try:
            ranks = tuple(self._arrow_rank[a] for a in p.arrows)
        except KeyError as e:
            raise OrderingError(f"arrow {e.args[0]!r} has no rank")
        return (len(ranks), ranks, self._object_rank.get(p.base, -1))

    def term_key(self, t: Term) -> tuple[tuple[int, tuple[int, ...], int], int]:
        try:
            element = self._element_rank[t.element]
        except KeyError:
            raise OrderingError(f"element {t.element!r} has no rank")
        return (self.path_key(t.path), element)


def _check_permutation(what: str, given: Sequence[str], declared: Sequence[str]) -> None:
    if sorted(given) != sorted(declared):
        extra = set(given) - set(declared)
        missing = set(declared) - set(given)
        culprit = sorted(extra or missing or set(given))[0]
        raise PresentationError(
            f"{what} must name exactly the declared identifiers",
            culprit,
            "undeclared" if culprit in extra else "missing or repeated",
        )


def compare_paths(p: Path, q: Path, cfg: OrderConfig) -> Ordering:
    """Longer is greater; equal lengths compare arrow by arrow."""
    return _cmp(cfg.path_key(p), cfg.path_key(q))


def compare_terms(t1: Term, t2: Term, cfg: OrderConfig) -> Ordering:
    """Compare paths first, then elements."""
    return _cmp(cfg.term_key(t1), cfg.term_key(t2))


def orient(
    lhs: Term | Path, rhs: Term | Path, cfg: OrderConfig
) -> TermRule | PathRule | None:
    """Orient an equation so it decreases; None when both sides are equal.

    Raises:
        OrderingError: one side is a term and the other a path.
    """
    if isinstance(lhs, Term) and isinstance(rhs, Term):
        result = compare_terms(lhs, rhs, cfg)
        if result is Ordering.EQUAL:
            return None
        return TermRule(lhs, rhs) if result is Ordering.GREATER else TermRule(rhs, lhs)
    if isinstance(lhs, Path) and isinstance(rhs, Path):
        result = compare_paths(lhs, rhs, cfg)
        if result is Ordering.EQUAL:
            return None
        return PathRule(lhs, rhs) if result is Ordering.GREATER else PathRule(rhs, lhs)
    raise OrderingError(
        f"cannot orient {type(lhs).__name__} against {type(rhs).__name__}: {lhs} = {rhs}"
    )
