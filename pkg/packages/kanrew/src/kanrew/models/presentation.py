"""Kan extension presentations and the terms they act on."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from kanrew.errors import CompositionError, DomainError, PresentationError
from kanrew.models.graph import Graph
from kanrew.models.path import IDENTITY_PREFIX, Path


@dataclass(frozen=True)
class Term:
    """An element ``x`` paired with a path starting at ``F(A)``, written ``x|p``."""

    element: str
    path: Path

    @property
    def target(self) -> str:
        """The object tau(x|p) = tgt(p)."""
        return self.path.target

    def __len__(self) -> int:
        return len(self.path)

    def __str__(self) -> str:
        return f"{self.element}|{self.path}"

    def act(self, q: Path) -> Term:
        """Right action by a path: ``x|p . q = x|pq``."""
        if self.target != q.source:
            raise CompositionError(
                f"cannot act on {self} (target {self.target}) "
                f"with {q} (source {q.source})"
            )
        return Term(self.element, self.path.compose(q))


def act(t: Term, q: Path) -> Term:
    """Act on ``t`` by ``q``; raises CompositionError unless tau(t) = src(q)."""
    return t.act(q)


@dataclass(frozen=True)
class Relation:
    """A pair of parallel paths declared equal."""

    lhs: Path
    rhs: Path


@dataclass(frozen=True, eq=False)
class KanPresentation:
    """The quintuple kan<Gamma | Delta | RelB | X | F>.

    ``x_ob`` lists the elements of each X(A); ``x_arr`` gives each Gamma-arrow
    as a function between those sets; ``f_ob`` and ``f_arr`` give F on
    objects and on generating arrows.
    """

    gamma: Graph = field(default_factory=Graph)
    delta: Graph = field(default_factory=Graph)
    relations: tuple[Relation, ...] = ()
    x_ob: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    x_arr: Mapping[str, Mapping[str, str]] = field(default_factory=dict)
    f_ob: Mapping[str, str] = field(default_factory=dict)
    f_arr: Mapping[str, Path] = field(default_factory=dict)
    _owner: dict[str, str] = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self) -> None:
        self._validate_delta_names()
        self._validate_elements()
        self._validate_functor()
        self._validate_actions()
        self._validate_relations()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KanPresentation):
            return NotImplemented
        return (
            self.gamma == other.gamma
            and self.delta == other.delta
            and self.relations == other.relations
            and {k: tuple(v) for k, v in self.x_ob.items()}
            == {k: tuple(v) for k, v in other.x_ob.items()}
            and {k: dict(v) for k, v in self.x_arr.items()}
            == {k: dict(v) for k, v in other.x_arr.items()}
            and dict(self.f_ob) == dict(other.f_ob)
            and dict(self.f_arr) == dict(other.f_arr)
        )

    __hash__ = None  # type: ignore[assignment]

    # ------------------------------------------------------------------ validation

    def _validate_delta_names(self) -> None:
        identities = {f"{IDENTITY_PREFIX}{obj}" for obj in self.delta.objects}
        for name in self.delta.arrow_names:
            if name in identities:
                raise PresentationError("arrow name shadows an identity", name)

    def _validate_elements(self) -> None:
        for obj, elements in self.x_ob.items():
            if not self.gamma.has_object(obj):
                raise PresentationError("undeclared object", obj, "key of XObA")
            for x in elements:
                if x in self._owner:
                    raise PresentationError("duplicate element", x)
                self._owner[x] = obj

    def _validate_functor(self) -> None:
        for obj in self.gamma.objects:
            if obj not in self.f_ob:
                raise PresentationError("missing object image", obj, "FObA is not total")
            if not self.delta.has_object(self.f_ob[obj]):
                raise PresentationError("undeclared object", self.f_ob[obj], f"image of {obj}")
        for obj in self.f_ob:
            if not self.gamma.has_object(obj):
                raise PresentationError("undeclared object", obj, "key of FObA")

        for name in self.f_arr:
            self.gamma.arrow(name)
        for arrow in self.gamma.arrows:
            if arrow.name not in self.f_arr:
                raise PresentationError("missing arrow image", arrow.name, "FArrA is not total")
            image = self.f_arr[arrow.name]
            if image.source != self.f_ob[arrow.source] or image.target != self.f_ob[arrow.target]:
                raise PresentationError(
                    "functor does not preserve endpoints",
                    arrow.name,
                    f"F({arrow.name}) = {image} runs {image.source} -> {image.target}",
                )

    def _validate_actions(self) -> None:
        for name in self.x_arr:
            self.gamma.arrow(name)
        for arrow in self.gamma.arrows:
            function = self.x_arr.get(arrow.name, {})
            domain = self.elements_of(arrow.source)
            codomain = set(self.elements_of(arrow.target))
            for x in domain:
                if x not in function:
                    raise PresentationError(
                        "action is not total", arrow.name, f"no image for {x}"
                    )
            for x, y in function.items():
                if x not in domain:
                    raise PresentationError(
                        "action outside its domain", x, f"not in X({arrow.source})"
                    )
                if y not in codomain:
                    raise PresentationError(
                        "action outside its codomain", y, f"not in X({arrow.target})"
                    )

    def _validate_relations(self) -> None:
        for rel in self.relations:
            for side in (rel.lhs, rel.rhs):
                if not self.delta.has_object(side.source):
                    raise PresentationError("undeclared object", side.source)
            if rel.lhs.source != rel.rhs.source or rel.lhs.target != rel.rhs.target:
                raise PresentationError(
                    "relation sides are not parallel",
                    f"{rel.lhs} = {rel.rhs}",
                )

    # ------------------------------------------------------------------ queries

    @property
    def elements(self) -> tuple[str, ...]:
        """All elements of the disjoint union of the X(A), in declaration order."""
        return tuple(x for obj in self.gamma.objects for x in self.elements_of(obj))

    def elements_of(self, obj: str) -> tuple[str, ...]:
        return tuple(self.x_ob.get(obj, ()))

    def owner(self, x: str) -> str:
        """The Gamma-object A with x in X(A)."""
        try:
            return self._owner[x]
        except KeyError:
            raise DomainError(f"unknown element {x!r}") from None

    def anchor(self, x: str) -> str:
        """The Delta-object F(A) at which terms for ``x`` start."""
        return self.f_ob[self.owner(x)]

    def term(self, x: str, arrows: Sequence[str] = ()) -> Term:
        """Build ``x|arrows`` from F(A); the empty sequence gives ``x|id``."""
        return Term(x, self.delta.path(self.anchor(x), arrows))

    def apply_generator_action(self, x: str, a: str) -> str:
        """Return x . a for a Gamma-arrow ``a``."""
        arrow = self.gamma.arrow(a)
        if x not in self._owner or self._owner[x] != arrow.source:
            raise DomainError(f"{x!r} is not in X({arrow.source}), the domain of {a}")
        return self.x_arr[a][x]


def apply_generator_action(presentation: KanPresentation, x: str, a: str) -> str:
    """Module-level form of :meth:`KanPresentation.apply_generator_action`."""
    return presentation.apply_generator_action(x, a)
