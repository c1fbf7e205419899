"""Tabulating the induced action from a complete rewrite system.

The answer comes in four parts: the sets KB (irreducible terms grouped by
target), the target map, one table per Delta-arrow, and epsilon on elements.
Irreducibility is prefix-closed, so a breadth-first walk from the irreducible
``x|id`` terms along single arrows reaches every irreducible term.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field

from kanrew.config import get_settings
from kanrew.core.rewrite import normal_form
from kanrew.errors import CompositionError, DomainError
from kanrew.models import KanPresentation, Path, RewriteSystem, Term

logger = logging.getLogger("kanrew")


@dataclass(frozen=True, eq=False)
class KanTables:
    """Finite tabulation of the Kan extension."""

    elements: dict[str, tuple[Term, ...]] = field(default_factory=dict)
    actions: dict[str, dict[Term, Term]] = field(default_factory=dict)
    epsilon: dict[str, Term] = field(default_factory=dict)

    @property
    def tau(self) -> dict[Term, str]:
        """The target map on the disjoint union of the KB."""
        return {t: obj for obj, terms in self.elements.items() for t in terms}

    @property
    def size(self) -> int:
        return sum(len(terms) for terms in self.elements.values())

    def act_path(self, term: Term, path: Path) -> Term:
        """Act on a tabulated element by a path, one arrow table at a time."""
        if term.target != path.source:
            raise CompositionError(f"cannot act on {term} with {path}: {path.source} expected")
        for arrow in path.arrows:
            try:
                term = self.actions[arrow][term]
            except KeyError:
                raise DomainError(f"{term} is not a tabulated element in the domain of {arrow}")
        return term


@dataclass(frozen=True)
class EnumerationExceeded:
    """More than ``limit`` normal forms were found; the sets are (possibly) infinite."""

    limit: int
    system: RewriteSystem


EnumerationOutcome = KanTables | EnumerationExceeded


def epsilon(x: str, presentation: KanPresentation, system: RewriteSystem) -> Term:
    """The class of ``x|id_FA``.

    Raises:
        DomainError: ``x`` is not a declared element.
    """
    return normal_form(presentation.term(x), system)


def tabulate(
    presentation: KanPresentation, system: RewriteSystem, limit: int | None = None
) -> EnumerationOutcome:
    """Enumerate the irreducible terms breadth first.

    Seeds come in element-declaration order and arrows in declaration order,
    which fixes the order of every KB. Stops with :class:`EnumerationExceeded`
    once more than ``limit`` terms are stored.
    """
    limit = get_settings().resolve("ENUM_LIMIT", limit)
    delta = presentation.delta
    steps = {a.name: delta.path(a.source, [a.name]) for a in delta.arrows}

    found: dict[str, list[Term]] = {obj: [] for obj in delta.objects}
    seen: set[Term] = set()
    queue: deque[Term] = deque()
    actions: dict[str, dict[Term, Term]] = {a.name: {} for a in delta.arrows}
    eps: dict[str, Term] = {}

    def store(t: Term) -> bool:
        if t in seen:
            return True
        seen.add(t)
        found[t.target].append(t)
        queue.append(t)
        return len(seen) <= limit

    for x in presentation.elements:
        eps[x] = epsilon(x, presentation, system)
        if not store(eps[x]):
            return _exceeded(limit, system)

    while queue:
        t = queue.popleft()
        for arrow in delta.outgoing(t.target):
            u = normal_form(t.act(steps[arrow.name]), system)
            actions[arrow.name][t] = u
            if not store(u):
                return _exceeded(limit, system)

    logger.info(f"tabulated {len(seen)} elements over {len(found)} objects")
    return KanTables(
        elements={obj: tuple(terms) for obj, terms in found.items()},
        actions=actions,
        epsilon=eps,
    )


def _exceeded(limit: int, system: RewriteSystem) -> EnumerationExceeded:
    logger.warning(f"enumeration limit exceeded: more than {limit} normal forms")
    return EnumerationExceeded(limit, system)


def naturality_check(
    presentation: KanPresentation, system: RewriteSystem, tables: KanTables | None = None
) -> bool:
    """Check epsilon(x) . F(a) = epsilon(x . a) for every generator a and x.

    With ``tables`` the action is read from the arrow tables; without, it is
    computed by reduction, which also works when enumeration was cut short.
    """
    for arrow in presentation.gamma.arrows:
        image = presentation.f_arr[arrow.name]
        for x in presentation.elements_of(arrow.source):
            y = presentation.apply_generator_action(x, arrow.name)
            if tables is not None:
                moved = tables.act_path(tables.epsilon[x], image)
                expected = tables.epsilon[y]
            else:
                moved = normal_form(epsilon(x, presentation, system).act(image), system)
                expected = epsilon(y, presentation, system)
            if moved != expected:
                logger.debug(f"naturality fails at {x} along {arrow.name}: {moved} != {expected}")
                return False
    return True
