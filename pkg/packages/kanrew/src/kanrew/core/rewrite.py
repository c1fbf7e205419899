"""Initial rules, one-step reduction and normal forms on terms and paths.

Reduction is deterministic: term rules are tried before path rules, each
family in rule order, and a path rule fires at its leftmost occurrence. The
``RIGHTMOST`` strategy exists to cross-check confluence.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from enum import Enum

from kanrew.config import get_settings
from kanrew.core.ordering import OrderConfig, Ordering, compare_terms, orient
from kanrew.errors import ReductionLimitError
from kanrew.models import KanPresentation, Path, PathRule, RewriteSystem, Term, TermRule

logger = logging.getLogger("kanrew")


class Strategy(str, Enum):
    """Which redex a single reduction step contracts."""

    LEFTMOST = "leftmost"
    RIGHTMOST = "rightmost"


def initial_rules(presentation: KanPresentation, cfg: OrderConfig) -> RewriteSystem:
    """The epsilon-rules ``x|F(a) -> x.a|id`` and the K-rules from the relations."""
    term_rules: list[TermRule] = []
    for arrow in presentation.gamma.arrows:
        image = presentation.f_arr[arrow.name]
        for x in presentation.elements_of(arrow.source):
            y = presentation.apply_generator_action(x, arrow.name)
            rule = orient(Term(x, image), presentation.term(y), cfg)
            logger.debug(
                f"i= {arrow.source}, XA= {list(presentation.elements_of(arrow.source))}, "
                f"Ax= {x}, rule= {rule}"
            )
            if isinstance(rule, TermRule) and rule not in term_rules:
                term_rules.append(rule)

    path_rules: list[PathRule] = []
    for relation in presentation.relations:
        rule = orient(relation.lhs, relation.rhs, cfg)
        if isinstance(rule, PathRule) and rule not in path_rules:
            path_rules.append(rule)

    return RewriteSystem(tuple(term_rules), tuple(path_rules))


# ---------------------------------------------------------------------- paths


def _path_rules(rules: RewriteSystem | Sequence[PathRule]) -> Sequence[PathRule]:
    return rules.path_rules if isinstance(rules, RewriteSystem) else rules


def reduce_path_once(
    w: Path,
    rules: RewriteSystem | Sequence[PathRule],
    strategy: Strategy = Strategy.LEFTMOST,
) -> Path | None:
    """Rewrite one factor of ``w``; None when ``w`` is irreducible."""
    redex = _path_redex(w, _path_rules(rules), strategy)
    if redex is None:
        return None
    position, rule = redex
    return w.replace_at(position, len(rule.lhs), rule.rhs)


def _path_redex(
    w: Path, rules: Sequence[PathRule], strategy: Strategy
) -> tuple[int, PathRule] | None:
    if strategy is Strategy.LEFTMOST:
        for rule in rules:
            position = w.find(rule.lhs)
            if position is not None:
                return position, rule
        return None

    best: tuple[int, PathRule] | None = None
    best_end = -1
    for rule in rules:
        for position in w.occurrences(rule.lhs):
            end = position + len(rule.lhs)
            if end > best_end:
                best, best_end = (position, rule), end
    return best


def path_normal_form(
    w: Path,
    rules: RewriteSystem | Sequence[PathRule],
    *,
    strategy: Strategy = Strategy.LEFTMOST,
    step_limit: int | None = None,
) -> Path:
    """Rewrite factors until none of the path rules applies."""
    limit = get_settings().resolve("STEP_LIMIT", step_limit)
    path_rules = _path_rules(rules)
    for _ in range(limit):
        reduced = reduce_path_once(w, path_rules, strategy)
        if reduced is None:
            return w
        w = reduced
    raise ReductionLimitError(f"no normal form for path {w} within {limit} steps")


# ---------------------------------------------------------------------- terms


def reduce_once(
    t: Term, system: RewriteSystem, strategy: Strategy = Strategy.LEFTMOST
) -> Term | None:
    """Apply one rule to ``t``; None when ``t`` is irreducible.

    A term rule ``(s, u)`` rewrites ``s.q`` to ``u.q``; a path rule ``(l, r)``
    rewrites ``x|ulv`` to ``x|urv``.
    """
    term_rule = _term_redex(t, system.term_rules)

    if strategy is Strategy.LEFTMOST and term_rule is not None:
        return _apply_term_rule(t, term_rule)

    redex = _path_redex(t.path, system.path_rules, strategy)
    if strategy is Strategy.RIGHTMOST and term_rule is not None:
        # A term redex ends at len(s); a path redex further right wins.
        if redex is None or redex[0] + len(redex[1].lhs) <= len(term_rule.lhs):
            return _apply_term_rule(t, term_rule)

    if redex is None:
        return None
    position, rule = redex
    return Term(t.element, t.path.replace_at(position, len(rule.lhs), rule.rhs))


def _term_redex(t: Term, rules: Sequence[TermRule]) -> TermRule | None:
    for rule in rules:
        if rule.lhs.element == t.element and t.path.startswith(rule.lhs.path):
            return rule
    return None


def _apply_term_rule(t: Term, rule: TermRule) -> Term:
    return rule.rhs.act(t.path.drop(len(rule.lhs)))


def is_irreducible(t: Term, system: RewriteSystem) -> bool:
    return reduce_once(t, system) is None


def normal_form(
    t: Term,
    system: RewriteSystem,
    *,
    strategy: Strategy = Strategy.LEFTMOST,
    step_limit: int | None = None,
    order: OrderConfig | None = None,
) -> Term:
    """Reduce ``t`` until no rule applies.

    When ``order`` is given, each step is checked to decrease the term order.

    Raises:
        ReductionLimitError: more than ``step_limit`` steps were taken.
    """
    limit = get_settings().resolve("STEP_LIMIT", step_limit)
    for _ in range(limit):
        reduced = reduce_once(t, system, strategy)
        if reduced is None:
            return t
        if order is not None:
            assert compare_terms(reduced, t, order) is Ordering.LESS, f"{t} -> {reduced}"
        t = reduced
    raise ReductionLimitError(f"no normal form for {t} within {limit} steps")


def equivalent(t1: Term, t2: Term, system: RewriteSystem) -> bool:
    """Decide t1 <->* t2 for a complete system by comparing normal forms."""
    return normal_form(t1, system) == normal_form(t2, system)
