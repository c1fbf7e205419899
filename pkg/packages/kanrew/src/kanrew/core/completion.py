"""Overlaps, critical pairs and the completion procedure.

Overlaps come in five kinds:

    i    term rule (s1,u1), term rule (s2,u2):  s2 = s1.q          pair (u1.q, u2)
    ii   path rule (l1,r1), path rule (l2,r2):  l1 = p l2 q        pair (r1, p r2 q)
    iii  path rule, path rule:                  l1 q = p l2        pair (r1 q, p r2)
    iv   term rule (s1,u1), path rule (l1,r1):  s1.q = s.l1        pair (u1.q, s.r1)
    v    term rule, path rule:                  s1 = s.(l1 q)      pair (u1, s.r1 q)

Kinds iii and iv need a nonempty shared part and proper containment, so ii/iii
and iv/v split the cases without counting any overlap twice.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from enum import Enum

from kanrew.config import get_settings
from kanrew.core.ordering import OrderConfig, orient
from kanrew.core.rewrite import is_irreducible, normal_form, path_normal_form, reduce_path_once
from kanrew.models import Path, PathRule, RewriteSystem, Rule, Term, TermRule

logger = logging.getLogger("kanrew")

ProgressHook = Callable[[int, int], None]


class OverlapKind(str, Enum):
    TERM_TERM = "i"
    PATH_FACTOR = "ii"
    PATH_OVERLAP = "iii"
    TERM_PATH_BOUNDARY = "iv"
    PATH_IN_TERM = "v"


_KIND_RANK = {kind: i for i, kind in enumerate(OverlapKind)}


@dataclass(frozen=True)
class CriticalPair:
    """Two one-step reducts of the same critical term (or path)."""

    left: Term | Path
    right: Term | Path


@dataclass(frozen=True)
class Overlap:
    """An overlap of two rules at a position of the critical term.

    ``rule1`` and ``rule2`` index into the system's term rules or path rules
    according to the kind; ``position`` is where the second rule's left side
    starts inside the critical term's path.
    """

    kind: OverlapKind
    rule1: int
    rule2: int
    position: int
    critical: Term | Path
    pair: CriticalPair

    @property
    def sort_key(self) -> tuple[int, int, int, int]:
        return (_KIND_RANK[self.kind], self.rule1, self.rule2, self.position)


class CompletionStatus(str, Enum):
    COMPLETED = "completed"
    LIMIT_EXCEEDED = "limit-exceeded"


@dataclass(frozen=True)
class CompletionResult:
    status: CompletionStatus
    system: RewriteSystem
    passes: int
    added: int

    @property
    def completed(self) -> bool:
        return self.status is CompletionStatus.COMPLETED


# ---------------------------------------------------------------------- overlaps


def _term_term(system: RewriteSystem) -> Iterator[Overlap]:
    rules = system.term_rules
    for i1, (s1, u1) in enumerate((r.lhs, r.rhs) for r in rules):
        for i2, (s2, u2) in enumerate((r.lhs, r.rhs) for r in rules):
            if s1.element == s2.element and s2.path.startswith(s1.path):
                q = s2.path.drop(len(s1))
                yield Overlap(
                    OverlapKind.TERM_TERM, i1, i2, len(s1), s2, CriticalPair(u1.act(q), u2)
                )


def _path_path(system: RewriteSystem) -> Iterator[Overlap]:
    rules = system.path_rules
    for i1, rule1 in enumerate(rules):
        l1, r1 = rule1.lhs, rule1.rhs
        for i2, rule2 in enumerate(rules):
            l2, r2 = rule2.lhs, rule2.rhs
            for pos in l1.occurrences(l2):
                yield Overlap(
                    OverlapKind.PATH_FACTOR,
                    i1,
                    i2,
                    pos,
                    l1,
                    CriticalPair(r1, l1.replace_at(pos, len(l2), r2)),
                )
            n1, n2 = len(l1), len(l2)
            for k in range(1, min(n1, n2)):
                if l1.arrows[n1 - k :] != l2.arrows[:k]:
                    continue
                p, q = l1.prefix(n1 - k), l2.drop(k)
                yield Overlap(
                    OverlapKind.PATH_OVERLAP,
                    i1,
                    i2,
                    n1 - k,
                    l1.compose(q),
                    CriticalPair(r1.compose(q), p.compose(r2)),
                )


def _term_path(system: RewriteSystem) -> Iterator[Overlap]:
    for i1, term_rule in enumerate(system.term_rules):
        s1, u1 = term_rule.lhs, term_rule.rhs
        w = s1.path
        n = len(w)
        for i2, path_rule in enumerate(system.path_rules):
            l1, r1 = path_rule.lhs, path_rule.rhs
            m = len(l1)
            for k in range(1, min(n, m - 1) + 1):
                if w.arrows[n - k :] != l1.arrows[:k]:
                    continue
                s = Term(s1.element, w.prefix(n - k))
                q = l1.drop(k)
                yield Overlap(
                    OverlapKind.TERM_PATH_BOUNDARY,
                    i1,
                    i2,
                    n - k,
                    s1.act(q),
                    CriticalPair(u1.act(q), s.act(r1)),
                )
            for pos in w.occurrences(l1):
                yield Overlap(
                    OverlapKind.PATH_IN_TERM,
                    i1,
                    i2,
                    pos,
                    s1,
                    CriticalPair(u1, Term(s1.element, w.replace_at(pos, m, r1))),
                )


def find_overlaps(system: RewriteSystem) -> list[Overlap]:
    """All overlaps of the system, including self-overlaps, in canonical order."""
    unique: dict[tuple[int, int, int, int], Overlap] = {}
    for source in (_term_term, _path_path, _term_path):
        for overlap in source(system):
            unique.setdefault(overlap.sort_key, overlap)
    return [unique[key] for key in sorted(unique)]


# ---------------------------------------------------------------------- resolution


def _normalize(side: Term | Path, system: RewriteSystem) -> Term | Path:
    if isinstance(side, Term):
        return normal_form(side, system)
    return path_normal_form(side, system)


def resolves(cp: CriticalPair, system: RewriteSystem) -> Term | Path | None:
    """The common normal form of both sides, or None when they differ."""
    left, right = _normalize(cp.left, system), _normalize(cp.right, system)
    return left if left == right else None


def unresolved_overlaps(system: RewriteSystem) -> list[Overlap]:
    """Overlaps whose critical pairs do not resolve; empty iff locally confluent."""
    return [o for o in find_overlaps(system) if resolves(o.pair, system) is None]


# ---------------------------------------------------------------------- completion


def complete(
    initial: RewriteSystem,
    cfg: OrderConfig,
    *,
    max_rules: int | None = None,
    max_passes: int | None = None,
    progress: ProgressHook | None = None,
) -> CompletionResult:
    """Add resolving rules until every critical pair resolves.

    Each pass collects overlaps against a frozen rule list; the normal forms of
    unresolved critical pairs are oriented and appended for the next pass. A
    pass that adds nothing ends with an interreduced system. Hitting either
    limit returns the partial system with status ``limit-exceeded``.
    """
    settings = get_settings()
    rule_limit = settings.resolve("MAX_RULES", max_rules)
    pass_limit = settings.resolve("MAX_PASSES", max_passes)

    system = initial
    passes = added = 0
    while passes < pass_limit:
        passes += 1
        new_rules: list[Rule] = []
        for overlap in find_overlaps(system):
            left = _normalize(overlap.pair.left, system)
            right = _normalize(overlap.pair.right, system)
            if left == right:
                continue
            rule = orient(left, right, cfg)
            if rule is None or rule in system or rule in new_rules:
                continue
            logger.debug(f"pass {passes}: overlap {overlap.kind.value} adds {rule}")
            new_rules.append(rule)

        if progress is not None:
            progress(passes, len(system) + len(new_rules))
        logger.debug(f"pass {passes}: {len(system)} rules, {len(new_rules)} added")

        if not new_rules:
            final = interreduce(system)
            logger.info(f"completion finished after {passes} passes with {len(final)} rules")
            return CompletionResult(CompletionStatus.COMPLETED, final, passes, added)

        system = system.extended(new_rules)
        added += len(new_rules)
        if len(system) > rule_limit:
            logger.warning(f"completion stopped: {len(system)} rules exceed the limit {rule_limit}")
            return CompletionResult(CompletionStatus.LIMIT_EXCEEDED, system, passes, added)

    logger.warning(f"completion stopped: pass limit {pass_limit} reached")
    return CompletionResult(CompletionStatus.LIMIT_EXCEEDED, system, passes, added)


def interreduce(system: RewriteSystem) -> RewriteSystem:
    """Drop rules whose left side another rule reduces, then normalize right sides.

    Only meaningful for a complete system; the result is complete and
    equivalent.
    """
    path_rules = list(system.path_rules)
    for rule in list(path_rules):
        others = [r for r in path_rules if r is not rule]
        if reduce_path_once(rule.lhs, others) is not None:
            path_rules.remove(rule)

    term_rules = list(system.term_rules)
    for rule in list(term_rules):
        others = RewriteSystem(tuple(r for r in term_rules if r is not rule), tuple(path_rules))
        if not is_irreducible(rule.lhs, others):
            term_rules.remove(rule)

    kept = RewriteSystem(tuple(term_rules), tuple(path_rules))
    return RewriteSystem(
        tuple(TermRule(r.lhs, normal_form(r.rhs, kept)) for r in term_rules),
        tuple(PathRule(r.lhs, path_normal_form(r.rhs, kept)) for r in path_rules),
    )
