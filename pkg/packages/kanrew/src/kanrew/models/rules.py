"""Rewrite rules on terms and on paths."""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from kanrew.errors import CompositionError
from kanrew.models.path import Path
from kanrew.models.presentation import Term


@dataclass(frozen=True)
class TermRule:
    """``lhs -> rhs`` on terms, applied at prefixes: ``lhs.q -> rhs.q``."""

    lhs: Term
    rhs: Term

    def __post_init__(self) -> None:
        if self.lhs.target != self.rhs.target:
            raise CompositionError(f"term rule sides end at different objects: {self}")

    def __str__(self) -> str:
        return f"{self.lhs} -> {self.rhs}"


@dataclass(frozen=True)
class PathRule:
    """``lhs -> rhs`` on paths, applied at factors: ``x|u lhs v -> x|u rhs v``."""

    lhs: Path
    rhs: Path

    def __post_init__(self) -> None:
        if self.lhs.is_identity:
            raise CompositionError(f"path rule with an identity left-hand side: {self}")
        if self.lhs.source != self.rhs.source or self.lhs.target != self.rhs.target:
            raise CompositionError(f"path rule sides are not parallel: {self}")

    def __str__(self) -> str:
        return f"{self.lhs} -> {self.rhs}"


Rule = TermRule | PathRule


@dataclass(frozen=True)
class RewriteSystem:
    """The pair (R_T, R_P). Rule order is insertion order and is significant."""

    term_rules: tuple[TermRule, ...] = ()
    path_rules: tuple[PathRule, ...] = ()

    @classmethod
    def of(cls, rules: Iterable[Rule]) -> RewriteSystem:
        """Split a mixed rule sequence into the two families, keeping order."""
        rules = list(rules)
        return cls(
            term_rules=tuple(r for r in rules if isinstance(r, TermRule)),
            path_rules=tuple(r for r in rules if isinstance(r, PathRule)),
        )

    def __len__(self) -> int:
        return len(self.term_rules) + len(self.path_rules)

    def __iter__(self) -> Iterator[Rule]:
        yield from self.term_rules
        yield from self.path_rules

    def __contains__(self, rule: object) -> bool:
        return rule in self.term_rules or rule in self.path_rules

    def __str__(self) -> str:
        return "\n".join(str(rule) for rule in self)

    def extended(self, rules: Iterable[Rule]) -> RewriteSystem:
        """A new system with ``rules`` appended, skipping ones already present."""
        term_rules = list(self.term_rules)
        path_rules = list(self.path_rules)
        for rule in rules:
            family: list[TermRule] | list[PathRule] = (
                term_rules if isinstance(rule, TermRule) else path_rules
            )
            if rule not in family:
                family.append(rule)  # type: ignore[arg-type]
        return RewriteSystem(tuple(term_rules), tuple(path_rules))
