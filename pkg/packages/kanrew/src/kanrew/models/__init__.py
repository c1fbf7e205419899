"""Domain values: graphs, paths, presentations, terms and rules."""

from kanrew.models.graph import Arrow, Graph
from kanrew.models.path import Path, compose_path
from kanrew.models.presentation import (
    KanPresentation,
    Relation,
    Term,
    act,
    apply_generator_action,
)
from kanrew.models.rules import PathRule, RewriteSystem, Rule, TermRule

__all__ = [
    "Arrow",
    "Graph",
    "KanPresentation",
    "Path",
    "PathRule",
    "Relation",
    "RewriteSystem",
    "Rule",
    "Term",
    "TermRule",
    "act",
    "apply_generator_action",
    "compose_path",
]
