"""The engine: ordering, reduction, completion, tabulation and languages."""

from kanrew.core.completion import (
    CompletionResult,
    CompletionStatus,
    CriticalPair,
    Overlap,
    OverlapKind,
    complete,
    find_overlaps,
    interreduce,
    resolves,
    unresolved_overlaps,
)
from kanrew.core.language import (
    FactorMatcher,
    NormalFormAutomaton,
    build_automaton,
    describe_object,
    regex_for_object,
    sample_language,
)
from kanrew.core.ordering import OrderConfig, Ordering, compare_paths, compare_terms, orient
from kanrew.core.regex import Regex
from kanrew.core.rewrite import (
    Strategy,
    equivalent,
    initial_rules,
    is_irreducible,
    normal_form,
    path_normal_form,
    reduce_once,
    reduce_path_once,
)
from kanrew.core.tabulate import (
    EnumerationExceeded,
    EnumerationOutcome,
    KanTables,
    epsilon,
    naturality_check,
    tabulate,
)

__all__ = [
    "CompletionResult",
    "CompletionStatus",
    "CriticalPair",
    "EnumerationExceeded",
    "EnumerationOutcome",
    "FactorMatcher",
    "KanTables",
    "NormalFormAutomaton",
    "OrderConfig",
    "Ordering",
    "Overlap",
    "OverlapKind",
    "Regex",
    "Strategy",
    "build_automaton",
    "compare_paths",
    "compare_terms",
    "complete",
    "describe_object",
    "epsilon",
    "equivalent",
    "find_overlaps",
    "initial_rules",
    "interreduce",
    "is_irreducible",
    "naturality_check",
    "normal_form",
    "orient",
    "path_normal_form",
    "reduce_once",
    "reduce_path_once",
    "regex_for_object",
    "resolves",
    "sample_language",
    "tabulate",
    "unresolved_overlaps",
]
