"""Normal-form automaton of a complete system and regular expressions for each KB.

A word ``w`` from F(A) gives an irreducible term ``x|w`` exactly when ``w``
avoids every path-rule left side as a factor and no term-rule left side for
``x`` is a prefix of ``w``. The automaton runs a factor matcher over the
path-rule left sides next to a prefix tree of the term-rule left sides for
``x``, walking only along arrows of Delta.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any

from kanrew.core.ordering import OrderConfig
from kanrew.core.regex import Empty, Identity, Regex, Symbol, Union, concat, star, union
from kanrew.models import KanPresentation, Path, RewriteSystem

logger = logging.getLogger("kanrew")

ESCAPED = -1


class FactorMatcher:
    """Aho-Corasick automaton over arrow-name sequences.

    ``step`` is total: a failed goto follows failure links, so the state
    always tracks the longest suffix of the input that is a pattern prefix.
    """

    def __init__(self, patterns: Iterable[Sequence[str]]) -> None:
        self._children: list[dict[str, int]] = [{}]
        self._fail: list[int] = [0]
        self._match: list[bool] = [False]
        for pattern in patterns:
            self._add(pattern)
        self._build_failure()

    def _add(self, pattern: Sequence[str]) -> None:
        node = 0
        for symbol in pattern:
            if symbol not in self._children[node]:
                self._children.append({})
                self._fail.append(0)
                self._match.append(False)
                self._children[node][symbol] = len(self._children) - 1
            node = self._children[node][symbol]
        self._match[node] = True

    def _build_failure(self) -> None:
        queue = deque(self._children[0].values())
        while queue:
            current = queue.popleft()
            for symbol, child in self._children[current].items():
                queue.append(child)
                self._fail[child] = self._goto(self._fail[current], symbol)
                self._match[child] = self._match[child] or self._match[self._fail[child]]

    def _goto(self, node: int, symbol: str) -> int:
        while node and symbol not in self._children[node]:
            node = self._fail[node]
        return self._children[node].get(symbol, 0)

    @property
    def size(self) -> int:
        return len(self._children)

    def step(self, node: int, symbol: str) -> int:
        return self._goto(node, symbol)

    def is_match(self, node: int) -> bool:
        """Whether some pattern ends at the current position."""
        return self._match[node]


class PrefixTree:
    """Trie of forbidden prefixes; ``ESCAPED`` once the input leaves every branch."""

    def __init__(self, words: Iterable[Sequence[str]]) -> None:
        self._children: list[dict[str, int]] = [{}]
        self._end: list[bool] = [False]
        for word in words:
            node = 0
            for symbol in word:
                if symbol not in self._children[node]:
                    self._children.append({})
                    self._end.append(False)
                    self._children[node][symbol] = len(self._children) - 1
                node = self._children[node][symbol]
            self._end[node] = True

    def step(self, node: int, symbol: str) -> int:
        if node == ESCAPED:
            return ESCAPED
        return self._children[node].get(symbol, ESCAPED)

    def is_forbidden(self, node: int) -> bool:
        return node != ESCAPED and self._end[node]


@dataclass(frozen=True)
class StateTag:
    """What an automaton state remembers."""

    element: str
    obj: str
    matcher: int
    prefix: int


@dataclass(frozen=True, eq=False)
class NormalFormAutomaton:
    """Deterministic automaton accepting the irreducible terms.

    Every state is accepting; ``accepting`` groups them by Delta-object, which
    is the target of any term read into that state. An element whose
    identity term is already reducible has no start state.
    """

    alphabet: tuple[str, ...]
    states: tuple[StateTag, ...]
    transitions: dict[tuple[int, str], int]
    starts: dict[str, int]
    accepting: dict[str, frozenset[int]] = field(default_factory=dict)

    def outgoing(self, state: int) -> list[tuple[str, int]]:
        """Transitions out of ``state`` in alphabet order."""
        return [
            (symbol, self.transitions[(state, symbol)])
            for symbol in self.alphabet
            if (state, symbol) in self.transitions
        ]

    def run(self, x: str, arrows: Sequence[str]) -> int | None:
        state = self.starts.get(x)
        for symbol in arrows:
            if state is None:
                return None
            state = self.transitions.get((state, symbol))
        return state

    def accepts(self, x: str, arrows: Sequence[str]) -> bool:
        return self.run(x, arrows) is not None

    def dump(self) -> dict[str, Any]:
        """Machine-readable form: states with tags, transitions, starts, accepting sets."""
        return {
            "alphabet": list(self.alphabet),
            "states": [
                {
                    "id": i,
                    "element": tag.element,
                    "object": tag.obj,
                    "matcher": tag.matcher,
                    "prefix": tag.prefix,
                }
                for i, tag in enumerate(self.states)
            ],
            "transitions": [[s, symbol, t] for (s, symbol), t in self.transitions.items()],
            "starts": dict(self.starts),
            "accepting": {obj: sorted(ids) for obj, ids in self.accepting.items()},
        }


def build_automaton(presentation: KanPresentation, system: RewriteSystem) -> NormalFormAutomaton:
    """Product of walks in Delta, the factor matcher and per-element prefix trees."""
    delta = presentation.delta
    matcher = FactorMatcher(rule.lhs.arrows for rule in system.path_rules)

    index: dict[StateTag, int] = {}
    states: list[StateTag] = []
    transitions: dict[tuple[int, str], int] = {}
    starts: dict[str, int] = {}

    def intern(tag: StateTag) -> tuple[int, bool]:
        if tag in index:
            return index[tag], False
        index[tag] = len(states)
        states.append(tag)
        return index[tag], True

    for x in presentation.elements:
        prefixes = PrefixTree(
            rule.lhs.path.arrows for rule in system.term_rules if rule.lhs.element == x
        )
        if prefixes.is_forbidden(0):
            continue
        start, _ = intern(StateTag(x, presentation.anchor(x), 0, 0))
        starts[x] = start
        queue = deque([start])
        while queue:
            state = queue.popleft()
            tag = states[state]
            for arrow in delta.outgoing(tag.obj):
                matched = matcher.step(tag.matcher, arrow.name)
                prefix = prefixes.step(tag.prefix, arrow.name)
                if matcher.is_match(matched) or prefixes.is_forbidden(prefix):
                    continue
                target, new = intern(StateTag(x, arrow.target, matched, prefix))
                transitions[(state, arrow.name)] = target
                if new:
                    queue.append(target)

    accepting: dict[str, set[int]] = {obj: set() for obj in delta.objects}
    for i, tag in enumerate(states):
        accepting[tag.obj].add(i)

    logger.debug(
        f"automaton: {len(states)} states, {len(transitions)} transitions, "
        f"matcher size {matcher.size}"
    )
    return NormalFormAutomaton(
        alphabet=delta.arrow_names,
        states=tuple(states),
        transitions=transitions,
        starts=starts,
        accepting={obj: frozenset(ids) for obj, ids in accepting.items()},
    )


def sample_language(
    aut: NormalFormAutomaton, x: str, max_length: int, order: OrderConfig | None = None
) -> list[Path]:
    """Accepted words from ``start(x)`` up to ``max_length``, in length-lex order.

    Arrows rank by ``order`` when given, otherwise by their position in the
    alphabet (declaration order).
    """
    if x not in aut.starts:
        return []
    start = aut.starts[x]
    layer = [(Path.identity(aut.states[start].obj), start)]
    result = [path for path, _ in layer]
    for _ in range(max_length):
        layer = [
            (path.extend(symbol, aut.states[target].obj), target)
            for path, state in layer
            for symbol, target in aut.outgoing(state)
        ]
        if order is not None:
            path_key = order.path_key
            layer.sort(key=lambda entry: path_key(entry[0]))
        result.extend(path for path, _ in layer)
    return result


# ---------------------------------------------------------------------- state elimination


def regex_for_object(aut: NormalFormAutomaton, obj: str) -> dict[str, Regex]:
    """Per element, a regular expression for the words reaching ``obj``.

    Elements with no such words are left out.
    """
    result: dict[str, Regex] = {}
    for x, start in aut.starts.items():
        regex = _eliminate(aut, start, aut.accepting.get(obj, frozenset()))
        if not isinstance(regex, Empty):
            result[x] = regex
    return result


def _eliminate(aut: NormalFormAutomaton, start: int, finals: frozenset[int]) -> Regex:
    reachable = {start}
    queue = deque([start])
    while queue:
        for _, target in aut.outgoing(queue.popleft()):
            if target not in reachable:
                reachable.add(target)
                queue.append(target)

    # keep only states that can still reach a final state
    live = reachable & finals
    changed = True
    while changed:
        changed = False
        for state in reachable - live:
            if any(target in live for _, target in aut.outgoing(state)):
                live.add(state)
                changed = True
    if start not in live:
        return Empty()

    source, sink = -1, -2
    edges: dict[tuple[int, int], Regex] = {}

    def add(i: int, j: int, regex: Regex) -> None:
        edges[(i, j)] = union(edges[(i, j)], regex) if (i, j) in edges else regex

    add(source, start, Identity(aut.states[start].obj))
    for state in sorted(live):
        if state in finals:
            add(state, sink, Identity(aut.states[state].obj))
        for symbol, target in aut.outgoing(state):
            if target in live:
                add(state, target, Symbol(symbol))

    remaining = set(live)
    while remaining:
        state = min(remaining, key=lambda s: (_degree(edges, s), s))
        remaining.discard(state)
        loop = edges.pop((state, state), None)
        middle = star(loop, aut.states[state].obj) if loop else Identity(aut.states[state].obj)
        incoming = [(i, r) for (i, j), r in edges.items() if j == state]
        outgoing = [(j, r) for (i, j), r in edges.items() if i == state]
        for i, _ in incoming:
            del edges[(i, state)]
        for j, _ in outgoing:
            del edges[(state, j)]
        for i, r_in in incoming:
            for j, r_out in outgoing:
                add(i, j, concat(r_in, middle, r_out))

    return edges.get((source, sink), Empty())


def _degree(edges: dict[tuple[int, int], Regex], state: int) -> int:
    fan_in = sum(1 for i, j in edges if j == state and i != state)
    fan_out = sum(1 for i, j in edges if i == state and j != state)
    return fan_in * fan_out


def describe_object(aut: NormalFormAutomaton, obj: str) -> str:
    """Display KB as a sum over elements, grouping elements with equal expressions."""
    groups: dict[str, list[str]] = {}
    for x, regex in regex_for_object(aut, obj).items():
        text = regex.atom() if isinstance(regex, Union) else str(regex)
        groups.setdefault(text, []).append(x)
    if not groups:
        return "0"
    parts = []
    for expr, elements in groups.items():
        names = elements[0] if len(elements) == 1 else f"({'+'.join(elements)})"
        parts.append(f"{names}|{expr}")
    return " + ".join(parts)
