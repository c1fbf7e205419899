"""Tests for the normal-form automaton and regular expressions."""

import itertools
import random

import pytest

from kanrew.core import (
    FactorMatcher,
    KanTables,
    OrderConfig,
    build_automaton,
    describe_object,
    epsilon,
    is_irreducible,
    normal_form,
    regex_for_object,
    sample_language,
    tabulate,
)
from kanrew.core.regex import Empty, Identity, Symbol, concat, star, union
from kanrew.models import RewriteSystem, Term, TermRule
from kanrew.schemas import parse_presentation
from tests.conftest import ALL_EXAMPLES, FINITE_EXAMPLES, completed, load, random_term

LOOP = (
    '{"ObA": ["A"], "ArrA": [], "ObB": ["B"], "ArrB": [["b", "B", "B"]], "RelB": [],'
    ' "FObA": {"A": "B"}, "FArrA": {}, "XObA": {"A": ["x"]}, "XArrA": {}}'
)


def _s(*names):
    return concat(*(Symbol(n) for n in names))


def worked_example_languages():
    """The KB of the worked example, written out by hand per object and element."""
    loop = star(concat(Symbol("b3"), star(Symbol("b4"), "B1"), Symbol("b5")), "B3")
    head = concat(Symbol("b5"), loop)
    tail = concat(Symbol("b3"), star(Symbol("b4"), "B1"))
    xs = ("x1", "x2", "x3")
    ys = ("y1", "y2")
    kb1 = union(concat(head, tail), Identity("B1"))
    kb2 = concat(head, tail, Symbol("b1"))
    kb3 = concat(head, union(concat(tail, _s("b1", "b2")), Identity("B3")))
    return {
        "B1": {x: kb1 for x in xs},
        "B2": {**{x: kb2 for x in xs}, **{y: Identity("B2") for y in ys}},
        "B3": {**{x: kb3 for x in xs}, **{y: Symbol("b2") for y in ys}},
    }


def irreducibles_by_bfs(presentation, system, max_length):
    """Irreducible terms up to ``max_length``, reached breadth first from epsilon."""
    seen = {epsilon(x, presentation, system) for x in presentation.elements}
    queue = list(seen)
    while queue:
        t = queue.pop(0)
        if len(t) == max_length:
            continue
        for arrow in presentation.delta.outgoing(t.target):
            u = normal_form(t.act(presentation.delta.path(arrow.source, [arrow.name])), system)
            if u not in seen and len(u) <= max_length:
                seen.add(u)
                queue.append(u)
    return seen


def _words_to(aut, x, obj, max_length):
    return {
        path.arrows for path in sample_language(aut, x, max_length) if path.target == obj
    }


class TestFactorMatcher:
    """Tests for the Aho-Corasick factor matcher."""

    def test_detects_factor_across_failure_links(self):
        """Test that a pattern is found after a partial match restarts."""
        matcher = FactorMatcher([("a", "b", "c"), ("b", "d")])
        state = 0
        hits = []
        for symbol in ("a", "b", "d"):
            state = matcher.step(state, symbol)
            hits.append(matcher.is_match(state))
        assert hits == [False, False, True]

    def test_no_patterns(self):
        """Test that an empty matcher never matches."""
        matcher = FactorMatcher([])
        assert not matcher.is_match(matcher.step(0, "a"))


class TestBuildAutomaton:
    """Tests for build_automaton."""

    def test_worked_example_membership(self, example4, example4_complete):
        """Test acceptance and rejection for y1 and x1."""
        aut = build_automaton(example4, example4_complete)
        assert aut.accepts("y1", [])
        assert aut.accepts("y1", ["b2"])
        assert not aut.accepts("y1", ["b2", "b3"])
        assert aut.accepts("x1", ["b5", "b3", "b4", "b4", "b5", "b3"])
        assert not aut.accepts("x1", ["b1"])
        assert not aut.accepts("x1", ["b4"])

    def test_transitions_follow_delta(self, example4, example4_complete):
        """Test that every transition runs along its arrow between tagged objects."""
        aut = build_automaton(example4, example4_complete)
        for (state, name), target in aut.transitions.items():
            arrow = example4.delta.arrow(name)
            assert aut.states[state].obj == arrow.source
            assert aut.states[target].obj == arrow.target
            assert aut.states[state].element == aut.states[target].element

    def test_no_rules_accepts_all_walks(self, example4):
        """Test that the empty system accepts every walk."""
        aut = build_automaton(example4, RewriteSystem())
        walks = example4.delta.walks("B1", 4)
        assert [p.arrows for p in sample_language(aut, "x1", 4)] == [p.arrows for p in walks]

    def test_reducible_identity_has_no_start(self, orbit):
        """Test that an element whose x|id is reducible has no start state."""
        system = RewriteSystem(term_rules=(TermRule(orbit.term("x2"), orbit.term("x1")),))
        aut = build_automaton(orbit, system)
        assert "x2" not in aut.starts
        assert sample_language(aut, "x2", 3) == []

    @pytest.mark.parametrize("name", ALL_EXAMPLES)
    def test_agrees_with_reducer_exhaustively(self, name):
        """Test acceptance iff irreducible for every term of length at most 6."""
        presentation = load(name)
        system = completed(presentation)
        aut = build_automaton(presentation, system)
        for x in presentation.elements:
            for path in presentation.delta.walks(presentation.anchor(x), 6):
                assert aut.accepts(x, path.arrows) == is_irreducible(Term(x, path), system)

    @pytest.mark.parametrize("name", ALL_EXAMPLES)
    def test_agrees_with_reducer_on_random_terms(self, name):
        """Test acceptance iff irreducible on random terms up to length 10."""
        presentation = load(name)
        system = completed(presentation)
        aut = build_automaton(presentation, system)
        rng = random.Random(f"automaton-{name}")
        for _ in range(500):
            t = random_term(presentation, rng, 10)
            assert aut.accepts(t.element, t.path.arrows) == is_irreducible(t, system)

    def test_dump(self, swap):
        """Test the machine-readable dump."""
        aut = build_automaton(swap, completed(swap))
        dump = aut.dump()
        assert dump["alphabet"] == ["b"]
        assert dump["starts"] == {"x": 0}
        assert {s["object"] for s in dump["states"]} == {"B"}
        assert dump["accepting"]["B"] == list(range(len(dump["states"])))


class TestSampleLanguage:
    """Tests for sample_language."""

    def test_worked_example_length_one(self, example4, example4_complete):
        """Test that b1 and b4 are excluded after x1 by term rules."""
        aut = build_automaton(example4, example4_complete)
        assert [str(p) for p in sample_language(aut, "x1", 1)] == ["id_B1", "b5"]

    def test_length_zero(self, swap):
        """Test that length 0 gives only the identity."""
        aut = build_automaton(swap, completed(swap))
        assert [str(p) for p in sample_language(aut, "x", 0)] == ["id_B"]

    def test_follows_configured_arrow_order(self, monoid):
        """Test that each layer is sorted by the given arrow ranks."""
        aut = build_automaton(monoid, RewriteSystem())
        words = [str(p) for p in sample_language(aut, "x", 2)]
        assert words == ["id_B", "a", "b", "a.a", "a.b", "b.a", "b.b"]
        reversed_order = OrderConfig.for_presentation(monoid, arrow_order=["b", "a"])
        words = [str(p) for p in sample_language(aut, "x", 2, order=reversed_order)]
        assert words == ["id_B", "b", "a", "b.b", "b.a", "a.b", "a.a"]

    def test_loop_without_rules(self):
        """Test the full walk language of a single loop."""
        loop = parse_presentation(LOOP)
        aut = build_automaton(loop, RewriteSystem())
        assert [str(p) for p in sample_language(aut, "x", 3)] == ["id_B", "b", "b.b", "b.b.b"]


class TestRegexForObject:
    """Tests for regex_for_object and describe_object."""

    def test_loop_is_star(self):
        """Test that a rule-free loop gives the language b*."""
        loop = parse_presentation(LOOP)
        aut = build_automaton(loop, RewriteSystem())
        regex = regex_for_object(aut, "B")["x"]
        assert regex.words(5) == {("b",) * n for n in range(6)}

    def test_swap(self, swap):
        """Test that b.b -> id gives id_B + b."""
        aut = build_automaton(swap, completed(swap))
        regex = regex_for_object(aut, "B")["x"]
        assert regex.words(6) == {(), ("b",)}

    def test_worked_example_languages(self, example4, example4_complete):
        """Test language agreement of BFS, automaton, extracted and displayed expressions."""
        aut = build_automaton(example4, example4_complete)
        expected = worked_example_languages()
        bfs = irreducibles_by_bfs(example4, example4_complete, 8)
        for obj in example4.delta.objects:
            extracted = regex_for_object(aut, obj)
            assert set(extracted) == set(expected[obj])
            for x, regex in extracted.items():
                for length in range(9):
                    from_automaton = {
                        w for w in _words_to(aut, x, obj, length) if len(w) == length
                    }
                    from_regex = {w for w in regex.words(length) if len(w) == length}
                    from_display = {w for w in expected[obj][x].words(length) if len(w) == length}
                    from_bfs = {
                        t.path.arrows
                        for t in bfs
                        if t.element == x and t.target == obj and len(t) == length
                    }
                    assert from_bfs == from_automaton == from_regex == from_display, (
                        obj,
                        x,
                        length,
                    )

    def test_empty_language_left_out(self, swap):
        """Test that objects without normal forms have no expressions."""
        aut = build_automaton(swap, completed(swap))
        aut.accepting["C"] = frozenset()
        assert regex_for_object(aut, "C") == {}
        assert describe_object(aut, "C") == "0"

    def test_describe_groups_equal_expressions(self, example4, example4_complete):
        """Test the (x1+x2+x3)|expr grouping."""
        aut = build_automaton(example4, example4_complete)
        text = describe_object(aut, "B2")
        assert text.startswith("(x1+x2+x3)|")
        assert text.endswith(" + (y1+y2)|id_B2")

    @pytest.mark.parametrize("name", FINITE_EXAMPLES)
    def test_finite_languages_match_tables(self, name):
        """Test that every expression of a finite example denotes exactly its tabulated KB."""
        presentation = load(name)
        system = completed(presentation)
        tables = tabulate(presentation, system)
        assert isinstance(tables, KanTables)
        aut = build_automaton(presentation, system)
        for obj in presentation.delta.objects:
            from_regex = {
                (x, w)
                for x, regex in regex_for_object(aut, obj).items()
                for w in regex.words(12)
            }
            from_tables = {(t.element, t.path.arrows) for t in tables.elements[obj]}
            assert from_regex == from_tables


class TestRegex:
    """Tests for the regular-expression constructors."""

    def test_identity_absorbed(self):
        """Test that identities vanish inside concatenations."""
        assert str(concat(Identity("B"), Symbol("b"), Identity("B"))) == "b"
        assert concat(Identity("B")) == Identity("B")

    def test_empty_annihilates(self):
        """Test that the empty language absorbs concatenation and drops from unions."""
        assert concat(Symbol("b"), Empty()) == Empty()
        assert union(Empty(), Symbol("b")) == Symbol("b")

    def test_star_of_identity(self):
        """Test that id* is id."""
        assert star(Identity("B"), "B") == Identity("B")

    def test_printing(self):
        """Test juxtaposition, + and * in the printed form."""
        regex = concat(Symbol("b5"), star(concat(Symbol("b3"), Symbol("b5")), "B1"))
        assert str(union(regex, Identity("B1"))) == "b5 (b3 b5)* + id_B1"

    def test_words(self):
        """Test bounded expansion of a starred union."""
        regex = star(union(Symbol("a"), _s("b", "b")), "B")
        expected = {
            w
            for n in range(4)
            for w in itertools.product("ab", repeat=n)
            if "".join(w).replace("bb", "").replace("a", "") == ""
        }
        assert regex.words(3) == expected

    def test_atom(self):
        """Test that only sums and products are parenthesized as factors."""
        ab = union(Symbol("a"), Symbol("b"))
        assert Symbol("a").atom() == "a"
        assert ab.atom() == f"({ab})"
        assert _s("a", "b").atom() == "(a b)"
        assert star(Symbol("a"), "B").atom() == "a*"
