"""Tests for graphs, paths, presentations and the interchange document."""

import json
import random

import pytest

from kanrew.errors import CompositionError, DocumentSyntaxError, DomainError, PresentationError
from kanrew.models import Graph, KanPresentation, Path, Term, act, compose_path
from kanrew.schemas import (
    load_document,
    parse_path,
    parse_presentation,
    parse_term,
    record_from_system,
    serialize_presentation,
    system_from_record,
)
from tests.conftest import ALL_EXAMPLES, DATA, completed, load, random_path, random_term


def _doc(**overrides):
    base = json.loads((DATA / "example4.kan").read_text(encoding="utf-8"))
    base.update(overrides)
    return json.dumps(base)


class TestPath:
    """Tests for paths in the free category."""

    def test_identity_paths_differ_by_object(self):
        """Test that identities at different objects are different values."""
        assert Path.identity("B1") != Path.identity("B2")
        assert str(Path.identity("B1")) == "id_B1"

    def test_compose(self, example4):
        """Test diagrammatic composition and its endpoints."""
        delta = example4.delta
        p = delta.path("B1", ["b1"])
        q = delta.path("B2", ["b2", "b3"])
        pq = compose_path(p, q)
        assert pq.arrows == ("b1", "b2", "b3")
        assert (pq.source, pq.target) == ("B1", "B1")
        assert str(pq) == "b1.b2.b3"

    def test_compose_with_identity(self, example4):
        """Test that identities are units for composition."""
        p = example4.delta.path("B1", ["b5", "b3"])
        assert compose_path(Path.identity("B1"), p) == p
        assert compose_path(p, Path.identity("B1")) == p

    def test_compose_mismatch(self, example4):
        """Test that non-meeting endpoints are rejected."""
        p = example4.delta.path("B1", ["b1"])
        with pytest.raises(CompositionError):
            compose_path(p, p)

    def test_non_composable_arrows(self, example4):
        """Test that a path through non-meeting arrows cannot be built."""
        with pytest.raises(CompositionError):
            example4.delta.path("B1", ["b1", "b3"])

    def test_factors(self, example4):
        """Test prefix, drop, occurrences and replacement."""
        delta = example4.delta
        w = delta.path("B1", ["b5", "b3", "b1", "b2", "b3"])
        lhs = delta.path("B1", ["b1", "b2", "b3"])
        assert list(w.occurrences(lhs)) == [2]
        assert w.prefix(2).arrows == ("b5", "b3")
        assert w.drop(2) == lhs
        assert w.replace_at(2, 3, delta.path("B1", ["b4"])).arrows == ("b5", "b3", "b4")

    def test_walks(self, swap):
        """Test that walks enumerate all paths shortest first."""
        walks = swap.delta.walks("B", 2)
        assert [str(p) for p in walks] == ["id_B", "b", "b.b"]


class TestGraph:
    """Tests for graph validation."""

    def test_duplicate_object(self):
        """Test that a repeated object id is rejected."""
        with pytest.raises(PresentationError, match="duplicate object"):
            Graph.build(["B", "B"], [])

    def test_duplicate_arrow(self):
        """Test that a repeated arrow id is rejected."""
        with pytest.raises(PresentationError, match="duplicate arrow"):
            Graph.build(["B"], [("b", "B", "B"), ("b", "B", "B")])

    def test_undeclared_endpoint(self):
        """Test that arrow endpoints must be declared objects."""
        with pytest.raises(PresentationError, match="undeclared object"):
            Graph.build(["B"], [("b", "B", "C")])


class TestPresentation:
    """Tests for KanPresentation queries and invariants."""

    def test_elements_in_declaration_order(self, example4):
        """Test that elements follow Gamma-object order."""
        assert example4.elements == ("x1", "x2", "x3", "y1", "y2")
        assert example4.elements_of("A2") == ("y1", "y2")

    def test_generator_action(self, example4):
        """Test the given action of Gamma-arrows on elements."""
        assert example4.apply_generator_action("x3", "a1") == "y1"
        assert example4.apply_generator_action("y2", "a2") == "x2"

    def test_generator_action_outside_domain(self, example4):
        """Test that acting outside the source set is a domain error."""
        with pytest.raises(DomainError):
            example4.apply_generator_action("y1", "a1")

    def test_unknown_element(self, example4):
        """Test that an undeclared element is a domain error."""
        with pytest.raises(DomainError, match="unknown element"):
            example4.owner("z")

    def test_act(self, example4):
        """Test the right action of paths on terms."""
        t = example4.term("x1", ["b5"])
        moved = act(t, example4.delta.path("B3", ["b3"]))
        assert moved == Term("x1", example4.delta.path("B1", ["b5", "b3"]))
        assert moved.target == "B1"
        assert str(moved) == "x1|b5.b3"

    def test_act_mismatch(self, example4):
        """Test that acting with a path from the wrong object fails."""
        with pytest.raises(CompositionError):
            act(example4.term("x1"), example4.delta.path("B2", ["b2"]))

    def test_functor_must_preserve_endpoints(self):
        """Test that F(a) must run from F(src a) to F(tgt a)."""
        text = _doc(FArrA={"a1": ["b4"], "a2": ["b2", "b3"]})
        with pytest.raises(PresentationError, match="functor does not preserve endpoints"):
            parse_presentation(text)

    def test_functor_must_be_total(self):
        """Test that every Gamma-arrow needs an image."""
        with pytest.raises(PresentationError, match="missing arrow image"):
            parse_presentation(_doc(FArrA={"a1": ["b1"]}))

    def test_action_must_be_total(self):
        """Test that every element of the source set needs an image."""
        text = _doc(XArrA={"a1": {"x1": "y1", "x2": "y2"}, "a2": {"y1": "x1", "y2": "x2"}})
        with pytest.raises(PresentationError, match="action is not total"):
            parse_presentation(text)

    def test_action_codomain(self):
        """Test that images must lie in the target set."""
        text = _doc(
            XArrA={"a1": {"x1": "x2", "x2": "y2", "x3": "y1"}, "a2": {"y1": "x1", "y2": "x2"}}
        )
        with pytest.raises(PresentationError, match="outside its codomain"):
            parse_presentation(text)

    def test_duplicate_element(self):
        """Test that elements must be unique across the X(A)."""
        text = _doc(XObA={"A1": ["x1", "x2", "x3"], "A2": ["x1", "y2"]})
        with pytest.raises(PresentationError, match="duplicate element"):
            parse_presentation(text)

    def test_relation_sides_parallel(self):
        """Test that relations must relate parallel paths."""
        with pytest.raises(PresentationError, match="not parallel"):
            parse_presentation(_doc(RelB=[[["b1"], ["b4"]]]))

    def test_non_composable_relation(self):
        """Test that relation paths must compose, naming the offending path."""
        with pytest.raises(PresentationError, match="non-composable path: 'b1.b3'"):
            parse_presentation(_doc(RelB=[[["b1", "b3"], ["b4"]]]))

    def test_arrow_shadowing_identity(self):
        """Test that an arrow may not be named like an identity."""
        text = _doc(ArrB=[["id_B1", "B1", "B1"]], RelB=[], FArrA={}, ArrA=[], XArrA={})
        with pytest.raises(PresentationError, match="shadows an identity"):
            parse_presentation(text)


class TestDocument:
    """Tests for parsing and serializing documents."""

    def test_round_trip(self, data_dir):
        """Test that serialize(parse(doc)) parses to an equal presentation."""
        for path in sorted(data_dir.glob("*.kan")):
            presentation = parse_presentation(path.read_text(encoding="utf-8"))
            again = parse_presentation(serialize_presentation(presentation))
            assert again == presentation, path.name

    def test_identity_relation_side(self, swap):
        """Test that id_B is read as the identity path."""
        relation = swap.relations[0]
        assert relation.rhs == Path.identity("B")
        assert "id_B" in serialize_presentation(swap)

    def test_malformed_json_reports_position(self):
        """Test that syntax errors carry line and column."""
        with pytest.raises(DocumentSyntaxError) as exc_info:
            load_document('{\n  "ObA": [,]\n}')
        assert exc_info.value.line == 2
        assert exc_info.value.exit_code == 3

    def test_unknown_field(self):
        """Test that unexpected fields are rejected."""
        with pytest.raises(DocumentSyntaxError, match="Extra"):
            load_document(_doc(Foo=[]))

    def test_invalid_utf8_reports_position(self):
        """Test that undecodable bytes are a syntax error with line and column."""
        with pytest.raises(DocumentSyntaxError, match="invalid UTF-8") as exc_info:
            load_document(b'{\n  "ObA": ["\xff"]}')
        assert exc_info.value.line == 2
        assert exc_info.value.column == 12
        assert exc_info.value.exit_code == 3

    def test_stored_rules_keep_dotted_arrow_ids(self):
        """Test that a rule over the arrow b.1 is stored and read back unsplit."""
        dotted = load("dotted.kan")
        system = completed(dotted)
        record = record_from_system(system, "completed")
        assert record.term_rules == [(("x", ["b.1"]), ("y", ["id_B2"]))]
        assert system_from_record(record, dotted) == system

    def test_empty_document(self, empty):
        """Test that the empty presentation is valid."""
        assert isinstance(empty, KanPresentation)
        assert empty.elements == ()


class TestTermLiterals:
    """Tests for command-line term and path literals."""

    def test_parse_term(self, example4):
        """Test the x|b1.b2 syntax."""
        assert parse_term("x1|b5.b3", example4) == example4.term("x1", ["b5", "b3"])

    def test_parse_identity_term(self, example4):
        """Test the identity spellings of the empty path."""
        expected = example4.term("y1")
        for literal in ("y1|id", "y1|id_B2", "y1"):
            assert parse_term(literal, example4) == expected

    def test_parse_term_unknown_element(self, example4):
        """Test that unknown elements are domain errors."""
        with pytest.raises(DomainError):
            parse_term("z|b1", example4)

    def test_parse_term_empty_arrow(self, example4):
        """Test that a dangling dot is a syntax error."""
        with pytest.raises(DocumentSyntaxError):
            parse_term("x1|b5.", example4)

    def test_parse_term_non_composable(self, example4):
        """Test that a non-composable term path is a presentation error."""
        with pytest.raises(PresentationError, match="non-composable"):
            parse_term("x1|b1.b3", example4)

    def test_parse_path(self, example4):
        """Test path literals with and without arrows."""
        assert parse_path("b3", example4.delta).arrows == ("b3",)
        assert parse_path("id_B3", example4.delta) == Path.identity("B3")


class TestPathAlgebra:
    """Property checks: composition is a category and terms carry a right action."""

    @pytest.mark.parametrize("name", ALL_EXAMPLES)
    def test_composition_is_associative_and_unital(self, name):
        """Test (p q) r = p (q r) and id p = p = p id on random composable triples."""
        presentation = load(name)
        rng = random.Random(f"compose-{name}")
        for _ in range(2000):
            p = random_path(presentation, rng, rng.choice(presentation.delta.objects), rng.randint(0, 5))
            q = random_path(presentation, rng, p.target, rng.randint(0, 5))
            r = random_path(presentation, rng, q.target, rng.randint(0, 5))
            left = compose_path(compose_path(p, q), r)
            assert left == compose_path(p, compose_path(q, r))
            assert left.nodes == compose_path(p, compose_path(q, r)).nodes
            assert (left.source, left.target) == (p.source, r.target)
            assert len(left) == len(p) + len(q) + len(r)
            assert compose_path(Path.identity(p.source), p) == p
            assert compose_path(p, Path.identity(p.target)) == p

    @pytest.mark.parametrize("name", ALL_EXAMPLES)
    def test_action_composes(self, name):
        """Test (t.p).q = t.(p q), t.id = t and that t.q ends at the target of q."""
        presentation = load(name)
        rng = random.Random(f"act-{name}")
        for _ in range(2000):
            t = random_term(presentation, rng, 5)
            p = random_path(presentation, rng, t.target, rng.randint(0, 4))
            q = random_path(presentation, rng, p.target, rng.randint(0, 4))
            assert act(act(t, p), q) == act(t, compose_path(p, q))
            assert act(t, p).target == p.target
            assert act(act(t, p), q).target == q.target
            assert act(t, Path.identity(t.target)) == t
