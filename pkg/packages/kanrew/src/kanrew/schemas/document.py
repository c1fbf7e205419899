"""Interchange document: parsing, validation and serialization.

A document is a JSON object with the fields ObA, ArrA, ObB, ArrB, RelB, FObA,
FArrA, XObA and XArrA. Paths are lists of arrow ids; an identity path is
written ``["id_B"]``. Machine output adds a ``Rules`` record.

Example::

    {
      "ObA": ["A1", "A2"],
      "ArrA": [["a1", "A1", "A2"], ["a2", "A2", "A1"]],
      "ObB": ["B1", "B2", "B3"],
      "ArrB": [["b1", "B1", "B2"], ["b2", "B2", "B3"], ["b3", "B3", "B1"],
               ["b4", "B1", "B1"], ["b5", "B1", "B3"]],
      "RelB": [[["b1", "b2", "b3"], ["b4"]]],
      "FObA": {"A1": "B1", "A2": "B2"},
      "FArrA": {"a1": ["b1"], "a2": ["b2", "b3"]},
      "XObA": {"A1": ["x1", "x2", "x3"], "A2": ["y1", "y2"]},
      "XArrA": {"a1": {"x1": "y1", "x2": "y2", "x3": "y1"},
                "a2": {"y1": "x1", "y2": "x2"}}
    }
"""

from __future__ import annotations

import json
from collections.abc import Sequence

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from kanrew.core.language import NormalFormAutomaton, regex_for_object
from kanrew.core.tabulate import KanTables
from kanrew.errors import CompositionError, DocumentSyntaxError, PresentationError
from kanrew.models import (
    Graph,
    KanPresentation,
    Path,
    PathRule,
    Relation,
    RewriteSystem,
    Term,
    TermRule,
)
from kanrew.models.path import IDENTITY_PREFIX
from kanrew.schemas.system import (
    LanguageRecord,
    PathSpec,
    RulesRecord,
    SystemStatus,
    TablesRecord,
    TermSpec,
)


class KanDocument(BaseModel):
    """Schema for a presentation document; field names follow the input record."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    ob_a: list[str] = Field(default_factory=list, alias="ObA")
    arr_a: list[tuple[str, str, str]] = Field(default_factory=list, alias="ArrA")
    ob_b: list[str] = Field(default_factory=list, alias="ObB")
    arr_b: list[tuple[str, str, str]] = Field(default_factory=list, alias="ArrB")
    rel_b: list[tuple[PathSpec, PathSpec]] = Field(default_factory=list, alias="RelB")
    f_ob_a: dict[str, str] = Field(default_factory=dict, alias="FObA")
    f_arr_a: dict[str, PathSpec] = Field(default_factory=dict, alias="FArrA")
    x_ob_a: dict[str, list[str]] = Field(default_factory=dict, alias="XObA")
    x_arr_a: dict[str, dict[str, str]] = Field(default_factory=dict, alias="XArrA")
    rules: RulesRecord | None = Field(default=None, alias="Rules")
    tables: TablesRecord | None = Field(default=None, alias="Tables")
    language: LanguageRecord | None = Field(default=None, alias="Language")

    def dump(self) -> str:
        """Serialize with the record's field names, omitting absent records."""
        return self.model_dump_json(by_alias=True, exclude_none=True, indent=2) + "\n"


def decode_document(data: bytes) -> str:
    """Decode UTF-8 document bytes, reporting a bad byte by line and column."""
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line = data.count(b"\n", 0, e.start) + 1
        column = e.start - data.rfind(b"\n", 0, e.start)
        raise DocumentSyntaxError(f"invalid UTF-8: {e.reason}", line=line, column=column)


def load_document(text: str | bytes) -> KanDocument:
    """Parse document text into its schema, reporting syntax errors by position."""
    if isinstance(text, bytes):
        text = decode_document(text)
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentSyntaxError(e.msg, line=e.lineno, column=e.colno)

    try:
        return KanDocument.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "<document>"
        raise DocumentSyntaxError(f"{location}: {first['msg']}")


def path_from_spec(spec: Sequence[str], delta: Graph) -> Path:
    """Turn a list of arrow ids (or ``["id_B"]``) into a validated path."""
    if len(spec) == 1 and spec[0].startswith(IDENTITY_PREFIX):
        obj = spec[0][len(IDENTITY_PREFIX) :]
        if delta.has_object(obj):
            return delta.identity(obj)
    if not spec:
        raise PresentationError("empty path", "[]", "write identities as id_<object>")
    try:
        return delta.path_of(spec)
    except CompositionError as e:
        raise PresentationError("non-composable path", ".".join(spec), e.detail)


def path_to_spec(path: Path) -> PathSpec:
    if path.is_identity:
        return [f"{IDENTITY_PREFIX}{path.base}"]
    return list(path.arrows)


def term_to_spec(t: Term) -> TermSpec:
    return (t.element, path_to_spec(t.path))


def term_from_spec(spec: TermSpec, presentation: KanPresentation) -> Term:
    """Rebuild a stored term; identifiers are taken verbatim, never split."""
    element, path = spec
    return presentation.term(element).act(path_from_spec(path, presentation.delta))


def to_presentation(doc: KanDocument) -> KanPresentation:
    """Build and validate the presentation described by ``doc``."""
    gamma = Graph.build(doc.ob_a, doc.arr_a)
    delta = Graph.build(doc.ob_b, doc.arr_b)
    relations = tuple(
        Relation(path_from_spec(lhs, delta), path_from_spec(rhs, delta))
        for lhs, rhs in doc.rel_b
    )
    return KanPresentation(
        gamma=gamma,
        delta=delta,
        relations=relations,
        x_ob={obj: tuple(xs) for obj, xs in doc.x_ob_a.items()},
        x_arr={a: dict(function) for a, function in doc.x_arr_a.items()},
        f_ob=dict(doc.f_ob_a),
        f_arr={a: path_from_spec(spec, delta) for a, spec in doc.f_arr_a.items()},
    )


def from_presentation(presentation: KanPresentation) -> KanDocument:
    """The document whose parse is ``presentation``."""
    return KanDocument(
        ob_a=list(presentation.gamma.objects),
        arr_a=[(a.name, a.source, a.target) for a in presentation.gamma.arrows],
        ob_b=list(presentation.delta.objects),
        arr_b=[(b.name, b.source, b.target) for b in presentation.delta.arrows],
        rel_b=[(path_to_spec(r.lhs), path_to_spec(r.rhs)) for r in presentation.relations],
        f_ob_a=dict(presentation.f_ob),
        f_arr_a={a: path_to_spec(p) for a, p in presentation.f_arr.items()},
        x_ob_a={obj: list(xs) for obj, xs in presentation.x_ob.items()},
        x_arr_a={a: dict(function) for a, function in presentation.x_arr.items()},
    )


def parse_presentation(text: str) -> KanPresentation:
    """Parse and validate a presentation document.

    Raises:
        DocumentSyntaxError: the text is not a well-formed document.
        PresentationError: the document violates a presentation invariant.
    """
    return to_presentation(load_document(text))


def serialize_presentation(presentation: KanPresentation) -> str:
    return from_presentation(presentation).dump()


def parse_term(literal: str, presentation: KanPresentation) -> Term:
    """Parse ``x|b1.b2``; ``x|id``, ``x|id_B`` and a bare ``x`` are identity terms."""
    element, sep, rest = literal.strip().partition("|")
    element = element.strip()
    if not element:
        raise DocumentSyntaxError(f"term literal {literal!r} has no element")
    rest = rest.strip()
    anchor = presentation.anchor(element)
    if not sep or rest in ("", "id", f"{IDENTITY_PREFIX}{anchor}"):
        return presentation.term(element)

    arrows = [name.strip() for name in rest.split(".")]
    if any(not name for name in arrows):
        raise DocumentSyntaxError(f"term literal {literal!r} has an empty arrow name")
    try:
        return presentation.term(element, arrows)
    except CompositionError as e:
        raise PresentationError("non-composable path", rest, e.detail)


def parse_path(literal: str, delta: Graph) -> Path:
    """Parse ``b1.b2`` or ``id_B`` on the command line."""
    literal = literal.strip()
    if not literal:
        raise DocumentSyntaxError("empty path literal")
    return path_from_spec([name.strip() for name in literal.split(".")], delta)


def record_from_system(
    system: RewriteSystem,
    status: SystemStatus,
    passes: int | None = None,
    added: int | None = None,
) -> RulesRecord:
    return RulesRecord(
        status=status,
        term_rules=[(term_to_spec(rule.lhs), term_to_spec(rule.rhs)) for rule in system.term_rules],
        path_rules=[(path_to_spec(rule.lhs), path_to_spec(rule.rhs)) for rule in system.path_rules],
        passes=passes,
        added=added,
    )


def system_from_record(record: RulesRecord, presentation: KanPresentation) -> RewriteSystem:
    """Rebuild a stored rewrite system against its presentation."""
    try:
        term_rules = tuple(
            TermRule(term_from_spec(lhs, presentation), term_from_spec(rhs, presentation))
            for lhs, rhs in record.term_rules
        )
        path_rules = tuple(
            PathRule(path_from_spec(lhs, presentation.delta), path_from_spec(rhs, presentation.delta))
            for lhs, rhs in record.path_rules
        )
    except CompositionError as e:
        raise PresentationError("malformed stored rule", "Rules", e.detail)
    return RewriteSystem(term_rules, path_rules)


def record_from_tables(tables: KanTables) -> TablesRecord:
    return TablesRecord(
        elements={obj: [str(t) for t in terms] for obj, terms in tables.elements.items()},
        actions={
            arrow: {str(t): str(u) for t, u in table.items()}
            for arrow, table in tables.actions.items()
        },
        epsilon={x: str(t) for x, t in tables.epsilon.items()},
    )


def record_from_automaton(aut: NormalFormAutomaton) -> LanguageRecord:
    """Expressions for every Delta-object that has normal forms, plus the automaton dump."""
    expressions: dict[str, dict[str, str]] = {}
    for obj in aut.accepting:
        regexes = regex_for_object(aut, obj)
        if regexes:
            expressions[obj] = {x: str(regex) for x, regex in regexes.items()}
    return LanguageRecord(expressions=expressions, automaton=aut.dump())
