"""Pydantic schemas for the interchange and machine output documents."""

from kanrew.schemas.document import (
    KanDocument,
    from_presentation,
    load_document,
    parse_path,
    parse_presentation,
    parse_term,
    path_from_spec,
    path_to_spec,
    record_from_automaton,
    record_from_system,
    record_from_tables,
    serialize_presentation,
    system_from_record,
    term_from_spec,
    term_to_spec,
    to_presentation,
)
from kanrew.schemas.system import LanguageRecord, RulesRecord, SystemStatus, TablesRecord

__all__ = [
    "KanDocument",
    "LanguageRecord",
    "RulesRecord",
    "SystemStatus",
    "TablesRecord",
    "from_presentation",
    "load_document",
    "parse_path",
    "parse_presentation",
    "parse_term",
    "path_from_spec",
    "path_to_spec",
    "record_from_automaton",
    "record_from_system",
    "record_from_tables",
    "serialize_presentation",
    "system_from_record",
    "term_from_spec",
    "term_to_spec",
    "to_presentation",
]
