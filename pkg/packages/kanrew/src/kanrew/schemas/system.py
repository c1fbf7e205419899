"""Rewrite-system record carried by machine output documents."""

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field

PathSpec = list[str]

# An element id and the path acting on it: ["x1", ["b5", "b3"]].
TermSpec = tuple[str, PathSpec]

SystemStatus = Literal["initial", "completed", "limit-exceeded"]


class RulesRecord(BaseModel):
    """Schema for a rewrite system stored alongside its presentation."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    status: SystemStatus = Field(alias="Status")
    term_rules: list[tuple[TermSpec, TermSpec]] = Field(default_factory=list, alias="TermRules")
    path_rules: list[tuple[PathSpec, PathSpec]] = Field(default_factory=list, alias="PathRules")
    passes: int | None = Field(default=None, alias="Passes")
    added: int | None = Field(default=None, alias="Added")


class TablesRecord(BaseModel):
    """Tabulated answer: the sets KB, one table per Delta-arrow, and epsilon.

    Terms are written as literals (``x|b1.b2``).
    """

    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    elements: dict[str, list[str]] = Field(default_factory=dict, alias="Elements")
    actions: dict[str, dict[str, str]] = Field(default_factory=dict, alias="Actions")
    epsilon: dict[str, str] = Field(default_factory=dict, alias="Epsilon")


class LanguageRecord(BaseModel):
    """Regular expressions per Delta-object and element, with the automaton they came from."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    expressions: dict[str, dict[str, str]] = Field(default_factory=dict, alias="Expressions")
    automaton: dict[str, Any] = Field(default_factory=dict, alias="Automaton")
