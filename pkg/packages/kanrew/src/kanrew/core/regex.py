"""Regular expressions over arrow names.

Printed with ``+`` for union, juxtaposition for concatenation, ``*`` for star
and ``id_B`` for the empty word at object B.
"""

from __future__ import annotations

from dataclasses import dataclass

Word = tuple[str, ...]


@dataclass(frozen=True)
class Regex:
    """Base class of the syntax tree."""

    def words(self, max_length: int) -> set[Word]:
        """Every word of the language with at most ``max_length`` letters."""
        raise NotImplementedError

    def atom(self) -> str:
        """The printed form, parenthesized unless it already binds as one factor."""
        return str(self)


@dataclass(frozen=True)
class Empty(Regex):
    """The empty language."""

    def words(self, max_length: int) -> set[Word]:
        return set()

    def __str__(self) -> str:
        return "0"


@dataclass(frozen=True)
class Identity(Regex):
    """The empty word, anchored at ``obj``."""

    obj: str

    def words(self, max_length: int) -> set[Word]:
        return {()}

    def __str__(self) -> str:
        return f"id_{self.obj}"


@dataclass(frozen=True)
class Symbol(Regex):
    name: str

    def words(self, max_length: int) -> set[Word]:
        return {(self.name,)} if max_length >= 1 else set()

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Concat(Regex):
    parts: tuple[Regex, ...]

    def words(self, max_length: int) -> set[Word]:
        result: set[Word] = {()}
        for part in self.parts:
            part_words = part.words(max_length)
            result = {w + v for w in result for v in part_words if len(w) + len(v) <= max_length}
            if not result:
                break
        return result

    def __str__(self) -> str:
        return " ".join(p.atom() if isinstance(p, Union) else str(p) for p in self.parts)

    def atom(self) -> str:
        return f"({self})"


@dataclass(frozen=True)
class Union(Regex):
    options: tuple[Regex, ...]

    def words(self, max_length: int) -> set[Word]:
        return set().union(*(o.words(max_length) for o in self.options))

    def __str__(self) -> str:
        return " + ".join(str(o) for o in self.options)

    def atom(self) -> str:
        return f"({self})"


@dataclass(frozen=True)
class Star(Regex):
    inner: Regex

    def words(self, max_length: int) -> set[Word]:
        steps = {w for w in self.inner.words(max_length) if w}
        result: set[Word] = {()}
        frontier: set[Word] = {()}
        while frontier:
            frontier = {
                w + v for w in frontier for v in steps if len(w) + len(v) <= max_length
            } - result
            result |= frontier
        return result

    def __str__(self) -> str:
        return f"{self.inner.atom()}*"


# ---------------------------------------------------------------------- constructors


def concat(*parts: Regex) -> Regex:
    """Concatenate, absorbing identities and collapsing on the empty language."""
    flat: list[Regex] = []
    for part in parts:
        if isinstance(part, Empty):
            return Empty()
        if isinstance(part, Identity):
            continue
        flat.extend(part.parts if isinstance(part, Concat) else (part,))
    if not flat:
        identities = [p for p in parts if isinstance(p, Identity)]
        return identities[-1] if identities else Empty()
    return flat[0] if len(flat) == 1 else Concat(tuple(flat))


def union(*options: Regex) -> Regex:
    """Union without duplicates; the empty language drops out."""
    flat: list[Regex] = []
    for option in options:
        for o in option.options if isinstance(option, Union) else (option,):
            if not isinstance(o, Empty) and o not in flat:
                flat.append(o)
    if any(isinstance(o, Star) for o in flat):
        flat = [o for o in flat if not isinstance(o, Identity)]
    if not flat:
        return Empty()
    return flat[0] if len(flat) == 1 else Union(tuple(flat))


def star(inner: Regex, obj: str) -> Regex:
    """Kleene star; the star of nothing or of the empty word is ``id_obj``."""
    if isinstance(inner, (Empty, Identity)):
        return Identity(obj)
    if isinstance(inner, Star):
        return inner
    if isinstance(inner, Union):
        rest = [o for o in inner.options if not isinstance(o, Identity)]
        if len(rest) != len(inner.options):
            return star(union(*rest), obj)
    return Star(inner)
