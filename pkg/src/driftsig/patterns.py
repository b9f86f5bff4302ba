"""Restricted regular-expression patterns used as indicators.

Grammar (canonical text form)::

    pattern := ['^'] atom+ ['$']
    atom    := (literal | '\\.' | '.') quant?
    quant   := '?' | '*' | '+'

Literals are lowercase letters, digits, '-' and '_'.  A literal dot must
be escaped as ``\\.``; a bare ``.`` is the single-character wildcard and
may not carry a quantifier.  Disjunction does not exist at this level:
a model ORs whole patterns together.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .alphabet import LITERAL_CHARS
from .errors import PatternSyntaxError

QUANT_CHARS = "?*+"


class Quant(Enum):
    ONE = ""
    ZERO_OR_ONE = "?"
    ZERO_OR_MORE = "*"
    ONE_OR_MORE = "+"

    @property
    def symbol(self) -> str:
        return self.value


_QUANT_BY_SYMBOL = {q.value: q for q in Quant}


@dataclass(frozen=True)
class Atom:
    """One pattern element: a literal character or the wildcard.

    ``char`` is ``None`` for the wildcard, which always has quantifier
    ``ONE`` (the grammar forbids quantifiers after '.').
    """

    char: str | None
    quant: Quant = Quant.ONE

    def __post_init__(self):
        if self.char is None:
            if self.quant is not Quant.ONE:
                raise ValueError("wildcard atoms cannot carry a quantifier")
        elif self.char not in LITERAL_CHARS and self.char != ".":
            raise ValueError(f"literal {self.char!r} outside the event alphabet")

    @property
    def is_any(self) -> bool:
        return self.char is None


@dataclass(frozen=True)
class Pattern:
    """AST of one indicator regex.

    Matching is substring containment by default; ``anchored_start`` /
    ``anchored_end`` pin the match to the start / end of the subject.
    """

    atoms: tuple[Atom, ...]
    anchored_start: bool = False
    anchored_end: bool = False

    def __post_init__(self):
        if not self.atoms:
            raise ValueError("pattern needs at least one atom")
        if all(a.is_any for a in self.atoms):
            raise ValueError("pattern of only wildcards is forbidden")

    @property
    def text(self) -> str:
        return render_pattern(self)

    def __str__(self) -> str:
        return render_pattern(self)


def parse_pattern(text: str) -> Pattern:
    """Parse canonical pattern text into its AST.

    Raises :class:`PatternSyntaxError` (with the offending character
    position) for a dangling quantifier, a quantifier after '.', an
    empty body, characters outside the alphabet, or a bad escape.
    """
    if not text:
        raise PatternSyntaxError("empty pattern", 0)

    i = 0
    end = len(text)
    anchored_start = False
    anchored_end = False
    if text[0] == "^":
        anchored_start = True
        i = 1
    if end > i and text[end - 1] == "$":
        anchored_end = True
        end -= 1

    atoms: list[Atom] = []
    while i < end:
        c = text[i]
        if c == "\\":
            if i + 1 >= end or text[i + 1] != ".":
                raise PatternSyntaxError("only '\\.' may be escaped", i)
            char: str | None = "."
            i += 2
        elif c == ".":
            char = None
            i += 1
        elif c in LITERAL_CHARS:
            char = c
            i += 1
        elif c in QUANT_CHARS:
            raise PatternSyntaxError(f"quantifier {c!r} has nothing to repeat", i)
        else:
            raise PatternSyntaxError(f"character {c!r} not allowed", i)

        quant = Quant.ONE
        if i < end and text[i] in QUANT_CHARS:
            if char is None:
                raise PatternSyntaxError("quantifier not allowed after '.'", i)
            quant = _QUANT_BY_SYMBOL[text[i]]
            i += 1
        atoms.append(Atom(char, quant))

    if not atoms:
        raise PatternSyntaxError("pattern has an empty body", i)
    if all(a.is_any for a in atoms):
        raise PatternSyntaxError("pattern of only wildcards is forbidden", 0)
    return Pattern(tuple(atoms), anchored_start, anchored_end)


def render_pattern(pattern: Pattern) -> str:
    """Render the canonical text; inverse of :func:`parse_pattern`."""
    parts = ["^"] if pattern.anchored_start else []
    for atom in pattern.atoms:
        if atom.is_any:
            parts.append(".")
        elif atom.char == ".":
            parts.append("\\.")
        else:
            parts.append(atom.char)
        parts.append(atom.quant.symbol)
    if pattern.anchored_end:
        parts.append("$")
    return "".join(parts)


def exact_pattern(value: str) -> Pattern:
    """Anchored pattern matching exactly ``value`` and nothing else."""
    if not value:
        raise ValueError("cannot build an exact pattern for the empty string")
    atoms = tuple(Atom(ch) for ch in value)
    return Pattern(atoms, anchored_start=True, anchored_end=True)
