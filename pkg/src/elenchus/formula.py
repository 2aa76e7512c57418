"""Propositional formulas and sequents.

The object language is plain propositional logic over named atoms:

    ~F       negation
    F & F    conjunction   (left associative)
    F | F    disjunction   (left associative)
    F -> F   conditional   (right associative)

Precedence, tightest first: ~, &, |, ->. Sequents are written with an
ASCII turnstile, e.g. ``p2, p3 |- p18``; either side may be empty and
both sides are *sets*, so duplicates collapse and order is irrelevant.

``render`` produces a canonical string with minimal parentheses and
``parse_formula(render(f)) == f`` holds for every formula.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union


class ParseError(ValueError):
    """Malformed input; ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class EmptyInputError(ParseError):
    def __init__(self, offset: int = 0):
        super().__init__("empty input", offset)


class MissingTurnstileError(ParseError):
    def __init__(self, offset: int):
        super().__init__("expected '|-' turnstile", offset)


ATOM_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if not ATOM_NAME.fullmatch(self.name):
            raise ValueError(f"invalid atom name: {self.name!r}")


@dataclass(frozen=True)
class Neg:
    operand: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Neg, And, Or, Imp]

# Binding strength used by the renderer; higher binds tighter.
_PREC = {Imp: 1, Or: 2, And: 3, Neg: 4, Atom: 5}


def atoms_of(f: Formula) -> frozenset[str]:
    """Set of atom names occurring in ``f``."""
    match f:
        case Atom(name):
            return frozenset((name,))
        case Neg(operand):
            return atoms_of(operand)
        case And(left, right) | Or(left, right) | Imp(left, right):
            return atoms_of(left) | atoms_of(right)
    raise TypeError(f"not a formula: {f!r}")


def connective_count(f: Formula) -> int:
    match f:
        case Atom():
            return 0
        case Neg(operand):
            return 1 + connective_count(operand)
        case And(left, right) | Or(left, right) | Imp(left, right):
            return 1 + connective_count(left) + connective_count(right)
    raise TypeError(f"not a formula: {f!r}")


def render(f: Formula) -> str:
    """Canonical text of ``f`` with minimal parentheses."""
    return _render(f, 0)


def _render(f: Formula, context: int) -> str:
    prec = _PREC[type(f)]
    match f:
        case Atom(name):
            text = name
        case Neg(operand):
            text = "~" + _render(operand, prec)
        case And(left, right):
            text = _render(left, prec) + " & " + _render(right, prec + 1)
        case Or(left, right):
            text = _render(left, prec) + " | " + _render(right, prec + 1)
        case Imp(left, right):
            text = _render(left, prec + 1) + " -> " + _render(right, prec)
    if prec < context:
        return "(" + text + ")"
    return text


@dataclass(frozen=True)
class Sequent:
    """A pair of formula sets, antecedent |- succedent."""

    antecedent: frozenset
    succedent: frozenset

    def __post_init__(self):
        object.__setattr__(self, "antecedent", frozenset(self.antecedent))
        object.__setattr__(self, "succedent", frozenset(self.succedent))

    def is_atomic(self) -> bool:
        return all(isinstance(f, Atom) for f in self.antecedent | self.succedent)

    def atoms(self) -> frozenset[str]:
        names: frozenset[str] = frozenset()
        for f in self.antecedent | self.succedent:
            names |= atoms_of(f)
        return names

    def render(self) -> str:
        left = ", ".join(sorted(render(f) for f in self.antecedent))
        right = ", ".join(sorted(render(f) for f in self.succedent))
        return f"{left} |- {right}".strip()

    def __str__(self) -> str:
        return self.render()


# ---------------------------------------------------------------------------
# Lexer / parser
# ---------------------------------------------------------------------------

_Token = tuple[str, str, int]  # kind, text, offset


def _tokenize(text: str) -> Iterator[_Token]:
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isalpha() or c == "_":
            m = ATOM_NAME.match(text, i)
            yield ("name", m.group(), i)
            i = m.end()
        elif c == "~":
            yield ("not", c, i)
            i += 1
        elif c == "&":
            yield ("and", c, i)
            i += 1
        elif c == "|":
            if i + 1 < n and text[i + 1] == "-":
                yield ("turnstile", "|-", i)
                i += 2
            else:
                yield ("or", c, i)
                i += 1
        elif c == "-":
            if i + 1 < n and text[i + 1] == ">":
                yield ("imp", "->", i)
                i += 2
            else:
                raise ParseError(f"unexpected character {c!r}", i)
        elif c == "(":
            yield ("lparen", c, i)
            i += 1
        elif c == ")":
            yield ("rparen", c, i)
            i += 1
        elif c == ",":
            yield ("comma", c, i)
            i += 1
        else:
            raise ParseError(f"unexpected character {c!r}", i)
    yield ("end", "", n)


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        if self.current[0] != kind:
            raise ParseError(f"expected {kind}, found {self.current[1] or 'end of input'!r}",
                             self.current[2])
        return self.advance()

    # precedence climbing, one level per operator
    def formula(self) -> Formula:
        left = self.disjunction()
        if self.current[0] == "imp":
            self.advance()
            return Imp(left, self.formula())  # right associative
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.current[0] == "or":
            self.advance()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.current[0] == "and":
            self.advance()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        kind, text, offset = self.current
        if kind == "not":
            self.advance()
            return Neg(self.unary())
        if kind == "lparen":
            self.advance()
            inner = self.formula()
            self.expect("rparen")
            return inner
        if kind == "name":
            self.advance()
            return Atom(text)
        raise ParseError(f"expected a formula, found {text or 'end of input'!r}", offset)

    def side(self, stop: tuple[str, ...]) -> list[Formula]:
        """Comma separated formulas, possibly none, up to a stop token."""
        if self.current[0] in stop:
            return []
        formulas = [self.formula()]
        while self.current[0] == "comma":
            self.advance()
            formulas.append(self.formula())
        return formulas


def parse_formula(text: str) -> Formula:
    tokens = list(_tokenize(text))
    if tokens[0][0] == "end":
        raise EmptyInputError(tokens[0][2])
    parser = _Parser(tokens)
    f = parser.formula()
    parser.expect("end")
    return f


def parse_sequent(text: str) -> Sequent:
    tokens = list(_tokenize(text))
    parser = _Parser(tokens)
    antecedent = parser.side(stop=("turnstile", "end"))
    if parser.current[0] != "turnstile":
        raise MissingTurnstileError(parser.current[2])
    parser.advance()
    succedent = parser.side(stop=("end",))
    parser.expect("end")
    return Sequent(frozenset(antecedent), frozenset(succedent))


def sequent(antecedent: Iterable[Formula] = (), succedent: Iterable[Formula] = ()) -> Sequent:
    """Convenience constructor from any iterables."""
    return Sequent(frozenset(antecedent), frozenset(succedent))
