"""Group laws: syntax tree, LL(1) parser and printer.

    law    := word "=" word
    word   := factor+ | "1"
    factor := atom ["^" integer]
    atom   := name | "[" word "," word "]" | "(" word ")"
    name   := letter alnum*       (ASCII only)

Juxtaposition is the product; [u,v] means u^-1 v^-1 u v. Whitespace is ignored
except that it separates adjacent names ("x y" is two factors, "xy" is one).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Tuple, Union

from commuting_powers.core.errors import EmptyInput, LawSyntaxError

logger = logging.getLogger(__name__)


def _is_digit(c: str) -> bool:
    return c.isascii() and c.isdigit()


def _is_name_char(c: str, first: bool = False) -> bool:
    return c.isascii() and (c.isalpha() if first else c.isalnum())


@dataclass(frozen=True)
class Var:
    name: str
    exponent: int = 1


@dataclass(frozen=True)
class Commutator:
    left: "Word"
    right: "Word"
    exponent: int = 1


@dataclass(frozen=True)
class Paren:
    body: "Word"
    exponent: int = 1


Factor = Union[Var, Commutator, Paren]


@dataclass(frozen=True)
class Word:
    factors: Tuple[Factor, ...] = ()

    @property
    def is_identity(self) -> bool:
        return not self.factors

    def variables(self) -> List[str]:
        names: List[str] = []
        for factor in self.factors:
            if isinstance(factor, Var):
                found = [factor.name]
            elif isinstance(factor, Commutator):
                found = factor.left.variables() + factor.right.variables()
            else:
                found = factor.body.variables()
            names.extend(found)
        return list(dict.fromkeys(names))


@dataclass(frozen=True)
class Law:
    lhs: Word
    rhs: Word

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(dict.fromkeys(self.lhs.variables() + self.rhs.variables()))

    def __str__(self) -> str:
        return format_law(self)


class LawParser:
    """Recursive-descent parser over a single law string."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def parse(self) -> Law:
        self._skip()
        if self._at_end():
            raise EmptyInput()
        lhs = self._word()
        self._expect("=")
        rhs = self._word()
        self._skip()
        if not self._at_end():
            self._fail(f"unexpected {self._peek()!r} after the law")
        law = Law(lhs, rhs)
        if not law.variables and not (lhs.is_identity and rhs.is_identity):
            raise LawSyntaxError("a law without variables must read 1=1", 0)
        return law

    # scanning helpers

    def _offset(self) -> int:
        return len(self.text[: self.pos].encode("utf-8"))

    def _fail(self, message: str) -> None:
        raise LawSyntaxError(message, self._offset())

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _at_end(self) -> bool:
        return self.pos >= len(self.text)

    def _peek(self) -> str:
        self._skip()
        return "" if self._at_end() else self.text[self.pos]

    def _expect(self, token: str) -> None:
        if self._peek() != token:
            found = self._peek() or "end of input"
            self._fail(f"expected {token!r}, found {found!r}")
        self.pos += 1

    def _integer(self) -> int:
        self._skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and _is_digit(self.text[self.pos]):
            self.pos += 1
        if self.pos == digits:
            self.pos = start
            self._fail("expected an integer")
        return int(self.text[start : self.pos])

    # grammar

    def _word(self) -> Word:
        if self._peek() == "1":
            start = self.pos
            if self._integer() != 1:
                self.pos = start
                self._fail("only 1 may stand for the identity word")
            if self._peek() not in ("=", ",", "]", ")", ""):
                self._fail("the identity word 1 must stand alone")
            return Word()
        factors: List[Factor] = []
        while self._starts_factor():
            factors.append(self._factor())
        if not factors:
            found = self._peek() or "end of input"
            self._fail(f"expected a variable, '[', '(' or 1, found {found!r}")
        return Word(tuple(factors))

    def _starts_factor(self) -> bool:
        c = self._peek()
        return _is_name_char(c, first=True) or c in ("[", "(")

    def _factor(self) -> Factor:
        c = self._peek()
        if c == "[":
            self.pos += 1
            left = self._word()
            self._expect(",")
            right = self._word()
            self._expect("]")
            factor: Factor = Commutator(left, right)
        elif c == "(":
            self.pos += 1
            body = self._word()
            self._expect(")")
            factor = Paren(body)
        else:
            start = self.pos
            while self.pos < len(self.text) and _is_name_char(self.text[self.pos]):
                self.pos += 1
            factor = Var(self.text[start : self.pos])
        if self._peek() == "^":
            self.pos += 1
            exponent = self._integer()
            factor = _with_exponent(factor, exponent)
        return factor


def _with_exponent(factor: Factor, exponent: int) -> Factor:
    if isinstance(factor, Var):
        return Var(factor.name, exponent)
    if isinstance(factor, Commutator):
        return Commutator(factor.left, factor.right, exponent)
    return Paren(factor.body, exponent)


def parse_law(text: str) -> Law:
    law = LawParser(text).parse()
    logger.debug("Parsed law %s in variables %s", format_law(law), law.variables)
    return law


def parse_word(text: str) -> Word:
    parser = LawParser(text)
    if not parser._peek():
        raise EmptyInput()
    word = parser._word()
    if parser._peek():
        parser._fail(f"unexpected {parser._peek()!r} after the word")
    return word


def _format_factor(factor: Factor) -> str:
    if isinstance(factor, Var):
        base = factor.name
    elif isinstance(factor, Commutator):
        base = f"[{format_word(factor.left)},{format_word(factor.right)}]"
    else:
        base = f"({format_word(factor.body)})"
    return base if factor.exponent == 1 else f"{base}^{factor.exponent}"


def format_word(word: Word) -> str:
    if word.is_identity:
        return "1"
    out = ""
    for factor in word.factors:
        text = _format_factor(factor)
        if out and out[-1].isalnum() and text[0].isalpha():
            out += " "
        out += text
    return out


def format_law(law: Law) -> str:
    return f"{format_word(law.lhs)}={format_word(law.rhs)}"
