"""Recursive descent parser for formulas with the Z(...) operator."""

import collections
import logging
import re
from pathlib import Path
from typing import Iterator, Optional, Union

from ..core.exceptions import BadParameterError, FormulaSyntaxError, ParseError, VarOutOfRangeError
from .ast import And, Const, Expr, Formula, Not, Or, Var, Zsup, to_text

logger = logging.getLogger(__name__)

Token = collections.namedtuple("Token", ["type", "value", "pos"])

# operator nesting accepted by the parser
MAX_NESTING = 200

_MASTER_PATTERN = re.compile("|".join((
    r"(?P<VAR>x\d+)",
    r"(?P<ZSUP>Z\s*\()",
    r"(?P<CONST>[01])",
    r"(?P<NOT>!)",
    r"(?P<AND>&)",
    r"(?P<OR>\|)",
    r"(?P<LPAREN>\()",
    r"(?P<RPAREN>\))",
    r"(?P<WS>\s+)",
    r"(?P<BAD>.)",
)))


class FormulaParser:
    """
    Parser for the grammar

        F := '0' | '1' | 'x'INT | '!'F | '('F'&'F')' | '('F'|'F')' | 'Z('F')'

    Binary operators always carry their parentheses; whitespace between
    tokens is ignored.
    """

    def __init__(self, n: int):
        if n < 1:
            raise BadParameterError(f"Formula universe needs n >= 1, got {n}", n=n)
        self.n = n
        self._tokens: Iterator[Token] = iter(())
        self.current: Optional[Token] = None
        self.next: Optional[Token] = None
        self._end = 0
        self._depth = 0

    def _generate_tokens(self, text: str) -> Iterator[Token]:
        scanner = _MASTER_PATTERN.scanner(text)
        for m in iter(scanner.match, None):
            if m.lastgroup == "WS":
                continue
            if m.lastgroup == "BAD":
                raise FormulaSyntaxError(f"unexpected character {m.group()!r}", m.start())
            yield Token(m.lastgroup, m.group(), m.start())

    def parse(self, text: str) -> Formula:
        self._tokens = self._generate_tokens(text)
        self._end = len(text)
        self._depth = 0
        self.current = None
        self.next = None
        self._advance()
        root = self.formula()
        if self.next is not None:
            raise FormulaSyntaxError(f"trailing input {self.next.value!r}", self.next.pos)
        return Formula(root, self.n)

    def _advance(self) -> None:
        self.current, self.next = self.next, next(self._tokens, None)

    def _accept(self, token_type: str) -> bool:
        if self.next is not None and self.next.type == token_type:
            self._advance()
            return True
        return False

    def _position(self) -> int:
        return self.next.pos if self.next is not None else self._end

    def _expect(self, token_type: str, what: str) -> None:
        if not self._accept(token_type):
            found = repr(self.next.value) if self.next is not None else "end of input"
            raise FormulaSyntaxError(f"expected {what}, found {found}", self._position())

    def formula(self) -> Expr:
        if self._depth >= MAX_NESTING:
            raise FormulaSyntaxError(f"formula nested deeper than {MAX_NESTING} levels", self._position())
        self._depth += 1
        try:
            return self._operand()
        finally:
            self._depth -= 1

    def _operand(self) -> Expr:
        if self._accept("CONST"):
            return Const(int(self.current.value))
        if self._accept("VAR"):
            index = int(self.current.value[1:])
            if not 1 <= index <= self.n:
                raise VarOutOfRangeError(index, self.n)
            return Var(index)
        if self._accept("NOT"):
            return Not(self.formula())
        if self._accept("ZSUP"):
            inner = self.formula()
            self._expect("RPAREN", "')'")
            return Zsup(inner)
        if self._accept("LPAREN"):
            left = self.formula()
            if self._accept("AND"):
                node = And
            elif self._accept("OR"):
                node = Or
            else:
                found = repr(self.next.value) if self.next is not None else "end of input"
                raise FormulaSyntaxError(f"expected '&' or '|', found {found}", self._position())
            right = self.formula()
            self._expect("RPAREN", "')'")
            return node(left, right)
        found = repr(self.next.value) if self.next is not None else "end of input"
        raise FormulaSyntaxError(f"expected a formula, found {found}", self._position())


def parse_formula(text: str, n: int) -> Formula:
    """Parse formula text over x_1..x_n."""
    formula = FormulaParser(n).parse(text)
    logger.debug(f"Parsed formula {to_text(formula.root)} over n={n}")
    return formula


def parse_formula_file(text: str, source: str = "<string>") -> Formula:
    """Formula files: first line `vars <n>`, second line the formula."""
    lines = [line.split("#", 1)[0].strip() for line in text.splitlines()]
    lines = [line for line in lines if line]
    if len(lines) != 2:
        raise ParseError("expected 'vars <n>' and one formula line", source=source)
    parts = lines[0].split()
    if len(parts) != 2 or parts[0] != "vars" or not parts[1].isdigit():
        raise ParseError("malformed vars declaration", 1, source)
    return parse_formula(lines[1], int(parts[1]))


def load_formula(path: Union[str, Path]) -> Formula:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror}", source=str(path))
    return parse_formula_file(text, source=str(path))


def serialize_formula(formula: Formula) -> str:
    return f"vars {formula.n}\n{to_text(formula.root)}\n"
