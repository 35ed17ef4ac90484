"""Formula AST with the zero-suppression operator."""

import logging
from dataclasses import dataclass
from typing import FrozenSet, Union

from ..core.exceptions import VarOutOfRangeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Not:
    arg: 'Expr'


@dataclass(frozen=True)
class And:
    left: 'Expr'
    right: 'Expr'


@dataclass(frozen=True)
class Or:
    left: 'Expr'
    right: 'Expr'


@dataclass(frozen=True)
class Zsup:
    """(arg)^z: 1 iff arg is 1 and every variable not occurring in arg is 0."""
    arg: 'Expr'


Expr = Union[Const, Var, Not, And, Or, Zsup]


def vars_of(expr: Expr) -> FrozenSet[int]:
    """Variable indices occurring syntactically in expr."""
    if isinstance(expr, Var):
        return frozenset((expr.index,))
    if isinstance(expr, Const):
        return frozenset()
    if isinstance(expr, (Not, Zsup)):
        return vars_of(expr.arg)
    return vars_of(expr.left) | vars_of(expr.right)


def has_zsup(expr: Expr) -> bool:
    if isinstance(expr, Zsup):
        return True
    if isinstance(expr, Not):
        return has_zsup(expr.arg)
    if isinstance(expr, (And, Or)):
        return has_zsup(expr.left) or has_zsup(expr.right)
    return False


def expr_size(expr: Expr) -> int:
    """Number of variable occurrences (leaf literals)."""
    if isinstance(expr, Var):
        return 1
    if isinstance(expr, Const):
        return 0
    if isinstance(expr, (Not, Zsup)):
        return expr_size(expr.arg)
    return expr_size(expr.left) + expr_size(expr.right)


def to_text(expr: Expr) -> str:
    """Print in the parser's grammar; parse(to_text(e)) == e."""
    if isinstance(expr, Const):
        return str(expr.value)
    if isinstance(expr, Var):
        return f"x{expr.index}"
    if isinstance(expr, Not):
        return f"!{to_text(expr.arg)}"
    if isinstance(expr, Zsup):
        return f"Z({to_text(expr.arg)})"
    op = "&" if isinstance(expr, And) else "|"
    return f"({to_text(expr.left)}{op}{to_text(expr.right)})"


@dataclass(frozen=True)
class Formula:
    """Expression over the declared universe x_1..x_n."""

    root: Expr
    n: int

    def __post_init__(self):
        for var in vars_of(self.root):
            if not 1 <= var <= self.n:
                logger.debug(f"x{var} outside the universe x1..x{self.n}")
                raise VarOutOfRangeError(var, self.n)

    def __str__(self) -> str:
        return to_text(self.root)
