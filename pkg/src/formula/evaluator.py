"""Formula evaluation, truth tables and family representations."""

import logging
from itertools import combinations
from typing import List, Optional

import numpy as np

from ..core.program import Assignment
from ..core.exceptions import AssignmentMismatchError
from ..core.truth_table import (
    DEFAULT_ENUMERATION_CAP,
    Family,
    TruthTable,
    check_cap,
    check_family_args,
    index_space,
)
from .ast import And, Const, Expr, Formula, Not, Or, Var, Zsup, vars_of

logger = logging.getLogger(__name__)


def _var_mask(variables) -> int:
    return sum(1 << (v - 1) for v in variables)


def eval_expr(expr: Expr, a: Assignment) -> int:
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Var):
        return a[expr.index]
    if isinstance(expr, Not):
        return 1 - eval_expr(expr.arg, a)
    if isinstance(expr, And):
        return eval_expr(expr.left, a) & eval_expr(expr.right, a)
    if isinstance(expr, Or):
        return eval_expr(expr.left, a) | eval_expr(expr.right, a)
    # Exemption set is taken against the whole universe, also when nested.
    contained = vars_of(expr.arg)
    if not eval_expr(expr.arg, a):
        return 0
    return int(all(a[j] == 0 for j in range(1, a.n + 1) if j not in contained))


def eval_formula(f: Formula, a: Assignment) -> int:
    """Evaluate at one assignment; Z(g) also demands every variable outside g be 0."""
    if a.n != f.n:
        raise AssignmentMismatchError(f.n, a.n)
    return eval_expr(f.root, a)


def _table(expr: Expr, idx: np.ndarray, full: int) -> np.ndarray:
    if isinstance(expr, Const):
        return np.full(idx.size, expr.value, dtype=np.uint8)
    if isinstance(expr, Var):
        return ((idx >> (expr.index - 1)) & 1).astype(np.uint8)
    if isinstance(expr, Not):
        return 1 - _table(expr.arg, idx, full)
    if isinstance(expr, And):
        return _table(expr.left, idx, full) & _table(expr.right, idx, full)
    if isinstance(expr, Or):
        return _table(expr.left, idx, full) | _table(expr.right, idx, full)
    outside = full & ~_var_mask(vars_of(expr.arg))
    return _table(expr.arg, idx, full) & ((idx & outside) == 0).astype(np.uint8)


def formula_table(f: Formula, cap: int = DEFAULT_ENUMERATION_CAP) -> TruthTable:
    check_cap(f.n, cap)
    return TruthTable(f.n, _table(f.root, index_space(f.n), (1 << f.n) - 1))


# ============== Family representations ==============

def _right_fold(op, items: List[Expr], empty: Expr) -> Expr:
    if not items:
        return empty
    result = items[-1]
    for item in reversed(items[:-1]):
        result = op(item, result)
    return result


def exactly_k_dnf(n: int, k: int) -> Formula:
    """Plain DNF of E^n_k: one full minterm per k-subset."""
    terms = []
    for subset in combinations(range(1, n + 1), k):
        chosen = set(subset)
        literals = [Var(i) if i in chosen else Not(Var(i)) for i in range(1, n + 1)]
        terms.append(_right_fold(And, literals, Const(1)))
    return Formula(_right_fold(Or, terms, Const(0)), n)


def family_dnf(family: Family, n: int, k: Optional[int] = None) -> Formula:
    check_family_args(family, n, k)
    if family is Family.CONST1:
        return Formula(Const(1), n)
    if family is Family.AND_OF_NEGATIONS:
        return Formula(_right_fold(And, [Not(Var(i)) for i in range(1, n + 1)], Const(1)), n)
    return exactly_k_dnf(n, k)


def family_zsup_form(family: Family, n: int, k: Optional[int] = None) -> Formula:
    """
    Zero-suppressed representation of a family.

    E^n_k becomes the OR over k-subsets S of Z(AND of x_i for i in S), which
    for k = 1 is (Z(x1)|(Z(x2)|...)). AndOfNegations is Z(1).
    """
    check_family_args(family, n, k)
    if family is Family.CONST1:
        return Formula(Const(1), n)
    if family is Family.AND_OF_NEGATIONS:
        return Formula(Zsup(Const(1)), n)
    terms = [
        Zsup(_right_fold(And, [Var(i) for i in subset], Const(1)))
        for subset in combinations(range(1, n + 1), k)
    ]
    return Formula(_right_fold(Or, terms, Const(0)), n)
