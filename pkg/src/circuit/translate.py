"""Direct formula to circuit translation."""

import logging

from ..formula.ast import And, Const, Expr, Formula, Not, Or, Var, vars_of
from .gates import Circuit, CircuitBuilder

logger = logging.getLogger(__name__)


def _gate(b: CircuitBuilder, expr: Expr, n: int) -> int:
    if isinstance(expr, Const):
        return b.const(expr.value)
    if isinstance(expr, Var):
        return b.input(expr.index)
    if isinstance(expr, Not):
        return b.not_(_gate(b, expr.arg, n))
    if isinstance(expr, And):
        return b.and_(_gate(b, expr.left, n), _gate(b, expr.right, n))
    if isinstance(expr, Or):
        return b.or_(_gate(b, expr.left, n), _gate(b, expr.right, n))
    # Z(g): g AND every variable outside g is 0
    contained = vars_of(expr.arg)
    outside = [b.not_(b.input(j)) for j in range(1, n + 1) if j not in contained]
    return b.and_(_gate(b, expr.arg, n), b.and_all(outside))


def formula_to_circuit(f: Formula) -> Circuit:
    """One gate per connective (after sharing and constant folding)."""
    b = CircuitBuilder(f.n)
    circuit = b.build(_gate(b, f.root, f.n))
    logger.debug(f"Translated formula {f} to {circuit.size} gates")
    return circuit
