"""Width-5 permutation branching programs for Boolean formulas."""

import logging
from functools import lru_cache
from itertools import permutations
from typing import Dict, List, Tuple

from ..core.exceptions import ZsupNotAllowedError
from ..core.program import BranchingProgram, ProgramBuilder
from ..formula.ast import And, Const, Expr, Formula, Not, Or, Var, has_zsup

logger = logging.getLogger(__name__)

Perm = Tuple[int, ...]
# (var, permutation applied when x_var = 0, permutation applied when x_var = 1)
Instruction = Tuple[int, Perm, Perm]

POINTS = 5
IDENTITY: Perm = tuple(range(POINTS))
TARGET_CYCLE: Perm = (1, 2, 3, 4, 0)


def then(p: Perm, q: Perm) -> Perm:
    """Apply p, then q."""
    return tuple(q[p[i]] for i in range(POINTS))


def inverse(p: Perm) -> Perm:
    inv = [0] * POINTS
    for i, image in enumerate(p):
        inv[image] = i
    return tuple(inv)


def is_five_cycle(p: Perm) -> bool:
    point, steps = 0, 0
    while True:
        point = p[point]
        steps += 1
        if point == 0:
            return steps == POINTS


def commutator(a: Perm, b: Perm) -> Perm:
    return then(then(then(a, b), inverse(a)), inverse(b))


@lru_cache(maxsize=None)
def _base_pair() -> Tuple[Perm, Perm]:
    """First pair of 5-cycles whose commutator is again a 5-cycle."""
    cycles = [p for p in permutations(range(POINTS)) if is_five_cycle(p)]
    for a in cycles:
        for b in cycles:
            if is_five_cycle(commutator(a, b)):
                return a, b
    raise AssertionError("S5 has 5-cycles with a 5-cycle commutator")


@lru_cache(maxsize=None)
def commutator_pair(sigma: Perm) -> Tuple[Perm, Perm]:
    """5-cycles (alpha, beta) with alpha beta alpha^-1 beta^-1 = sigma."""
    a0, b0 = _base_pair()
    gamma = commutator(a0, b0)
    for theta in permutations(range(POINTS)):
        theta_inv = inverse(theta)
        if then(then(theta_inv, gamma), theta) == sigma:
            return then(then(theta_inv, a0), theta), then(then(theta_inv, b0), theta)
    raise AssertionError("all 5-cycles are conjugate in S5")


def _instructions(expr: Expr, sigma: Perm) -> List[Instruction]:
    """Instructions whose product is sigma when expr holds and the identity otherwise."""
    if isinstance(expr, Const):
        perm = sigma if expr.value else IDENTITY
        return [(1, perm, perm)]
    if isinstance(expr, Var):
        return [(expr.index, IDENTITY, sigma)]
    if isinstance(expr, Not):
        body = _instructions(expr.arg, inverse(sigma))
        var, p0, p1 = body[-1]
        body[-1] = (var, then(p0, sigma), then(p1, sigma))
        return body
    if isinstance(expr, And):
        alpha, beta = commutator_pair(sigma)
        return (_instructions(expr.left, alpha)
                + _instructions(expr.right, beta)
                + _instructions(expr.left, inverse(alpha))
                + _instructions(expr.right, inverse(beta)))
    if isinstance(expr, Or):
        return _instructions(Not(And(Not(expr.left), Not(expr.right))), sigma)
    raise ZsupNotAllowedError()


def barrington(f: Formula) -> BranchingProgram:
    """
    Leveled deterministic program of width at most 5 computing f.

    Level t tracks where point 0 has been sent by the first t
    instructions. The product is TARGET_CYCLE exactly when f holds, so the
    last level accepts iff point 0 ends at TARGET_CYCLE[0].

    Raises:
        ZsupNotAllowedError: f uses the zero-suppression operator
    """
    if has_zsup(f.root):
        raise ZsupNotAllowedError()
    program = _instructions(f.root, TARGET_CYCLE)

    builder = ProgramBuilder(f.n)
    layer: Dict[int, int] = {0: builder.fresh_id()}
    builder.start = layer[0]
    pending: List[Tuple[int, int, Instruction]] = []
    for t, instruction in enumerate(program):
        _, p0, p1 = instruction
        for point in sorted(layer):
            pending.append((layer[point], point, instruction))
        if t + 1 == len(program):
            break
        nxt_points = sorted({p0[point] for point in layer} | {p1[point] for point in layer})
        nxt = {point: builder.fresh_id() for point in nxt_points}
        for node_id, point, (var, q0, q1) in pending:
            builder.add_inner(var, nxt[q0[point]], nxt[q1[point]], node_id=node_id)
        pending = []
        layer = nxt

    reject = builder.add_sink(0)
    accept = builder.add_sink(1)
    accepted = TARGET_CYCLE[0]
    for node_id, point, (var, q0, q1) in pending:
        builder.add_inner(var,
                          accept if q0[point] == accepted else reject,
                          accept if q1[point] == accepted else reject,
                          node_id=node_id)

    bp = builder.build()
    logger.info(f"barrington: {len(program)} instructions, {len(bp.nodes)} nodes")
    return bp
