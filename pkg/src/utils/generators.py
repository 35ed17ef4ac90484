"""Seeded random programs and formulas for tests and benchmarks."""

import logging
from typing import Dict, FrozenSet, List

import numpy as np

from ..core.exceptions import BadParameterError
from ..core.program import BranchingProgram, Inner, ProgramBuilder
from ..formula.ast import And, Const, Expr, Formula, Not, Or, Var, Zsup

logger = logging.getLogger(__name__)


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _relabel(bp: BranchingProgram, rng: np.random.Generator) -> BranchingProgram:
    """Same graph under a random permutation of node ids."""
    old_ids = list(bp.nodes)
    new_ids = [int(i) for i in rng.permutation(len(old_ids))]
    mapping = dict(zip(old_ids, new_ids))
    builder = ProgramBuilder(bp.n, start=mapping[bp.start])
    for node_id, node in bp.nodes.items():
        if isinstance(node, Inner):
            builder.add_inner(node.var, mapping[node.lo], mapping[node.hi], node_id=mapping[node_id])
        else:
            builder.add_sink(node.value, node_id=mapping[node_id])
    return builder.build()


def random_program(seed, n: int, size: int, shuffle_ids: bool = False) -> BranchingProgram:
    """
    Random DAG with two sinks and size - 2 inner nodes.

    Nodes are created bottom-up, each pointing at earlier nodes; the last
    one created is the start.
    """
    if n < 1 or size < 1:
        raise BadParameterError(f"Need n >= 1 and size >= 1, got n={n}, size={size}", n=n, size=size)
    rng = _rng(seed)
    builder = ProgramBuilder(n)
    created: List[int] = [builder.add_sink(0)]
    if size == 1:
        builder.start = created[0]
        return builder.build()
    created.append(builder.add_sink(1))
    for _ in range(size - 2):
        lo, hi = (created[int(i)] for i in rng.integers(0, len(created), size=2))
        created.append(builder.add_inner(int(rng.integers(1, n + 1)), lo, hi))
    builder.start = created[-1]
    bp = builder.build()
    return _relabel(bp, rng) if shuffle_ids else bp


def random_read_once_program(seed, n: int, size: int) -> BranchingProgram:
    """
    Random read-once program: a node's variable never occurs below it.

    When no variable is free for the sampled children, the node falls back
    to the two sinks.
    """
    if n < 1 or size < 2:
        raise BadParameterError(f"Need n >= 1 and size >= 2, got n={n}, size={size}", n=n, size=size)
    rng = _rng(seed)
    builder = ProgramBuilder(n)
    created: List[int] = [builder.add_sink(0), builder.add_sink(1)]
    below: Dict[int, FrozenSet[int]] = {created[0]: frozenset(), created[1]: frozenset()}
    for _ in range(size - 2):
        for _attempt in range(8):
            lo, hi = (created[int(i)] for i in rng.integers(0, len(created), size=2))
            free = sorted(set(range(1, n + 1)) - below[lo] - below[hi])
            if free:
                break
        else:
            logger.debug(f"No free variable after 8 draws; node {len(created)} falls back to the sinks")
            lo, hi = created[0], created[1]
            free = list(range(1, n + 1))
        var = free[int(rng.integers(0, len(free)))]
        node_id = builder.add_inner(var, lo, hi)
        below[node_id] = below[lo] | below[hi] | {var}
        created.append(node_id)
    builder.start = created[-1]
    return builder.build()


def random_leveled_program(seed, width: int, levels: int, n: int) -> BranchingProgram:
    """
    Leveled program: one start node, then levels - 1 levels of width nodes.

    Edges go only to the next level (the last level to the sinks), and each
    level's nodes are covered by incoming edges whenever there are enough.
    """
    if width < 2 or levels < 1 or n < 1:
        raise BadParameterError(
            f"Need width >= 2, levels >= 1, n >= 1, got {width}, {levels}, {n}",
            width=width, levels=levels, n=n,
        )
    rng = _rng(seed)
    builder = ProgramBuilder(n)
    reject, accept = builder.add_sink(0), builder.add_sink(1)
    below = [reject, accept]
    layers: List[List[int]] = []
    for t in range(levels - 1, -1, -1):
        count = 1 if t == 0 else width
        slots = 2 * count
        targets = [below[int(i)] for i in rng.integers(0, len(below), size=slots)]
        if slots >= len(below):
            # Cover the level below
            order = rng.permutation(slots)[:len(below)]
            for slot, target in zip(order, below):
                targets[int(slot)] = target
        layer = []
        for i in range(count):
            layer.append(builder.add_inner(int(rng.integers(1, n + 1)), targets[2 * i], targets[2 * i + 1]))
        layers.append(layer)
        below = layer
    builder.start = layers[-1][0]
    logger.debug(f"Leveled program: {levels} levels of width {width} over {n} variables")
    return builder.build()


def random_formula(seed, n: int, depth: int, allow_zsup: bool = False,
                   leaf_probability: float = 0.25) -> Formula:
    """Random formula over x_1..x_n with nesting depth at most depth."""
    rng = _rng(seed)
    ops = ["not", "and", "or"] + (["zsup"] if allow_zsup else [])

    def grow(d: int) -> Expr:
        if d == 0 or rng.random() < leaf_probability:
            if rng.random() < 0.1:
                return Const(int(rng.integers(0, 2)))
            return Var(int(rng.integers(1, n + 1)))
        op = ops[int(rng.integers(0, len(ops)))]
        if op == "not":
            return Not(grow(d - 1))
        if op == "zsup":
            return Zsup(grow(d - 1))
        node = And if op == "and" else Or
        return node(grow(d - 1), grow(d - 1))

    return Formula(grow(depth), n)

