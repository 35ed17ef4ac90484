"""Exact deterministic and zero-suppressed decision tree complexity."""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union

import numpy as np

from ..core.exceptions import NotATreeError
from ..core.program import BranchingProgram, Inner, ProgramBuilder, Semantics, reachable, validate
from ..core.truth_table import TruthTable, check_cap, index_space, truth_table

logger = logging.getLogger(__name__)

DEFAULT_COMPLEXITY_CAP = 5


@dataclass(frozen=True)
class DecisionTree:
    """A branching program whose graph is a rooted tree."""

    program: BranchingProgram
    depth: int

    @classmethod
    def from_program(cls, bp: BranchingProgram) -> 'DecisionTree':
        check_tree(bp)
        return cls(bp, tree_depth(bp))


@dataclass(frozen=True)
class ComplexityResult:
    """Optimal depth and a witness tree achieving it."""

    value: int
    witness: DecisionTree
    semantics: Semantics


def check_tree(bp: BranchingProgram) -> None:
    """
    Raise NotATreeError unless every reachable non-root node has exactly one parent.

    An inner node whose two edges share a target counts as two parents.
    """
    validate(bp)
    live = reachable(bp)
    parents: Dict[int, int] = {}
    for node_id, node in bp.inner_items():
        if node_id not in live:
            continue
        for target in (node.lo, node.hi):
            parents[target] = parents.get(target, 0) + 1
            if parents[target] > 1 or target == bp.start:
                raise NotATreeError(target)


def tree_depth(bp: BranchingProgram) -> int:
    """Longest root-to-sink path counted in inner nodes."""
    def depth(node_id: int) -> int:
        node = bp.nodes[node_id]
        if not isinstance(node, Inner):
            return 0
        return 1 + max(depth(node.lo), depth(node.hi))
    return depth(bp.start)


# Plan is either a leaf value or (var, plan_if_0, plan_if_1)
Plan = Union[int, Tuple[int, 'Plan', 'Plan']]


class _TreeSearch:
    """
    Minimal-depth search over read-once decision trees.

    States are (restricted truth table, live variable mask). A restricted
    table is kept over the full index space; it no longer depends on the
    variables already queried.
    """

    def __init__(self, tt: TruthTable, semantics: Semantics, memoize: bool = True):
        self.n = tt.n
        self.semantics = semantics
        self.idx = index_space(tt.n)
        self.memo: Optional[Dict[Tuple[bytes, int], Tuple[int, int]]] = {} if memoize else None
        self.calls = 0

    def restrict(self, bits: np.ndarray, var: int, value: int) -> np.ndarray:
        bit = 1 << (var - 1)
        return bits[(self.idx & ~bit) | (bit if value else 0)]

    def leaf(self, bits: np.ndarray, live: int) -> Optional[int]:
        """Leaf value that computes bits given the live set, or None."""
        if not bits.any():
            return 0
        if self.semantics is Semantics.DET:
            return 1 if bits.all() else None
        all_zero = ((self.idx & live) == 0).astype(np.uint8)
        return 1 if np.array_equal(bits, all_zero) else None

    def solve(self, bits: np.ndarray, live: int) -> Tuple[int, int]:
        """Return (optimal depth, chosen variable or 0 at a leaf)."""
        key = (bits.tobytes(), live)
        if self.memo is not None and key in self.memo:
            return self.memo[key]
        self.calls += 1

        if self.leaf(bits, live) is not None:
            result = (0, 0)
        else:
            best_depth, best_var = self.n + 1, 0
            for var in range(1, self.n + 1):
                bit = 1 << (var - 1)
                if not live & bit:
                    continue
                worst = 0
                for value in (0, 1):
                    child, _ = self.solve(self.restrict(bits, var, value), live & ~bit)
                    worst = max(worst, child)
                    if worst + 1 >= best_depth:
                        break
                if worst + 1 < best_depth:
                    best_depth, best_var = worst + 1, var
            result = (best_depth, best_var)

        if self.memo is not None:
            self.memo[key] = result
        return result

    def plan(self, bits: np.ndarray, live: int) -> Plan:
        leaf = self.leaf(bits, live)
        if leaf is not None:
            return leaf
        _, var = self.solve(bits, live)
        bit = 1 << (var - 1)
        return (
            var,
            self.plan(self.restrict(bits, var, 0), live & ~bit),
            self.plan(self.restrict(bits, var, 1), live & ~bit),
        )


def _build_tree(n: int, plan: Plan) -> BranchingProgram:
    """Materialize a plan in preorder, 0-branch before 1-branch."""
    builder = ProgramBuilder(n)

    def emit(node_plan: Plan) -> int:
        if isinstance(node_plan, int):
            return builder.add_sink(node_plan)
        var, if0, if1 = node_plan
        node_id = builder.fresh_id()
        lo = emit(if0)
        hi = emit(if1)
        return builder.add_inner(var, lo, hi, node_id=node_id)

    builder.start = emit(plan)
    return builder.build()


def _complexity(tt: TruthTable, semantics: Semantics, cap: int, memoize: bool) -> ComplexityResult:
    check_cap(tt.n, cap)
    search = _TreeSearch(tt, semantics, memoize=memoize)
    full = (1 << tt.n) - 1
    bits = np.array(tt.bits, dtype=np.uint8)
    value, _ = search.solve(bits, full)
    witness = DecisionTree(_build_tree(tt.n, search.plan(bits, full)), value)
    name = "D" if semantics is Semantics.DET else "Z"
    logger.info(f"{name}(f) = {value} for n={tt.n} ({search.calls} states expanded)")
    return ComplexityResult(value, witness, semantics)


def d_complexity(tt: TruthTable, cap: int = DEFAULT_COMPLEXITY_CAP, memoize: bool = True) -> ComplexityResult:
    """
    Deterministic decision tree complexity D(f) with an optimal witness.

    Ties go to the lowest variable index.

    Raises:
        TooManyVariablesError: tt.n exceeds cap
    """
    return _complexity(tt, Semantics.DET, cap, memoize)


def z_complexity(tt: TruthTable, cap: int = DEFAULT_COMPLEXITY_CAP, memoize: bool = True) -> ComplexityResult:
    """
    Zero-suppressed decision tree complexity Z(f) with an optimal witness.

    A subtree over live set V may stop at a 0-leaf when f is 0, or at a
    1-leaf when f is the conjunction of NOT x_j over V.

    Raises:
        TooManyVariablesError: tt.n exceeds cap
    """
    return _complexity(tt, Semantics.ZS, cap, memoize)


def eval_witness(t: DecisionTree, semantics: Semantics) -> TruthTable:
    """Truth table of a decision tree under the given semantics."""
    return truth_table(t.program, semantics)
