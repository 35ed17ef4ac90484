"""Unit tests for exact decision tree complexity."""

import sys
import unittest
from functools import lru_cache
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

from src.core.exceptions import NotATreeError, TooManyVariablesError
from src.core.program import BranchingProgram, Inner, Semantics, Sink, is_read_once
from src.core.truth_table import Family, TruthTable, gen_family
from src.dtree.complexity import (
    DecisionTree,
    check_tree,
    d_complexity,
    eval_witness,
    z_complexity,
)


def table_from_mask(mask: int, n: int) -> TruthTable:
    return TruthTable(n, np.array([(mask >> i) & 1 for i in range(1 << n)], dtype=np.uint8))


def var_mask(var: int, n: int) -> int:
    """Bitmask of the assignment indices where x_var = 1."""
    return sum(1 << i for i in range(1 << n) if (i >> (var - 1)) & 1)


def ite(var: int, if0: int, if1: int, n: int) -> int:
    m = var_mask(var, n)
    return (if0 & ~m) | (if1 & m)


def det_realizable(n: int, depth: int) -> frozenset:
    """Every function computed by some deterministic tree of at most the given depth."""
    full = (1 << (1 << n)) - 1
    realized = {0, full}
    for _ in range(depth):
        step = set(realized)
        for var in range(1, n + 1):
            for a in realized:
                for b in realized:
                    step.add(ite(var, a, b, n))
        realized = step
    return frozenset(realized)


def zs_realizable(n: int, depth: int) -> frozenset:
    """
    Every function computed by some zero-suppressed tree of at most the given depth.

    Repeated queries on a path are allowed here; the search under test
    forbids them.
    """
    @lru_cache(maxsize=None)
    def realized(d: int, queried: frozenset) -> frozenset:
        outside = [v for v in range(1, n + 1) if v not in queried]
        all_zero = sum(1 << i for i in range(1 << n) if all(not (i >> (v - 1)) & 1 for v in outside))
        result = {0, all_zero}
        if d > 0:
            for var in range(1, n + 1):
                below = realized(d - 1, queried | {var})
                for a in below:
                    for b in below:
                        result.add(ite(var, a, b, n))
        return frozenset(result)

    return realized(depth, frozenset())


def min_depth(mask: int, layers) -> int:
    for d, realized in enumerate(layers):
        if mask in realized:
            return d
    raise AssertionError("function not realized within n queries")


class TestGapFunctions(unittest.TestCase):
    """The constant 1 and the conjunction of negations."""

    def test_constant_one(self):
        """D(1) = 0 and Z(1) = n."""
        for n in range(1, 6):
            tt = gen_family(Family.CONST1, n)
            self.assertEqual(d_complexity(tt).value, 0)
            self.assertEqual(z_complexity(tt).value, n)

    def test_and_of_negations(self):
        """D(g) = n and Z(g) = 0."""
        for n in range(1, 6):
            tt = gen_family(Family.AND_OF_NEGATIONS, n)
            self.assertEqual(d_complexity(tt).value, n)
            self.assertEqual(z_complexity(tt).value, 0)

    def test_constant_one_witness(self):
        """The ZS witness of the constant 1 evaluates to all ones."""
        result = z_complexity(gen_family(Family.CONST1, 3))
        self.assertEqual(eval_witness(result.witness, Semantics.ZS).to_string(), "11111111")


class TestWitnesses(unittest.TestCase):
    """Witness trees reproduce the target function."""

    def setUp(self):
        """Set up test fixtures."""
        self.rng = np.random.default_rng(7)

    def assert_witness(self, tt: TruthTable, semantics: Semantics):
        solve = d_complexity if semantics is Semantics.DET else z_complexity
        result = solve(tt)
        self.assertIs(result.semantics, semantics)
        self.assertEqual(result.witness.depth, result.value)
        self.assertEqual(eval_witness(result.witness, semantics), tt)
        self.assertTrue(is_read_once(result.witness.program))
        check_tree(result.witness.program)

    def test_random_functions(self):
        """Random functions with up to four variables."""
        for n in range(1, 5):
            for _ in range(8):
                tt = TruthTable(n, self.rng.integers(0, 2, size=1 << n))
                self.assert_witness(tt, Semantics.DET)
                self.assert_witness(tt, Semantics.ZS)

    def test_exactly_one_of_three(self):
        """E^3_1 under both measures."""
        tt = gen_family(Family.EXACTLY_K, 3, 1)
        self.assert_witness(tt, Semantics.DET)
        self.assert_witness(tt, Semantics.ZS)

    def test_ties_break_toward_low_index(self):
        """x_2 XOR x_1 is decided by querying x_1 first."""
        result = d_complexity(TruthTable.from_string("0110", 2))
        program = result.witness.program
        self.assertEqual(result.value, 2)
        self.assertEqual(program.nodes[program.start].var, 1)


class TestAgainstBruteForce(unittest.TestCase):
    """Optimal depths agree with enumeration of all shallow trees."""

    def check_all_functions(self, n: int):
        det_layers = [det_realizable(n, d) for d in range(n + 1)]
        zs_layers = [zs_realizable(n, d) for d in range(n + 1)]
        for mask in range(1 << (1 << n)):
            tt = table_from_mask(mask, n)
            self.assertEqual(d_complexity(tt).value, min_depth(mask, det_layers), tt)
            self.assertEqual(z_complexity(tt).value, min_depth(mask, zs_layers), tt)

    def test_two_variables(self):
        """All 16 functions of two variables."""
        self.check_all_functions(2)

    def test_three_variables(self):
        """All 256 functions of three variables, repeated queries allowed in the oracle."""
        self.check_all_functions(3)

    def test_memoized_matches_plain_search(self):
        """The memo store does not change any value."""
        rng = np.random.default_rng(11)
        for n in range(1, 5):
            for _ in range(4):
                tt = TruthTable(n, rng.integers(0, 2, size=1 << n))
                self.assertEqual(d_complexity(tt, memoize=False).value, d_complexity(tt).value)
                self.assertEqual(z_complexity(tt, memoize=False).value, z_complexity(tt).value)


class TestTreeChecks(unittest.TestCase):
    """Tree shape and caps."""

    def test_shared_child_is_not_a_tree(self):
        """A node with two parents is rejected."""
        bp = BranchingProgram(2, {0: Inner(1, 1, 2), 1: Inner(2, 3, 4), 2: Inner(2, 3, 4),
                                  3: Sink(0), 4: Sink(1)}, 0)
        with self.assertRaises(NotATreeError) as ctx:
            DecisionTree.from_program(bp)
        self.assertEqual(ctx.exception.node_id, 3)

    def test_tree_depth(self):
        """Depth counts inner nodes on the longest path."""
        bp = BranchingProgram(2, {0: Inner(1, 1, 2), 1: Sink(0), 2: Inner(2, 3, 4),
                                  3: Sink(0), 4: Sink(1)}, 0)
        self.assertEqual(DecisionTree.from_program(bp).depth, 2)

    def test_cap(self):
        """Six variables exceed the default cap."""
        with self.assertRaises(TooManyVariablesError):
            d_complexity(gen_family(Family.CONST1, 6))
        self.assertEqual(z_complexity(gen_family(Family.CONST1, 6), cap=6).value, 6)


def run_tests():
    """Run all tests."""
    unittest.main(verbosity=2)


if __name__ == "__main__":
    run_tests()
