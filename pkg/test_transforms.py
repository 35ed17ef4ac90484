"""Unit tests for the deterministic / zero-suppressed conversions."""

import sys
import unittest
from pathlib import Path
from typing import Dict, FrozenSet, Set

sys.path.insert(0, str(Path(__file__).parent))

from src.core.exceptions import NotReadOnceError
from src.core.program import (
    BranchingProgram,
    Inner,
    Semantics,
    Sink,
    is_read_once,
    reachable,
    size,
)
from src.core.truth_table import truth_table
from src.transforms.conversions import (
    ChainMode,
    det_to_zs,
    normalize_path_sets,
    prune_unreachable,
    ro_det_to_zs,
    ro_zs_to_det,
)
from src.utils.generators import random_program, random_read_once_program


def path_sets(bp: BranchingProgram) -> Dict[int, Set[FrozenSet[int]]]:
    """Variable sets of every start path into each node, by exhaustive enumeration."""
    seen: Dict[int, Set[FrozenSet[int]]] = {}

    def visit(node_id: int, queried: FrozenSet[int]) -> None:
        seen.setdefault(node_id, set()).add(queried)
        node = bp.nodes[node_id]
        if isinstance(node, Inner):
            below = queried | {node.var}
            visit(node.lo, below)
            visit(node.hi, below)

    visit(bp.start, frozenset())
    return seen


def path_has_repeat(bp: BranchingProgram) -> bool:
    """Read-once check by walking every path."""
    def visit(node_id: int, queried: FrozenSet[int]) -> bool:
        node = bp.nodes[node_id]
        if not isinstance(node, Inner):
            return False
        if node.var in queried:
            return True
        below = queried | {node.var}
        return visit(node.lo, below) or visit(node.hi, below)
    return visit(bp.start, frozenset())


def x1_program(n: int) -> BranchingProgram:
    return BranchingProgram(n, {0: Inner(1, 1, 2), 1: Sink(0), 2: Sink(1)}, 0)


class TestDetToZs(unittest.TestCase):
    """Appending the all-variable chain."""

    def test_single_variable(self):
        """Size 3 over three variables becomes size 6 and still computes x_1."""
        bp = x1_program(3)
        out = det_to_zs(bp)
        self.assertEqual(size(out), 6)
        self.assertEqual(truth_table(out, Semantics.ZS).to_string(), "01010101")

    def test_only_zero_sink(self):
        """Nothing is redirected; the result is the constant 0."""
        out = det_to_zs(BranchingProgram(3, {0: Sink(0)}, 0))
        self.assertEqual(size(out), 4)
        self.assertEqual(truth_table(out, Semantics.ZS).to_string(), "00000000")

    def test_one_sink_start(self):
        """A bare 1-sink start moves to the chain head."""
        out = det_to_zs(BranchingProgram(2, {0: Sink(1)}, 0))
        self.assertEqual(size(out), 3)
        self.assertEqual(truth_table(out, Semantics.ZS).to_string(), "1111")

    def test_random_programs(self):
        """Exact size s+n and ZS(output) = DET(input)."""
        for seed in range(50):
            n = 1 + seed % 8
            bp = random_program(seed, n=n, size=3 + seed % 30, shuffle_ids=bool(seed % 3))
            out = det_to_zs(bp)
            self.assertEqual(size(out), size(bp) + n)
            self.assertEqual(truth_table(out, Semantics.ZS), truth_table(bp, Semantics.DET))

    def test_output_semantics_coincide(self):
        """Every path to the 1-sink queries all variables, so DET(output) = ZS(output)."""
        for seed in range(40):
            n = 1 + seed % 8
            out = det_to_zs(random_program(500 + seed, n=n, size=2 + seed % 30))
            self.assertEqual(truth_table(out, Semantics.DET), truth_table(out, Semantics.ZS))


class TestNormalizePathSets(unittest.TestCase):
    """Uniform path sets after chain splicing."""

    def test_diamond(self):
        """The branch skipping x_2 gets a single x_2 node."""
        bp = BranchingProgram(2, {0: Inner(1, 1, 3), 1: Inner(2, 2, 3), 2: Sink(0), 3: Sink(1)}, 0)
        out, annotation = normalize_path_sets(bp, ChainMode.DONT_CARE)
        self.assertEqual(size(out), 5)
        spliced = out.nodes[out.nodes[0].hi]
        self.assertEqual(spliced, Inner(2, 3, 3))
        self.assertEqual(annotation[3], frozenset({1, 2}))
        self.assertEqual(annotation.to_text().splitlines()[0], "node 0: {}")

    def test_already_uniform(self):
        """Only the 1-sink completion chain is added."""
        out, _ = normalize_path_sets(x1_program(2), ChainMode.DONT_CARE)
        self.assertEqual(size(out), 4)
        self.assertEqual(out.nodes[3], Inner(2, 2, 2))
        self.assertEqual(out.nodes[0], Inner(1, 1, 3))

    def test_uniform_by_enumeration(self):
        """Every node sees one path set, and annotations agree."""
        for seed in range(50):
            n = 1 + seed % 8
            bp = random_read_once_program(seed, n=n, size=2 + seed % 20)
            for mode in ChainMode:
                out, annotation = normalize_path_sets(bp, mode)
                for node_id, sets in path_sets(out).items():
                    node = out.nodes[node_id]
                    if mode is ChainMode.ZERO_CHECK and node == Sink(0):
                        continue
                    self.assertEqual(len(sets), 1, (seed, mode, node_id))
                    self.assertEqual(annotation[node_id], next(iter(sets)))
                    if node == Sink(1):
                        self.assertEqual(annotation[node_id], frozenset(range(1, n + 1)))

    def test_rejects_repeated_queries(self):
        """Programs that read a variable twice are refused."""
        bp = BranchingProgram(2, {0: Inner(1, 1, 3), 1: Inner(1, 2, 3), 2: Sink(0), 3: Sink(1)}, 0)
        for convert in (ro_det_to_zs, ro_zs_to_det):
            with self.assertRaises(NotReadOnceError) as ctx:
                convert(bp)
            self.assertEqual(ctx.exception.node_id, 0)


class TestReadOnceConversions(unittest.TestCase):
    """Read-once conversions in both directions."""

    def test_single_variable_to_zs(self):
        """x_1 over two variables."""
        out = ro_det_to_zs(x1_program(2))
        self.assertEqual(truth_table(out, Semantics.ZS).to_string(), "0101")

    def test_one_sink_to_det(self):
        """The bare 1-sink becomes a zero-check chain."""
        out = ro_zs_to_det(BranchingProgram(3, {0: Sink(1)}, 0))
        self.assertEqual(truth_table(out, Semantics.DET).to_string(), "10000000")
        self.assertTrue(is_read_once(out))

    def test_single_variable_to_det(self):
        """DET(output) = ZS(input) for x_1 over three variables."""
        bp = x1_program(3)
        out = ro_zs_to_det(bp)
        self.assertEqual(truth_table(out, Semantics.DET), truth_table(bp, Semantics.ZS))

    def test_conjunction_chain(self):
        """x_1 AND x_2 as a chain over three variables."""
        bp = BranchingProgram(3, {0: Inner(1, 2, 1), 1: Inner(2, 2, 3), 2: Sink(0), 3: Sink(1)}, 0)
        self.assertEqual(truth_table(ro_det_to_zs(bp), Semantics.ZS), truth_table(bp, Semantics.DET))

    def test_random_programs(self):
        """Size bound, read-once output, equivalence and round trip."""
        for seed in range(50):
            n = 1 + seed % 8
            bp = random_read_once_program(seed, n=n, size=2 + seed % 24)
            s = size(bp)
            det_table = truth_table(bp, Semantics.DET)

            zs = ro_det_to_zs(bp)
            self.assertLessEqual(size(zs), s + 2 * n * s)
            self.assertTrue(is_read_once(zs))
            self.assertFalse(path_has_repeat(zs))
            self.assertEqual(truth_table(zs, Semantics.ZS), det_table)
            self.assertEqual(truth_table(zs, Semantics.DET), det_table)

            det = ro_zs_to_det(bp)
            self.assertLessEqual(size(det), s + 2 * n * s)
            self.assertTrue(is_read_once(det))
            self.assertEqual(truth_table(det, Semantics.DET), truth_table(bp, Semantics.ZS))

            self.assertEqual(truth_table(ro_zs_to_det(zs), Semantics.DET), det_table)

    def test_read_once_check_matches_path_walk(self):
        """is_read_once agrees with walking every path."""
        for seed in range(40):
            bp = random_program(seed, n=4, size=10)
            self.assertEqual(is_read_once(bp), not path_has_repeat(bp))


class TestPrune(unittest.TestCase):
    """Explicit pruning of unreachable nodes."""

    def test_prune(self):
        """Unreachable nodes go, semantics stays."""
        bp = BranchingProgram(2, {0: Inner(1, 1, 2), 1: Sink(0), 2: Sink(1), 3: Inner(2, 1, 2)}, 0)
        pruned = prune_unreachable(bp)
        self.assertEqual(set(pruned.nodes), reachable(bp))
        self.assertEqual(truth_table(pruned, Semantics.ZS), truth_table(bp, Semantics.ZS))

    def test_conversions_keep_unreachable_nodes(self):
        """Size accounting includes unreachable nodes."""
        bp = BranchingProgram(2, {0: Inner(1, 1, 2), 1: Sink(0), 2: Sink(1), 3: Inner(2, 1, 2)}, 0)
        self.assertEqual(size(det_to_zs(bp)), size(bp) + 2)
        self.assertIn(3, ro_det_to_zs(bp).nodes)


def run_tests():
    """Run all tests."""
    unittest.main(verbosity=2)


if __name__ == "__main__":
    run_tests()
