"""Conversions between deterministic and zero-suppressed branching programs."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from ..core.program import (
    BranchingProgram,
    Inner,
    ProgramBuilder,
    Sink,
    reachable,
    require_read_once,
    size,
    topological_order,
    validate,
)

logger = logging.getLogger(__name__)


class ChainMode(Enum):
    """How spliced chain nodes route their edges."""
    DONT_CARE = "dont-care"     # both edges advance along the chain
    ZERO_CHECK = "zero-check"   # 0-edge advances, 1-edge rejects


@dataclass(frozen=True)
class PathSetAnnotation:
    """Variables queried on every path reaching a node."""

    sets: Mapping[int, FrozenSet[int]]

    def __getitem__(self, node_id: int) -> FrozenSet[int]:
        return self.sets[node_id]

    def __contains__(self, node_id: int) -> bool:
        return node_id in self.sets

    def to_text(self) -> str:
        lines = []
        for node_id in sorted(self.sets):
            members = ",".join(f"x{v}" for v in sorted(self.sets[node_id]))
            lines.append(f"node {node_id}: {{{members}}}")
        return "\n".join(lines) + ("\n" if lines else "")


def det_to_zs(bp: BranchingProgram) -> BranchingProgram:
    """
    Convert a deterministic program into a zero-suppressed one of size s+n.

    A chain v_1..v_n labeled x_1..x_n is appended, both edges of v_i lead to
    v_{i+1} and both edges of v_n to the 1-sink. Every edge that entered a
    1-sink now enters v_1, so every path to the 1-sink queries all variables.
    """
    validate(bp)
    builder = ProgramBuilder.from_program(bp)
    ones = bp.sink_ids(1)
    # Without a 1-sink the chain is unreachable; end it at any sink.
    anchor = ones[0] if ones else bp.sink_ids()[0]

    chain_ids = [builder.fresh_id() for _ in range(bp.n)]
    for i, node_id in enumerate(chain_ids):
        nxt = chain_ids[i + 1] if i + 1 < len(chain_ids) else anchor
        builder.add_inner(i + 1, nxt, nxt, node_id=node_id)
    head = chain_ids[0] if chain_ids else anchor

    one_set = set(ones)
    for node_id, node in bp.inner_items():
        if node.lo in one_set:
            builder.redirect(node_id, 0, head)
        if node.hi in one_set:
            builder.redirect(node_id, 1, head)
    if bp.start in one_set:
        builder.start = head

    out = builder.build()
    logger.info(f"det_to_zs: size {size(bp)} -> {size(out)} (n={bp.n})")
    return out


class _Normalizer:
    """Splices variable chains so all paths into a node query the same variables."""

    def __init__(self, bp: BranchingProgram, mode: ChainMode):
        self.bp = bp
        self.mode = mode
        self.builder = ProgramBuilder.from_program(bp)
        self.sets: Dict[int, FrozenSet[int]] = {}
        self._reject: Optional[int] = None

    def reject_sink(self) -> int:
        if self._reject is None:
            zeros = self.bp.sink_ids(0)
            self._reject = zeros[0] if zeros else self.builder.add_sink(0)
        return self._reject

    def splice(self, missing: Sequence[int], target: int, have: FrozenSet[int]) -> int:
        """Build a chain over missing (ascending) ending at target; return its head."""
        ids = [self.builder.fresh_id() for _ in missing]
        carried = set(have)
        for i, (node_id, var) in enumerate(zip(ids, missing)):
            nxt = ids[i + 1] if i + 1 < len(ids) else target
            hi = nxt if self.mode is ChainMode.DONT_CARE else self.reject_sink()
            self.builder.add_inner(var, nxt, hi, node_id=node_id)
            self.sets[node_id] = frozenset(carried)
            carried.add(var)
        return ids[0]

    def required(self, node_id: int, incoming: List[FrozenSet[int]]) -> Optional[FrozenSet[int]]:
        """Path set a node must carry, or None when the node is left alone."""
        node = self.bp.nodes[node_id]
        if isinstance(node, Sink):
            if node.value == 1:
                return frozenset(range(1, self.bp.n + 1))
            if self.mode is ChainMode.ZERO_CHECK:
                return None
        return frozenset().union(*incoming) if incoming else frozenset()

    def run(self) -> Tuple[BranchingProgram, PathSetAnnotation]:
        bp = self.bp
        live = reachable(bp)
        order = [node_id for node_id in topological_order(bp) if node_id in live]

        incoming: Dict[int, List[Tuple[int, int]]] = {node_id: [] for node_id in order}
        for node_id in order:
            node = bp.nodes[node_id]
            if isinstance(node, Inner):
                incoming[node.lo].append((node_id, 0))
                incoming[node.hi].append((node_id, 1))

        for node_id in order:
            edges = incoming[node_id]
            carried = [self.sets[src] | {bp.nodes[src].var} for src, _ in edges]
            if node_id == bp.start:
                # Virtual entry edge with an empty path set.
                edges, carried = [(None, None)], [frozenset()]
            target_set = self.required(node_id, carried)
            if target_set is None:
                continue
            for (src, branch), have in zip(edges, carried):
                missing = sorted(target_set - have)
                if not missing:
                    continue
                head = self.splice(missing, node_id, have)
                logger.debug(f"Spliced {len(missing)} node(s) {missing} before node {node_id}")
                if src is None:
                    self.builder.start = head
                else:
                    self.builder.redirect(src, branch, head)
            self.sets[node_id] = target_set

        return self.builder.build(), PathSetAnnotation(dict(self.sets))


def normalize_path_sets(bp: BranchingProgram, mode: ChainMode) -> Tuple[BranchingProgram, PathSetAnnotation]:
    """
    Rewrite a read-once program so all paths into each node query the same variables.

    Nodes are processed in topological order. For each edge into a node, the
    variables that other incoming edges carry but this one does not are
    queried by a chain spliced onto the edge, in ascending index order. Paths
    into a 1-sink are completed to all n variables. Unreachable nodes are
    copied unchanged.

    Raises:
        NotReadOnceError: some path queries a variable twice
    """
    validate(bp)
    require_read_once(bp)
    out, annotation = _Normalizer(bp, mode).run()
    logger.info(f"normalize_path_sets[{mode.value}]: size {size(bp)} -> {size(out)}")
    return out, annotation


def ro_det_to_zs(bp: BranchingProgram) -> BranchingProgram:
    """Read-once deterministic to read-once zero-suppressed, size at most s+2ns."""
    out, _ = normalize_path_sets(bp, ChainMode.DONT_CARE)
    return out


def ro_zs_to_det(bp: BranchingProgram) -> BranchingProgram:
    """Read-once zero-suppressed to read-once deterministic, size at most s+2ns."""
    out, _ = normalize_path_sets(bp, ChainMode.ZERO_CHECK)
    return out


def prune_unreachable(bp: BranchingProgram) -> BranchingProgram:
    """Drop nodes the start node cannot reach."""
    live = reachable(bp)
    nodes = {node_id: node for node_id, node in bp.nodes.items() if node_id in live}
    dropped = len(bp.nodes) - len(nodes)
    if dropped:
        logger.info(f"Pruned {dropped} unreachable node(s)")
    return BranchingProgram(bp.n, nodes, bp.start)
