"""
Zero-suppressed program to circuit compiler.

Each level of the leveled transition system becomes a LevelMap: for every
source index, the binary target index and the passed-variable mask as gate
ids. Adjacent maps are composed pairwise until one map remains; its start
row decides acceptance together with the all-zeros check on unmasked
variables.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from ..core.program import BranchingProgram, size
from .gates import Circuit, CircuitBuilder
from .leveled import LeveledTransitionSystem, Pass, levelize_zs, width_of_leveled

logger = logging.getLogger(__name__)

# Reported constants of the depth guarantee
#   depth <= DEPTH_C * (ceil(log2 w) + 1) * (ceil(log2 L) + 1) + DEPTH_C_PRIME * ceil(log2 n)
DEPTH_C = 5
DEPTH_C_PRIME = 1


def ceil_log2(x: int) -> int:
    """ceil(log2 x) for x >= 1."""
    return (x - 1).bit_length()


def index_bits(domain_size: int) -> int:
    """Bits used to encode an index into a domain of the given size."""
    return max(1, ceil_log2(domain_size))


@dataclass(frozen=True)
class MapRow:
    target: Tuple[int, ...]   # gate ids, least significant bit first
    mask: Tuple[int, ...]     # gate ids, mask[j - 1] is "x_j was queried"


@dataclass(frozen=True)
class LevelMap:
    """Transition over a contiguous level range, one row per source index."""
    rows: Tuple[MapRow, ...]
    target_size: int


@dataclass(frozen=True)
class CompileReport:
    size: int
    depth: int
    levels: int
    width: int
    rounds: int
    depth_bound: int
    c: int = DEPTH_C
    c_prime: int = DEPTH_C_PRIME

    def to_text(self) -> str:
        return "\n".join([
            f"size = {self.size}",
            f"depth = {self.depth}",
            f"levels = {self.levels}",
            f"width = {self.width}",
            f"rounds = {self.rounds}",
            f"depth_bound = {self.depth_bound} (C = {self.c}, C' = {self.c_prime})",
        ]) + "\n"


def depth_bound(width: int, levels: int, n: int) -> int:
    return (DEPTH_C * (ceil_log2(width) + 1) * (ceil_log2(max(levels, 1)) + 1)
            + DEPTH_C_PRIME * ceil_log2(n))


class ZsCircuitCompiler:
    """
    Builds the circuit for one leveled transition system.

    base_maps, compose and output_gate are exposed separately so callers
    can compose maps in any bracketing.
    """

    def __init__(self, lts: LeveledTransitionSystem):
        self.lts = lts
        self.builder = CircuitBuilder(lts.n)
        self.rounds = 0

    def _const_index(self, value: int, bits: int) -> Tuple[int, ...]:
        return tuple(self.builder.const((value >> i) & 1) for i in range(bits))

    def _const_mask(self, mask: int) -> Tuple[int, ...]:
        return tuple(self.builder.const((mask >> j) & 1) for j in range(self.lts.n))

    def base_maps(self) -> List[LevelMap]:
        b = self.builder
        maps = []
        for t, level in enumerate(self.lts.levels):
            target_size = self.lts.domain_size(t + 1)
            bits = index_bits(target_size)
            rows = []
            for entry in level:
                if isinstance(entry, Pass):
                    rows.append(MapRow(self._const_index(entry.route.target, bits),
                                       self._const_mask(entry.route.mask)))
                    continue
                x = b.input(entry.var)
                t0 = self._const_index(entry.on0.target, bits)
                t1 = self._const_index(entry.on1.target, bits)
                m0 = self._const_mask(entry.on0.mask)
                m1 = self._const_mask(entry.on1.mask)
                rows.append(MapRow(
                    tuple(b.mux(x, hi, lo) for hi, lo in zip(t1, t0)),
                    tuple(b.mux(x, hi, lo) for hi, lo in zip(m1, m0)),
                ))
            maps.append(LevelMap(tuple(rows), target_size))
        return maps

    def equals(self, index: Sequence[int], value: int) -> int:
        """One-hot indicator [index == value] as a balanced AND of literals."""
        b = self.builder
        literals = [bit if (value >> i) & 1 else b.not_(bit) for i, bit in enumerate(index)]
        return b.and_all(literals)

    def compose(self, first: LevelMap, second: LevelMap) -> LevelMap:
        """Apply first, then second; masks are ORed inside the selector."""
        b = self.builder
        rows = []
        for row in first.rows:
            selectors = [self.equals(row.target, s) for s in range(len(second.rows))]
            target = tuple(
                b.or_all([b.and_(sel, nxt.target[i]) for sel, nxt in zip(selectors, second.rows)])
                for i in range(len(second.rows[0].target))
            )
            mask = tuple(
                b.or_all([b.and_(sel, b.or_(nxt.mask[j], row.mask[j]))
                          for sel, nxt in zip(selectors, second.rows)])
                for j in range(self.lts.n)
            )
            rows.append(MapRow(target, mask))
        return LevelMap(tuple(rows), second.target_size)

    def compose_all(self, maps: List[LevelMap]) -> LevelMap:
        """Pairwise rounds, ceil(log2 L) of them."""
        while len(maps) > 1:
            paired = [self.compose(maps[i], maps[i + 1]) for i in range(0, len(maps) - 1, 2)]
            if len(maps) % 2:
                paired.append(maps[-1])
            maps = paired
            self.rounds += 1
            logger.debug(f"Composition round {self.rounds}: {len(maps)} map(s), {len(self.builder.gates)} gates")
        return maps[0]

    def output_gate(self, final: LevelMap) -> int:
        """[target = accept] AND every variable is either masked or 0."""
        b = self.builder
        row = final.rows[self.lts.start_index]
        accept = self.equals(row.target, self.lts.accept_index)
        zeros = b.and_all([b.or_(row.mask[j - 1], b.not_(b.input(j))) for j in range(1, self.lts.n + 1)])
        return b.and_(accept, zeros)

    def compile(self) -> Circuit:
        if self.lts.level_count == 0:
            # identity over the terminal domain, one row per terminal index
            final = LevelMap(tuple(MapRow(self._const_index(i, 1), self._const_mask(0)) for i in range(2)), 2)
        else:
            final = self.compose_all(self.base_maps())
        return self.builder.build(self.output_gate(final))


def compile_with_report(bp: BranchingProgram) -> Tuple[Circuit, CompileReport]:
    lts = levelize_zs(bp)
    compiler = ZsCircuitCompiler(lts)
    circuit = compiler.compile()
    width = width_of_leveled(lts)
    report = CompileReport(
        size=circuit.size,
        depth=circuit.depth,
        levels=lts.level_count,
        width=width,
        rounds=compiler.rounds,
        depth_bound=depth_bound(width, lts.level_count, bp.n),
    )
    logger.info(
        f"Compiled program of size {size(bp)}: {report.size} gates, depth {report.depth} "
        f"(bound {report.depth_bound}), {report.levels} levels, width {report.width}"
    )
    return circuit, report


def compile_zs_to_circuit(bp: BranchingProgram) -> Circuit:
    """Circuit computing the zero-suppressed semantics of bp."""
    circuit, _ = compile_with_report(bp)
    return circuit
