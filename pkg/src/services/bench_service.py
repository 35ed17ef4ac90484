"""Size and depth benchmarks across representations."""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

from ..circuit.compiler import ceil_log2, compile_with_report, index_bits
from ..core.program import size
from ..core.truth_table import Family, family_program, gen_family
from ..dtree.complexity import DEFAULT_COMPLEXITY_CAP, d_complexity, z_complexity
from ..formula.ast import expr_size
from ..formula.evaluator import family_dnf, family_zsup_form
from ..transforms.conversions import det_to_zs, ro_det_to_zs
from ..utils.generators import random_leveled_program

logger = logging.getLogger(__name__)

BENCH_WIDTH = 5


@dataclass(frozen=True)
class FamilyRow:
    n: int
    k: Optional[int]
    det_size: int         # natural deterministic program
    zs_size: int          # det_to_zs of it
    ro_zs_size: int       # read-once normalization of it
    dnf_size: int         # literal count of the plain DNF
    zsup_size: int        # literal count of the zero-suppressed form
    d: Optional[int]
    z: Optional[int]
    circuit_size: int
    circuit_depth: int


@dataclass(frozen=True)
class ScalingRow:
    levels: int
    width: int
    size: int
    depth: int
    depth_bound: int
    round_bound: int          # round_depth_bound for this row
    increase: Optional[int]   # depth change since the previous row


@dataclass(frozen=True)
class ScalingReport:
    rows: List[ScalingRow]
    per_round_bound: int

    @property
    def max_increase(self) -> int:
        increases = [row.increase for row in self.rows if row.increase is not None]
        return max(increases) if increases else 0


def per_round_depth(width: int) -> int:
    """Depth added by one composition round at the given width."""
    return 2 + ceil_log2(index_bits(width)) + ceil_log2(width)


def round_depth_bound(width: int, levels: int, n: int) -> int:
    """
    Depth of the compiled circuit as a function of the round count.

    Base maps have depth at most 1 and each of the ceil(log2 L) rounds adds
    at most per_round_depth(width); the output gate adds 2 + ceil(log2 n).
    """
    return 3 + ceil_log2(n) + per_round_depth(width) * ceil_log2(max(levels, 1))


def family_rows(family: Family, ns: Sequence[int], k: Optional[int] = None,
                complexity_cap: int = DEFAULT_COMPLEXITY_CAP) -> List[FamilyRow]:
    rows = []
    for n in ns:
        kk = (k if k is not None else 1) if family is Family.EXACTLY_K else None
        bp = family_program(family, n, kk)
        zs = det_to_zs(bp)
        _, report = compile_with_report(zs)
        d = z = None
        if n <= complexity_cap:
            tt = gen_family(family, n, kk)
            d = d_complexity(tt, cap=complexity_cap).value
            z = z_complexity(tt, cap=complexity_cap).value
        rows.append(FamilyRow(
            n=n,
            k=kk,
            det_size=size(bp),
            zs_size=size(zs),
            ro_zs_size=size(ro_det_to_zs(bp)),
            dnf_size=expr_size(family_dnf(family, n, kk).root),
            zsup_size=expr_size(family_zsup_form(family, n, kk).root),
            d=d,
            z=z,
            circuit_size=report.size,
            circuit_depth=report.depth,
        ))
        logger.info(f"bench {family.value} n={n}: det {rows[-1].det_size}, zs {rows[-1].zs_size}")
    return rows


def format_family_rows(rows: List[FamilyRow]) -> str:
    header = ["n", "k", "det", "zs", "ro-zs", "dnf", "zsup", "D", "Z", "gates", "depth"]
    table = [header]
    for row in rows:
        table.append([
            str(row.n), "-" if row.k is None else str(row.k),
            str(row.det_size), str(row.zs_size), str(row.ro_zs_size),
            str(row.dnf_size), str(row.zsup_size),
            "-" if row.d is None else str(row.d), "-" if row.z is None else str(row.z),
            str(row.circuit_size), str(row.circuit_depth),
        ])
    return _align(table)


def width_scaling(levels: Sequence[int], n: int = 8, seed: int = 0, width: int = BENCH_WIDTH) -> ScalingReport:
    """Compile random leveled programs of growing length and record depth."""
    rows: List[ScalingRow] = []
    for L in levels:
        bp = random_leveled_program(seed + L, width, L, n)
        _, report = compile_with_report(bp)
        increase = report.depth - rows[-1].depth if rows else None
        rows.append(ScalingRow(L, report.width, report.size, report.depth, report.depth_bound,
                               round_depth_bound(report.width, report.levels, n), increase))
        logger.info(f"width-{width} L={L}: depth {report.depth} (bound {report.depth_bound})")
    return ScalingReport(rows, per_round_depth(width))


def format_scaling(report: ScalingReport) -> str:
    table = [["levels", "width", "gates", "depth", "bound", "round-bound", "increase"]]
    for row in report.rows:
        table.append([str(row.levels), str(row.width), str(row.size), str(row.depth),
                      str(row.depth_bound), str(row.round_bound),
                      "-" if row.increase is None else str(row.increase)])
    text = _align(table)
    return text + (f"max increase per doubling = {report.max_increase}\n"
                   f"per-round depth bound = {report.per_round_bound}\n")


def _align(table: List[List[str]]) -> str:
    widths = [max(len(row[i]) for row in table) for i in range(len(table[0]))]
    return "".join("  ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip() + "\n" for row in table)
