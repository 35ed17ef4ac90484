"""Truth-table oracle: exhaustive evaluation and the named function families."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, Optional

import numpy as np

from .exceptions import BadParameterError, TooManyVariablesError
from .program import (
    Assignment,
    BranchingProgram,
    Inner,
    ProgramBuilder,
    Semantics,
    reachable,
    topological_order,
)

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_CAP = 20


@dataclass(frozen=True, eq=False)
class TruthTable:
    """
    Output bits of f:{0,1}^n -> {0,1}, indexed by assignment.

    x_1 is the least significant bit of the index.
    """

    n: int
    bits: np.ndarray

    def __post_init__(self):
        if self.n < 0:
            raise BadParameterError(f"Variable count must be non-negative, got {self.n}", n=self.n)
        bits = np.asarray(self.bits, dtype=np.uint8)
        if bits.shape != (1 << self.n,):
            raise BadParameterError(
                f"Truth table over {self.n} variables needs {1 << self.n} bits, got {bits.size}",
                n=self.n, length=int(bits.size)
            )
        bits = bits.copy()
        bits.setflags(write=False)
        object.__setattr__(self, 'bits', bits)

    @classmethod
    def from_string(cls, text: str, n: Optional[int] = None) -> 'TruthTable':
        text = text.strip()
        if any(ch not in "01" for ch in text):
            raise BadParameterError(f"Truth table must be a 0/1 string, got {text!r}")
        if n is None:
            n = max(len(text).bit_length() - 1, 0)
        return cls(n, np.frombuffer(text.encode("ascii"), dtype=np.uint8) - ord("0"))

    @classmethod
    def constant(cls, n: int, value: int) -> 'TruthTable':
        return cls(n, np.full(1 << n, value, dtype=np.uint8))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.bits, other.bits)

    def __hash__(self) -> int:
        return hash((self.n, self.bits.tobytes()))

    def __getitem__(self, index: int) -> int:
        return int(self.bits[index])

    def __len__(self) -> int:
        return int(self.bits.size)

    def to_string(self) -> str:
        return (self.bits + ord("0")).tobytes().decode("ascii")

    def first_difference(self, other: 'TruthTable') -> Optional[int]:
        """Smallest index where the tables disagree, or None."""
        diff = np.flatnonzero(self.bits != other.bits)
        return int(diff[0]) if diff.size else None

    def __repr__(self) -> str:
        shown = self.to_string() if self.n <= 6 else f"{self.to_string()[:64]}..."
        return f"TruthTable(n={self.n}, bits={shown})"


def check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise TooManyVariablesError(n, cap)


def assignments(n: int) -> Iterator[Assignment]:
    for index in range(1 << n):
        yield Assignment.from_index(index, n)


def index_space(n: int, lo: int = 0, hi: Optional[int] = None) -> np.ndarray:
    hi = (1 << n) if hi is None else hi
    return np.arange(lo, hi, dtype=np.int64)


def _eval_block(bp: BranchingProgram, order: List[int], semantics: Semantics,
                lo: int, hi: int) -> np.ndarray:
    """
    Evaluate a block of assignment indices at once.

    Nodes are visited in topological order, so by the time a node is
    processed every assignment that will pass through it is parked there.
    """
    idx = index_space(bp.n, lo, hi)
    position = np.full(idx.size, bp.start, dtype=np.int64)
    seen = np.zeros(idx.size, dtype=np.int64)
    for node_id in order:
        node = bp.nodes[node_id]
        if not isinstance(node, Inner):
            continue
        here = position == node_id
        if not here.any():
            continue
        bit = (idx[here] >> (node.var - 1)) & 1
        position[here] = np.where(bit == 1, node.hi, node.lo)
        seen[here] |= 1 << (node.var - 1)

    values = np.zeros(idx.size, dtype=np.uint8)
    for sink_id in bp.sink_ids(1):
        values[position == sink_id] = 1
    if semantics is Semantics.ZS:
        full = (1 << bp.n) - 1
        values &= ((idx & ~seen & full) == 0).astype(np.uint8)
    return values


def truth_table(
    bp: BranchingProgram,
    semantics: Semantics,
    cap: int = DEFAULT_ENUMERATION_CAP,
    workers: int = 1
) -> TruthTable:
    """
    Exhaustive truth table of a valid program under the chosen semantics.

    Args:
        bp: Valid branching program
        semantics: Semantics.DET or Semantics.ZS
        cap: Largest variable count accepted
        workers: Threads to split the assignment space over; the result does
            not depend on this value

    Raises:
        TooManyVariablesError: bp.n exceeds cap
    """
    check_cap(bp.n, cap)
    live = reachable(bp)
    order = [node_id for node_id in topological_order(bp) if node_id in live]
    total = 1 << bp.n

    if workers <= 1 or total < 1024:
        bits = _eval_block(bp, order, semantics, 0, total)
    else:
        bounds = np.linspace(0, total, workers + 1, dtype=np.int64)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = pool.map(
                lambda lh: _eval_block(bp, order, semantics, int(lh[0]), int(lh[1])),
                zip(bounds[:-1], bounds[1:])
            )
            bits = np.concatenate(list(blocks))

    logger.debug(f"Truth table n={bp.n} semantics={semantics.value} ones={int(bits.sum())}")
    return TruthTable(bp.n, bits)


# ============== Function families ==============

class Family(Enum):
    """Named Boolean function families."""
    CONST1 = "const1"
    AND_OF_NEGATIONS = "and-neg"
    EXACTLY_K = "exactly-k"


def check_family_args(family: Family, n: int, k: Optional[int]) -> None:
    if n < 1:
        raise BadParameterError(f"Family {family.value} needs n >= 1, got {n}", n=n)
    if family is Family.EXACTLY_K:
        if k is None or not 0 <= k <= n:
            raise BadParameterError(f"exactly-k needs 0 <= k <= n, got k={k}, n={n}", n=n, k=k)
    elif k is not None:
        raise BadParameterError(f"Family {family.value} takes no k", k=k)


def popcounts(n: int) -> np.ndarray:
    idx = index_space(n)
    counts = np.zeros(idx.size, dtype=np.int64)
    for j in range(n):
        counts += (idx >> j) & 1
    return counts


def gen_family(family: Family, n: int, k: Optional[int] = None) -> TruthTable:
    """
    Truth table of a named family.

    Const1 is the constant 1, AndOfNegations is NOT x_1 AND ... AND NOT x_n,
    ExactlyK is 1 iff exactly k inputs are 1.

    Raises:
        BadParameterError
    """
    check_family_args(family, n, k)
    if family is Family.CONST1:
        return TruthTable.constant(n, 1)
    if family is Family.AND_OF_NEGATIONS:
        bits = np.zeros(1 << n, dtype=np.uint8)
        bits[0] = 1
        return TruthTable(n, bits)
    return TruthTable(n, (popcounts(n) == k).astype(np.uint8))


def family_program(family: Family, n: int, k: Optional[int] = None) -> BranchingProgram:
    """
    Natural deterministic program for a family.

    Const1 is a bare 1-sink, AndOfNegations a chain of zero tests, and
    ExactlyK the read-once counting program with one node per (variable,
    count-so-far) pair.
    """
    check_family_args(family, n, k)
    builder = ProgramBuilder(n)
    if family is Family.CONST1:
        builder.start = builder.add_sink(1)
        return builder.build()

    zero = builder.add_sink(0)
    one = builder.add_sink(1)
    if family is Family.AND_OF_NEGATIONS:
        target = one
        for var in range(n, 0, -1):
            target = builder.add_inner(var, target, zero)
        builder.start = target
        return builder.build()

    # layer[c] is the node reached after counting c ones so far
    layer = {c: (one if c == k else zero) for c in range(k + 1)}
    for var in range(n, 0, -1):
        remaining = n - var + 1
        next_layer = {}
        for c in range(min(k, var - 1) + 1):
            if k - c > remaining:
                continue
            next_layer[c] = builder.add_inner(var, layer.get(c, zero), layer.get(c + 1, zero))
        layer = next_layer
    builder.start = layer[0]
    return builder.build()
