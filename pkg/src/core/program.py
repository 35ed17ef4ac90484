"""Branching program representation, validation and dual-semantics evaluation."""

import logging
from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Set, Tuple, Union

import networkx as nx

from .exceptions import (
    AssignmentMismatchError,
    BadParameterError,
    BadSinkValueError,
    BadVariableIndexError,
    CyclicGraphError,
    DanglingReferenceError,
    MissingStartError,
    NotReadOnceError,
)

logger = logging.getLogger(__name__)


class Semantics(Enum):
    """Output semantics of a branching program."""
    DET = "det"
    ZS = "zs"


@dataclass(frozen=True)
class Inner:
    """Inner node: lo is the 0-edge, hi is the 1-edge."""
    var: int
    lo: int
    hi: int


@dataclass(frozen=True)
class Sink:
    """Terminal node carrying an output bit."""
    value: int


Node = Union[Inner, Sink]


@dataclass(frozen=True)
class Assignment:
    """Total assignment to x_1..x_n; bits[j - 1] is the value of x_j."""

    n: int
    bits: Tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) != self.n:
            raise AssignmentMismatchError(self.n, len(self.bits))

    @classmethod
    def from_index(cls, index: int, n: int) -> 'Assignment':
        """x_1 is the least significant bit of the index."""
        return cls(n, tuple((index >> j) & 1 for j in range(n)))

    @classmethod
    def from_string(cls, text: str) -> 'Assignment':
        """Parse '101' as x_1=1, x_2=0, x_3=1."""
        bits = []
        for ch in text.strip():
            if ch not in "01":
                raise BadParameterError(f"Assignment must be a 0/1 string, got {text!r}", assignment=text)
            bits.append(int(ch))
        return cls(len(bits), tuple(bits))

    @property
    def index(self) -> int:
        return sum(bit << j for j, bit in enumerate(self.bits))

    def __getitem__(self, var: int) -> int:
        return self.bits[var - 1]

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class BranchingProgram:
    """
    DAG of variable-labeled inner nodes and 0/1 sinks.

    The variable universe n is explicit: zero-suppressed semantics depends on
    variables that no node mentions. Instances are not validated on
    construction; call validate() on untrusted input.
    """

    n: int
    nodes: Mapping[int, Node]
    start: int

    def __post_init__(self):
        object.__setattr__(self, "nodes", MappingProxyType(dict(sorted(self.nodes.items()))))

    def __hash__(self) -> int:
        return hash((self.n, self.start, tuple(self.nodes.items())))

    def node(self, node_id: int) -> Node:
        return self.nodes[node_id]

    def inner_items(self) -> Iterator[Tuple[int, Inner]]:
        for node_id, node in self.nodes.items():
            if isinstance(node, Inner):
                yield node_id, node

    def sink_ids(self, value: Optional[int] = None) -> List[int]:
        return [
            node_id for node_id, node in self.nodes.items()
            if isinstance(node, Sink) and (value is None or node.value == value)
        ]

    def graph(self) -> nx.DiGraph:
        """Edge relation as a networkx DiGraph (parallel lo/hi edges collapse)."""
        g = nx.DiGraph()
        g.add_nodes_from(self.nodes)
        for node_id, node in self.inner_items():
            g.add_edge(node_id, node.lo)
            g.add_edge(node_id, node.hi)
        return g


class ProgramBuilder:
    """
    Mutable staging area for programs produced by transformations.

    Fresh ids are allocated above every id already present, so a builder
    seeded from an existing program never collides with its nodes.
    """

    def __init__(self, n: int, nodes: Optional[Mapping[int, Node]] = None, start: Optional[int] = None):
        self.n = n
        self.nodes: Dict[int, Node] = dict(nodes or {})
        self.start = start
        self._next_id = (max(self.nodes) + 1) if self.nodes else 0

    @classmethod
    def from_program(cls, bp: BranchingProgram) -> 'ProgramBuilder':
        return cls(bp.n, bp.nodes, bp.start)

    def fresh_id(self) -> int:
        node_id = self._next_id
        self._next_id += 1
        return node_id

    def add_inner(self, var: int, lo: int, hi: int, node_id: Optional[int] = None) -> int:
        node_id = self.fresh_id() if node_id is None else node_id
        self.nodes[node_id] = Inner(var, lo, hi)
        self._next_id = max(self._next_id, node_id + 1)
        return node_id

    def add_sink(self, value: int, node_id: Optional[int] = None) -> int:
        node_id = self.fresh_id() if node_id is None else node_id
        self.nodes[node_id] = Sink(value)
        self._next_id = max(self._next_id, node_id + 1)
        return node_id

    def redirect(self, node_id: int, branch: int, target: int) -> None:
        """Point the branch-edge (0 = lo, 1 = hi) of an inner node at target."""
        node = self.nodes[node_id]
        if branch == 0:
            self.nodes[node_id] = Inner(node.var, target, node.hi)
        else:
            self.nodes[node_id] = Inner(node.var, node.lo, target)

    def build(self) -> BranchingProgram:
        return BranchingProgram(self.n, self.nodes, self.start)


# ============== Validation ==============

def validate(bp: BranchingProgram) -> None:
    """
    Check every structural invariant of a branching program.

    Raises:
        MissingStartError, BadVariableIndexError, BadSinkValueError,
        DanglingReferenceError, CyclicGraphError
    """
    if bp.start not in bp.nodes:
        raise MissingStartError(bp.start)

    for node_id, node in bp.nodes.items():
        if isinstance(node, Sink):
            if node.value not in (0, 1):
                raise BadSinkValueError(node_id, node.value)
            continue
        if not 1 <= node.var <= bp.n:
            raise BadVariableIndexError(node_id, node.var, bp.n)
        for target in (node.lo, node.hi):
            if target not in bp.nodes:
                raise DanglingReferenceError(node_id, target)

    try:
        cycle = nx.find_cycle(bp.graph())
    except nx.NetworkXNoCycle:
        return
    raise CyclicGraphError(min(edge[0] for edge in cycle))


# ============== Evaluation ==============

def _check_assignment(bp: BranchingProgram, a: Assignment) -> None:
    if a.n != bp.n:
        raise AssignmentMismatchError(bp.n, a.n)


def walk(bp: BranchingProgram, a: Assignment) -> Tuple[int, FrozenSet[int]]:
    """Follow the computation path; return (reached sink id, queried variables)."""
    _check_assignment(bp, a)
    node_id = bp.start
    seen: Set[int] = set()
    node = bp.nodes[node_id]
    while isinstance(node, Inner):
        seen.add(node.var)
        node_id = node.hi if a[node.var] else node.lo
        node = bp.nodes[node_id]
    return node_id, frozenset(seen)


def eval_det(bp: BranchingProgram, a: Assignment) -> int:
    """Deterministic output: the value of the reached sink."""
    sink_id, _ = walk(bp, a)
    return bp.nodes[sink_id].value


def eval_zs(bp: BranchingProgram, a: Assignment) -> int:
    """Zero-suppressed output: reached sink is 1 and every unqueried variable is 0."""
    sink_id, seen = walk(bp, a)
    if bp.nodes[sink_id].value != 1:
        return 0
    return int(all(a[j] == 0 for j in range(1, bp.n + 1) if j not in seen))


def evaluate(bp: BranchingProgram, a: Assignment, semantics: Semantics) -> int:
    return eval_det(bp, a) if semantics is Semantics.DET else eval_zs(bp, a)


# ============== Structure ==============

def size(bp: BranchingProgram) -> int:
    """Node count, sinks included."""
    return len(bp.nodes)


def reachable(bp: BranchingProgram) -> Set[int]:
    g = bp.graph()
    return {bp.start} | nx.descendants(g, bp.start)


def topological_order(bp: BranchingProgram) -> List[int]:
    """Deterministic topological order (smallest id first among ready nodes)."""
    return list(nx.lexicographical_topological_sort(bp.graph()))


def longest_distances(bp: BranchingProgram) -> Dict[int, int]:
    """Longest edge distance from start for every reachable node."""
    live = reachable(bp)
    dist = {bp.start: 0}
    for node_id in topological_order(bp):
        if node_id not in live or node_id not in dist:
            continue
        node = bp.nodes[node_id]
        if isinstance(node, Inner):
            for target in (node.lo, node.hi):
                dist[target] = max(dist.get(target, 0), dist[node_id] + 1)
    return dist


def width(bp: BranchingProgram) -> int:
    """Largest level of the longest-path layering of reachable nodes."""
    counts: Dict[int, int] = {}
    for level in longest_distances(bp).values():
        counts[level] = counts.get(level, 0) + 1
    return max(counts.values())


def find_read_once_violation(bp: BranchingProgram) -> Optional[Tuple[int, int]]:
    """Return (node id, var) of a node that reaches another node with its label, else None."""
    g = bp.graph()
    live = reachable(bp)
    by_var: Dict[int, Set[int]] = {}
    for node_id, node in bp.inner_items():
        if node_id in live:
            by_var.setdefault(node.var, set()).add(node_id)
    for var in sorted(by_var):
        labeled = by_var[var]
        if len(labeled) < 2:
            continue
        for node_id in sorted(labeled):
            if nx.descendants(g, node_id) & labeled:
                return node_id, var
    return None


def is_read_once(bp: BranchingProgram) -> bool:
    """True iff no start-reachable path queries a variable twice."""
    return find_read_once_violation(bp) is None


def require_read_once(bp: BranchingProgram) -> None:
    violation = find_read_once_violation(bp)
    if violation is not None:
        raise NotReadOnceError(*violation)
