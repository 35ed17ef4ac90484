"""Leveled transition systems: the compiler's intermediate form for programs."""

import logging
from dataclasses import dataclass
from typing import Dict, Hashable, List, Tuple, Union

from ..core.exceptions import AssignmentMismatchError
from ..core.program import Assignment, BranchingProgram, Inner, Sink, longest_distances, validate

logger = logging.getLogger(__name__)

REJECT_INDEX = 0
ACCEPT_INDEX = 1


@dataclass(frozen=True)
class Route:
    """Edge into the next level: target index plus the variables it puts on the path."""
    target: int
    mask: int = 0


@dataclass(frozen=True)
class Query:
    var: int
    on0: Route
    on1: Route


@dataclass(frozen=True)
class Pass:
    """Identity row bridging a level; queries nothing, so its mask is empty."""
    route: Route


Entry = Union[Query, Pass]


@dataclass(frozen=True)
class LeveledTransitionSystem:
    """
    Levels of entries; targets at level t index into level t+1.

    After the last level comes a two-slot terminal domain: REJECT_INDEX for
    every 0-sink and ACCEPT_INDEX for every 1-sink. A program whose start is
    a sink has no levels and start_index is already terminal.
    """

    n: int
    levels: Tuple[Tuple[Entry, ...], ...]
    start_index: int
    accept_index: int = ACCEPT_INDEX

    @property
    def level_count(self) -> int:
        return len(self.levels)

    def domain_size(self, t: int) -> int:
        """Entry count of level t; level_count addresses the terminal domain."""
        return len(self.levels[t]) if t < len(self.levels) else 2


def width_of_leveled(lts: LeveledTransitionSystem) -> int:
    """Largest domain size, the terminal pair included."""
    return max([2] + [len(level) for level in lts.levels])


def _var_bit(var: int) -> int:
    return 1 << (var - 1)


def levelize_zs(bp: BranchingProgram) -> LeveledTransitionSystem:
    """
    Layer reachable nodes by longest distance from start.

    Edges that skip levels are carried by Pass entries, one per pending
    target and level; sinks travel to the terminal domain the same way.
    No query is invented, so zero-suppressed semantics is preserved.
    """
    validate(bp)
    dist = longest_distances(bp)

    def key_of(node_id: int) -> Hashable:
        node = bp.nodes[node_id]
        return ('sink', node.value) if isinstance(node, Sink) else ('node', node_id)

    start = bp.nodes[bp.start]
    if isinstance(start, Sink):
        return LeveledTransitionSystem(bp.n, (), ACCEPT_INDEX if start.value == 1 else REJECT_INDEX)

    level_count = 1 + max(d for node_id, d in dist.items() if isinstance(bp.nodes[node_id], Inner))

    # Domains: ordered keys per level
    domains: List[List[Hashable]] = [[key_of(bp.start)]]
    for t in range(level_count):
        wanted = set()
        for key in domains[t]:
            if key[0] == 'node' and dist[key[1]] == t:
                node = bp.nodes[key[1]]
                wanted.update((key_of(node.lo), key_of(node.hi)))
            else:
                wanted.add(key)
        if t + 1 == level_count:
            break
        domains.append(sorted(wanted, key=lambda k: (k[0] == 'sink', k[1])))

    levels: List[Tuple[Entry, ...]] = []
    for t in range(level_count):
        if t + 1 < level_count:
            index: Dict[Hashable, int] = {key: i for i, key in enumerate(domains[t + 1])}
        else:
            index = {('sink', 0): REJECT_INDEX, ('sink', 1): ACCEPT_INDEX}
        entries: List[Entry] = []
        for key in domains[t]:
            if key[0] == 'node' and dist[key[1]] == t:
                node = bp.nodes[key[1]]
                bit = _var_bit(node.var)
                entries.append(Query(
                    node.var,
                    Route(index[key_of(node.lo)], bit),
                    Route(index[key_of(node.hi)], bit),
                ))
            else:
                entries.append(Pass(Route(index[key])))
        levels.append(tuple(entries))

    lts = LeveledTransitionSystem(bp.n, tuple(levels), 0)
    logger.debug(f"Levelized program: {lts.level_count} levels, width {width_of_leveled(lts)}")
    return lts


def run_lts(lts: LeveledTransitionSystem, a: Assignment) -> int:
    """Walk the levels, union route masks; accept iff at accept and unmasked variables are 0."""
    if a.n != lts.n:
        raise AssignmentMismatchError(lts.n, a.n)
    index = lts.start_index
    mask = 0
    for level in lts.levels:
        entry = level[index]
        if isinstance(entry, Query):
            route = entry.on1 if a[entry.var] else entry.on0
        else:
            route = entry.route
        index = route.target
        mask |= route.mask
    if index != lts.accept_index:
        return 0
    return int((a.index & ~mask) == 0)
