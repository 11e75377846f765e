"""
Communication bounds of a graph.

``n1`` is the largest number of communication edges on a simple path from the
source to the target, ``n2`` the largest on a simple loop through the target.
Exact values need simple-path enumeration, so larger graphs fall back to the
number of communication edges, which dominates both. In auto mode the
enumeration also runs under a work budget and falls back the same way once
the budget is spent.

The searches use ``n_search``: a shortest witness segment visits each
(host state, component state) pair at most once, so it communicates at most
m times out of each node that has an outgoing communication edge.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from src.model.host_system import StateId, Transition

logger = logging.getLogger(__name__)

DEFAULT_EXACT_THRESHOLD = 12
# Path extensions auto mode spends on one graph before over-approximating.
DEFAULT_PATH_BUDGET = 20_000


class BoundMode(str, Enum):
    AUTO = "auto"
    EXACT = "exact"
    OVERAPPROX = "over"


@dataclass(frozen=True)
class CommBounds:
    n1: int
    n2: int
    n: int
    mode: BoundMode
    comm_nodes: int = 0

    @property
    def n_search(self) -> int:
        return max(self.n, self.comm_nodes)

    def budget(self, state_bound: int) -> int:
        """Communications allowed between two milestones of a search."""
        return state_bound * self.n_search


class _PathBudgetExhausted(Exception):
    pass


class _PathBudget:
    def __init__(self, limit: Optional[int]):
        self.remaining = limit

    def spend(self) -> None:
        if self.remaining is None:
            return
        self.remaining -= 1
        if self.remaining < 0:
            raise _PathBudgetExhausted


def _adjacency(edges: Iterable[Transition]) -> Dict[StateId, List[Transition]]:
    adjacency: Dict[StateId, List[Transition]] = {}
    for edge in sorted(edges):
        adjacency.setdefault(edge.source, []).append(edge)
    return adjacency


def _max_simple(
    adjacency,
    start: StateId,
    stop: Optional[StateId],
    closing: bool,
    budget: Optional[_PathBudget] = None,
) -> int:
    """
    Largest communication count over simple paths leaving ``start``.

    With ``stop`` set only paths ending there count; ``closing`` allows the
    path to end back at ``start`` (a loop). Raises ``_PathBudgetExhausted``
    when ``budget`` runs out.
    """
    budget = budget or _PathBudget(None)
    best = -1

    def visit(state, visited, count):
        nonlocal best
        budget.spend()
        if stop is None:
            best = max(best, count)
        for edge in adjacency.get(state, ()):
            gained = count + (1 if edge.is_communication else 0)
            if stop is not None and edge.target == stop:
                if closing or edge.target not in visited:
                    best = max(best, gained)
                continue
            if edge.target in visited:
                continue
            visit(edge.target, visited | {edge.target}, gained)

    visit(start, frozenset({start}), 0)
    return max(best, 0)


def _resolve_mode(mode: BoundMode, nodes: FrozenSet[StateId], threshold: int) -> BoundMode:
    if mode is BoundMode.AUTO:
        return BoundMode.EXACT if len(nodes) <= threshold else BoundMode.OVERAPPROX
    return mode


def _path_budget(requested: BoundMode) -> _PathBudget:
    # an explicit exact request always enumerates in full
    return _PathBudget(DEFAULT_PATH_BUDGET if requested is BoundMode.AUTO else None)


def _comm_nodes(edges: Iterable[Transition]) -> int:
    return len({edge.source for edge in edges if edge.is_communication})


def _overapprox(edges: Iterable[Transition], comm_nodes: int) -> CommBounds:
    total = sum(1 for edge in edges if edge.is_communication)
    return CommBounds(total, total, total, BoundMode.OVERAPPROX, comm_nodes)


def comm_bounds(graph, mode: BoundMode = BoundMode.AUTO, threshold: int = DEFAULT_EXACT_THRESHOLD) -> CommBounds:
    """Bounds of a communication graph (source to target, loops through target)."""
    requested = BoundMode(mode)
    mode = _resolve_mode(requested, graph.nodes, threshold)
    comm_nodes = _comm_nodes(graph.edges)
    if mode is BoundMode.OVERAPPROX:
        return _overapprox(graph.edges, comm_nodes)

    adjacency = _adjacency(graph.edges)
    budget = _path_budget(requested)
    try:
        if graph.source == graph.target:
            n1 = 0
        else:
            n1 = _max_simple(adjacency, graph.source, graph.target, closing=False, budget=budget)
        n2 = _max_simple(adjacency, graph.target, graph.target, closing=True, budget=budget)
    except _PathBudgetExhausted:
        logger.info("Path enumeration for %s -> %s ran out of budget; over-approximating", graph.source, graph.target)
        return _overapprox(graph.edges, comm_nodes)
    bounds = CommBounds(n1, n2, max(n1, n2), mode, comm_nodes)
    logger.debug("Bounds for %s -> %s: %s", graph.source, graph.target, bounds)
    return bounds


def witness_bounds(
    nodes: FrozenSet[StateId],
    edges: Tuple[Transition, ...],
    mode: BoundMode = BoundMode.AUTO,
    threshold: int = DEFAULT_EXACT_THRESHOLD,
) -> CommBounds:
    """Bounds of a witness graph: the maximum over every simple path in it."""
    requested = BoundMode(mode)
    mode = _resolve_mode(requested, nodes, threshold)
    comm_nodes = _comm_nodes(edges)
    if mode is BoundMode.OVERAPPROX:
        return _overapprox(edges, comm_nodes)
    adjacency = _adjacency(edges)
    budget = _path_budget(requested)
    try:
        n = max(
            (_max_simple(adjacency, start, None, closing=False, budget=budget) for start in sorted(nodes)),
            default=0,
        )
    except _PathBudgetExhausted:
        logger.info("Path enumeration over %d witness nodes ran out of budget; over-approximating", len(nodes))
        return _overapprox(edges, comm_nodes)
    return CommBounds(n, n, n, mode, comm_nodes)
