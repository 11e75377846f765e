"""
Liveness analysis front half: decide "can the system visit the target
infinitely often from the source" from the closures alone when possible,
otherwise cut out the communication graph the black-box search has to explore.
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, Optional, Tuple, Union

from src.liveness.closures import ClosureRelations, compute_closures
from src.model.host_system import HostSystem, StateId, Transition

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Definite:
    """A verdict reached without talking to the component."""

    verdict: bool
    reason: str


@dataclass(frozen=True)
class CommunicationGraph:
    nodes: FrozenSet[StateId]
    edges: Tuple[Transition, ...]
    source: StateId
    target: StateId

    @property
    def comm_edges(self) -> Tuple[Transition, ...]:
        return tuple(edge for edge in self.edges if edge.is_communication)


IOResult = Union[Definite, CommunicationGraph]


def check_io(
    system: HostSystem,
    source: StateId,
    target: StateId,
    closures: Optional[ClosureRelations] = None,
) -> IOResult:
    system.require_state(source)
    system.require_state(target)
    closures = closures or compute_closures(system)
    env, full = closures.env_closure, closures.full_closure

    loops_by_env = (target, target) in env
    loops_at_all = (target, target) in full
    if source == target:
        reach_by_env = reach_at_all = True
    else:
        reach_by_env = (source, target) in env
        reach_at_all = (source, target) in full

    if reach_by_env and loops_by_env:
        logger.info("Liveness %s -> %s holds through environment transitions alone", source, target)
        return Definite(True, "environment transitions alone reach and revisit the target")
    if not reach_at_all:
        return Definite(False, f"{target} is unreachable from {source}")
    if not loops_at_all:
        return Definite(False, f"{target} lies on no cycle")

    nodes = {s for s in system.states if (source, s) in full and (s, target) in full}
    nodes |= {source, target}
    graph = CommunicationGraph(
        nodes=frozenset(nodes),
        edges=system.induced_transitions(nodes),
        source=source,
        target=target,
    )
    logger.info(
        "Communication graph %s -> %s: %d nodes, %d communication edges",
        source,
        target,
        len(graph.nodes),
        len(graph.comm_edges),
    )
    return graph
