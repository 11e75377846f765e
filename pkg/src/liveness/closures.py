"""
One-step relations of a host system and their transitive closures.

``env_closure`` only follows environment transitions, ``full_closure``
follows every transition. Both are irreflexive unless a cycle returns to the
start: a pair (s, s) is present only when s lies on a cycle.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Set, Tuple

from src.model.host_system import HostSystem, StateId

logger = logging.getLogger(__name__)

Relation = FrozenSet[Tuple[StateId, StateId]]


@dataclass(frozen=True)
class ClosureRelations:
    env_step: Relation
    comm_step: Relation
    step: Relation
    env_closure: Relation
    full_closure: Relation


def transitive_closure(states: Iterable[StateId], relation: Relation) -> Relation:
    """Pairs (s, t) such that t is reachable from s in one or more steps."""
    successors: Dict[StateId, Set[StateId]] = {}
    for source, target in relation:
        successors.setdefault(source, set()).add(target)

    pairs = set()
    for start in states:
        seen: Set[StateId] = set()
        frontier = deque(successors.get(start, ()))
        while frontier:
            state = frontier.popleft()
            if state in seen:
                continue
            seen.add(state)
            frontier.extend(successors.get(state, ()))
        pairs.update((start, reached) for reached in seen)
    return frozenset(pairs)


def compute_closures(system: HostSystem) -> ClosureRelations:
    env_step = frozenset((t.source, t.target) for t in system.env_transitions)
    comm_step = frozenset((t.source, t.target) for t in system.comm_transitions)
    step = env_step | comm_step
    closures = ClosureRelations(
        env_step=env_step,
        comm_step=comm_step,
        step=step,
        env_closure=transitive_closure(system.states, env_step),
        full_closure=transitive_closure(system.states, step),
    )
    logger.info(
        "Closures for %s: %d env pairs, %d reachable pairs",
        system.name,
        len(closures.env_closure),
        len(closures.full_closure),
    )
    return closures
