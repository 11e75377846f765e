"""
Explicit composition of a host system with a reference component.

Only usable when the component is fully known; it gives the ground truth
the black-box checks are compared against.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Set, Tuple

from src.model.component import ComponentStateId, MealyMachine
from src.model.errors import AlphabetMismatch
from src.model.host_system import HostSystem, StateId

logger = logging.getLogger(__name__)

ComposedState = Tuple[StateId, ComponentStateId]


@dataclass
class ComposedSystem:
    system: HostSystem
    machine: MealyMachine
    states: Tuple[ComposedState, ...]
    successors: Dict[ComposedState, Tuple[ComposedState, ...]] = field(default_factory=dict)

    def initial(self, host_state: StateId) -> ComposedState:
        return (host_state, self.machine.initial)

    def predecessors(self) -> Dict[ComposedState, List[ComposedState]]:
        result: Dict[ComposedState, List[ComposedState]] = {state: [] for state in self.states}
        for state, targets in self.successors.items():
            for target in targets:
                result[target].append(state)
        return result

    def reachable(self, start: ComposedState) -> FrozenSet[ComposedState]:
        seen: Set[ComposedState] = {start}
        queue = deque([start])
        while queue:
            state = queue.popleft()
            for target in self.successors[state]:
                if target not in seen:
                    seen.add(target)
                    queue.append(target)
        return frozenset(seen)


def compose(system: HostSystem, machine: MealyMachine) -> ComposedSystem:
    """Pair every host state with every component state.

    Environment transitions leave the component alone; a communication
    transition ``a/b`` is enabled only where the component answers ``a`` with ``b``.
    """
    if not system.inputs <= machine.inputs or not system.outputs <= machine.outputs:
        raise AlphabetMismatch(f"component {machine.name} does not cover the alphabet of system {system.name}")

    states = tuple((s, x) for s in system.states for x in machine.states)
    successors: Dict[ComposedState, Tuple[ComposedState, ...]] = {}
    for s, x in states:
        targets = []
        for transition in system.outgoing(s):
            if not transition.is_communication:
                targets.append((transition.target, x))
                continue
            answer = machine.delta.get((x, transition.input))
            if answer is not None and answer[0] == transition.output:
                targets.append((transition.target, answer[1]))
        successors[(s, x)] = tuple(sorted(set(targets)))
    logger.debug("Composed %s with %s: %d states", system.name, machine.name, len(states))
    return ComposedSystem(system, machine, states, successors)
