"""
Reduction of path-formula checking to liveness on a product system.

A tableau is supplied as an input artifact: states, edges, a propositional
guard per state, the states satisfying the formula and a family of fairness
sets. The product with the host system keeps exactly the paths common to
both; a counter construction then turns "every fairness set infinitely
often" into "some target infinitely often", which the liveness engine checks.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Mapping, Optional, Tuple

from src.formula.ast import PathFormula, atoms
from src.model.errors import AlphabetMismatch, UnknownState
from src.model.host_system import HostSystem, StateId, Transition

logger = logging.getLogger(__name__)

TableauStateId = str


@dataclass(frozen=True)
class Literal:
    name: str
    positive: bool = True

    def __str__(self):
        return self.name if self.positive else f"!{self.name}"


@dataclass(frozen=True)
class Tableau:
    name: str
    states: Tuple[TableauStateId, ...]
    initial: FrozenSet[TableauStateId]
    sat_tag: str
    sat: FrozenSet[TableauStateId]
    fairness: Tuple[FrozenSet[TableauStateId], ...]
    edges: FrozenSet[Tuple[TableauStateId, TableauStateId]]
    guards: Mapping[TableauStateId, Tuple[Literal, ...]] = field(default_factory=dict)
    formula: Optional[PathFormula] = None

    @property
    def propositions(self) -> FrozenSet[str]:
        names = {literal.name for literals in self.guards.values() for literal in literals}
        if self.formula is not None:
            names |= atoms(self.formula)
        return frozenset(names)

    def admits(self, state: TableauStateId, system: HostSystem, host_state: StateId) -> bool:
        """True when the guard of ``state`` holds in ``host_state``."""
        return all(system.holds(host_state, lit.name) == lit.positive for lit in self.guards.get(state, ()))

    def successors(self, state: TableauStateId) -> Tuple[TableauStateId, ...]:
        return tuple(sorted(target for source, target in self.edges if source == state))


def pair_id(host_state: StateId, tableau_state: TableauStateId) -> StateId:
    return f"{host_state}|{tableau_state}"


def counter_id(state: StateId, counter: int) -> StateId:
    return f"{state}#{counter}"


@dataclass(frozen=True)
class LtlTableauProduct:
    tableau: Tableau
    system: Optional[HostSystem]
    initial_states: FrozenSet[StateId]
    fairness_sets: Tuple[FrozenSet[StateId], ...]
    pairs: Mapping[StateId, Tuple[StateId, TableauStateId]]

    @property
    def is_empty(self) -> bool:
        return self.system is None or not self.initial_states


@dataclass(frozen=True)
class DegeneralizedSystem:
    system: Optional[HostSystem]
    initial_states: FrozenSet[StateId]
    targets: FrozenSet[StateId]


def build_product(system: HostSystem, tableau: Tableau, start: Optional[StateId] = None) -> LtlTableauProduct:
    missing = tableau.propositions - system.propositions
    if missing:
        raise AlphabetMismatch(
            f"tableau {tableau.name} uses propositions unknown to system {system.name}: {', '.join(sorted(missing))}"
        )
    if start is not None and start not in system.states:
        raise UnknownState(f"state {start} is not declared in system {system.name}")
    starts = {start} if start is not None else set(system.initial_states)

    pairs: Dict[StateId, Tuple[StateId, TableauStateId]] = {}
    for host_state in system.states:
        for tableau_state in tableau.states:
            if tableau.admits(tableau_state, system, host_state):
                pairs[pair_id(host_state, tableau_state)] = (host_state, tableau_state)

    transitions = []
    for state_id, (host_state, tableau_state) in sorted(pairs.items()):
        successors = tableau.successors(tableau_state)
        for transition in system.outgoing(host_state):
            for next_tableau in successors:
                target_id = pair_id(transition.target, next_tableau)
                if target_id not in pairs:
                    continue
                transitions.append(
                    Transition(
                        source=state_id,
                        target=target_id,
                        event=transition.event,
                        input=transition.input,
                        output=transition.output,
                    )
                )

    initial = frozenset(
        pair_id(s, q) for s in starts for q in tableau.sat if pair_id(s, q) in pairs
    )
    fairness = tuple(
        frozenset(state_id for state_id, (_, q) in pairs.items() if q in fair_set)
        for fair_set in tableau.fairness
    )

    product_system = None
    if pairs:
        product_system = HostSystem(
            name=f"{system.name}x{tableau.name}",
            states=tuple(pairs),
            events=system.events,
            inputs=system.inputs,
            outputs=system.outputs,
            transitions=tuple(transitions),
            initial_states=initial or frozenset(pairs),
            ap_labels={state_id: system.ap_labels.get(s, frozenset()) for state_id, (s, _) in pairs.items()},
        )
    logger.info(
        "Product %s x %s: %d states, %d transitions, %d initial",
        system.name,
        tableau.name,
        len(pairs),
        len(transitions),
        len(initial),
    )
    return LtlTableauProduct(tableau, product_system, initial, fairness, pairs)


def degeneralize(product: LtlTableauProduct) -> DegeneralizedSystem:
    """Counter construction; one or zero fairness sets keep the product as is."""
    system = product.system
    if system is None:
        return DegeneralizedSystem(None, frozenset(), frozenset())

    fairness = product.fairness_sets
    if not fairness:
        return DegeneralizedSystem(system, product.initial_states, frozenset(system.states))
    if len(fairness) == 1:
        return DegeneralizedSystem(system, product.initial_states, fairness[0])

    k = len(fairness)
    transitions = []
    for transition in system.transitions:
        for i in range(k):
            j = (i + 1) % k if transition.source in fairness[i] else i
            transitions.append(
                Transition(
                    source=counter_id(transition.source, i),
                    target=counter_id(transition.target, j),
                    event=transition.event,
                    input=transition.input,
                    output=transition.output,
                )
            )
    states = tuple(counter_id(s, i) for s in system.states for i in range(k))
    initial = frozenset(counter_id(s, 0) for s in product.initial_states)
    degeneralized = HostSystem(
        name=f"{system.name}#{k}",
        states=states,
        events=system.events,
        inputs=system.inputs,
        outputs=system.outputs,
        transitions=tuple(transitions),
        initial_states=initial or frozenset(states),
        ap_labels={counter_id(s, i): system.ap_labels.get(s, frozenset()) for s in system.states for i in range(k)},
    )
    targets = frozenset(counter_id(s, 0) for s in fairness[0])
    return DegeneralizedSystem(degeneralized, initial, targets)
