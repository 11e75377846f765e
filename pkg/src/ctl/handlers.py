"""
Labeling of host states for normalized CTL.

Each handler returns a labeling function (a partial map from states to ID
expressions). A state is labeled 1 when the subformula holds there no matter
how the component behaves; it is labeled with a witness-graph id when a test
on the component has to decide it. Temporal handlers also register the
witness graph that such a test walks.
"""

import logging
from collections import deque
from typing import Tuple

from src.ctl.id_expr import ONE, Ident, Labeling, NotId, OrId, is_one
from src.ctl.witness import WitnessGraph, WitnessKind, WitnessRegistry
from src.formula import ast
from src.model.host_system import HostSystem, StateId
from src.model.scc import nontrivial_components

logger = logging.getLogger(__name__)


def _label(labeling: Labeling, state: StateId, value) -> bool:
    """Assign ``value`` unless the state already carries 1; True if it changed."""
    current = labeling.get(state)
    if current is not None and (is_one(current) or current == value):
        return False
    if current is not None and not is_one(value):
        raise AssertionError(f"state {state} labeled with both {current} and {value}")
    labeling[state] = value
    return True


def handle_atomic(system: HostSystem, formula) -> Labeling:
    if isinstance(formula, ast.TrueConst):
        return {state: ONE for state in system.states}
    return {state: ONE for state in system.states if system.holds(state, formula.name)}


def handle_union(first: Labeling, second: Labeling) -> Labeling:
    result: Labeling = {}
    for state in sorted(set(first) | set(second)):
        if state in first and state in second:
            if is_one(first[state]) or is_one(second[state]):
                result[state] = ONE
            else:
                result[state] = OrId(first[state], second[state])
        else:
            result[state] = first[state] if state in first else second[state]
    return result


def handle_negation(system: HostSystem, labeling: Labeling) -> Labeling:
    result: Labeling = {}
    for state in system.states:
        if state not in labeling:
            result[state] = ONE
        elif not is_one(labeling[state]):
            result[state] = NotId(labeling[state])
    return result


def handle_ex(system: HostSystem, lg: Labeling, registry: WitnessRegistry) -> Tuple[Labeling, WitnessGraph]:
    ident = Ident(registry.next_id)
    result: Labeling = {}
    edges = []
    for transition in system.transitions:
        if transition.target not in lg:
            continue
        edges.append(transition)
        free = not transition.is_communication and is_one(lg[transition.target])
        _label(result, transition.source, ONE if free else ident)

    nodes = frozenset(lg) | {edge.source for edge in edges}
    graph = registry.register(WitnessGraph(WitnessKind.EX, ident.value, nodes, tuple(edges), (dict(lg),)))
    logger.debug("EX graph %d: %d nodes, labels %d states", graph.id, len(nodes), len(result))
    return result, graph


def _propagate_back(system: HostSystem, domain: Labeling, result: Labeling, ident: Ident):
    """Backward worklist inside ``domain``: a free step into a 1-state keeps 1."""
    worklist = deque(sorted(result))
    while worklist:
        target = worklist.popleft()
        for transition in system.incoming(target):
            source = transition.source
            if source not in domain:
                continue
            free = (
                not transition.is_communication
                and is_one(domain[source])
                and is_one(result[target])
            )
            if _label(result, source, ONE if free else ident):
                worklist.append(source)


def handle_eu(
    system: HostSystem, l1: Labeling, l2: Labeling, registry: WitnessRegistry
) -> Tuple[Labeling, WitnessGraph]:
    ident = Ident(registry.next_id)
    result: Labeling = {}
    for state in sorted(l2):
        _label(result, state, ONE if is_one(l2[state]) else ident)
    _propagate_back(system, l1, result, ident)

    nodes = frozenset(result)
    graph = registry.register(
        WitnessGraph(WitnessKind.EU, ident.value, nodes, system.induced_transitions(nodes), (dict(l1), dict(l2)))
    )
    logger.debug("EU graph %d: %d nodes", graph.id, len(nodes))
    return result, graph


def handle_eg(system: HostSystem, lg: Labeling, registry: WitnessRegistry) -> Tuple[Labeling, WitnessGraph]:
    ident = Ident(registry.next_id)
    domain = sorted(lg)

    def inside(state):
        return [t.target for t in system.outgoing(state) if t.target in lg]

    def free_inside(state):
        return [
            t.target
            for t in system.outgoing(state)
            if not t.is_communication and t.target in lg and is_one(lg[t.target])
        ]

    result: Labeling = {}
    certain = [state for state in domain if is_one(lg[state])]
    for component in nontrivial_components(certain, free_inside):
        for state in component:
            _label(result, state, ONE)
    for component in nontrivial_components(domain, inside):
        for state in component:
            _label(result, state, ident)
    _propagate_back(system, lg, result, ident)

    nodes = frozenset(result)
    graph = registry.register(
        WitnessGraph(WitnessKind.EG, ident.value, nodes, system.induced_transitions(nodes), (dict(lg),))
    )
    logger.debug("EG graph %d: %d nodes", graph.id, len(nodes))
    return result, graph


def process_ctl(system: HostSystem, formula, registry: WitnessRegistry) -> Labeling:
    """Label ``system`` bottom-up for a normalized formula."""
    if isinstance(formula, (ast.TrueConst, ast.Atom)):
        return handle_atomic(system, formula)
    if isinstance(formula, ast.Not):
        return handle_negation(system, process_ctl(system, formula.arg, registry))
    if isinstance(formula, ast.Or):
        return handle_union(process_ctl(system, formula.left, registry), process_ctl(system, formula.right, registry))
    if isinstance(formula, ast.EX):
        return handle_ex(system, process_ctl(system, formula.arg, registry), registry)[0]
    if isinstance(formula, ast.EU):
        l1 = process_ctl(system, formula.left, registry)
        l2 = process_ctl(system, formula.right, registry)
        return handle_eu(system, l1, l2, registry)[0]
    if isinstance(formula, ast.EG):
        return handle_eg(system, process_ctl(system, formula.arg, registry), registry)[0]
    raise TypeError(f"formula is not in normal form: {formula!r}")
