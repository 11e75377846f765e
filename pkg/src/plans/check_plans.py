"""
Check Plans Module

A check plan is the component-independent half of a check: closures,
communication or witness graphs and their bounds. Building one never talks to
a component; running one can be repeated against any component that shares
the interface.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import graphviz

from config import RunOptions
from src.ctl.engine import CtlAnalysis, analyze_ctl, run_ctl
from src.ctl.id_expr import is_one
from src.ctl.witness import witness_graph_to_dot
from src.formula.ast import CtlFormula
from src.liveness.bounds import CommBounds, comm_bounds
from src.liveness.closures import ClosureRelations, compute_closures
from src.liveness.comm_graph import CommunicationGraph, Definite, check_io
from src.liveness.dot_export import communication_graph_to_dot
from src.liveness.product import DegeneralizedSystem, LtlTableauProduct, Tableau, build_product, degeneralize
from src.model.experiments import ExperimentSession, InputSequence
from src.model.host_system import HostSystem, StateId
from src.testing.search import WitnessSearch
from src.testing.trace import SearchTrace

logger = logging.getLogger(__name__)

SOURCE_CLOSURE = "closure"
SOURCE_LABELING = "labeling"
SOURCE_TESTING = "testing"


@dataclass(frozen=True)
class CheckOutcome:
    verdict: bool
    source: str
    witness: Optional[InputSequence] = None


class LivenessPlan:
    def __init__(self, system: HostSystem, source: StateId, target: StateId, result, bounds: Optional[CommBounds]):
        self.system = system
        self.source = source
        self.target = target
        self.result = result
        self.bounds = bounds

    @property
    def is_definite(self) -> bool:
        return isinstance(self.result, Definite)

    @property
    def graph(self) -> Optional[CommunicationGraph]:
        return None if self.is_definite else self.result

    def length_limit(self, state_bound: int) -> int:
        if self.bounds is None:
            return 0
        return (state_bound + 1) * self.bounds.budget(state_bound)

    def graphs(self) -> List[Tuple[str, graphviz.Digraph]]:
        if self.is_definite:
            return []
        return [(f"communication_{self.source}_{self.target}.dot", communication_graph_to_dot(self.result))]

    def run(self, session: ExperimentSession, trace: Optional[SearchTrace] = None) -> CheckOutcome:
        if self.is_definite:
            return CheckOutcome(self.result.verdict, SOURCE_CLOSURE)
        search = WitnessSearch(session, session.handle.state_bound, trace=trace)
        verdict = search.test_liveness(self.result, self.bounds)
        return CheckOutcome(verdict, SOURCE_TESTING, search.witness if verdict else None)


class CtlPlan:
    def __init__(self, analysis: CtlAnalysis):
        self.analysis = analysis

    @property
    def is_definite(self) -> bool:
        label = self.analysis.root_label
        return label is None or is_one(label)

    def length_limit(self, state_bound: int) -> int:
        return self.analysis.length_limit(state_bound)

    def graphs(self) -> List[Tuple[str, graphviz.Digraph]]:
        return [
            (f"witness_{graph.id}_{graph.kind.value}.dot", witness_graph_to_dot(graph))
            for graph in self.analysis.registry
        ]

    def run(self, session: ExperimentSession, trace: Optional[SearchTrace] = None) -> CheckOutcome:
        source = SOURCE_LABELING if self.is_definite else SOURCE_TESTING
        return CheckOutcome(run_ctl(self.analysis, session, trace), source)


class LtlPlan:
    def __init__(
        self,
        product: LtlTableauProduct,
        degeneralized: DegeneralizedSystem,
        liveness_plans: Tuple[LivenessPlan, ...],
    ):
        self.product = product
        self.degeneralized = degeneralized
        self.liveness_plans = liveness_plans

    def length_limit(self, state_bound: int) -> int:
        return max((plan.length_limit(state_bound) for plan in self.liveness_plans), default=0)

    def graphs(self) -> List[Tuple[str, graphviz.Digraph]]:
        return [entry for plan in self.liveness_plans for entry in plan.graphs()]

    def run(self, session: ExperimentSession, trace: Optional[SearchTrace] = None) -> CheckOutcome:
        tested = False
        # closure-decided queries first, so a definite answer needs no experiment
        ordered = sorted(self.liveness_plans, key=lambda plan: not plan.is_definite)
        for plan in ordered:
            outcome = plan.run(session, trace)
            tested = tested or outcome.source == SOURCE_TESTING
            if outcome.verdict:
                return outcome
        return CheckOutcome(False, SOURCE_TESTING if tested else SOURCE_CLOSURE)


def create_liveness_plan(
    system: HostSystem,
    source: StateId,
    target: StateId,
    options: RunOptions,
    closures: Optional[ClosureRelations] = None,
) -> LivenessPlan:
    """Create a plan for "target is reached infinitely often from source"."""
    result = check_io(system, source, target, closures)
    bounds = None
    if isinstance(result, CommunicationGraph):
        bounds = comm_bounds(result, options.bound_mode, options.exact_threshold)
    return LivenessPlan(system, source, target, result, bounds)


def create_ctl_plan(
    system: HostSystem, formula: Union[str, CtlFormula], state: StateId, options: RunOptions
) -> CtlPlan:
    """Create a plan for a CTL formula at one state."""
    return CtlPlan(analyze_ctl(system, formula, state, options.bound_mode, options.exact_threshold))


def create_ltl_plan(system: HostSystem, tableau: Tableau, state: StateId, options: RunOptions) -> LtlPlan:
    """Create a plan for the path formula a tableau accepts, checked at one state."""
    product = build_product(system, tableau, state)
    degeneralized = degeneralize(product)
    plans: List[LivenessPlan] = []
    if degeneralized.system is not None and degeneralized.initial_states:
        closures = compute_closures(degeneralized.system)
        for start in sorted(degeneralized.initial_states):
            for target in sorted(degeneralized.targets):
                plans.append(create_liveness_plan(degeneralized.system, start, target, options, closures))
    logger.info(
        "LTL plan for %s: %d initial product states, %d targets, %d liveness queries",
        tableau.name,
        len(degeneralized.initial_states),
        len(degeneralized.targets),
        len(plans),
    )
    return LtlPlan(product, degeneralized, tuple(plans))
