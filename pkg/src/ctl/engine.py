"""CTL checking of a host system with a black-box component."""

import logging
from dataclasses import dataclass
from typing import Mapping, Optional, Union

from src.ctl.handlers import process_ctl
from src.ctl.id_expr import IdExpr, Labeling, is_one
from src.ctl.witness import WitnessRegistry
from src.formula.ast import CtlFormula, atoms
from src.formula.normalize import NormalizedCtl, normalize
from src.formula.parser import parse_ctl
from src.liveness.bounds import DEFAULT_EXACT_THRESHOLD, BoundMode, CommBounds, witness_bounds
from src.model.errors import ValidationError
from src.model.experiments import ExperimentSession
from src.model.host_system import HostSystem, StateId
from src.testing.search import WitnessSearch
from src.testing.trace import SearchTrace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CtlAnalysis:
    """Everything about a CTL check that does not depend on the component."""

    system: HostSystem
    state: StateId
    formula: CtlFormula
    normalized: NormalizedCtl
    labeling: Labeling
    registry: WitnessRegistry
    bounds: Mapping[int, CommBounds]

    @property
    def root_label(self) -> Optional[IdExpr]:
        return self.labeling.get(self.state)

    def length_limit(self, state_bound: int) -> int:
        """Longest experiment the nested searches may issue."""
        widest = max((b.n_search for b in self.bounds.values()), default=0)
        k = max(self.normalized.operator_count, 1)
        return k * (state_bound + 1) * state_bound * max(widest, 1)


def analyze_ctl(
    system: HostSystem,
    formula: Union[str, CtlFormula],
    state: StateId,
    bound_mode: BoundMode = BoundMode.AUTO,
    threshold: int = DEFAULT_EXACT_THRESHOLD,
) -> CtlAnalysis:
    if isinstance(formula, str):
        formula = parse_ctl(formula)
    system.require_state(state)
    unknown = atoms(formula) - system.propositions
    if unknown:
        raise ValidationError(f"formula uses unknown propositions: {', '.join(sorted(unknown))}")

    normalized = normalize(formula)
    registry = WitnessRegistry()
    labeling = process_ctl(system, normalized.formula, registry)
    bounds = {graph.id: witness_bounds(graph.nodes, graph.edges, bound_mode, threshold) for graph in registry}
    logger.info(
        "Labeled %s for %d temporal operators; %d witness graphs",
        system.name,
        normalized.operator_count,
        len(registry),
    )
    return CtlAnalysis(system, state, formula, normalized, labeling, registry, bounds)


def check_ctl(
    system: HostSystem,
    session: ExperimentSession,
    state: StateId,
    formula: Union[str, CtlFormula],
    bound_mode: BoundMode = BoundMode.AUTO,
    trace: Optional[SearchTrace] = None,
) -> bool:
    analysis = analyze_ctl(system, formula, state, bound_mode)
    return run_ctl(analysis, session, trace)


def run_ctl(analysis: CtlAnalysis, session: ExperimentSession, trace: Optional[SearchTrace] = None) -> bool:
    label = analysis.root_label
    if label is None:
        return False
    if is_one(label):
        return True
    search = WitnessSearch(session, session.handle.state_bound, analysis.registry, analysis.bounds, trace)
    return search.test_wg((), analysis.state, label)
