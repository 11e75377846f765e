"""
Differential comparison of the black-box engine against the oracle.

Each random instance yields one CTL query at ``s0`` and one liveness query.
The engine sees the reference machine only through an experiment session;
the oracle composes it explicitly. A disagreement under an understated state
bound is a precondition failure, not an engine bug, and is classified apart.
"""

import logging
import os
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

from config import RunOptions
from src.formula.printer import print_ctl
from src.model.component import ComponentHandle
from src.model.errors import CheckerError
from src.model.experiments import ExperimentLog, ExperimentSession
from src.oracle.checker import oracle_ctl, oracle_infinite_often
from src.oracle.compose import compose
from src.oracle.random_instances import InstanceLimits, RandomInstance, random_instance
from src.parsers.component_format import print_component
from src.parsers.system_format import print_system
from src.plans.check_plans import create_ctl_plan, create_liveness_plan

logger = logging.getLogger(__name__)

BOUND_VIOLATION = "BOUND-VIOLATION"
MISMATCH = "MISMATCH"


@dataclass(frozen=True)
class DifferentialCase:
    seed: int
    kind: str
    query: str
    expected: bool
    actual: Optional[bool]
    state_bound: int
    classification: Optional[str] = None
    error: Optional[str] = None
    log: Optional[ExperimentLog] = field(default=None, compare=False, repr=False)

    @property
    def agrees(self) -> bool:
        return self.classification is None


@dataclass
class DifferentialReport:
    cases: List[DifferentialCase] = field(default_factory=list)

    @property
    def disagreements(self) -> List[DifferentialCase]:
        return [case for case in self.cases if case.classification == MISMATCH]

    @property
    def bound_violations(self) -> List[DifferentialCase]:
        return [case for case in self.cases if case.classification == BOUND_VIOLATION]

    @property
    def passed(self) -> bool:
        return not self.disagreements

    def summary(self) -> Dict[str, int]:
        return {
            "cases": len(self.cases),
            "agreements": sum(1 for case in self.cases if case.agrees),
            "disagreements": len(self.disagreements),
            "bound_violations": len(self.bound_violations),
        }

    def to_dict(self) -> Dict:
        return {
            "summary": self.summary(),
            "cases": [
                {
                    "seed": case.seed,
                    "kind": case.kind,
                    "query": case.query,
                    "expected": case.expected,
                    "actual": case.actual,
                    "state_bound": case.state_bound,
                    "classification": case.classification,
                    "error": case.error,
                }
                for case in self.cases
            ],
        }


def _classify(expected: bool, actual: Optional[bool], stated: int, true_states: int) -> Optional[str]:
    if actual == expected:
        return None
    return BOUND_VIOLATION if stated < true_states else MISMATCH


def _run(instance: RandomInstance, plan, state_bound: int, options: RunOptions):
    handle = ComponentHandle.from_machine(instance.machine, state_bound)
    session = ExperimentSession(handle, use_cache=options.use_cache, length_limit=plan.length_limit(state_bound) or None)
    try:
        return plan.run(session).verdict, None, session.log
    except CheckerError as e:
        logger.warning("Seed %d: engine raised %s: %s", instance.seed, type(e).__name__, e)
        return None, f"{type(e).__name__}: {e}", session.log
    finally:
        session.close()


def compare_instance(
    instance: RandomInstance, state_bound: Optional[int] = None, options: RunOptions = RunOptions()
) -> List[DifferentialCase]:
    """Run the CTL and liveness queries of one instance through engine and oracle."""
    true_states = len(instance.machine.states)
    stated = state_bound or true_states
    composed = compose(instance.system, instance.machine)
    start = sorted(instance.system.initial_states)[0]
    cases = []

    ctl_plan = create_ctl_plan(instance.system, instance.formula, start, options)
    expected = oracle_ctl(composed, start, instance.formula)
    actual, error, log = _run(instance, ctl_plan, stated, options)
    cases.append(
        DifferentialCase(
            instance.seed,
            "ctl",
            f"{start} |= {print_ctl(instance.formula)}",
            expected,
            actual,
            stated,
            _classify(expected, actual, stated, true_states),
            error,
            log,
        )
    )

    source, target = instance.query
    liveness_plan = create_liveness_plan(instance.system, source, target, options)
    expected = oracle_infinite_often(composed, source, target)
    actual, error, log = _run(instance, liveness_plan, stated, options)
    cases.append(
        DifferentialCase(
            instance.seed,
            "liveness",
            f"{source} ->> {target}",
            expected,
            actual,
            stated,
            _classify(expected, actual, stated, true_states),
            error,
            log,
        )
    )
    return cases


def run_differential(
    seeds: Iterable[int], limits: InstanceLimits = InstanceLimits(), options: RunOptions = RunOptions()
) -> DifferentialReport:
    report = DifferentialReport()
    for seed in seeds:
        instance = random_instance(seed, limits)
        for case in compare_instance(instance, limits.state_bound, options):
            report.cases.append(case)
            if case.classification == MISMATCH:
                logger.warning(
                    "Seed %d %s: engine %s, oracle %s", seed, case.query, case.actual, case.expected
                )
    logger.info("Differential run: %s", report.summary())
    return report


def dump_case(case: DifferentialCase, limits: InstanceLimits, directory: str) -> List[str]:
    """Write everything needed to reproduce ``case``; returns the written paths."""
    instance = random_instance(case.seed, limits)
    os.makedirs(directory, exist_ok=True)
    stem = os.path.join(directory, f"seed_{case.seed}_{case.kind}")
    written = []
    with open(f"{stem}.system", "w", encoding="utf-8") as f:
        f.write(print_system(instance.system))
    written.append(f"{stem}.system")
    with open(f"{stem}.component", "w", encoding="utf-8") as f:
        f.write(print_component(instance.machine))
    written.append(f"{stem}.component")
    with open(f"{stem}.query", "w", encoding="utf-8") as f:
        f.write(f"{case.query}\nexpected {case.expected}\nactual {case.actual}\nstate_bound {case.state_bound}\n")
        if case.error:
            f.write(f"error {case.error}\n")
    written.append(f"{stem}.query")
    if case.log is not None:
        written.append(case.log.save(f"{stem}.experiments.jsonl"))
    return written
