"""
Verification Agent Module

Contains the VerificationAgent class: loads problem instances, prepares
check plans, runs them against the component and stores the artifacts.
"""

import logging
import os
from typing import Iterable, List, Optional

from config import CheckerConfig, RunOptions, get_config
from src.model.host_system import HostSystem, StateId
from src.oracle.differential import DifferentialReport, dump_case, run_differential
from src.oracle.random_instances import InstanceLimits
from src.parsers.instance import ProblemInstance, load_system, load_tableau, read_formula
from src.plans.check_plans import create_ctl_plan, create_liveness_plan, create_ltl_plan
from src.services.checking_services import RunReport, open_component, run_plan
from src.services.storage_services import save_graphs, save_report

logger = logging.getLogger(__name__)


class VerificationAgent:
    def __init__(self, app_config: Optional[CheckerConfig] = None, **overrides):
        self.app_config = app_config or get_config()
        self.options: RunOptions = self.app_config.run_options(**overrides)
        self.output_dir = self.app_config.output_directory
        self._validate_setup()

    def _validate_setup(self):
        validation = self.app_config.validate_config()
        for error in validation["errors"]:
            logger.error("Configuration error: %s", error)
        for warning in validation["warnings"]:
            logger.warning("Configuration warning: %s", warning)

    @staticmethod
    def _default_state(system: HostSystem, state: Optional[StateId]) -> StateId:
        if state is not None:
            return system.require_state(state)
        return sorted(system.initial_states)[0]

    def _execute(self, plan, instance: ProblemInstance) -> RunReport:
        handle = open_component(instance.component, instance.system, self.options)
        try:
            report = run_plan(plan, handle, self.options)
        finally:
            handle.close()

        if self.options.dot_directory:
            report.graphs_emitted = save_graphs(plan.graphs(), self.options.dot_directory)
        if self.options.log_path and report.log is not None:
            report.log.save(self.options.log_path)
        return report

    def check_ctl(self, system_path: str, component: str, formula: str, state: Optional[StateId] = None) -> RunReport:
        """Decide whether the CTL formula holds at ``state`` (default: first initial state)."""
        instance = ProblemInstance.load(system_path, component)
        start = self._default_state(instance.system, state)
        plan = create_ctl_plan(instance.system, read_formula(formula), start, self.options)
        return self._execute(plan, instance)

    def check_liveness(self, system_path: str, component: str, source: StateId, target: StateId) -> RunReport:
        """Decide whether ``target`` can be visited infinitely often from ``source``."""
        instance = ProblemInstance.load(system_path, component)
        plan = create_liveness_plan(instance.system, source, target, self.options)
        return self._execute(plan, instance)

    def check_ltl(
        self, system_path: str, component: str, tableau_path: str, state: Optional[StateId] = None
    ) -> RunReport:
        """Decide whether some path from ``state`` satisfies the path formula the tableau accepts."""
        instance = ProblemInstance.load(system_path, component)
        tableau = load_tableau(tableau_path)
        if state is not None:
            instance.system.require_state(state)
        plan = create_ltl_plan(instance.system, tableau, state, self.options)
        return self._execute(plan, instance)

    def export_dot(
        self,
        system_path: str,
        output_dir: str,
        formula: Optional[str] = None,
        source: Optional[StateId] = None,
        target: Optional[StateId] = None,
        state: Optional[StateId] = None,
    ) -> List[str]:
        """Write the communication or witness graphs of a query without touching a component."""
        system = load_system(system_path)
        if formula is not None:
            plan = create_ctl_plan(system, read_formula(formula), self._default_state(system, state), self.options)
        else:
            plan = create_liveness_plan(system, source, target, self.options)
        graphs = plan.graphs()
        if not graphs:
            logger.info("Query is decided without a graph; nothing to export")
        return save_graphs(graphs, output_dir) if graphs else []

    def oracle_compare(self, seeds: Iterable[int], limits: InstanceLimits) -> DifferentialReport:
        """Compare engine and oracle on random instances; the first disagreement is dumped for reproduction."""
        report = run_differential(seeds, limits, self.options)
        if report.disagreements:
            directory = os.path.join(self.output_dir, "disagreements")
            written = dump_case(report.disagreements[0], limits, directory)
            logger.error("First disagreement written to %s", ", ".join(written))
        save_report(report.to_dict(), self.output_dir, "oracle_compare")
        return report
