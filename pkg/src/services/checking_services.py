"""
Checking Services Module

Opens components and runs check plans against them, collecting the
statistics that go into a run report.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from config import RunOptions
from src.model.component import ComponentHandle
from src.model.errors import CheckerError
from src.model.experiments import CommunicationTrace, ExperimentLog, ExperimentSession
from src.model.host_system import HostSystem
from src.model.process_backend import ProcessBackend
from src.parsers.instance import ComponentDescriptor
from src.testing.trace import SearchTrace

logger = logging.getLogger(__name__)


@dataclass
class RunReport:
    verdict: bool
    source: str
    experiment_count: int
    reset_count: int
    max_experiment_length: int
    length_limit: int
    elapsed: float
    witness: Optional[CommunicationTrace] = None
    graphs_emitted: List[str] = field(default_factory=list)
    log: Optional[ExperimentLog] = field(default=None, repr=False)

    def to_dict(self) -> Dict:
        return {
            "verdict": self.verdict,
            "source": self.source,
            "experiment_count": self.experiment_count,
            "reset_count": self.reset_count,
            "max_experiment_length": self.max_experiment_length,
            "length_limit": self.length_limit,
            "elapsed": round(self.elapsed, 6),
            "witness": [f"{symbol}/{output}" for symbol, output in self.witness or ()],
            "graphs_emitted": list(self.graphs_emitted),
        }

    def lines(self) -> List[str]:
        """Stable ``key: value`` report, verdict first."""
        result = [
            f"RESULT {'true' if self.verdict else 'false'}",
            f"SOURCE {self.source}",
            f"experiment_count: {self.experiment_count}",
            f"reset_count: {self.reset_count}",
            f"max_experiment_length: {self.max_experiment_length}",
            f"length_limit: {self.length_limit}",
            f"elapsed: {self.elapsed:.3f}",
        ]
        if self.witness:
            result.append("witness: " + " ".join(f"{symbol}/{output}" for symbol, output in self.witness))
        for path in self.graphs_emitted:
            result.append(f"graph: {path}")
        return result


def open_component(descriptor: ComponentDescriptor, system: HostSystem, options: RunOptions) -> ComponentHandle:
    """Black-box handle for the component; external programs need an explicit state bound."""
    if not descriptor.is_external:
        return ComponentHandle.from_machine(descriptor.machine, options.state_bound or 0)

    if not options.state_bound:
        raise CheckerError("an external component needs a state bound (--state-bound)")
    logger.info("Starting external component: %s", descriptor.command)
    backend = ProcessBackend(descriptor.command, system.outputs, options.timeout_ms)
    return ComponentHandle(
        inputs=system.inputs,
        outputs=system.outputs,
        state_bound=options.state_bound,
        backend=backend,
        description=descriptor.description,
    )


def run_plan(plan, handle: ComponentHandle, options: RunOptions) -> RunReport:
    """Run a prepared plan against one component handle."""
    length_limit = plan.length_limit(handle.state_bound)
    session = ExperimentSession(handle, use_cache=options.use_cache, length_limit=length_limit or None)
    started = time.monotonic()
    with SearchTrace(options.trace_path) as trace:
        try:
            outcome = plan.run(session, trace)
        except CheckerError as e:
            logger.error("Check against %s failed after %d experiments: %s", handle.description, session.log.experiment_count, e)
            raise
    elapsed = time.monotonic() - started

    witness = None
    if outcome.witness is not None:
        witness = session.communication_trace(outcome.witness)
    logger.info(
        "Verdict %s (%s) after %d experiments, %d resets",
        outcome.verdict,
        outcome.source,
        session.log.experiment_count,
        session.log.reset_count,
    )
    return RunReport(
        verdict=outcome.verdict,
        source=outcome.source,
        experiment_count=session.log.experiment_count,
        reset_count=session.log.reset_count,
        max_experiment_length=session.log.max_length,
        length_limit=length_limit,
        elapsed=elapsed,
        witness=witness,
        log=session.log,
    )
