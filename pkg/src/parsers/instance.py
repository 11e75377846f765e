"""
Loading checking problems from disk.

A problem is a host system plus a component descriptor: either a path to a
reference component file, or ``exec:<command>`` for a program that speaks the
line protocol. Formulas are given inline or as ``@path``.
"""

import logging
from dataclasses import dataclass
from typing import Optional

from src.liveness.product import Tableau
from src.model.component import MealyMachine
from src.model.errors import AlphabetMismatch, CheckerError
from src.model.host_system import HostSystem
from src.parsers.component_format import parse_component
from src.parsers.system_format import parse_system
from src.parsers.tableau_format import parse_tableau

logger = logging.getLogger(__name__)

EXEC_PREFIX = "exec:"


def _read(path: str, kind: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise CheckerError(f"cannot read {kind} file {path}: {e.strerror or e}") from e


def load_system(path: str) -> HostSystem:
    system = parse_system(_read(path, "system"))
    logger.info("Loaded system %s from %s: %d states", system.name, path, len(system.states))
    return system


def load_component(path: str) -> MealyMachine:
    machine = parse_component(_read(path, "component"))
    logger.info("Loaded component %s from %s: %d states", machine.name, path, len(machine.states))
    return machine


def load_tableau(path: str) -> Tableau:
    return parse_tableau(_read(path, "tableau"))


def read_formula(argument: str) -> str:
    """Formula text from the command line; ``@path`` reads it from a file."""
    if argument.startswith("@"):
        return _read(argument[1:], "formula").strip()
    return argument


@dataclass(frozen=True)
class ComponentDescriptor:
    """Where the component comes from: a reference machine or an external command."""

    machine: Optional[MealyMachine] = None
    command: Optional[str] = None

    @property
    def is_external(self) -> bool:
        return self.command is not None

    @property
    def description(self) -> str:
        if self.command is not None:
            return f"{EXEC_PREFIX}{self.command}"
        return f"reference:{self.machine.name}"

    @classmethod
    def parse(cls, argument: str) -> "ComponentDescriptor":
        if argument.startswith(EXEC_PREFIX):
            command = argument[len(EXEC_PREFIX):].strip()
            if not command:
                raise CheckerError("empty command after 'exec:'")
            return cls(command=command)
        return cls(machine=load_component(argument))


def check_alphabets(system: HostSystem, machine: MealyMachine):
    """The component must accept every input and may produce every output the system uses."""
    missing_inputs = system.inputs - machine.inputs
    missing_outputs = system.outputs - machine.outputs
    if missing_inputs or missing_outputs:
        parts = []
        if missing_inputs:
            parts.append("inputs " + ", ".join(sorted(missing_inputs)))
        if missing_outputs:
            parts.append("outputs " + ", ".join(sorted(missing_outputs)))
        raise AlphabetMismatch(
            f"component {machine.name} lacks {' and '.join(parts)} of system {system.name}"
        )


@dataclass(frozen=True)
class ProblemInstance:
    system: HostSystem
    component: ComponentDescriptor

    @classmethod
    def load(cls, system_path: str, component_argument: str) -> "ProblemInstance":
        system = load_system(system_path)
        component = ComponentDescriptor.parse(component_argument)
        if component.machine is not None:
            check_alphabets(system, component.machine)
        return cls(system, component)

