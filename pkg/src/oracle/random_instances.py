"""Seeded generators for small checking problems."""

import random
from dataclasses import dataclass, fields
from typing import Dict, List, Optional, Tuple

from src.formula import ast
from src.model.component import MealyMachine
from src.model.errors import CheckerError
from src.model.host_system import HostSystem, StateId, Transition

EVENTS = ("msg",)
INPUTS = ("a", "b")
OUTPUTS = ("y", "n")
PROPOSITIONS = ("p", "q")


@dataclass(frozen=True)
class InstanceLimits:
    host_states: int = 6
    component_states: int = 3
    inputs: int = 2
    outputs: int = 2
    depth: int = 3
    # bound handed to the checker; None means the machine's true state count
    state_bound: Optional[int] = None

    @classmethod
    def parse(cls, text: str) -> "InstanceLimits":
        """Read ``key=value,key=value`` overrides."""
        known = {f.name for f in fields(cls)}
        values: Dict[str, int] = {}
        for item in filter(None, (part.strip() for part in text.split(","))):
            key, sep, raw = item.partition("=")
            key = key.strip()
            if not sep or key not in known:
                raise CheckerError(f"unknown limit '{item}' (known: {', '.join(sorted(known))})")
            try:
                values[key] = int(raw)
            except ValueError:
                raise CheckerError(f"limit {key} needs an integer, got '{raw}'") from None
        limits = cls(**values)
        if limits.host_states < 1 or limits.component_states < 1:
            raise CheckerError("instances need at least one host state and one component state")
        if not 1 <= limits.inputs <= len(INPUTS) or not 1 <= limits.outputs <= len(OUTPUTS):
            raise CheckerError(f"inputs and outputs must lie between 1 and {len(INPUTS)}")
        return limits


def random_system(rng: random.Random, limits: InstanceLimits) -> HostSystem:
    """A host system whose states are all reachable from ``s0``."""
    states = [f"s{i}" for i in range(limits.host_states)]
    inputs = INPUTS[: limits.inputs]
    outputs = OUTPUTS[: limits.outputs]
    pairs = set()
    transitions: List[Transition] = []

    def add(source: StateId, target: StateId):
        if (source, target) in pairs:
            return
        pairs.add((source, target))
        if rng.random() < 0.5:
            transitions.append(Transition.env(source, rng.choice(EVENTS), target))
        else:
            transitions.append(Transition.comm(source, rng.choice(inputs), rng.choice(outputs), target))

    for i in range(1, len(states)):
        add(states[rng.randrange(i)], states[i])
    for _ in range(len(states)):
        add(rng.choice(states), rng.choice(states))

    labels = {}
    for state in states:
        chosen = frozenset(name for name in PROPOSITIONS if rng.random() < 0.4)
        if chosen:
            labels[state] = chosen
    return HostSystem(
        name="random",
        states=tuple(states),
        events=frozenset(EVENTS),
        inputs=frozenset(inputs),
        outputs=frozenset(outputs),
        transitions=tuple(transitions),
        initial_states=frozenset({states[0]}),
        ap_labels=labels,
    )


def random_machine(rng: random.Random, limits: InstanceLimits) -> MealyMachine:
    """A complete Mealy machine over the instance alphabets."""
    states = tuple(f"x{i}" for i in range(limits.component_states))
    inputs = INPUTS[: limits.inputs]
    outputs = OUTPUTS[: limits.outputs]
    delta = {
        (state, symbol): (rng.choice(outputs), rng.choice(states)) for state in states for symbol in inputs
    }
    return MealyMachine(
        name="random",
        inputs=frozenset(inputs),
        outputs=frozenset(outputs),
        states=states,
        initial=states[0],
        delta=delta,
    )


def random_formula(rng: random.Random, names: Tuple[str, ...], depth: int):
    """A CTL formula over ``names`` using every operator of the surface syntax."""
    if depth <= 0 or rng.random() < 0.2:
        choice = rng.random()
        if choice < 0.05:
            return ast.TrueConst()
        if choice < 0.1:
            return ast.FalseConst()
        return ast.Atom(rng.choice(names))
    unary = (ast.Not, ast.EX, ast.AX, ast.EF, ast.AF, ast.EG, ast.AG)
    binary = (ast.And, ast.Or, ast.Implies, ast.EU, ast.AU)
    if rng.random() < 0.5:
        return rng.choice(unary)(random_formula(rng, names, depth - 1))
    return rng.choice(binary)(random_formula(rng, names, depth - 1), random_formula(rng, names, depth - 1))


def random_liveness_query(rng: random.Random, system: HostSystem) -> Tuple[StateId, StateId]:
    return rng.choice(system.states), rng.choice(system.states)


@dataclass(frozen=True)
class RandomInstance:
    seed: int
    system: HostSystem
    machine: MealyMachine
    formula: object
    query: Tuple[StateId, StateId]


def random_instance(seed: int, limits: InstanceLimits = InstanceLimits()) -> RandomInstance:
    rng = random.Random(seed)
    system = random_system(rng, limits)
    machine = random_machine(rng, limits)
    names = tuple(name for name in PROPOSITIONS if name in system.propositions) + system.states[:2]
    formula = random_formula(rng, names, limits.depth)
    return RandomInstance(seed, system, machine, formula, random_liveness_query(rng, system))
