"""
The unspecified component: a deterministic Mealy machine known only through
its alphabets and an upper bound on its number of states.

Two backends answer experiments: ``MealyBackend`` simulates a reference
machine in-process, ``ProcessBackend`` (see ``process_backend``) talks to an
external program over the line protocol.
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Mapping, Protocol, Tuple

from src.model.errors import AdapterFailure, ValidationError
from src.model.host_system import SymbolId

ComponentStateId = str


@dataclass(frozen=True)
class MealyMachine:
    """A fully described reference machine, used by tests and the oracle."""

    name: str
    inputs: FrozenSet[SymbolId]
    outputs: FrozenSet[SymbolId]
    states: Tuple[ComponentStateId, ...]
    initial: ComponentStateId
    delta: Mapping[Tuple[ComponentStateId, SymbolId], Tuple[SymbolId, ComponentStateId]] = field(default_factory=dict)

    def __post_init__(self):
        if self.initial not in self.states:
            raise ValidationError(f"initial state {self.initial} of component {self.name} is not declared")
        for (state, symbol), (output, target) in self.delta.items():
            if state not in self.states or target not in self.states:
                raise ValidationError(f"transition {state} {symbol} uses an undeclared state")
            if symbol not in self.inputs:
                raise ValidationError(f"undeclared input symbol {symbol}")
            if output not in self.outputs:
                raise ValidationError(f"undeclared output symbol {output}")

    @property
    def is_complete(self) -> bool:
        return all((state, symbol) in self.delta for state in self.states for symbol in self.inputs)

    def step(self, state: ComponentStateId, symbol: SymbolId) -> Tuple[SymbolId, ComponentStateId]:
        try:
            return self.delta[(state, symbol)]
        except KeyError:
            raise AdapterFailure(f"component {self.name} has no transition for {symbol} in state {state}") from None

    def run(self, symbols) -> Tuple[SymbolId, ...]:
        """Output sequence produced for ``symbols`` from the initial state."""
        state = self.initial
        outputs = []
        for symbol in symbols:
            output, state = self.step(state, symbol)
            outputs.append(output)
        return tuple(outputs)


class ComponentBackend(Protocol):
    """What a session needs from a component: reset and one-symbol steps."""

    def reset(self) -> None: ...

    def step(self, symbol: SymbolId) -> SymbolId: ...

    def close(self) -> None: ...


class MealyBackend:
    """In-process backend that simulates a reference machine."""

    def __init__(self, machine: MealyMachine):
        self.machine = machine
        self._state = machine.initial

    def reset(self) -> None:
        self._state = self.machine.initial

    def step(self, symbol: SymbolId) -> SymbolId:
        output, self._state = self.machine.step(self._state, symbol)
        return output

    def close(self) -> None:
        pass


@dataclass
class ComponentHandle:
    """Black-box view of the component: alphabets, state bound and a backend."""

    inputs: FrozenSet[SymbolId]
    outputs: FrozenSet[SymbolId]
    state_bound: int
    backend: ComponentBackend
    description: str = ""

    def __post_init__(self):
        self.inputs = frozenset(self.inputs)
        self.outputs = frozenset(self.outputs)
        if self.state_bound < 1:
            raise ValidationError(f"state bound must be at least 1, got {self.state_bound}")

    @classmethod
    def from_machine(cls, machine: MealyMachine, state_bound: int = 0) -> "ComponentHandle":
        """Wrap a reference machine; the bound defaults to its state count."""
        return cls(
            inputs=machine.inputs,
            outputs=machine.outputs,
            state_bound=state_bound or len(machine.states),
            backend=MealyBackend(machine),
            description=f"reference:{machine.name}",
        )

    def close(self) -> None:
        self.backend.close()


def machine_delta(rows) -> Dict[Tuple[ComponentStateId, SymbolId], Tuple[SymbolId, ComponentStateId]]:
    """Build a transition map from (state, input, output, next) rows."""
    return {(state, symbol): (output, target) for state, symbol, output, target in rows}
