"""
Host system model: the fully specified part of the system under check.

A host system has environment transitions (driven by external events) and
communication transitions (a synchronous input/output exchange with the
unspecified component). States carry proposition labels; a state name also
works as a proposition that holds exactly in that state.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from src.model.errors import UnknownState, ValidationError

StateId = str
SymbolId = str


@dataclass(frozen=True, order=True)
class Transition:
    """One edge of a host system; communication edges carry an input/output pair."""

    source: StateId
    target: StateId
    event: SymbolId = ""
    input: SymbolId = ""
    output: SymbolId = ""

    @classmethod
    def env(cls, source: StateId, event: SymbolId, target: StateId) -> "Transition":
        return cls(source=source, target=target, event=event)

    @classmethod
    def comm(cls, source: StateId, input: SymbolId, output: SymbolId, target: StateId) -> "Transition":
        return cls(source=source, target=target, input=input, output=output)

    @property
    def is_communication(self) -> bool:
        return bool(self.input)

    @property
    def label(self) -> str:
        if self.is_communication:
            return f"{self.input}/{self.output}"
        return self.event


@dataclass
class HostSystem:
    name: str
    states: Tuple[StateId, ...]
    events: FrozenSet[SymbolId]
    inputs: FrozenSet[SymbolId]
    outputs: FrozenSet[SymbolId]
    transitions: Tuple[Transition, ...]
    initial_states: FrozenSet[StateId]
    ap_labels: Mapping[StateId, FrozenSet[str]] = field(default_factory=dict)

    _outgoing: Dict[StateId, List[Transition]] = field(init=False, repr=False, compare=False)
    _incoming: Dict[StateId, List[Transition]] = field(init=False, repr=False, compare=False)
    _by_pair: Dict[Tuple[StateId, StateId], Transition] = field(init=False, repr=False, compare=False)
    _state_set: FrozenSet[StateId] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self.states = tuple(sorted(set(self.states)))
        self.events = frozenset(self.events)
        self.inputs = frozenset(self.inputs)
        self.outputs = frozenset(self.outputs)
        self.transitions = tuple(sorted(set(self.transitions)))
        self.initial_states = frozenset(self.initial_states)
        self.ap_labels = {s: frozenset(names) for s, names in self.ap_labels.items()}
        self.validate()

        self._outgoing = defaultdict(list)
        self._incoming = defaultdict(list)
        self._by_pair = {}
        self._state_set = frozenset(self.states)
        for transition in self.transitions:
            self._outgoing[transition.source].append(transition)
            self._incoming[transition.target].append(transition)
            self._by_pair[(transition.source, transition.target)] = transition

    def validate(self):
        """Raise ValidationError when the system breaks a structural rule."""
        declared = set(self.states)
        if not self.initial_states:
            raise ValidationError(f"system {self.name} declares no initial state")
        for state in sorted(self.initial_states - declared):
            raise ValidationError(f"initial state {state} is not declared")

        overlap = self.events & (self.inputs | self.outputs)
        if overlap:
            raise ValidationError(f"events overlap the component alphabet: {', '.join(sorted(overlap))}")

        seen_pairs = set()
        for transition in self.transitions:
            for endpoint in (transition.source, transition.target):
                if endpoint not in declared:
                    raise ValidationError(f"transition {transition.source}->{transition.target} uses undeclared state {endpoint}")
            if transition.is_communication:
                if transition.input not in self.inputs:
                    raise ValidationError(f"undeclared input symbol {transition.input}")
                if transition.output not in self.outputs:
                    raise ValidationError(f"undeclared output symbol {transition.output}")
            elif transition.event not in self.events:
                raise ValidationError(f"undeclared event {transition.event}")
            pair = (transition.source, transition.target)
            if pair in seen_pairs:
                raise ValidationError(f"more than one transition from {pair[0]} to {pair[1]}")
            seen_pairs.add(pair)

        for state, names in self.ap_labels.items():
            if state not in declared:
                raise ValidationError(f"label on undeclared state {state}")
            clashes = names & declared
            if clashes:
                raise ValidationError(f"proposition {sorted(clashes)[0]} collides with a state name")

    @property
    def env_transitions(self) -> Tuple[Transition, ...]:
        return tuple(t for t in self.transitions if not t.is_communication)

    @property
    def comm_transitions(self) -> Tuple[Transition, ...]:
        return tuple(t for t in self.transitions if t.is_communication)

    @property
    def propositions(self) -> FrozenSet[str]:
        """Every proposition name usable in a formula, state names included."""
        names = set(self.states)
        for labels in self.ap_labels.values():
            names |= labels
        return frozenset(names)

    def require_state(self, state: StateId) -> StateId:
        if state not in self._state_set:
            raise UnknownState(f"state {state} is not declared in system {self.name}")
        return state

    def holds(self, state: StateId, proposition: str) -> bool:
        return proposition == state or proposition in self.ap_labels.get(state, frozenset())

    def outgoing(self, state: StateId) -> List[Transition]:
        return list(self._outgoing.get(state, ()))

    def incoming(self, state: StateId) -> List[Transition]:
        return list(self._incoming.get(state, ()))

    def transition(self, source: StateId, target: StateId) -> Optional[Transition]:
        return self._by_pair.get((source, target))

    def induced_transitions(self, nodes: Iterable[StateId]) -> Tuple[Transition, ...]:
        """Transitions with both endpoints in ``nodes``."""
        members = set(nodes)
        return tuple(t for t in self.transitions if t.source in members and t.target in members)
