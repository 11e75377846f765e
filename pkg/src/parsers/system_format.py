"""
Host system file format.

    system <name>
    states s0 s1 s2
    init s0
    events msg
    inputs send ack
    outputs yes no
    env  <source> <event> <target>
    comm <source> <input> <output> <target>
    label <state> <proposition> ...

Declarations may come in any order; cross-references are checked once the
whole file is read, and errors name the offending line.
"""

from typing import Dict, List, Set, Tuple

from src.formula.parser import RESERVED_NAMES
from src.model.errors import ParseError, ValidationError
from src.model.host_system import HostSystem, Transition
from src.parsers.lines import directives, expect_arity, expect_some, unknown_directive


def parse_system(text: str) -> HostSystem:
    name = None
    states: List[str] = []
    state_lines: Dict[str, int] = {}
    initial: List[Tuple[int, str]] = []
    events: Set[str] = set()
    inputs: Set[str] = set()
    outputs: Set[str] = set()
    transitions: List[Tuple[int, Transition]] = []
    labels: List[Tuple[int, str, List[str]]] = []

    for line, directive, args in directives(text):
        if name is None and directive != "system":
            raise ParseError("file must start with 'system <name>'", line)
        if directive == "system":
            if name is not None:
                raise ParseError("duplicate 'system' header", line)
            expect_arity(line, directive, args, 1)
            name = args[0]
        elif directive == "states":
            expect_some(line, directive, args)
            states.extend(args)
            state_lines.update((state, line) for state in args)
        elif directive == "init":
            expect_some(line, directive, args)
            initial.extend((line, state) for state in args)
        elif directive == "events":
            events.update(args)
        elif directive == "inputs":
            inputs.update(args)
        elif directive == "outputs":
            outputs.update(args)
        elif directive == "env":
            expect_arity(line, directive, args, 3)
            transitions.append((line, Transition.env(args[0], args[1], args[2])))
        elif directive == "comm":
            expect_arity(line, directive, args, 4)
            transitions.append((line, Transition.comm(args[0], args[1], args[2], args[3])))
        elif directive == "label":
            expect_some(line, directive, args)
            labels.append((line, args[0], args[1:]))
        else:
            unknown_directive(line, directive)

    if name is None:
        raise ParseError("empty system file")

    declared = set(states)
    for state in states:
        _check_name("state", state, state_lines[state])
    overlap = events & (inputs | outputs)
    if overlap:
        raise ValidationError(f"events overlap the component alphabet: {', '.join(sorted(overlap))}")
    for line, state in initial:
        if state not in declared:
            raise ValidationError(f"initial state {state} is not declared", line)
    if not initial:
        raise ValidationError(f"system {name} declares no initial state")

    seen: Dict[Tuple[str, str], int] = {}
    for line, transition in transitions:
        for endpoint in (transition.source, transition.target):
            if endpoint not in declared:
                raise ValidationError(f"undeclared state {endpoint}", line)
        if transition.is_communication:
            if transition.input not in inputs:
                raise ValidationError(f"undeclared input symbol {transition.input}", line)
            if transition.output not in outputs:
                raise ValidationError(f"undeclared output symbol {transition.output}", line)
        elif transition.event not in events:
            raise ValidationError(f"undeclared event {transition.event}", line)
        pair = (transition.source, transition.target)
        if pair in seen:
            raise ValidationError(
                f"second transition from {pair[0]} to {pair[1]} (first on line {seen[pair]}); "
                "only one transition is allowed between two states",
                line,
            )
        seen[pair] = line

    ap_labels: Dict[str, Set[str]] = {}
    for line, state, names in labels:
        if state not in declared:
            raise ValidationError(f"label on undeclared state {state}", line)
        for proposition in names:
            _check_name("proposition", proposition, line)
            if proposition in declared:
                raise ValidationError(f"proposition {proposition} collides with a state name", line)
        ap_labels.setdefault(state, set()).update(names)

    return HostSystem(
        name=name,
        states=tuple(states),
        events=frozenset(events),
        inputs=frozenset(inputs),
        outputs=frozenset(outputs),
        transitions=tuple(t for _, t in transitions),
        initial_states=frozenset(state for _, state in initial),
        ap_labels={state: frozenset(names) for state, names in ap_labels.items()},
    )


def _check_name(kind: str, name: str, line: int) -> None:
    if name in RESERVED_NAMES:
        raise ValidationError(f"{kind} name {name} is a formula keyword and cannot be used in queries", line)


def print_system(system: HostSystem) -> str:
    lines = [
        f"system {system.name}",
        "states " + " ".join(system.states),
        "init " + " ".join(sorted(system.initial_states)),
    ]
    if system.events:
        lines.append("events " + " ".join(sorted(system.events)))
    if system.inputs:
        lines.append("inputs " + " ".join(sorted(system.inputs)))
    if system.outputs:
        lines.append("outputs " + " ".join(sorted(system.outputs)))
    for transition in system.transitions:
        if transition.is_communication:
            lines.append(f"comm {transition.source} {transition.input} {transition.output} {transition.target}")
        else:
            lines.append(f"env {transition.source} {transition.event} {transition.target}")
    for state in system.states:
        names = system.ap_labels.get(state)
        if names:
            lines.append(f"label {state} " + " ".join(sorted(names)))
    return "\n".join(lines) + "\n"
