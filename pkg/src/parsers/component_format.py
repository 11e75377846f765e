"""
Reference component file format.

    component <name>
    inputs send ack
    outputs yes no
    states x0 x1
    init x0
    delta <state> <input> <output> <next>
"""

from typing import Dict, List, Set, Tuple

from src.model.component import MealyMachine
from src.model.errors import DeterminismError, ParseError, ValidationError
from src.parsers.lines import directives, expect_arity, expect_some, unknown_directive


def parse_component(text: str) -> MealyMachine:
    name = None
    inputs: Set[str] = set()
    outputs: Set[str] = set()
    states: List[str] = []
    initial = None
    rows: List[Tuple[int, List[str]]] = []

    for line, directive, args in directives(text):
        if name is None and directive != "component":
            raise ParseError("file must start with 'component <name>'", line)
        if directive == "component":
            if name is not None:
                raise ParseError("duplicate 'component' header", line)
            expect_arity(line, directive, args, 1)
            name = args[0]
        elif directive == "inputs":
            expect_some(line, directive, args)
            inputs.update(args)
        elif directive == "outputs":
            expect_some(line, directive, args)
            outputs.update(args)
        elif directive == "states":
            expect_some(line, directive, args)
            states.extend(args)
        elif directive == "init":
            expect_arity(line, directive, args, 1)
            if initial is not None:
                raise ParseError("duplicate 'init' line", line)
            initial = (line, args[0])
        elif directive == "delta":
            expect_arity(line, directive, args, 4)
            rows.append((line, args))
        else:
            unknown_directive(line, directive)

    if name is None:
        raise ParseError("empty component file")
    if initial is None:
        raise ValidationError(f"component {name} has no 'init' line")
    if initial[1] not in states:
        raise ValidationError(f"initial state {initial[1]} is not declared", initial[0])

    delta: Dict[Tuple[str, str], Tuple[str, str]] = {}
    defined_at: Dict[Tuple[str, str], int] = {}
    for line, (state, symbol, output, target) in rows:
        for endpoint in (state, target):
            if endpoint not in states:
                raise ValidationError(f"undeclared state {endpoint}", line)
        if symbol not in inputs:
            raise ValidationError(f"undeclared input symbol {symbol}", line)
        if output not in outputs:
            raise ValidationError(f"undeclared output symbol {output}", line)
        key = (state, symbol)
        if key in delta:
            raise DeterminismError(
                f"second transition for {symbol} in state {state} (first on line {defined_at[key]})", line
            )
        delta[key] = (output, target)
        defined_at[key] = line

    return MealyMachine(
        name=name,
        inputs=frozenset(inputs),
        outputs=frozenset(outputs),
        states=tuple(states),
        initial=initial[1],
        delta=delta,
    )


def print_component(machine: MealyMachine) -> str:
    lines = [
        f"component {machine.name}",
        "inputs " + " ".join(sorted(machine.inputs)),
        "outputs " + " ".join(sorted(machine.outputs)),
        "states " + " ".join(machine.states),
        f"init {machine.initial}",
    ]
    for (state, symbol), (output, target) in sorted(machine.delta.items()):
        lines.append(f"delta {state} {symbol} {output} {target}")
    return "\n".join(lines) + "\n"
