"""
Tableau file format.

    tableau <name>
    formula G F p          # optional, the path formula the tableau accepts
    tstates q0 q1
    tinit q0
    sat f: q0 q1           # states satisfying f; omitted means the initial states
    fair: q1               # one line per fairness set
    tedge q0 q1
    guard q1 p & !q        # conjunction of literals, or "true"
"""

from typing import Dict, List, Optional, Set, Tuple

from src.formula.parser import parse_path
from src.formula.printer import print_path
from src.liveness.product import Literal, Tableau
from src.model.errors import ParseError, ValidationError
from src.parsers.lines import directives, expect_arity, expect_some, unknown_directive


def _parse_guard(line: int, tokens: List[str]) -> Tuple[Literal, ...]:
    text = " ".join(tokens).strip()
    if text == "true":
        return ()
    literals = []
    for part in text.split("&"):
        part = part.strip()
        positive = not part.startswith("!")
        name = part.lstrip("!").strip()
        if not name or not name.replace("_", "").isalnum():
            raise ParseError(f"malformed guard literal '{part}'", line)
        literals.append(Literal(name, positive))
    return tuple(literals)


def parse_tableau(text: str) -> Tableau:
    name = None
    formula_text: Optional[Tuple[int, str]] = None
    states: List[str] = []
    initial: List[Tuple[int, str]] = []
    sat: Optional[Tuple[int, str, List[str]]] = None
    fairness: List[Tuple[int, List[str]]] = []
    edges: List[Tuple[int, str, str]] = []
    guards: Dict[str, Tuple[int, Tuple[Literal, ...]]] = {}

    for line, directive, args in directives(text):
        if name is None and directive != "tableau":
            raise ParseError("file must start with 'tableau <name>'", line)
        if directive == "tableau":
            if name is not None:
                raise ParseError("duplicate 'tableau' header", line)
            expect_arity(line, directive, args, 1)
            name = args[0]
        elif directive == "formula":
            expect_some(line, directive, args)
            formula_text = (line, " ".join(args))
        elif directive == "tstates":
            expect_some(line, directive, args)
            states.extend(args)
        elif directive == "tinit":
            expect_some(line, directive, args)
            initial.extend((line, state) for state in args)
        elif directive == "sat":
            if not args or not args[0].endswith(":"):
                raise ParseError("expected 'sat <tag>: <states>'", line)
            if sat is not None:
                raise ParseError("duplicate 'sat' line", line)
            sat = (line, args[0][:-1], args[1:])
        elif directive == "fair:":
            fairness.append((line, args))
        elif directive == "tedge":
            expect_arity(line, directive, args, 2)
            edges.append((line, args[0], args[1]))
        elif directive == "guard":
            expect_some(line, directive, args)
            if len(args) < 2:
                raise ParseError("expected 'guard <state> <literals>'", line)
            if args[0] in guards:
                raise ParseError(f"second guard for tableau state {args[0]}", line)
            guards[args[0]] = (line, _parse_guard(line, args[1:]))
        else:
            unknown_directive(line, directive)

    if name is None:
        raise ParseError("empty tableau file")

    declared: Set[str] = set(states)

    def check(line: int, state: str):
        if state not in declared:
            raise ValidationError(f"undeclared tableau state {state}", line)

    for line, state in initial:
        check(line, state)
    if sat is not None:
        for state in sat[2]:
            check(sat[0], state)
    for line, members in fairness:
        for state in members:
            check(line, state)
    for line, source, target in edges:
        check(line, source)
        check(line, target)
    for state, (line, _) in guards.items():
        check(line, state)

    formula = None
    if formula_text is not None:
        try:
            formula = parse_path(formula_text[1])
        except ParseError as e:
            raise ParseError(f"bad formula: {e.message}", formula_text[0]) from e

    initial_states = frozenset(state for _, state in initial)
    return Tableau(
        name=name,
        states=tuple(states),
        initial=initial_states,
        sat_tag=sat[1] if sat is not None else "f",
        sat=frozenset(sat[2]) if sat is not None else initial_states,
        fairness=tuple(frozenset(members) for _, members in fairness),
        edges=frozenset((source, target) for _, source, target in edges),
        guards={state: literals for state, (_, literals) in guards.items()},
        formula=formula,
    )


def print_tableau(tableau: Tableau) -> str:
    lines = [f"tableau {tableau.name}"]
    if tableau.formula is not None:
        lines.append(f"formula {print_path(tableau.formula)}")
    lines.append("tstates " + " ".join(tableau.states))
    if tableau.initial:
        lines.append("tinit " + " ".join(sorted(tableau.initial)))
    lines.append(f"sat {tableau.sat_tag}: " + " ".join(sorted(tableau.sat)))
    for fair_set in tableau.fairness:
        lines.append("fair: " + " ".join(sorted(fair_set)))
    for source, target in sorted(tableau.edges):
        lines.append(f"tedge {source} {target}")
    for state in tableau.states:
        literals = tableau.guards.get(state)
        if literals:
            lines.append(f"guard {state} " + " & ".join(str(literal) for literal in literals))
    return "\n".join(lines).rstrip() + "\n"
