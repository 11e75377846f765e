"""
Abstract syntax for CTL state formulas and for the path formulas used to tag
tableaux.

Nodes are frozen dataclasses, so structurally equal formulas compare and hash
equal.
"""

from dataclasses import dataclass
from typing import Iterator, Union


@dataclass(frozen=True)
class TrueConst:
    pass


@dataclass(frozen=True)
class FalseConst:
    pass


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Not:
    arg: "CtlFormula"


@dataclass(frozen=True)
class And:
    left: "CtlFormula"
    right: "CtlFormula"


@dataclass(frozen=True)
class Or:
    left: "CtlFormula"
    right: "CtlFormula"


@dataclass(frozen=True)
class Implies:
    left: "CtlFormula"
    right: "CtlFormula"


@dataclass(frozen=True)
class EX:
    arg: "CtlFormula"


@dataclass(frozen=True)
class AX:
    arg: "CtlFormula"


@dataclass(frozen=True)
class EF:
    arg: "CtlFormula"


@dataclass(frozen=True)
class AF:
    arg: "CtlFormula"


@dataclass(frozen=True)
class EG:
    arg: "CtlFormula"


@dataclass(frozen=True)
class AG:
    arg: "CtlFormula"


@dataclass(frozen=True)
class EU:
    left: "CtlFormula"
    right: "CtlFormula"


@dataclass(frozen=True)
class AU:
    left: "CtlFormula"
    right: "CtlFormula"


CtlFormula = Union[TrueConst, FalseConst, Atom, Not, And, Or, Implies, EX, AX, EF, AF, EG, AG, EU, AU]

UNARY_TEMPORAL = (EX, AX, EF, AF, EG, AG)
BINARY_TEMPORAL = (EU, AU)
NORMAL_TEMPORAL = (EX, EU, EG)


# Path formulas: only used to describe what a tableau accepts.

@dataclass(frozen=True)
class Next:
    arg: "PathFormula"


@dataclass(frozen=True)
class Finally:
    arg: "PathFormula"


@dataclass(frozen=True)
class Globally:
    arg: "PathFormula"


@dataclass(frozen=True)
class Until:
    left: "PathFormula"
    right: "PathFormula"


PathFormula = Union[TrueConst, FalseConst, Atom, Not, And, Or, Next, Finally, Globally, Until]


def children(formula) -> tuple:
    """Direct subformulas, left to right."""
    if isinstance(formula, (TrueConst, FalseConst, Atom)):
        return ()
    if hasattr(formula, "arg"):
        return (formula.arg,)
    return (formula.left, formula.right)


def walk(formula) -> Iterator:
    """Pre-order traversal."""
    yield formula
    for child in children(formula):
        yield from walk(child)


def atoms(formula) -> frozenset:
    return frozenset(node.name for node in walk(formula) if isinstance(node, Atom))


def depth(formula) -> int:
    kids = children(formula)
    return 1 + max((depth(child) for child in kids), default=0)
