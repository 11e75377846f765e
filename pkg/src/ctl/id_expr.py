"""
ID expressions: Boolean combinations of witness-graph identifiers.

``Ident(1)`` is the constant true; any other identifier stands for "the
witness graph with this id can be discharged from here".
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Union

from src.model.host_system import StateId


@dataclass(frozen=True)
class Ident:
    value: int


@dataclass(frozen=True)
class NotId:
    arg: "IdExpr"


@dataclass(frozen=True)
class OrId:
    left: "IdExpr"
    right: "IdExpr"


IdExpr = Union[Ident, NotId, OrId]
ONE = Ident(1)

Labeling = Dict[StateId, IdExpr]


def is_one(expr: IdExpr) -> bool:
    return expr == ONE


def referenced_ids(expr: IdExpr) -> FrozenSet[int]:
    if isinstance(expr, Ident):
        return frozenset({expr.value})
    if isinstance(expr, NotId):
        return referenced_ids(expr.arg)
    return referenced_ids(expr.left) | referenced_ids(expr.right)


def format_id_expr(expr: IdExpr) -> str:
    if isinstance(expr, Ident):
        return str(expr.value)
    if isinstance(expr, NotId):
        return f"!{format_id_expr(expr.arg)}"
    return f"({format_id_expr(expr.left)} | {format_id_expr(expr.right)})"


def format_labeling(labeling: Labeling) -> str:
    return ", ".join(f"{state}:{format_id_expr(expr)}" for state, expr in sorted(labeling.items()))
