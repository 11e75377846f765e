"""
Rewrite CTL into existential normal form over {true, atoms, !, |, EX, EU, EG}.

Double negations produced by the rewriting are collapsed, so
``AG (s2 -> AF s3)`` becomes ``!E[true U !(!s2 | !EG !s3)]``.
"""

from dataclasses import dataclass

from src.formula import ast


@dataclass(frozen=True)
class NormalizedCtl:
    formula: ast.CtlFormula
    operator_count: int


def _neg(formula):
    if isinstance(formula, ast.Not):
        return formula.arg
    return ast.Not(formula)


def _and(left, right):
    return _neg(ast.Or(_neg(left), _neg(right)))


def _rewrite(f):
    if isinstance(f, (ast.TrueConst, ast.Atom)):
        return f
    if isinstance(f, ast.FalseConst):
        return ast.Not(ast.TrueConst())
    if isinstance(f, ast.Not):
        return _neg(_rewrite(f.arg))
    if isinstance(f, ast.Or):
        return ast.Or(_rewrite(f.left), _rewrite(f.right))
    if isinstance(f, ast.And):
        return _and(_rewrite(f.left), _rewrite(f.right))
    if isinstance(f, ast.Implies):
        return ast.Or(_neg(_rewrite(f.left)), _rewrite(f.right))
    if isinstance(f, ast.EX):
        return ast.EX(_rewrite(f.arg))
    if isinstance(f, ast.AX):
        return _neg(ast.EX(_neg(_rewrite(f.arg))))
    if isinstance(f, ast.EF):
        return ast.EU(ast.TrueConst(), _rewrite(f.arg))
    if isinstance(f, ast.AF):
        return _neg(ast.EG(_neg(_rewrite(f.arg))))
    if isinstance(f, ast.EG):
        return ast.EG(_rewrite(f.arg))
    if isinstance(f, ast.AG):
        return _neg(ast.EU(ast.TrueConst(), _neg(_rewrite(f.arg))))
    if isinstance(f, ast.EU):
        return ast.EU(_rewrite(f.left), _rewrite(f.right))
    if isinstance(f, ast.AU):
        left, right = _rewrite(f.left), _rewrite(f.right)
        not_right = _neg(right)
        return _neg(ast.Or(ast.EU(not_right, _and(_neg(left), not_right)), ast.EG(not_right)))
    raise TypeError(f"not a CTL formula: {f!r}")


def operator_count(formula) -> int:
    """Number of EX / EU / EG nodes in a normalized tree."""
    return sum(1 for node in ast.walk(formula) if isinstance(node, ast.NORMAL_TEMPORAL))


def is_normalized(formula) -> bool:
    allowed = (ast.TrueConst, ast.Atom, ast.Not, ast.Or) + ast.NORMAL_TEMPORAL
    return all(isinstance(node, allowed) for node in ast.walk(formula))


def normalize(formula: ast.CtlFormula) -> NormalizedCtl:
    rewritten = _rewrite(formula)
    return NormalizedCtl(formula=rewritten, operator_count=operator_count(rewritten))
