"""Render formulas back into the parser's grammar."""

from src.formula import ast

_UNARY_CTL = {
    ast.Not: "!",
    ast.EX: "EX ",
    ast.AX: "AX ",
    ast.EF: "EF ",
    ast.AF: "AF ",
    ast.EG: "EG ",
    ast.AG: "AG ",
    ast.Next: "X ",
    ast.Finally: "F ",
    ast.Globally: "G ",
}

_BINARY = {
    ast.And: "&",
    ast.Or: "|",
    ast.Implies: "->",
}


def print_formula(formula) -> str:
    """Binary connectives are always parenthesized, so printing then parsing is exact."""
    if isinstance(formula, ast.TrueConst):
        return "true"
    if isinstance(formula, ast.FalseConst):
        return "false"
    if isinstance(formula, ast.Atom):
        return formula.name
    kind = type(formula)
    if kind in _UNARY_CTL:
        return _UNARY_CTL[kind] + print_formula(formula.arg)
    if kind in _BINARY:
        return f"({print_formula(formula.left)} {_BINARY[kind]} {print_formula(formula.right)})"
    if kind is ast.EU:
        return f"E[{print_formula(formula.left)} U {print_formula(formula.right)}]"
    if kind is ast.AU:
        return f"A[{print_formula(formula.left)} U {print_formula(formula.right)}]"
    if kind is ast.Until:
        return f"[{print_formula(formula.left)} U {print_formula(formula.right)}]"
    raise TypeError(f"not a formula node: {formula!r}")


print_ctl = print_formula
print_path = print_formula
