"""
Formula parsers built on lark.

CTL precedence, tightest first: unary operators (``!`` and the temporal
prefixes), ``&``, ``|``, ``->`` (right associative).
"""

from lark import Lark, Transformer
from lark.exceptions import LarkError, UnexpectedInput

from src.formula import ast
from src.model.errors import ParseError

CTL_GRAMMAR = r"""
?start: implication

?implication: disjunction
    | disjunction "->" implication -> implies

?disjunction: conjunction
    | disjunction "|" conjunction -> or_

?conjunction: unary
    | conjunction "&" unary -> and_

?unary: primary
    | "!" unary -> not_
    | "EX" unary -> ex
    | "AX" unary -> ax
    | "EF" unary -> ef
    | "AF" unary -> af
    | "EG" unary -> eg
    | "AG" unary -> ag

?primary: "true" -> true
    | "false" -> false
    | NAME -> atom
    | "(" implication ")"
    | "E" "[" implication "U" implication "]" -> eu
    | "A" "[" implication "U" implication "]" -> au

NAME: /[A-Za-z_][A-Za-z0-9_]*/
COMMENT: /#[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""

PATH_GRAMMAR = r"""
?start: disjunction

?disjunction: conjunction
    | disjunction "|" conjunction -> or_

?conjunction: unary
    | conjunction "&" unary -> and_

?unary: primary
    | "!" unary -> not_
    | "X" unary -> next_
    | "F" unary -> finally_
    | "G" unary -> globally

?primary: "true" -> true
    | "false" -> false
    | NAME -> atom
    | "(" disjunction ")"
    | "[" disjunction "U" disjunction "]" -> until

NAME: /[A-Za-z_][A-Za-z0-9_]*/

%import common.WS
%ignore WS
"""


class _ToAst(Transformer):
    def true(self, _):
        return ast.TrueConst()

    def false(self, _):
        return ast.FalseConst()

    def atom(self, items):
        return ast.Atom(str(items[0]))

    def not_(self, items):
        return ast.Not(items[0])

    def and_(self, items):
        return ast.And(items[0], items[1])

    def or_(self, items):
        return ast.Or(items[0], items[1])

    def implies(self, items):
        return ast.Implies(items[0], items[1])

    def ex(self, items):
        return ast.EX(items[0])

    def ax(self, items):
        return ast.AX(items[0])

    def ef(self, items):
        return ast.EF(items[0])

    def af(self, items):
        return ast.AF(items[0])

    def eg(self, items):
        return ast.EG(items[0])

    def ag(self, items):
        return ast.AG(items[0])

    def eu(self, items):
        return ast.EU(items[0], items[1])

    def au(self, items):
        return ast.AU(items[0], items[1])

    def next_(self, items):
        return ast.Next(items[0])

    def finally_(self, items):
        return ast.Finally(items[0])

    def globally(self, items):
        return ast.Globally(items[0])

    def until(self, items):
        return ast.Until(items[0], items[1])


# Words the grammars claim for themselves; a state or proposition named like
# one of them can never be written as an atom.
RESERVED_NAMES = frozenset(
    {"true", "false", "E", "A", "U", "X", "F", "G", "EX", "AX", "EF", "AF", "EG", "AG"}
)

_ctl_parser = Lark(CTL_GRAMMAR, parser="lalr")
_path_parser = Lark(PATH_GRAMMAR, parser="lalr")


def _parse(parser: Lark, text: str, kind: str):
    try:
        tree = parser.parse(text)
    except UnexpectedInput as e:
        line = e.line if isinstance(e.line, int) and e.line > 0 else None
        column = e.column if isinstance(e.column, int) and e.column > 0 else None
        raise ParseError(f"invalid {kind} formula: {text.strip()!r}", line, column) from e
    except LarkError as e:
        raise ParseError(f"invalid {kind} formula: {e}") from e
    return _ToAst().transform(tree)


def parse_ctl(text: str) -> ast.CtlFormula:
    """Parse a CTL formula; raises ParseError with the failing position."""
    return _parse(_ctl_parser, text, "CTL")


def parse_path(text: str) -> ast.PathFormula:
    return _parse(_path_parser, text, "path")
