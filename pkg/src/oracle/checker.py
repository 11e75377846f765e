"""
Fixpoint model checking on an explicit composition.

Every operator is evaluated directly, without rewriting to the normal form,
so that comparing against the black-box engine also exercises normalization.
Only infinite paths count for EG; AX holds vacuously at a dead end.
"""

from typing import Callable, Dict, FrozenSet, List, Set, Union

from src.formula import ast
from src.formula.parser import parse_ctl
from src.model.host_system import StateId
from src.model.scc import nontrivial_components
from src.oracle.compose import ComposedState, ComposedSystem

StateSet = FrozenSet[ComposedState]


class _Evaluator:
    def __init__(self, composed: ComposedSystem):
        self.composed = composed
        self.all: StateSet = frozenset(composed.states)
        self.predecessors = composed.predecessors()
        self._memo: Dict[object, StateSet] = {}

    def pre_exists(self, target: StateSet) -> StateSet:
        return frozenset(p for t in target for p in self.predecessors[t])

    def pre_forall(self, target: StateSet) -> StateSet:
        return frozenset(s for s in self.all if all(t in target for t in self.composed.successors[s]))

    def least(self, step: Callable[[StateSet], StateSet]) -> StateSet:
        current: StateSet = frozenset()
        while True:
            following = step(current)
            if following == current:
                return current
            current = following

    def greatest(self, step: Callable[[StateSet], StateSet]) -> StateSet:
        current = self.all
        while True:
            following = step(current)
            if following == current:
                return current
            current = following

    def atom(self, name: str) -> StateSet:
        return frozenset((s, x) for s, x in self.all if self.composed.system.holds(s, name))

    def sat(self, f) -> StateSet:
        if f not in self._memo:
            self._memo[f] = self._sat(f)
        return self._memo[f]

    def _sat(self, f) -> StateSet:
        if isinstance(f, ast.TrueConst):
            return self.all
        if isinstance(f, ast.FalseConst):
            return frozenset()
        if isinstance(f, ast.Atom):
            return self.atom(f.name)
        if isinstance(f, ast.Not):
            return self.all - self.sat(f.arg)
        if isinstance(f, ast.And):
            return self.sat(f.left) & self.sat(f.right)
        if isinstance(f, ast.Or):
            return self.sat(f.left) | self.sat(f.right)
        if isinstance(f, ast.Implies):
            return (self.all - self.sat(f.left)) | self.sat(f.right)
        if isinstance(f, ast.EX):
            return self.pre_exists(self.sat(f.arg))
        if isinstance(f, ast.AX):
            return self.pre_forall(self.sat(f.arg))
        if isinstance(f, ast.EF):
            goal = self.sat(f.arg)
            return self.least(lambda z: goal | self.pre_exists(z))
        if isinstance(f, ast.AF):
            goal = self.sat(f.arg)
            return self.least(lambda z: goal | self.pre_forall(z))
        if isinstance(f, ast.EG):
            inv = self.sat(f.arg)
            return self.greatest(lambda z: inv & self.pre_exists(z))
        if isinstance(f, ast.AG):
            inv = self.sat(f.arg)
            return self.greatest(lambda z: inv & self.pre_forall(z))
        if isinstance(f, ast.EU):
            hold, goal = self.sat(f.left), self.sat(f.right)
            return self.least(lambda z: goal | (hold & self.pre_exists(z)))
        if isinstance(f, ast.AU):
            hold, goal = self.sat(f.left), self.sat(f.right)
            return self.least(lambda z: goal | (hold & self.pre_forall(z)))
        raise TypeError(f"not a state formula: {f!r}")


def sat_set(composed: ComposedSystem, formula: Union[str, ast.CtlFormula]) -> StateSet:
    """Composed states satisfying ``formula``."""
    if isinstance(formula, str):
        formula = parse_ctl(formula)
    return _Evaluator(composed).sat(formula)


def oracle_ctl(composed: ComposedSystem, state: StateId, formula: Union[str, ast.CtlFormula]) -> bool:
    """Truth of ``formula`` at ``state`` with the component freshly reset."""
    composed.system.require_state(state)
    return composed.initial(state) in sat_set(composed, formula)


def oracle_infinite_often(composed: ComposedSystem, source: StateId, target: StateId) -> bool:
    """True iff some composed run from ``source`` visits ``target`` infinitely often."""
    composed.system.require_state(source)
    composed.system.require_state(target)
    reachable = composed.reachable(composed.initial(source))
    components: List[FrozenSet[ComposedState]] = nontrivial_components(
        sorted(reachable), lambda state: [t for t in composed.successors[state] if t in reachable]
    )
    hits: Set[ComposedState] = {state for state in reachable if state[0] == target}
    return any(component & hits for component in components)
