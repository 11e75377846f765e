"""
Bounded nested depth-first searches that discharge communication and witness
graphs by experimenting on the component.

Environment edges are walked freely. A communication edge is taken only
after the component, replayed to the current input prefix, answers the
edge's input with the edge's output. The number of communications between
two milestones is bounded by ``m * n_search`` (see ``CommBounds``); liveness
and EG searches need m further arrivals at the target after the first one,
which forces the component to repeat a state, so the path closes into a real
lasso.

Search nodes are (host state, input prefix, milestone count); the level is
the number of communications since the last milestone. A node revisited at
an equal or higher level cannot succeed where the first visit failed, so it
is skipped. That also cuts environment cycles.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from src.ctl.id_expr import IdExpr, NotId, OrId, is_one
from src.ctl.witness import WitnessGraph, WitnessKind, WitnessRegistry
from src.liveness.bounds import CommBounds
from src.liveness.comm_graph import CommunicationGraph
from src.model.experiments import ExperimentSession, InputSequence
from src.model.host_system import StateId, SymbolId, Transition
from src.model.scc import nontrivial_components
from src.testing.trace import SearchTrace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchFrame:
    inputs: InputSequence
    current: StateId
    level: int = 0
    count: int = 0

    def move(self, target: StateId) -> "SearchFrame":
        return replace(self, current=target)

    def communicate(self, symbol: SymbolId, target: StateId) -> "SearchFrame":
        return SearchFrame(self.inputs + (symbol,), target, self.level + 1, self.count)

    def milestone(self) -> "SearchFrame":
        return replace(self, level=0, count=self.count + 1)


class Step(Enum):
    ACCEPT = "accept"
    REJECT = "reject"
    EXPAND = "expand"


class GraphIndex:
    """Adjacency of one graph, grouped the way the searches consume it."""

    def __init__(self, nodes: Iterable[StateId], edges: Iterable[Transition]):
        self.nodes = frozenset(nodes)
        self._env: Dict[StateId, List[StateId]] = defaultdict(list)
        self._comm: Dict[StateId, Dict[SymbolId, List[Tuple[SymbolId, StateId]]]] = defaultdict(lambda: defaultdict(list))
        self._successors: Dict[StateId, List[StateId]] = defaultdict(list)
        for edge in sorted(edges):
            self._successors[edge.source].append(edge.target)
            if edge.is_communication:
                self._comm[edge.source][edge.input].append((edge.output, edge.target))
            else:
                self._env[edge.source].append(edge.target)
        self._cycle_states: Optional[Tuple[StateId, ...]] = None

    def env_targets(self, state: StateId) -> List[StateId]:
        return self._env.get(state, [])

    def inputs(self, state: StateId) -> List[SymbolId]:
        return sorted(self._comm.get(state, {}))

    def comm_targets(self, state: StateId, symbol: SymbolId, output: SymbolId) -> List[StateId]:
        return [target for answer, target in self._comm[state][symbol] if answer == output]

    def cycle_states(self) -> Tuple[StateId, ...]:
        """States of nontrivial strongly connected components, sorted."""
        if self._cycle_states is None:
            components = nontrivial_components(sorted(self.nodes), lambda s: self._successors.get(s, []))
            self._cycle_states = tuple(sorted(set().union(*components))) if components else ()
        return self._cycle_states


class WitnessSearch:
    """Runs the searches for one check on one component session."""

    def __init__(
        self,
        session: ExperimentSession,
        state_bound: int,
        registry: Optional[WitnessRegistry] = None,
        bounds: Optional[Mapping[int, CommBounds]] = None,
        trace: Optional[SearchTrace] = None,
    ):
        self.session = session
        self.m = state_bound
        self.registry = registry or WitnessRegistry()
        self.bounds = dict(bounds or {})
        self.trace = trace or SearchTrace()
        self.witness: Optional[InputSequence] = None
        self._indexes: Dict[int, GraphIndex] = {}
        self._memo: Dict[Tuple[InputSequence, StateId, IdExpr], bool] = {}

    def test_liveness(self, graph: CommunicationGraph, bounds: CommBounds) -> bool:
        """Can the search reach the target and come back to it m more times?"""
        index = GraphIndex(graph.nodes, graph.edges)
        budget = bounds.budget(self.m)
        target = graph.target
        seen: Dict = {}

        def visit(frame: SearchFrame):
            if frame.level > budget:
                return Step.REJECT, frame
            if frame.current == target:
                if frame.count >= self.m:
                    return Step.ACCEPT, frame
                frame = frame.milestone()
            if not self._first_visit(seen, frame):
                return Step.REJECT, frame
            return Step.EXPAND, frame

        found = self._search(SearchFrame((), graph.source), index, budget, visit, "liveness")
        verdict = found is not None
        if verdict:
            self.witness = found.inputs
        self.trace.record("verdict", graph="liveness", state=graph.source, target=target, verdict=verdict)
        logger.info("Liveness %s -> %s tested: %s", graph.source, target, verdict)
        return verdict

    def test_wg(self, inputs: InputSequence, state: StateId, expr: IdExpr) -> bool:
        if is_one(expr):
            return True
        key = (inputs, state, expr)
        if key in self._memo:
            return self._memo[key]
        if isinstance(expr, OrId):
            verdict = self.test_wg(inputs, state, expr.left) or self.test_wg(inputs, state, expr.right)
        elif isinstance(expr, NotId):
            verdict = not self.test_wg(inputs, state, expr.arg)
        else:
            graph = self.registry[expr.value]
            if graph.kind is WitnessKind.EX:
                verdict = self.test_ex(inputs, state, graph)
            elif graph.kind is WitnessKind.EU:
                verdict = self.test_eu(inputs, state, graph)
            else:
                verdict = self.test_eg(inputs, state, graph)
            self.trace.record("verdict", graph=graph.id, state=state, inputs=inputs, verdict=verdict)
        self._memo[key] = verdict
        return verdict

    def test_ex(self, inputs: InputSequence, state: StateId, graph: WitnessGraph) -> bool:
        index = self._index(graph)
        lg = graph.lg
        for target in index.env_targets(state):
            if target in lg and self.test_wg(inputs, target, lg[target]):
                return True
        for symbol in index.inputs(state):
            output = self._probe(inputs, symbol, state, graph.id)
            for target in index.comm_targets(state, symbol, output):
                if target in lg and self.test_wg(inputs + (symbol,), target, lg[target]):
                    return True
        return False

    def test_eu(self, inputs: InputSequence, state: StateId, graph: WitnessGraph, level: int = 0) -> bool:
        index = self._index(graph)
        budget = self._budget(graph)
        l1, l2 = graph.l1, graph.l2
        seen: Dict = {}

        def visit(frame: SearchFrame):
            if frame.level > budget or not self._first_visit(seen, frame):
                return Step.REJECT, frame
            here = frame.current
            if here in l2 and self.test_wg(frame.inputs, here, l2[here]):
                return Step.ACCEPT, frame
            if here not in l1 or not self.test_wg(frame.inputs, here, l1[here]):
                return Step.REJECT, frame
            return Step.EXPAND, frame

        return self._search(SearchFrame(inputs, state, level), index, budget, visit, graph.id) is not None

    def test_eg(self, inputs: InputSequence, state: StateId, graph: WitnessGraph) -> bool:
        index = self._index(graph)
        for target in index.cycle_states():
            if self.sub_test_eg(inputs, state, target, graph):
                return True
        return False

    def sub_test_eg(
        self,
        inputs: InputSequence,
        state: StateId,
        target: StateId,
        graph: WitnessGraph,
        level: int = 0,
        count: int = 0,
    ) -> bool:
        index = self._index(graph)
        budget = self._budget(graph)
        lg = graph.lg
        seen: Dict = {}

        def visit(frame: SearchFrame):
            if frame.level > budget:
                return Step.REJECT, frame
            here = frame.current
            if here not in lg or not self.test_wg(frame.inputs, here, lg[here]):
                return Step.REJECT, frame
            if here == target:
                if frame.count >= self.m:
                    return Step.ACCEPT, frame
                frame = frame.milestone()
            if not self._first_visit(seen, frame):
                return Step.REJECT, frame
            return Step.EXPAND, frame

        found = self._search(SearchFrame(inputs, state, level, count), index, budget, visit, graph.id)
        if found is not None:
            self.witness = found.inputs
        return found is not None

    def _search(
        self,
        root: SearchFrame,
        index: GraphIndex,
        budget: int,
        visit: Callable[[SearchFrame], Tuple[Step, SearchFrame]],
        graph_name,
    ) -> Optional[SearchFrame]:
        """Iterative DFS; successors are generated lazily so probes follow DFS order."""
        stack: List[Iterator[SearchFrame]] = [iter((root,))]
        while stack:
            frame = next(stack[-1], None)
            if frame is None:
                stack.pop()
                continue
            step, frame = visit(frame)
            self.trace.record(
                "branch",
                graph=graph_name,
                state=frame.current,
                inputs=frame.inputs,
                level=frame.level,
                count=frame.count,
                step=step.value,
            )
            if step is Step.ACCEPT:
                return frame
            if step is Step.EXPAND:
                stack.append(self._moves(frame, index, budget, graph_name))
        return None

    def _moves(self, frame: SearchFrame, index: GraphIndex, budget: int, graph_name) -> Iterator[SearchFrame]:
        for target in index.env_targets(frame.current):
            yield frame.move(target)
        if frame.level + 1 > budget:
            return
        for symbol in index.inputs(frame.current):
            output = self._probe(frame.inputs, symbol, frame.current, graph_name)
            for target in index.comm_targets(frame.current, symbol, output):
                yield frame.communicate(symbol, target)

    def _probe(self, inputs: InputSequence, symbol: SymbolId, state: StateId, graph_name) -> SymbolId:
        """Replay ``inputs`` and feed ``symbol``; nested tests may have moved the session."""
        self.session.experiment(inputs)
        output = self.session.step(symbol)
        self.trace.record("experiment", graph=graph_name, state=state, inputs=inputs, input=symbol, output=output)
        return output

    @staticmethod
    def _first_visit(seen: Dict, frame: SearchFrame) -> bool:
        key = (frame.current, frame.inputs, frame.count)
        best = seen.get(key)
        if best is not None and best <= frame.level:
            return False
        seen[key] = frame.level
        return True

    def _index(self, graph: WitnessGraph) -> GraphIndex:
        index = self._indexes.get(graph.id)
        if index is None:
            index = self._indexes[graph.id] = GraphIndex(graph.nodes, graph.edges)
        return index

    def _budget(self, graph: WitnessGraph) -> int:
        bounds = self.bounds.get(graph.id)
        if bounds is None:
            return self.m * len(graph.nodes)
        return bounds.budget(self.m)
