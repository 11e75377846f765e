"""Witness graphs and the registry that numbers them."""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterator, Tuple

import graphviz

from src.ctl.id_expr import Labeling, format_id_expr
from src.liveness.dot_export import graph_to_dot
from src.model.host_system import StateId, Transition


class WitnessKind(str, Enum):
    EX = "EX"
    EU = "EU"
    EG = "EG"


@dataclass(frozen=True)
class WitnessGraph:
    kind: WitnessKind
    id: int
    nodes: FrozenSet[StateId]
    edges: Tuple[Transition, ...]
    attachments: Tuple[Labeling, ...]

    @property
    def lg(self) -> Labeling:
        return self.attachments[0]

    @property
    def l1(self) -> Labeling:
        return self.attachments[0]

    @property
    def l2(self) -> Labeling:
        return self.attachments[1]


class WitnessRegistry:
    """Maps ids 2, 3, ... to witness graphs; 1 is reserved for true."""

    def __init__(self):
        self._graphs: Dict[int, WitnessGraph] = {}
        self.next_id = 2

    def register(self, graph: WitnessGraph) -> WitnessGraph:
        if graph.id != self.next_id:
            raise ValueError(f"witness graph id {graph.id} out of order, expected {self.next_id}")
        self._graphs[graph.id] = graph
        self.next_id += 1
        return graph

    def __getitem__(self, graph_id: int) -> WitnessGraph:
        return self._graphs[graph_id]

    def __len__(self) -> int:
        return len(self._graphs)

    def __iter__(self) -> Iterator[WitnessGraph]:
        return iter(self._graphs[i] for i in sorted(self._graphs))

    def ids(self) -> Tuple[int, ...]:
        return tuple(sorted(self._graphs))


def witness_graph_to_dot(graph: WitnessGraph) -> graphviz.Digraph:
    labels = {}
    for node in graph.nodes:
        parts = []
        if graph.kind is WitnessKind.EU:
            if node in graph.l1:
                parts.append(f"L1={format_id_expr(graph.l1[node])}")
            if node in graph.l2:
                parts.append(f"L2={format_id_expr(graph.l2[node])}")
        elif node in graph.lg:
            parts.append(f"Lg={format_id_expr(graph.lg[node])}")
        if parts:
            labels[node] = " ".join(parts)
    return graph_to_dot(
        name=f"witness_{graph.id}",
        comment=f"witness graph {graph.id} kind {graph.kind.value}",
        nodes=graph.nodes,
        edges=graph.edges,
        node_labels=labels,
    )
