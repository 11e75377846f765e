"""DOT rendering of communication and witness graphs (Graphviz source only)."""

from typing import Iterable, Mapping, Optional

import graphviz

from src.model.host_system import StateId, Transition


def graph_to_dot(
    name: str,
    comment: str,
    nodes: Iterable[StateId],
    edges: Iterable[Transition],
    node_labels: Optional[Mapping[StateId, str]] = None,
    highlight: Iterable[StateId] = (),
) -> graphviz.Digraph:
    """
    Environment edges are solid and carry their event, communication edges
    are dashed and labeled ``input/output``. Nodes and edges are emitted in
    sorted order so the text is stable.
    """
    dot = graphviz.Digraph(name=name, comment=comment)
    dot.graph_attr["rankdir"] = "LR"
    highlighted = set(highlight)
    labels = node_labels or {}
    for node in sorted(nodes):
        kwargs = {"shape": "doublecircle" if node in highlighted else "circle"}
        if node in labels:
            kwargs["label"] = f"{node}\n{labels[node]}"
        dot.node(node, **kwargs)
    for edge in sorted(edges):
        if edge.is_communication:
            dot.edge(edge.source, edge.target, label=edge.label, style="dashed")
        else:
            dot.edge(edge.source, edge.target, label=edge.label, style="solid")
    return dot


def communication_graph_to_dot(graph) -> graphviz.Digraph:
    return graph_to_dot(
        name=f"communication_{graph.source}_{graph.target}",
        comment=f"communication graph {graph.source} -> {graph.target}",
        nodes=graph.nodes,
        edges=graph.edges,
        highlight=[graph.target],
    )
