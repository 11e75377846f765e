"""Strongly connected components (Tarjan)."""

import itertools
from typing import Callable, FrozenSet, Hashable, Iterable, Iterator, List, Set


def tarjan(vertices: Iterable[Hashable], neighbours: Callable[[Hashable], Iterable[Hashable]]) -> Iterator[Set]:
    """Yield the strongly connected components, each as a set of vertices."""

    def strongconnect(v):
        index[v] = lowlink[v] = next(indices)
        stack.append(v)
        on_stack.add(v)

        for w in neighbours(v):
            if w not in index:
                yield from strongconnect(w)
                lowlink[v] = min(lowlink[v], lowlink[w])
            elif w in on_stack:
                lowlink[v] = min(lowlink[v], index[w])

        if lowlink[v] == index[v]:
            scc = set()
            while True:
                w = stack.pop()
                on_stack.discard(w)
                scc.add(w)
                if w == v:
                    break
            yield scc

    indices = itertools.count()
    stack: List = []
    on_stack: Set = set()
    index = {}
    lowlink = {}
    for v in vertices:
        if v not in index:
            yield from strongconnect(v)


def nontrivial_components(vertices: Iterable[Hashable], neighbours: Callable[[Hashable], Iterable[Hashable]]) -> List[FrozenSet]:
    """Components that contain at least one edge; a self-loop counts."""
    result = []
    for scc in tarjan(vertices, neighbours):
        if len(scc) > 1:
            result.append(frozenset(scc))
            continue
        (v,) = scc
        if v in set(neighbours(v)):
            result.append(frozenset(scc))
    return result
