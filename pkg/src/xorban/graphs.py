"""Directed-graph helpers for interaction graphs.

Graphs are plain ``dict[node, list[node]]`` successor maps. Neighbour lists are
iterated in sorted order everywhere so that every traversal is deterministic
(lowest id first on ties).
"""

from __future__ import annotations

from collections import deque
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Set

import networkx as nx

Graph = Mapping[int, Sequence[int]]


def tarjan_scc(nodes: Iterable[Hashable], succ) -> List[List[Hashable]]:
    """Strongly connected components, iterative Tarjan.

    ``succ(v)`` returns the successors of ``v``. Components come out in reverse
    topological order of the condensation (sinks first).
    """
    index: Dict[Hashable, int] = {}
    low: Dict[Hashable, int] = {}
    on_stack: Set[Hashable] = set()
    stack: List[Hashable] = []
    out: List[List[Hashable]] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(succ(root)))]
        while work:
            v, it = work[-1]
            pushed = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    pushed = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if pushed:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def is_strongly_connected(graph: Graph) -> bool:
    nodes = sorted(graph)
    if not nodes:
        return False
    return len(tarjan_scc(nodes, lambda v: graph[v])) == 1


def bfs_tree(graph: Graph, sources: Iterable[int]) -> Dict[int, Optional[int]]:
    """Multi-source BFS parents (sources map to None), lowest id first."""
    parent: Dict[int, Optional[int]] = {}
    queue = deque()
    for s in sorted(set(sources)):
        parent[s] = None
        queue.append(s)
    while queue:
        v = queue.popleft()
        for w in sorted(graph[v]):
            if w not in parent:
                parent[w] = v
                queue.append(w)
    return parent


def tree_depths(parent: Mapping[int, Optional[int]]) -> Dict[int, int]:
    depth: Dict[int, int] = {}

    def d(v):
        if v in depth:
            return depth[v]
        p = parent[v]
        depth[v] = 0 if p is None else d(p) + 1
        return depth[v]

    for v in parent:
        d(v)
    return depth


def branch(parent: Mapping[int, Optional[int]], v: int) -> List[int]:
    """Tree path from the root set down to ``v`` (inclusive at both ends)."""
    path = [v]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path[::-1]


def shortest_path(graph: Graph, sources: Iterable[int], targets: Iterable[int]) -> Optional[List[int]]:
    """A shortest path from any source to any target, lowest-id tie-breaking."""
    targets = set(targets)
    parent = {}
    queue = deque()
    for s in sorted(set(sources)):
        parent[s] = None
        if s in targets:
            return [s]
        queue.append(s)
    while queue:
        v = queue.popleft()
        for w in sorted(graph[v]):
            if w in parent:
                continue
            parent[w] = v
            if w in targets:
                return branch(parent, w)
            queue.append(w)
    return None


def simple_cycles(graph: Graph, limit: Optional[int] = None) -> List[List[int]]:
    """Elementary cycles (networkx/Johnson), each rotated to start at its minimum.

    Raises ValueError if more than ``limit`` cycles exist.
    """
    g = nx.DiGraph()
    g.add_nodes_from(graph)
    for v, ws in graph.items():
        for w in ws:
            g.add_edge(v, w)
    cycles = []
    for c in nx.simple_cycles(g):
        k = c.index(min(c))
        cycles.append(c[k:] + c[:k])
        if limit is not None and len(cycles) > limit:
            raise ValueError(f"more than {limit} simple cycles")
    cycles.sort(key=lambda c: (len(c), c))
    return cycles


__all__ = [
    "tarjan_scc",
    "is_strongly_connected",
    "bfs_tree",
    "tree_depths",
    "branch",
    "shortest_path",
    "simple_cycles",
]
