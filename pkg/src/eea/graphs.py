"""Underlying undirected graphs and weighted digraphs of evolution algebras."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from .algebra import EvolutionAlgebra


@dataclass(frozen=True)
class SimpleGraph:
    """Loopless simple graph on vertices ``0..n-1`` with edges stored as sorted pairs."""

    n: int
    edges: tuple

    def __post_init__(self):
        norm = set()
        for e in self.edges:
            i, j = (int(v) for v in e)
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge {e} has an endpoint outside 0..{self.n - 1}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @classmethod
    def from_adjacency(cls, adj) -> "SimpleGraph":
        adj = np.asarray(adj, dtype=bool)
        sym = adj | adj.T
        np.fill_diagonal(sym, False)
        ii, jj = np.nonzero(np.triu(sym, 1))
        return cls(adj.shape[0], tuple(zip(ii.tolist(), jj.tolist())))

    @cached_property
    def neighbors(self) -> tuple:
        nb = [[] for _ in range(self.n)]
        for i, j in self.edges:
            nb[i].append(j)
            nb[j].append(i)
        return tuple(tuple(sorted(x)) for x in nb)

    @cached_property
    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=np.int64)
        if self.edges:
            e = np.array(self.edges)
            A[e[:, 0], e[:, 1]] = 1
            A[e[:, 1], e[:, 0]] = 1
        A.flags.writeable = False
        return A

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edge_set

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def relabel(self, sigma) -> "SimpleGraph":
        return SimpleGraph(self.n, tuple((sigma[i], sigma[j]) for i, j in self.edges))

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        lines += [f"  {i};" for i in range(self.n)]
        lines += [f"  {i} -- {j};" for i, j in self.edges]
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_edge_list(self) -> str:
        return "".join(f"{i} {j}\n" for i, j in self.edges)


@dataclass(frozen=True)
class Digraph:
    """Weighted digraph: arc ``i -> j`` with weight ``a_ij`` for every nonzero off-diagonal entry."""

    n: int
    arcs: tuple = field(default=())

    def __post_init__(self):
        seen = set()
        for i, j, w in self.arcs:
            if i == j:
                raise ValueError(f"loop arc at {i}")
            if w == 0:
                raise ValueError(f"zero-weight arc {i}->{j}")
            if (i, j) in seen:
                raise ValueError(f"duplicate arc {i}->{j}")
            seen.add((i, j))
        object.__setattr__(self, "arcs", tuple(sorted(self.arcs, key=lambda a: (a[0], a[1]))))

    @cached_property
    def successors(self) -> tuple:
        out = [[] for _ in range(self.n)]
        for i, j, _ in self.arcs:
            out[i].append(j)
        return tuple(tuple(x) for x in out)

    def to_dot(self, name: str = "D") -> str:
        lines = [f"digraph {name} {{"]
        lines += [f"  {i};" for i in range(self.n)]
        lines += [f'  {i} -> {j} [label="{w}"];' for i, j, w in self.arcs]
        lines.append("}")
        return "\n".join(lines) + "\n"


def underlying_graph(algebra: EvolutionAlgebra) -> SimpleGraph:
    """Edge ``{i, j}`` (``i != j``) iff ``a_ij != 0`` or ``a_ji != 0``; the diagonal is ignored."""
    return SimpleGraph.from_adjacency(algebra.nonzero_mask)


def digraph(algebra: EvolutionAlgebra) -> Digraph:
    mask = np.array(algebra.nonzero_mask)
    np.fill_diagonal(mask, False)
    ii, jj = np.nonzero(mask)
    A = algebra.matrix
    return Digraph(algebra.n, tuple((int(i), int(j), A[i, j]) for i, j in zip(ii, jj)))


def bfs_distances(graph: SimpleGraph, source: int) -> list:
    """Distances from ``source``; unreachable vertices get ``math.inf``."""
    dist = [math.inf] * graph.n
    dist[source] = 0
    queue = deque([source])
    nb = graph.neighbors
    while queue:
        u = queue.popleft()
        for v in nb[u]:
            if dist[v] == math.inf:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def connected_components(graph: SimpleGraph) -> list:
    """Components as sorted vertex lists, ordered by smallest vertex."""
    seen = [False] * graph.n
    comps = []
    for s in range(graph.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            u = stack.pop()
            for v in graph.neighbors[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def is_connected(graph: SimpleGraph) -> bool:
    return graph.n <= 1 or len(connected_components(graph)) == 1


def distance(graph: SimpleGraph, i: int, j: int):
    return bfs_distances(graph, i)[j]


def ball(graph: SimpleGraph, i: int, k: int) -> frozenset:
    return frozenset(v for v, d in enumerate(bfs_distances(graph, i)) if d <= k)


def diameter(graph: SimpleGraph):
    """Largest finite distance, or ``math.inf`` for a disconnected graph."""
    if not is_connected(graph):
        return math.inf
    return max((max(bfs_distances(graph, s)) for s in range(graph.n)), default=0)


def degrees(graph: SimpleGraph) -> list:
    return [len(nb) for nb in graph.neighbors]


def is_regular(graph: SimpleGraph) -> Optional[int]:
    """Common degree ``d`` if the graph is regular, else ``None``."""
    deg = set(degrees(graph))
    return deg.pop() if len(deg) == 1 else None


def has_directed_cycle(dg: Digraph) -> bool:
    """Iterative three-colour DFS; the algebra is nilpotent iff this is False."""
    WHITE, GREY, BLACK = 0, 1, 2
    color = [WHITE] * dg.n
    succ = dg.successors
    for root in range(dg.n):
        if color[root] != WHITE:
            continue
        color[root] = GREY
        stack = [(root, iter(succ[root]))]
        while stack:
            u, it = stack[-1]
            for v in it:
                if color[v] == GREY:
                    return True
                if color[v] == WHITE:
                    color[v] = GREY
                    stack.append((v, iter(succ[v])))
                    break
            else:
                color[u] = BLACK
                stack.pop()
    return False


def parse_edge_list(text: str, n: Optional[int] = None) -> SimpleGraph:
    """Read ``i j`` pairs, one per line; ``#`` starts a comment.

    Without ``n`` the vertex count is one more than the largest endpoint.
    """
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'i j', got {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return SimpleGraph(max(n, 1), tuple(edges))


def graph_algebra(graph: SimpleGraph, field=None, weight=1) -> EvolutionAlgebra:
    """The graphicable symmetric algebra whose structural matrix is the adjacency matrix."""
    from .fields import RATIONAL

    return EvolutionAlgebra.from_edges(graph.n, graph.edges, field or RATIONAL, weight=weight)

