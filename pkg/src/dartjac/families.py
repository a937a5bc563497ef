"""Constructors for the standard graphs used across tests and suites."""

from __future__ import annotations

from typing import Iterable, Sequence

from .dartgraph import DartGraph

__all__ = [
    "from_edges",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "complete_bipartite",
    "petersen_graph",
    "cube_graph",
    "banana_graph",
    "double_banana",
    "bouquet",
    "add_decorations",
]


def from_edges(
    vertex_count: int,
    ordinary: Sequence[tuple[int, int]] = (),
    loops: Sequence[int] = (),
    semiedges: Sequence[int] = (),
) -> DartGraph:
    """Build a graph from an edge list; repeats give parallel edges.

    Darts are allocated in listing order: each ordinary edge or loop
    takes two consecutive ids, each semiedge one.
    """
    lam: list[int] = []
    vertex_of: list[int] = []
    for u, w in ordinary:
        if u == w:
            raise ValueError("use loops= for edges with equal endpoints")
        x = len(lam)
        lam.extend([x + 1, x])
        vertex_of.extend([u, w])
    for u in loops:
        x = len(lam)
        lam.extend([x + 1, x])
        vertex_of.extend([u, u])
    for u in semiedges:
        lam.append(len(lam))
        vertex_of.append(u)
    if vertex_count < 1 or (vertex_of and max(vertex_of) >= vertex_count):
        raise ValueError("vertex ids out of range")
    if set(vertex_of) != set(range(vertex_count)):
        raise ValueError("every vertex needs at least one dart")
    return DartGraph(lam, vertex_of).check()


def path_graph(n: int) -> DartGraph:
    if n < 2:
        raise ValueError("a path needs at least two vertices")
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> DartGraph:
    if n < 1:
        raise ValueError("a cycle needs at least one vertex")
    if n == 1:
        return from_edges(1, loops=[0])
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> DartGraph:
    if n < 2:
        raise ValueError("complete graphs start at two vertices here")
    return from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> DartGraph:
    return from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> DartGraph:
    """Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- 5+i."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, 5 + i) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edges(10, edges)


def cube_graph() -> DartGraph:
    """Q3: vertices are the 3-bit strings, edges flip one bit."""
    edges = []
    for v in range(8):
        for bit in (1, 2, 4):
            w = v ^ bit
            if v < w:
                edges.append((v, w))
    return from_edges(8, edges)


def banana_graph(m: int) -> DartGraph:
    """Two vertices joined by m parallel edges (m = 3 is the theta graph)."""
    if m < 1:
        raise ValueError("need at least one edge")
    return from_edges(2, [(0, 1)] * m)


def double_banana(m: int = 3) -> DartGraph:
    """A central vertex joined to each of two others by m parallel edges."""
    return from_edges(3, [(0, 1)] * m + [(0, 2)] * m)


def bouquet(loops: int = 0, semiedges: int = 0) -> DartGraph:
    if loops + semiedges == 0:
        raise ValueError("a one-vertex graph still needs a dart")
    return from_edges(1, loops=[0] * loops, semiedges=[0] * semiedges)


def add_decorations(
    g: DartGraph, loops: Iterable[int] = (), semiedges: Iterable[int] = ()
) -> DartGraph:
    """Append loops and semiedges at the given vertices, keeping dart ids."""
    lam = list(g.lam)
    vertex_of = list(g.vertex_of)
    for u in loops:
        x = len(lam)
        lam.extend([x + 1, x])
        vertex_of.extend([u, u])
    for u in semiedges:
        lam.append(len(lam))
        vertex_of.append(u)
    if vertex_of and max(vertex_of) >= g.vertex_count:
        raise ValueError("decoration vertex out of range")
    return DartGraph(lam, vertex_of).check()
