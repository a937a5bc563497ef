"""Dart-based graphs.

A graph is a finite set of darts 0..n-1, an assignment of darts to
vertices (the partition), and a dart-reversing involution. Semiedges
(darts fixed by the involution), loops, and parallel edges are all legal;
isolated vertices are not.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from . import intlinalg
from .errors import (
    Disconnected,
    InvalidGraph,
    NotASpanningTree,
    ScaleExceeded,
    SemiedgePresent,
)

__all__ = [
    "DartGraph",
    "Walk",
    "SpanningTree",
    "EdgeClassification",
    "classify_edges",
    "is_connected",
    "edge_connectivity",
    "spanning_tree_count",
    "spanning_tree_enumerate",
    "bfs_spanning_tree",
    "fundamental_cycles",
    "tree_path_darts",
    "ordinary_reduction",
]


class DartGraph:
    """Immutable graph given by a dart involution and a vertex partition.

    `lam[x]` is the partner dart of x (equal to x for a semiedge) and
    `vertex_of[x]` is the vertex holding x. Edges are the orbits of `lam`;
    the edge transversal picks the smaller dart id from each orbit.
    """

    __slots__ = ("lam", "vertex_of", "_classes", "_edges", "_edge_of_dart")

    def __init__(self, lam: Sequence[int], vertex_of: Sequence[int]):
        self.lam = tuple(int(x) for x in lam)
        self.vertex_of = tuple(int(v) for v in vertex_of)
        if len(self.lam) != len(self.vertex_of):
            raise InvalidGraph("lambda and vertex map must have the same length")
        self._classes: tuple[tuple[int, ...], ...] | None = None
        self._edges: tuple[tuple[int, int], ...] | None = None
        self._edge_of_dart: dict[int, int] | None = None

    @classmethod
    def from_vertex_classes(
        cls, lam: Sequence[int], classes: Sequence[Iterable[int]]
    ) -> "DartGraph":
        vertex_of = [-1] * len(lam)
        for v, cl in enumerate(classes):
            for x in cl:
                if not 0 <= x < len(lam) or vertex_of[x] != -1:
                    raise InvalidGraph(f"vertex classes do not partition the darts (dart {x})")
                vertex_of[x] = v
        if -1 in vertex_of:
            raise InvalidGraph(f"dart {vertex_of.index(-1)} missing from the vertex partition")
        g = cls(lam, vertex_of)
        g.check()
        return g

    @property
    def dart_count(self) -> int:
        return len(self.lam)

    @property
    def vertex_count(self) -> int:
        return max(self.vertex_of) + 1 if self.vertex_of else 0

    def validate(self) -> list[str]:
        """Check the model invariants; returns a list of violations."""
        problems = []
        n = self.dart_count
        if n == 0:
            problems.append("graph has no darts")
        involution_ok = True
        for x, y in enumerate(self.lam):
            if not 0 <= y < n:
                problems.append(f"lambda[{x}] = {y} out of range")
                involution_ok = False
        if involution_ok and any(self.lam[self.lam[x]] != x for x in range(n)):
            problems.append("lambda is not an involution")
        seen = set()
        for x, v in enumerate(self.vertex_of):
            if v < 0:
                problems.append(f"vertex id of dart {x} is negative")
            else:
                seen.add(v)
        if seen:
            for v in range(max(seen) + 1):
                if v not in seen:
                    problems.append(f"vertex {v} has no darts")
        return problems

    def check(self) -> "DartGraph":
        problems = self.validate()
        if problems:
            raise InvalidGraph("; ".join(problems))
        return self

    def vertex_darts(self) -> tuple[tuple[int, ...], ...]:
        if self._classes is None:
            buckets: list[list[int]] = [[] for _ in range(self.vertex_count)]
            for x, v in enumerate(self.vertex_of):
                buckets[v].append(x)
            self._classes = tuple(tuple(b) for b in buckets)
        return self._classes

    def edges(self) -> tuple[tuple[int, int], ...]:
        """Orbits of lambda as (x, lam[x]) with x minimal, ascending in x."""
        if self._edges is None:
            self._edges = tuple(
                (x, self.lam[x]) for x in range(self.dart_count) if x <= self.lam[x]
            )
        return self._edges

    def edge_of_dart(self, x: int) -> int:
        if self._edge_of_dart is None:
            lookup = {}
            for e, (a, b) in enumerate(self.edges()):
                lookup[a] = e
                lookup[b] = e
            self._edge_of_dart = lookup
        return self._edge_of_dart[x]

    def dart_plus(self) -> tuple[int, ...]:
        """The edge transversal: the smaller dart of every orbit."""
        return tuple(e[0] for e in self.edges())

    def valency(self, v: int) -> int:
        """Number of darts at v: a semiedge counts 1, a loop counts 2."""
        return len(self.vertex_darts()[v])

    def is_semiedge_dart(self, x: int) -> bool:
        return self.lam[x] == x

    def is_loop_dart(self, x: int) -> bool:
        return self.lam[x] != x and self.vertex_of[self.lam[x]] == self.vertex_of[x]

    def endpoints(self, edge_id: int) -> tuple[int, int]:
        x, y = self.edges()[edge_id]
        u, w = self.vertex_of[x], self.vertex_of[y]
        return (u, w) if u <= w else (w, u)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, DartGraph)
            and self.lam == other.lam
            and self.vertex_of == other.vertex_of
        )

    def __hash__(self) -> int:
        return hash((self.lam, self.vertex_of))

    def __repr__(self) -> str:
        return f"DartGraph({self.dart_count} darts, {self.vertex_count} vertices)"


@dataclass(frozen=True)
class Walk:
    """An oriented dart sequence; consecutive darts chain head to tail."""

    darts: tuple[int, ...]

    def is_valid(self, g: DartGraph) -> bool:
        return all(
            g.vertex_of[self.darts[i + 1]] == g.vertex_of[g.lam[self.darts[i]]]
            for i in range(len(self.darts) - 1)
        )

    def is_closed(self, g: DartGraph) -> bool:
        return bool(self.darts) and (
            g.vertex_of[self.darts[0]] == g.vertex_of[g.lam[self.darts[-1]]]
        )

    def start(self, g: DartGraph) -> int:
        return g.vertex_of[self.darts[0]]

    def reversed_in(self, g: DartGraph) -> "Walk":
        return Walk(tuple(g.lam[x] for x in reversed(self.darts)))


@dataclass(frozen=True)
class SpanningTree:
    """A spanning tree as a sorted tuple of ordinary edge ids."""

    edges: tuple[int, ...]

    def dart_set(self, g: DartGraph) -> frozenset[int]:
        darts = set()
        for e in self.edges:
            x, y = g.edges()[e]
            darts.add(x)
            darts.add(y)
        return frozenset(darts)


@dataclass(frozen=True)
class EdgeClassification:
    """Edge ids split by kind, with ordinary edges grouped by endpoints."""

    semiedges: tuple[int, ...]
    loops: tuple[int, ...]
    ordinary: tuple[int, ...]
    by_endpoints: tuple[tuple[tuple[int, int], tuple[int, ...]], ...]
    parallel_classes: tuple[tuple[int, ...], ...]


def classify_edges(g: DartGraph) -> EdgeClassification:
    semiedges, loops, ordinary = [], [], []
    groups: dict[tuple[int, int], list[int]] = {}
    for e, (x, y) in enumerate(g.edges()):
        if x == y:
            semiedges.append(e)
        elif g.vertex_of[x] == g.vertex_of[y]:
            loops.append(e)
        else:
            ordinary.append(e)
            groups.setdefault(g.endpoints(e), []).append(e)
    by_endpoints = tuple(sorted((pair, tuple(ids)) for pair, ids in groups.items()))
    parallel = tuple(ids for _, ids in by_endpoints if len(ids) > 1)
    return EdgeClassification(
        semiedges=tuple(semiedges),
        loops=tuple(loops),
        ordinary=tuple(ordinary),
        by_endpoints=by_endpoints,
        parallel_classes=parallel,
    )


def is_connected(g: DartGraph) -> bool:
    n = g.vertex_count
    if n == 0:
        return False
    seen = [False] * n
    seen[0] = True
    stack = [0]
    classes = g.vertex_darts()
    while stack:
        v = stack.pop()
        for x in classes[v]:
            w = g.vertex_of[g.lam[x]]
            if not seen[w]:
                seen[w] = True
                stack.append(w)
    return all(seen)


def _ordinary_multiplicities(g: DartGraph) -> dict[tuple[int, int], int]:
    mult: dict[tuple[int, int], int] = {}
    for e in classify_edges(g).ordinary:
        pair = g.endpoints(e)
        mult[pair] = mult.get(pair, 0) + 1
    return mult


def _max_flow(cap: list[list[int]], source: int, sink: int) -> int:
    """Edmonds-Karp on a residual capacity matrix (mutates cap)."""
    n = len(cap)
    total = 0
    while True:
        parent = [-1] * n
        parent[source] = source
        queue = [source]
        while queue and parent[sink] == -1:
            u = queue.pop(0)
            for w in range(n):
                if parent[w] == -1 and cap[u][w] > 0:
                    parent[w] = u
                    queue.append(w)
        if parent[sink] == -1:
            return total
        bottleneck = None
        w = sink
        while w != source:
            u = parent[w]
            bottleneck = cap[u][w] if bottleneck is None else min(bottleneck, cap[u][w])
            w = u
        w = sink
        while w != source:
            u = parent[w]
            cap[u][w] -= bottleneck
            cap[w][u] += bottleneck
            w = u
        total += bottleneck


def edge_connectivity(g: DartGraph) -> int:
    """Minimum number of ordinary edges whose removal disconnects.

    Loops never count towards a cut; semiedges are rejected. Returns 0
    for a disconnected graph. Computed as the minimum unit(-multiplicity)
    s-t cut over all vertex pairs, with s fixed.
    """
    if classify_edges(g).semiedges:
        raise SemiedgePresent("edge connectivity is undefined with semiedges present")
    n = g.vertex_count
    if n < 2:
        raise ValueError("edge connectivity requires at least two vertices")
    if not is_connected(g):
        return 0
    base = [[0] * n for _ in range(n)]
    for (u, w), m in _ordinary_multiplicities(g).items():
        base[u][w] = m
        base[w][u] = m
    best = None
    for t in range(1, n):
        cut = _max_flow([row[:] for row in base], 0, t)
        if best is None or cut < best:
            best = cut
            if best == 0:
                break
    return best


def _reduced_laplacian_rows(g: DartGraph) -> list[list[int]]:
    n = g.vertex_count
    lap = [[0] * n for _ in range(n)]
    for (u, w), m in _ordinary_multiplicities(g).items():
        lap[u][w] -= m
        lap[w][u] -= m
        lap[u][u] += m
        lap[w][w] += m
    return [row[1:] for row in lap[1:]]


def spanning_tree_count(g: DartGraph) -> int:
    """Exact spanning tree count by a Laplacian cofactor determinant.

    Loops and semiedges lie in no spanning tree and are ignored.
    """
    if not is_connected(g):
        raise Disconnected("spanning trees are counted for connected graphs only")
    if g.vertex_count == 1:
        return 1
    reduced = intlinalg.IntMatrix.from_rows(_reduced_laplacian_rows(g))
    return intlinalg.determinant(reduced)


def spanning_tree_enumerate(
    g: DartGraph, max_combinations: int = 1_000_000
) -> list[SpanningTree]:
    """Exhaustive spanning tree list (the desk-scale oracle).

    Lexicographic subset backtracking over ordinary edge ids with
    union-find acyclicity pruning. Refuses instances where the raw
    binomial search space exceeds `max_combinations`.
    """
    if not is_connected(g):
        raise Disconnected("spanning trees are enumerated for connected graphs only")
    need = g.vertex_count - 1
    ordinary = classify_edges(g).ordinary
    if need == 0:
        return [SpanningTree(())]
    if comb(len(ordinary), need) > max_combinations:
        raise ScaleExceeded(
            f"C({len(ordinary)}, {need}) edge subsets exceed the enumeration bound"
        )

    parent = list(range(g.vertex_count))
    size = [1] * g.vertex_count

    def find(v: int) -> int:
        while parent[v] != v:
            v = parent[v]
        return v

    def union(u: int, w: int) -> int | None:
        ru, rw = find(u), find(w)
        if ru == rw:
            return None
        if size[ru] < size[rw]:
            ru, rw = rw, ru
        parent[rw] = ru
        size[ru] += size[rw]
        return rw

    trees: list[SpanningTree] = []
    chosen: list[int] = []

    def extend(start: int) -> None:
        if len(chosen) == need:
            trees.append(SpanningTree(tuple(chosen)))
            return
        remaining = need - len(chosen)
        for idx in range(start, len(ordinary) - remaining + 1):
            e = ordinary[idx]
            u, w = g.endpoints(e)
            merged = union(u, w)
            if merged is not None:
                chosen.append(e)
                extend(idx + 1)
                chosen.pop()
                root = find(u)
                parent[merged] = merged
                size[root] -= size[merged]

    extend(0)
    return trees


def bfs_spanning_tree(g: DartGraph) -> SpanningTree:
    """Deterministic BFS spanning tree (smallest dart ids first)."""
    if not is_connected(g):
        raise Disconnected("spanning tree of a disconnected graph")
    seen = [False] * g.vertex_count
    seen[0] = True
    queue = [0]
    tree_edges = []
    classes = g.vertex_darts()
    while queue:
        v = queue.pop(0)
        for x in classes[v]:
            w = g.vertex_of[g.lam[x]]
            if not seen[w]:
                seen[w] = True
                tree_edges.append(g.edge_of_dart(x))
                queue.append(w)
    return SpanningTree(tuple(sorted(tree_edges)))


def _check_spanning_tree(g: DartGraph, t: SpanningTree) -> None:
    edges = g.edges()
    cls = classify_edges(g)
    ordinary = set(cls.ordinary)
    if len(set(t.edges)) != len(t.edges):
        raise NotASpanningTree("duplicate edge ids")
    for e in t.edges:
        if not 0 <= e < len(edges) or e not in ordinary:
            raise NotASpanningTree(f"edge {e} is not an ordinary edge")
    if len(t.edges) != g.vertex_count - 1:
        raise NotASpanningTree(
            f"{len(t.edges)} edges cannot span {g.vertex_count} vertices"
        )
    parent = list(range(g.vertex_count))

    def find(v: int) -> int:
        while parent[v] != v:
            v = parent[v]
        return v

    for e in t.edges:
        u, w = g.endpoints(e)
        ru, rw = find(u), find(w)
        if ru == rw:
            raise NotASpanningTree("edge set contains a cycle")
        parent[ru] = rw


def tree_path_darts(g: DartGraph, t: SpanningTree, source: int, target: int) -> list[int]:
    """Darts of the unique tree path from source to target."""
    adj: dict[int, list[int]] = {v: [] for v in range(g.vertex_count)}
    for e in t.edges:
        x, y = g.edges()[e]
        adj[g.vertex_of[x]].append(x)
        adj[g.vertex_of[y]].append(y)
    prev: dict[int, int] = {source: -1}
    queue = [source]
    while queue:
        v = queue.pop(0)
        if v == target:
            break
        for x in sorted(adj[v]):
            w = g.vertex_of[g.lam[x]]
            if w not in prev:
                prev[w] = x
                queue.append(w)
    if target not in prev:
        raise NotASpanningTree("tree does not connect the requested vertices")
    path = []
    v = target
    while v != source:
        x = prev[v]
        path.append(x)
        v = g.vertex_of[x]
    path.reverse()
    return path


def fundamental_cycles(g: DartGraph, t: SpanningTree) -> list[Walk]:
    """One closed walk per co-tree edge.

    An ordinary co-tree edge contributes its dart followed by the tree
    path back; every loop and semiedge contributes its own length-1
    closed walk. Cycles come out in ascending co-tree edge id order.
    """
    _check_spanning_tree(g, t)
    tree = set(t.edges)
    cycles = []
    for e, (x, y) in enumerate(g.edges()):
        if e in tree:
            continue
        if x == y or g.vertex_of[x] == g.vertex_of[y]:
            cycles.append(Walk((x,)))
        else:
            path = tree_path_darts(g, t, g.vertex_of[y], g.vertex_of[x])
            cycles.append(Walk((x, *path)))
    for w in cycles:
        assert w.is_valid(g) and w.is_closed(g)
    return cycles


def ordinary_reduction(g: DartGraph) -> DartGraph:
    """Remove all loops and semiedges, renumbering the surviving darts."""
    keep = [
        x
        for x in range(g.dart_count)
        if not (g.is_semiedge_dart(x) or g.is_loop_dart(x))
    ]
    index = {x: i for i, x in enumerate(keep)}
    lam = [index[g.lam[x]] for x in keep]
    vertex_of = [g.vertex_of[x] for x in keep]
    return DartGraph(lam, vertex_of).check()
