"""Graph Jacobians and harmonic flows.

The Jacobian of a connected graph is presented as the free abelian group
on the edge transversal modulo the vertex (Kirchhoff current) relations
and the cycle relations; Smith normal form turns that presentation into
invariant factors together with an explicit harmonic flow into the
quotient. The divisor/Laplacian description is provided as an
independent computation path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import intlinalg
from .dartgraph import (
    DartGraph,
    Walk,
    bfs_spanning_tree,
    classify_edges,
    fundamental_cycles,
    is_connected,
)
from .errors import Disconnected, LoopOrSemiedgePresent
from .intlinalg import IntMatrix

__all__ = [
    "AbelianGroup",
    "GroupElement",
    "JFlow",
    "Divisor",
    "relation_matrix",
    "jacobian",
    "validate_flow",
    "make_flow",
    "laplacian",
    "divisor_flow",
    "jacobian_via_divisors",
]


@dataclass(frozen=True)
class AbelianGroup:
    """Finite abelian group in invariant-factor form, d1 | d2 | ... ."""

    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        for i, d in enumerate(self.factors):
            if d < 2:
                raise ValueError("invariant factors must be at least 2")
            if i and d % self.factors[i - 1]:
                raise ValueError("invariant factors must form a divisor chain")

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        n = 1
        for d in self.factors:
            n *= d
        return n

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def element(self, coords: Sequence[int]) -> "GroupElement":
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates")
        return GroupElement(
            self, tuple(int(c) % d for c, d in zip(coords, self.factors))
        )

    def elements(self) -> Iterable["GroupElement"]:
        for coords in itertools.product(*(range(d) for d in self.factors)):
            yield GroupElement(self, coords)

    def subgroup_order(self, generators: Sequence["GroupElement"]) -> int:
        """Order of the subgroup generated by the given elements."""
        if self.rank == 0:
            return 1
        rows = [list(g.coords) for g in generators]
        rows += [
            [d if i == j else 0 for j in range(self.rank)]
            for i, d in enumerate(self.factors)
        ]
        lattice = IntMatrix.from_rows(rows, cols=self.rank)
        index = 1
        for d in intlinalg.smith_normal_form(lattice).diagonal:
            index *= d
        return self.order // index

    def subgroup_elements(self, generators: Sequence["GroupElement"]) -> tuple["GroupElement", ...]:
        """Explicit closure of the generated subgroup (desk scale)."""
        found = {self.zero().coords: self.zero()}
        frontier = [self.zero()]
        while frontier:
            nxt = []
            for a in frontier:
                for g in generators:
                    b = a + g
                    if b.coords not in found:
                        found[b.coords] = b
                        nxt.append(b)
            frontier = nxt
        return tuple(found[c] for c in sorted(found))


@dataclass(frozen=True)
class GroupElement:
    """Element of an AbelianGroup as a reduced coordinate vector."""

    group: AbelianGroup
    coords: tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return self.group.element(
            tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "GroupElement":
        return self.group.element(tuple(-a for a in self.coords))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def scaled(self, k: int) -> "GroupElement":
        return self.group.element(tuple(k * a for a in self.coords))


@dataclass(frozen=True)
class JFlow:
    """A harmonic flow into the Jacobian (or any abelian group).

    `xi` maps every dart to a group element; `dplus` is the edge
    transversal used for presentations. Flows produced by `jacobian`
    additionally carry the relation matrix and, for each invariant-factor
    generator, integer coefficients expressing it over the transversal
    flow values: those let symmetry code push generators through dart
    permutations.
    """

    graph: DartGraph
    group: AbelianGroup
    xi: tuple[GroupElement, ...]
    dplus: tuple[int, ...]
    generator_lifts: tuple[tuple[int, ...], ...] = ()
    relations: IntMatrix | None = None

    def value(self, dart: int) -> GroupElement:
        return self.xi[dart]


@dataclass(frozen=True)
class Divisor:
    """Integer weights on the vertices."""

    values: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.values)


def _transversal_row(g: DartGraph, darts: Iterable[int], column: dict[int, int]) -> list[int]:
    # a dart outside the transversal stands for minus its partner
    row = [0] * len(column)
    for x in darts:
        if x in column:
            row[column[x]] += 1
        else:
            row[column[g.lam[x]]] -= 1
    return row


def relation_matrix(g: DartGraph) -> IntMatrix:
    """Defining relations of the Jacobian over the edge transversal.

    Rows are the vertex dart-star sums followed by one row per
    fundamental cycle (loops and semiedges contribute their length-1
    cycles). Exact duplicate rows are emitted once.
    """
    if not is_connected(g):
        raise Disconnected("the Jacobian presentation needs a connected graph")
    dplus = g.dart_plus()
    column = {x: j for j, x in enumerate(dplus)}
    rows: list[list[int]] = []
    for darts in g.vertex_darts():
        rows.append(_transversal_row(g, darts, column))
    tree = bfs_spanning_tree(g)
    for cycle in fundamental_cycles(g, tree):
        rows.append(_transversal_row(g, cycle.darts, column))
    unique: list[list[int]] = []
    seen = set()
    for row in rows:
        key = tuple(row)
        if key not in seen:
            seen.add(key)
            unique.append(row)
    return IntMatrix.from_rows(unique, cols=len(dplus))


def jacobian(g: DartGraph) -> tuple[AbelianGroup, JFlow]:
    """Invariant factors of the Jacobian and an explicit harmonic flow.

    With ``u @ R @ v == s`` for the relation matrix R (rows are
    relations, columns the edge transversal), the quotient map sends the
    generator of column j to row j of v reduced modulo the diagonal;
    coordinates with factor 1 are dropped. Rows of v^-1 express the
    surviving invariant-factor generators over the transversal.
    """
    rel = relation_matrix(g)
    dplus = g.dart_plus()
    n = len(dplus)
    snf = intlinalg.smith_normal_form(rel)
    diag = list(snf.diagonal) + [0] * (n - min(rel.rows, n))
    if any(d == 0 for d in diag):
        raise RuntimeError("relation lattice is not full rank on a connected graph")
    kept = [j for j, d in enumerate(diag) if d > 1]
    group = AbelianGroup(tuple(diag[j] for j in kept))
    vinv = intlinalg.inverse_unimodular(snf.v)

    xi: list[GroupElement | None] = [None] * g.dart_count
    for j, x in enumerate(dplus):
        value = group.element(tuple(snf.v.get(j, i) for i in kept))
        xi[x] = value
        if g.lam[x] != x:
            xi[g.lam[x]] = -value
    lifts = tuple(tuple(vinv.get(i, j) for j in range(n)) for i in kept)
    flow = JFlow(
        graph=g,
        group=group,
        xi=tuple(xi),  # type: ignore[arg-type]
        dplus=dplus,
        generator_lifts=lifts,
        relations=rel,
    )
    problems = validate_flow(g, flow)
    if problems:
        raise RuntimeError("constructed flow breaks the flow laws: " + "; ".join(problems))
    return group, flow


def make_flow(
    g: DartGraph, group: AbelianGroup, plus_values: Sequence[GroupElement]
) -> JFlow:
    """Extend values on the edge transversal to all darts by antisymmetry."""
    dplus = g.dart_plus()
    if len(plus_values) != len(dplus):
        raise ValueError("one value per transversal dart required")
    xi: list[GroupElement | None] = [None] * g.dart_count
    for x, value in zip(dplus, plus_values):
        xi[x] = value
        if g.lam[x] != x:
            xi[g.lam[x]] = -value
    return JFlow(graph=g, group=group, xi=tuple(xi), dplus=dplus)  # type: ignore[arg-type]


def validate_flow(g: DartGraph, f: JFlow) -> list[str]:
    """Check antisymmetry, the vertex law, and the cycle law on a basis.

    The cycle law is evaluated over a fundamental cycle basis plus the
    length-1 loop and semiedge cycles; every oriented cycle is an integer
    combination of these, so the basis decides all of them.
    """
    problems = []
    zero = f.group.zero()
    for x in range(g.dart_count):
        if f.xi[g.lam[x]] != -f.xi[x]:
            problems.append(f"FLW violated at dart {x}")
    for v, darts in enumerate(g.vertex_darts()):
        total = zero
        for x in darts:
            total = total + f.xi[x]
        if not total.is_zero():
            problems.append(f"KLV violated at vertex {v}")
    tree = bfs_spanning_tree(g)
    for cycle in fundamental_cycles(g, tree):
        total = zero
        for x in cycle.darts:
            total = total + f.xi[x]
        if not total.is_zero():
            problems.append(f"KLC violated on cycle {cycle.darts}")
    return problems


def laplacian(g: DartGraph) -> IntMatrix:
    """Vertex Laplacian: valency on the diagonal, minus multiplicity off it."""
    cls = classify_edges(g)
    if cls.loops or cls.semiedges:
        raise LoopOrSemiedgePresent("the Laplacian is defined without loops and semiedges")
    n = g.vertex_count
    lap = [[0] * n for _ in range(n)]
    for e in cls.ordinary:
        u, w = g.endpoints(e)
        lap[u][w] -= 1
        lap[w][u] -= 1
        lap[u][u] += 1
        lap[w][w] += 1
    return IntMatrix.from_rows(lap, cols=n)


def divisor_flow(g: DartGraph, f: Divisor) -> tuple[int, ...]:
    """The flow of a divisor: head value minus tail value per dart.

    Semiedge darts get 0 automatically since both of their ends coincide.
    The result satisfies the cycle law on every closed walk.
    """
    if len(f.values) != g.vertex_count:
        raise ValueError("divisor must assign a value to every vertex")
    return tuple(
        f.values[g.vertex_of[g.lam[x]]] - f.values[g.vertex_of[x]]
        for x in range(g.dart_count)
    )


def jacobian_via_divisors(g: DartGraph) -> AbelianGroup:
    """Invariant factors from the Laplacian: degree-0 divisors modulo image.

    Cross-validation path for loop- and semiedge-free graphs; must agree
    with `jacobian` on invariant factors.
    """
    if not is_connected(g):
        raise Disconnected("the divisor description needs a connected graph")
    lap = laplacian(g)
    diag = intlinalg.smith_normal_form(lap).diagonal
    if sum(1 for d in diag if d == 0) != 1:
        raise RuntimeError("Laplacian of a connected graph must have corank 1")
    return AbelianGroup(tuple(d for d in diag if d > 1))
