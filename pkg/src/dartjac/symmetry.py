"""Graph symmetries and their action on the Jacobian.

Automorphisms are dart permutations commuting with the edge involution
and preserving the vertex partition. A dart permutation acts on a
harmonic flow by relabelling, which induces an automorphism of the
Jacobian; the induced map is produced as an integer matrix on the
invariant-factor coordinates.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .dartgraph import DartGraph, classify_edges, edge_connectivity, is_connected
from .errors import NotAnAutomorphism, ScaleExceeded
from .jacobian import AbelianGroup, GroupElement, JFlow, jacobian

__all__ = [
    "Permutation",
    "DartPermutation",
    "PermGroup",
    "FiniteGroup",
    "JacAutomorphism",
    "FaithfulnessReport",
    "RankReport",
    "cyclic_group",
    "dihedral_group",
    "symmetric_group",
    "quaternion_group",
    "group_from_permutations",
    "is_automorphism",
    "automorphism_violations",
    "dart_permutation_from_vertex_map",
    "automorphisms",
    "find_isomorphism",
    "is_semiregular",
    "theta",
    "theta_kernel",
    "theta_image",
    "verify_faithful",
    "jac_rank_check",
]


@dataclass(frozen=True)
class Permutation:
    """Permutation of 0..n-1 in image-array form."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.image) != list(range(len(self.image))):
            raise ValueError("not a permutation")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, text: str) -> "Permutation":
        """Parse cycle notation like ``(0 1)(2 3)`` (commas also allowed)."""
        image = list(range(degree))
        for match in re.finditer(r"\(([^()]*)\)", text):
            body = match.group(1).replace(",", " ").split()
            cycle = [int(tok) for tok in body]
            if any(not 0 <= c < degree for c in cycle):
                raise ValueError(f"cycle entry out of range in {text!r}")
            for i, c in enumerate(cycle):
                image[c] = cycle[(i + 1) % len(cycle)]
        stripped = re.sub(r"\([^()]*\)|\s", "", text)
        if stripped:
            raise ValueError(f"unparsed permutation text: {stripped!r}")
        return cls(tuple(image))

    @property
    def degree(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self * other)(i) = self(other(i))."""
        return Permutation(tuple(self.image[j] for j in other.image))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.image)
        for i, j in enumerate(self.image):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.image))

    def cycle_string(self) -> str:
        seen = set()
        parts = []
        for i in range(len(self.image)):
            if i in seen or self.image[i] == i:
                continue
            cycle = [i]
            j = self.image[i]
            while j != i:
                seen.add(j)
                cycle.append(j)
                j = self.image[j]
            parts.append("(" + " ".join(map(str, cycle)) + ")")
        return "".join(parts) or "()"


DartPermutation = Permutation


@dataclass(frozen=True)
class PermGroup:
    """Explicitly enumerated permutation group (desk scale)."""

    degree: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        e = Permutation.identity(degree)
        return cls(degree, (), (e,))

    @classmethod
    def generate(
        cls, generators: Sequence[Permutation], cap: int = 20_000
    ) -> "PermGroup":
        """Closure by breadth-first products.

        Elements are ordered by generator word length, ties broken by
        the image tuple, so enumeration order is reproducible.
        """
        if not generators:
            raise ValueError("need at least one generator (or use trivial())")
        degree = generators[0].degree
        if any(g.degree != degree for g in generators):
            raise ValueError("generators act on different sets")
        identity = Permutation.identity(degree)
        seen = {identity.image}
        elements = [identity]
        frontier = [identity]
        while frontier:
            found = []
            for p in frontier:
                for q in generators:
                    r = p.compose(q)
                    if r.image not in seen:
                        seen.add(r.image)
                        found.append(r)
            found.sort(key=lambda p: p.image)
            elements.extend(found)
            if len(elements) > cap:
                raise ScaleExceeded(f"group order exceeds the cap of {cap}")
            frontier = found
        return cls(degree, tuple(generators), tuple(elements))


@dataclass(frozen=True)
class FiniteGroup:
    """Finite group as a Cayley table over 0..n-1 with identity 0."""

    table: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]
    labels: tuple[str, ...] | None = None

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    @property
    def is_abelian(self) -> bool:
        n = self.order
        return all(
            self.table[a][b] == self.table[b][a]
            for a in range(n)
            for b in range(a + 1, n)
        )

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    def generated_subgroup(self, generators: Iterable[int]) -> frozenset[int]:
        found = {0}
        frontier = [0]
        gens = list(generators)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.mul(a, g)
                    if b not in found:
                        found.add(b)
                        nxt.append(b)
            frontier = nxt
        return frozenset(found)

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    @classmethod
    def from_table(
        cls,
        table: Sequence[Sequence[int]],
        labels: Sequence[str] | None = None,
        check: bool = True,
    ) -> "FiniteGroup":
        n = len(table)
        rows = tuple(tuple(int(x) for x in row) for row in table)
        if check:
            full = set(range(n))
            if any(len(row) != n for row in rows):
                raise ValueError("Cayley table must be square")
            for i, row in enumerate(rows):
                if set(row) != full:
                    raise ValueError(f"row {i} is not a permutation of the elements")
                if set(r[i] for r in rows) != full:
                    raise ValueError(f"column {i} is not a permutation of the elements")
            if any(rows[0][a] != a or rows[a][0] != a for a in range(n)):
                raise ValueError("element 0 must be the identity")
            if n <= 128:  # exhaustive associativity only at small orders
                for a in range(n):
                    for b in range(n):
                        ab = rows[a][b]
                        for c in range(n):
                            if rows[ab][c] != rows[a][rows[b][c]]:
                                raise ValueError("Cayley table is not associative")
        inverse = [0] * n
        for a in range(n):
            inverse[a] = next(b for b in range(n) if rows[a][b] == 0)
        return cls(rows, tuple(inverse), tuple(labels) if labels else None)


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("order must be positive")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup.from_table(table, labels=[str(i) for i in range(n)])


def group_from_permutations(perms: Sequence[Permutation]) -> FiniteGroup:
    """Concrete group of permutations as a Cayley table.

    The element order comes from PermGroup.generate, so the identity
    lands at index 0.
    """
    g = PermGroup.generate(perms)
    index = {p.image: i for i, p in enumerate(g.elements)}
    table = [
        [index[a.compose(b).image] for b in g.elements] for a in g.elements
    ]
    labels = [p.cycle_string() for p in g.elements]
    return FiniteGroup.from_table(table, labels=labels)


def symmetric_group(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise ValueError("symmetric groups are built explicitly only up to degree 5")
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(a[b[k]] for k in range(n))] for b in perms] for a in perms
    ]
    labels = [Permutation(p).cycle_string() for p in perms]
    return FiniteGroup.from_table(table, labels=labels)


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, order 2n."""
    if n < 3:
        raise ValueError("dihedral groups start at n = 3 here")
    rotation = Permutation(tuple((i + 1) % n for i in range(n)))
    reflection = Permutation(tuple((n - i) % n for i in range(n)))
    return group_from_permutations([rotation, reflection])


def quaternion_group() -> FiniteGroup:
    """The eight quaternion units with labels 1, -1, +/-i, +/-j, +/-k."""
    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    # element = (sign, axis) with axes 1, i, j, k
    def decode(a):
        return (-1 if a % 2 else 1, a // 2)

    def encode(sign, axis):
        return 2 * axis + (0 if sign == 1 else 1)

    mul_axis = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    n = 8
    table = []
    for a in range(n):
        sa, xa = decode(a)
        row = []
        for b in range(n):
            sb, xb = decode(b)
            sc, xc = mul_axis[(xa, xb)]
            row.append(encode(sa * sb * sc, xc))
        table.append(row)
    return FiniteGroup.from_table(table, labels=labels)


def automorphism_violations(g: DartGraph, f: Permutation) -> list[str]:
    problems = []
    if f.degree != g.dart_count:
        return [f"permutation degree {f.degree} != {g.dart_count} darts"]
    for x in range(g.dart_count):
        if f.image[g.lam[x]] != g.lam[f.image[x]]:
            problems.append(f"does not commute with the involution at dart {x}")
            break
    for darts in g.vertex_darts():
        targets = {g.vertex_of[f.image[x]] for x in darts}
        if len(targets) != 1:
            problems.append(f"vertex class {sorted(darts)} is torn apart")
            break
    return problems


def is_automorphism(g: DartGraph, f: Permutation) -> bool:
    return not automorphism_violations(g, f)


def induced_vertex_map(g: DartGraph, f: Permutation) -> tuple[int, ...]:
    classes = g.vertex_darts()
    return tuple(g.vertex_of[f.image[darts[0]]] for darts in classes)


def dart_permutation_from_vertex_map(
    g: DartGraph, vertex_map: Sequence[int]
) -> Permutation:
    """Lift a vertex bijection to darts where the lift is unique.

    Requires at most one edge between any two vertices, at most one
    semiedge per vertex, and no loops (whose two darts cannot be told
    apart by endpoints alone).
    """
    cls = classify_edges(g)
    if cls.loops:
        raise ValueError("vertex maps do not determine dart images on loops")
    if cls.parallel_classes:
        raise ValueError("vertex maps are ambiguous on parallel edges")
    semi_at: dict[int, list[int]] = {}
    for e in cls.semiedges:
        x, _ = g.edges()[e]
        semi_at.setdefault(g.vertex_of[x], []).append(x)
    if any(len(v) > 1 for v in semi_at.values()):
        raise ValueError("vertex maps are ambiguous with parallel semiedges")
    dart_at: dict[tuple[int, int], int] = {}
    for e in cls.ordinary:
        x, y = g.edges()[e]
        dart_at[(g.vertex_of[x], g.vertex_of[y])] = x
        dart_at[(g.vertex_of[y], g.vertex_of[x])] = y
    image = [0] * g.dart_count
    for x in range(g.dart_count):
        u = vertex_map[g.vertex_of[x]]
        if g.is_semiedge_dart(x):
            if u not in semi_at:
                raise NotAnAutomorphism(f"no semiedge available at vertex {u}")
            image[x] = semi_at[u][0]
        else:
            w = vertex_map[g.vertex_of[g.lam[x]]]
            if (u, w) not in dart_at:
                raise NotAnAutomorphism(f"no edge between vertices {u} and {w}")
            image[x] = dart_at[(u, w)]
    f = Permutation(tuple(image))
    if not is_automorphism(g, f):
        raise NotAnAutomorphism("vertex map does not preserve the graph")
    return f


def _vertex_profile(g: DartGraph):
    """Per-vertex (loops, semiedges) counts and ordinary multiplicities."""
    cls = classify_edges(g)
    n = g.vertex_count
    loops = [0] * n
    semis = [0] * n
    for e in cls.loops:
        loops[g.vertex_of[g.edges()[e][0]]] += 1
    for e in cls.semiedges:
        semis[g.vertex_of[g.edges()[e][0]]] += 1
    mult: dict[tuple[int, int], list[int]] = {}
    for e in cls.ordinary:
        mult.setdefault(g.endpoints(e), []).append(e)
    return loops, semis, mult


def _vertex_bijections(g1, g2, loops1, semis1, mult1, loops2, semis2, mult2):
    """All vertex bijections g1 -> g2 preserving the local structure."""
    n = g1.vertex_count
    if n != g2.vertex_count:
        return

    def m1(u, w):
        return len(mult1.get((min(u, w), max(u, w)), ()))

    def m2(u, w):
        return len(mult2.get((min(u, w), max(u, w)), ()))

    basic1 = [
        (g1.valency(v), loops1[v], semis1[v], tuple(sorted(len(e) for p, e in mult1.items() if v in p)))
        for v in range(n)
    ]
    basic2 = [
        (g2.valency(v), loops2[v], semis2[v], tuple(sorted(len(e) for p, e in mult2.items() if v in p)))
        for v in range(n)
    ]
    if sorted(basic1) != sorted(basic2):
        return
    candidates = [
        [w for w in range(n) if basic2[w] == basic1[v]] for v in range(n)
    ]
    order = sorted(range(n), key=lambda v: len(candidates[v]))
    assignment = [-1] * n
    used = [False] * n

    def extend(i):
        if i == n:
            yield tuple(assignment)
            return
        v = order[i]
        for w in candidates[v]:
            if used[w]:
                continue
            if any(
                m1(v, order[k]) != m2(w, assignment[order[k]]) for k in range(i)
            ):
                continue
            assignment[v] = w
            used[w] = True
            yield from extend(i + 1)
            assignment[v] = -1
            used[w] = False

    yield from extend(0)


def _dart_extensions(g1, g2, vmap, mult1, mult2, multiplicity_cap):
    """All dart bijections over a fixed structure-preserving vertex map."""
    cls1 = classify_edges(g1)
    cls2 = classify_edges(g2)
    loops_at1: dict[int, list[int]] = {}
    for e in cls1.loops:
        loops_at1.setdefault(g1.vertex_of[g1.edges()[e][0]], []).append(e)
    loops_at2: dict[int, list[int]] = {}
    for e in cls2.loops:
        loops_at2.setdefault(g2.vertex_of[g2.edges()[e][0]], []).append(e)
    semis_at1: dict[int, list[int]] = {}
    for e in cls1.semiedges:
        semis_at1.setdefault(g1.vertex_of[g1.edges()[e][0]], []).append(e)
    semis_at2: dict[int, list[int]] = {}
    for e in cls2.semiedges:
        semis_at2.setdefault(g2.vertex_of[g2.edges()[e][0]], []).append(e)

    stages = []  # each stage: list of alternative partial dart maps

    for (u, w), edges in sorted(mult1.items()):
        pu, pw = vmap[u], vmap[w]
        targets = mult2.get((min(pu, pw), max(pu, pw)), [])
        if len(targets) != len(edges):
            return
        if len(edges) > multiplicity_cap:
            raise ScaleExceeded(
                f"parallel class of size {len(edges)} exceeds the cap of {multiplicity_cap}"
            )
        alternatives = []
        for perm in itertools.permutations(targets):
            partial = {}
            for e, te in zip(edges, perm):
                x, y = g1.edges()[e]
                tx, ty = g2.edges()[te]
                # orient the target pair to match the source endpoints
                if g2.vertex_of[tx] != vmap[g1.vertex_of[x]]:
                    tx, ty = ty, tx
                partial[x] = tx
                partial[y] = ty
            alternatives.append(partial)
        stages.append(alternatives)

    for u in sorted(loops_at1):
        src = loops_at1[u]
        tgt = loops_at2.get(vmap[u], [])
        if len(src) != len(tgt):
            return
        if len(src) > multiplicity_cap:
            raise ScaleExceeded("too many parallel loops")
        alternatives = []
        for perm in itertools.permutations(tgt):
            for flips in itertools.product((0, 1), repeat=len(src)):
                partial = {}
                for e, te, flip in zip(src, perm, flips):
                    x, y = g1.edges()[e]
                    tx, ty = g2.edges()[te]
                    if flip:
                        tx, ty = ty, tx
                    partial[x] = tx
                    partial[y] = ty
                alternatives.append(partial)
        stages.append(alternatives)

    for u in sorted(semis_at1):
        src = semis_at1[u]
        tgt = semis_at2.get(vmap[u], [])
        if len(src) != len(tgt):
            return
        if len(src) > multiplicity_cap:
            raise ScaleExceeded("too many semiedges at one vertex")
        alternatives = []
        for perm in itertools.permutations(tgt):
            partial = {}
            for e, te in zip(src, perm):
                partial[g1.edges()[e][0]] = g2.edges()[te][0]
            alternatives.append(partial)
        stages.append(alternatives)

    for choice in itertools.product(*stages):
        image = [-1] * g1.dart_count
        for partial in choice:
            for x, y in partial.items():
                image[x] = y
        yield Permutation(tuple(image))


def automorphisms(
    g: DartGraph,
    max_vertices: int = 16,
    multiplicity_cap: int = 5,
    order_cap: int = 20_000,
) -> PermGroup:
    """The full automorphism group as dart permutations.

    Backtracks over vertex images with valency/neighbourhood pruning,
    then enumerates every dart extension consistent with the involution:
    parallel classes contribute all edge matchings, loops additionally
    both orientations, semiedges all matchings.
    """
    if g.vertex_count > max_vertices:
        raise ScaleExceeded(
            f"{g.vertex_count} vertices exceed the automorphism bound of {max_vertices}"
        )
    loops, semis, mult = _vertex_profile(g)
    elements = []
    for vmap in _vertex_bijections(g, g, loops, semis, mult, loops, semis, mult):
        for f in _dart_extensions(g, g, vmap, mult, mult, multiplicity_cap):
            assert is_automorphism(g, f)
            elements.append(f)
            if len(elements) > order_cap:
                raise ScaleExceeded(f"automorphism group exceeds the cap of {order_cap}")
    elements.sort(key=lambda p: p.image)
    return PermGroup(g.dart_count, tuple(elements), tuple(elements))


def find_isomorphism(g1: DartGraph, g2: DartGraph) -> Permutation | None:
    """A dart bijection carrying g1 onto g2, or None.

    Returns the first isomorphism found; intended for small instances.
    """
    if g1.dart_count != g2.dart_count or g1.vertex_count != g2.vertex_count:
        return None
    loops1, semis1, mult1 = _vertex_profile(g1)
    loops2, semis2, mult2 = _vertex_profile(g2)
    for vmap in _vertex_bijections(g1, g2, loops1, semis1, mult1, loops2, semis2, mult2):
        for f in _dart_extensions(g1, g2, vmap, mult1, mult2, multiplicity_cap=6):
            ok = all(
                f.image[g1.lam[x]] == g2.lam[f.image[x]] for x in range(g1.dart_count)
            )
            if ok:
                return f
    return None


def is_semiregular(group: PermGroup, g: DartGraph) -> bool:
    """No nontrivial element fixes a dart or a vertex."""
    for p in group.elements:
        if p.is_identity():
            continue
        if any(p.image[x] == x for x in range(g.dart_count)):
            return False
        vmap = induced_vertex_map(g, p)
        if any(vmap[v] == v for v in range(g.vertex_count)):
            return False
    return True


@dataclass(frozen=True)
class JacAutomorphism:
    """Automorphism of a finite abelian group on invariant-factor coordinates.

    Row i of the matrix is reduced modulo the i-th factor, which makes
    equality of the dataclass a canonical identity test.
    """

    group: AbelianGroup
    matrix: tuple[tuple[int, ...], ...]

    @classmethod
    def from_columns(
        cls, group: AbelianGroup, columns: Sequence[Sequence[int]]
    ) -> "JacAutomorphism":
        r = group.rank
        matrix = tuple(
            tuple(columns[k][i] % group.factors[i] for k in range(r)) for i in range(r)
        )
        return cls(group, matrix)

    def apply(self, a: GroupElement) -> GroupElement:
        r = self.group.rank
        return self.group.element(
            tuple(
                sum(self.matrix[i][k] * a.coords[k] for k in range(r))
                for i in range(r)
            )
        )

    def compose(self, other: "JacAutomorphism") -> "JacAutomorphism":
        r = self.group.rank
        rows = tuple(
            tuple(
                sum(self.matrix[i][k] * other.matrix[k][j] for k in range(r))
                % self.group.factors[i]
                for j in range(r)
            )
            for i in range(r)
        )
        return JacAutomorphism(self.group, rows)

    def is_identity(self) -> bool:
        r = self.group.rank
        return all(
            self.matrix[i][j] == (1 if i == j else 0)
            for i in range(r)
            for j in range(r)
        )


def theta(f: Permutation, flow: JFlow) -> JacAutomorphism:
    """The Jacobian automorphism induced by a graph automorphism.

    Each invariant-factor generator is expressed as an integer
    combination of the flow values on the edge transversal; relabelling
    the darts by f and re-evaluating gives the image generator.
    """
    g = flow.graph
    problems = automorphism_violations(g, f)
    if problems:
        raise NotAnAutomorphism("; ".join(problems))
    if not flow.generator_lifts:
        raise ValueError("flow carries no generator lifts; produce it with jacobian()")
    group = flow.group
    columns = []
    for lift in flow.generator_lifts:
        acc = group.zero()
        for j, coeff in enumerate(lift):
            if coeff:
                acc = acc + flow.xi[f.image[flow.dplus[j]]].scaled(coeff)
        columns.append(acc.coords)
    result = JacAutomorphism.from_columns(group, columns)
    if flow.relations is not None:
        # relabelled relations must still vanish (well-definedness)
        for r in range(flow.relations.rows):
            row = flow.relations.row(r)
            acc = group.zero()
            for j, coeff in enumerate(row):
                if coeff:
                    acc = acc + flow.xi[f.image[flow.dplus[j]]].scaled(coeff)
            if not acc.is_zero():
                raise NotAnAutomorphism("permutation does not preserve the relations")
    return result


def theta_kernel(group: PermGroup, flow: JFlow) -> list[Permutation]:
    """Elements acting trivially on the Jacobian: flow-invariant ones."""
    kernel = []
    for p in group.elements:
        if all(
            flow.xi[p.image[x]] == flow.xi[x] for x in range(flow.graph.dart_count)
        ):
            kernel.append(p)
    return kernel


def theta_image(group: PermGroup, flow: JFlow) -> set[JacAutomorphism]:
    return {theta(p, flow) for p in group.elements}


@dataclass(frozen=True)
class FaithfulnessReport:
    simple: bool
    semiregular: bool
    three_edge_connected: bool
    kernel_size: int
    injective: bool
    theorem_violation: bool
    group_order: int
    image_order: int
    jac_factors: tuple[int, ...]


def verify_faithful(g: DartGraph, group: PermGroup) -> FaithfulnessReport:
    """Check whether the group embeds into the Jacobian automorphisms.

    For a simple, 3-edge-connected graph and a group acting semiregularly
    on darts and vertices the embedding must hold; a failure in that
    regime is flagged as a theorem violation.
    """
    for p in group.elements:
        problems = automorphism_violations(g, p)
        if problems:
            raise NotAnAutomorphism("; ".join(problems))
    cls = classify_edges(g)
    simple = not cls.semiedges and not cls.loops and not cls.parallel_classes
    three_ec = bool(simple and g.vertex_count >= 2 and edge_connectivity(g) >= 3)
    semiregular = is_semiregular(group, g)
    _, flow = jacobian(g)
    kernel = theta_kernel(group, flow)
    injective = len(kernel) == 1
    image_order = len(theta_image(group, flow))
    return FaithfulnessReport(
        simple=simple,
        semiregular=semiregular,
        three_edge_connected=three_ec,
        kernel_size=len(kernel),
        injective=injective,
        theorem_violation=bool(simple and three_ec and semiregular and not injective),
        group_order=group.order,
        image_order=image_order,
        jac_factors=flow.group.factors,
    )


@dataclass(frozen=True)
class RankReport:
    rank: int
    cyclic: bool
    factors: tuple[int, ...]


def jac_rank_check(g: DartGraph) -> RankReport:
    """Invariant-factor rank of the Jacobian; cyclic means rank <= 1."""
    if not is_connected(g):
        from .errors import Disconnected

        raise Disconnected("rank check needs a connected graph")
    group, _ = jacobian(g)
    return RankReport(rank=group.rank, cyclic=group.rank <= 1, factors=group.factors)
