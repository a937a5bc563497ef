"""Regular coverings of dart graphs.

Voltage assignments and their derived graphs, quotients by semiregular
permutation groups, covering validation with covering-transformation
groups, monodromy actions on fibres, Cayley multigraphs as covers of
one-vertex graphs, local groups of pushed-down flows, and the
spanning-tree inequality for prime-fold covers.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .dartgraph import (
    DartGraph,
    bfs_spanning_tree,
    classify_edges,
    edge_connectivity,
    fundamental_cycles,
    is_connected,
    spanning_tree_count,
    tree_path_darts,
)
from .errors import (
    Disconnected,
    HypothesisUnmet,
    IdentityInConnection,
    InvalidVoltage,
    NotACovering,
    NotInverseClosed,
    NotSemiregular,
    NotXiInvariant,
)
from .jacobian import GroupElement, JFlow
from .symmetry import (
    FiniteGroup,
    PermGroup,
    Permutation,
    induced_vertex_map,
    is_semiregular,
)

__all__ = [
    "VoltageAssignment",
    "CoveringMap",
    "CoveringReport",
    "LocalGroupReport",
    "PfoldReport",
    "derived_graph",
    "quotient_graph",
    "covering_violations",
    "validate_covering",
    "covering_transformations",
    "monodromy_fibre_action",
    "local_group",
    "cayley_multigraph",
    "cayley_left_action",
    "left_regular_group",
    "cayley_cover",
    "voltage_from_covering",
    "verify_pfold",
]


@dataclass(frozen=True)
class VoltageAssignment:
    """Group elements on darts with inverse voltages on partner darts.

    `xi[x]` is an element index of `group`. A T-reduced assignment also
    names the darts of a spanning tree, carries the identity there, and
    generates the group; its derived graph is then a connected regular
    cover.
    """

    base: DartGraph
    group: FiniteGroup
    xi: tuple[int, ...]
    tree_darts: frozenset[int] | None = None

    def violations(self) -> list[str]:
        problems = []
        g = self.base
        if len(self.xi) != g.dart_count:
            return ["one voltage per dart required"]
        if any(not 0 <= v < self.group.order for v in self.xi):
            return ["voltage index out of range"]
        for x in range(g.dart_count):
            if self.xi[g.lam[x]] != self.group.inv(self.xi[x]):
                problems.append(f"voltage of dart {g.lam[x]} is not inverse to dart {x}")
        if self.tree_darts is not None:
            tree_edges = {g.edge_of_dart(x) for x in self.tree_darts}
            expected = set()
            for e in tree_edges:
                a, b = g.edges()[e]
                expected.add(a)
                expected.add(b)
            if expected != set(self.tree_darts):
                problems.append("tree darts do not close under the involution")
            else:
                from .dartgraph import SpanningTree, _check_spanning_tree
                from .errors import NotASpanningTree

                try:
                    _check_spanning_tree(g, SpanningTree(tuple(sorted(tree_edges))))
                except NotASpanningTree as exc:
                    problems.append(f"tree darts are not a spanning tree: {exc}")
            if any(self.xi[x] != self.group.identity for x in self.tree_darts):
                problems.append("tree darts must carry the identity voltage")
            generated = self.group.generated_subgroup(set(self.xi))
            if len(generated) != self.group.order:
                problems.append("voltages do not generate the group")
        return problems

    def is_t_reduced(self) -> bool:
        return self.tree_darts is not None and not self.violations()


@dataclass(frozen=True)
class CoveringMap:
    """A dart map from the total graph onto the base graph."""

    total: DartGraph
    base: DartGraph
    projection: tuple[int, ...]

    def induced_vertex_projection(self) -> tuple[int, ...]:
        classes = self.total.vertex_darts()
        return tuple(
            self.base.vertex_of[self.projection[darts[0]]] for darts in classes
        )


def derived_graph(v: VoltageAssignment) -> tuple[DartGraph, CoveringMap]:
    """The cover defined by a voltage assignment.

    Darts are (group element, base dart) pairs with id g * |D| + x; the
    involution composes the base involution with right voltage
    multiplication, and the projection drops the group coordinate.
    """
    base = v.base.check()
    if not is_connected(base):
        raise Disconnected("voltage assignments live on connected base graphs")
    if len(v.xi) != base.dart_count:
        raise InvalidVoltage("one voltage per dart required")
    if any(not 0 <= g < v.group.order for g in v.xi):
        raise InvalidVoltage("voltage index out of range")
    for x in range(base.dart_count):
        if v.xi[base.lam[x]] != v.group.inv(v.xi[x]):
            raise InvalidVoltage(
                f"voltage of dart {base.lam[x]} is not inverse to dart {x}"
            )
    n = v.group.order
    d = base.dart_count
    lam = [0] * (n * d)
    vertex_of = [0] * (n * d)
    vcount = base.vertex_count
    for g in range(n):
        for x in range(d):
            lam[g * d + x] = v.group.mul(g, v.xi[x]) * d + base.lam[x]
            vertex_of[g * d + x] = g * vcount + base.vertex_of[x]
    total = DartGraph(lam, vertex_of).check()
    projection = tuple(x for _ in range(n) for x in range(d))
    return total, CoveringMap(total=total, base=base, projection=projection)


def quotient_graph(g: DartGraph, group: PermGroup) -> tuple[DartGraph, CoveringMap]:
    """Quotient by a semiregular group: darts and vertices become orbits.

    A quotient semiedge appears exactly where an orbit contains both
    darts of an edge.
    """
    if not is_connected(g):
        raise Disconnected("quotients are taken of connected graphs")
    if group.degree != g.dart_count:
        raise ValueError("group acts on a different dart set")
    if not is_semiregular(group, g):
        raise NotSemiregular("the group has fixed darts or vertices")
    n = g.dart_count
    rep = list(range(n))
    for p in group.elements:
        for x in range(n):
            y = p.image[x]
            if y < rep[x]:
                rep[x] = y
    orbit_reps = sorted(set(rep))
    orbit_index = {r: i for i, r in enumerate(orbit_reps)}

    vrep = list(range(g.vertex_count))
    for p in group.elements:
        vmap = induced_vertex_map(g, p)
        for v in range(g.vertex_count):
            if vmap[v] < vrep[v]:
                vrep[v] = vmap[v]
    vertex_reps = sorted(set(vrep))
    vertex_index = {r: i for i, r in enumerate(vertex_reps)}

    lam = [orbit_index[rep[g.lam[r]]] for r in orbit_reps]
    vertex_of = [vertex_index[vrep[g.vertex_of[r]]] for r in orbit_reps]
    quotient = DartGraph(lam, vertex_of).check()
    projection = tuple(orbit_index[rep[x]] for x in range(n))
    return quotient, CoveringMap(total=g, base=quotient, projection=projection)


def covering_violations(c: CoveringMap) -> list[str]:
    total, base, proj = c.total, c.base, c.projection
    if len(proj) != total.dart_count:
        return ["projection must map every dart of the total graph"]
    if any(not 0 <= x < base.dart_count for x in proj):
        return ["projection image out of range"]
    problems = []
    if any(proj[total.lam[x]] != base.lam[proj[x]] for x in range(total.dart_count)):
        problems.append("projection does not commute with the involutions")
    vmap: dict[int, int] = {}
    consistent = True
    for x in range(total.dart_count):
        v = total.vertex_of[x]
        b = base.vertex_of[proj[x]]
        if vmap.setdefault(v, b) != b:
            consistent = False
    if not consistent:
        problems.append("projection tears a vertex class apart")
    else:
        base_classes = base.vertex_darts()
        for v, darts in enumerate(total.vertex_darts()):
            if sorted(proj[x] for x in darts) != sorted(base_classes[vmap[v]]):
                problems.append(f"projection is not bijective on the star of vertex {v}")
                break
    if set(proj) != set(range(base.dart_count)):
        problems.append("projection is not surjective")
    if not problems:
        sizes = set(Counter(proj).values())
        if len(sizes) != 1:
            problems.append("dart fibres have unequal sizes")
        vsizes = set(Counter(vmap.values()).values())
        if len(vsizes) != 1:
            problems.append("vertex fibres have unequal sizes")
    return problems


def _star_lift_table(c: CoveringMap) -> dict[tuple[int, int], int]:
    # unique dart over a base dart at a given total vertex
    table: dict[tuple[int, int], int] = {}
    for x in range(c.total.dart_count):
        table[(c.total.vertex_of[x], c.projection[x])] = x
    return table


def _extend_deck(
    c: CoveringMap, lift: dict[tuple[int, int], int], source: int, target: int
) -> Permutation | None:
    """Unique lift of the identity sending dart `source` to `target`."""
    total, proj = c.total, c.projection
    n = total.dart_count
    img = [-1] * n
    img[source] = target
    stack = [source]
    classes = total.vertex_darts()
    while stack:
        x = stack.pop()
        y = img[x]
        lx, ly = total.lam[x], total.lam[y]
        if img[lx] == -1:
            img[lx] = ly
            stack.append(lx)
        elif img[lx] != ly:
            return None
        vy = total.vertex_of[y]
        for z in classes[total.vertex_of[x]]:
            w = lift.get((vy, proj[z]))
            if w is None:
                return None
            if img[z] == -1:
                img[z] = w
                stack.append(z)
            elif img[z] != w:
                return None
    if -1 in img or len(set(img)) != n:
        return None
    if any(proj[img[x]] != proj[x] for x in range(n)):
        return None
    return Permutation(tuple(img))


def covering_transformations(c: CoveringMap) -> tuple[Permutation, ...]:
    """Automorphisms of the total graph over the identity of the base.

    A transformation is pinned down by the image of one dart, so each
    member of the fibre over dart 0 is tried as that image.
    """
    lift = _star_lift_table(c)
    fibre = [x for x in range(c.total.dart_count) if c.projection[x] == c.projection[0]]
    found = []
    for target in fibre:
        p = _extend_deck(c, lift, 0, target)
        if p is not None:
            found.append(p)
    found.sort(key=lambda p: p.image)
    return tuple(found)


@dataclass(frozen=True)
class CoveringReport:
    is_covering: bool
    fold: int
    is_regular: bool
    ct_order: int
    problems: tuple[str, ...]


def validate_covering(c: CoveringMap) -> CoveringReport:
    """Covering check plus fold, regularity, and the CT group order.

    Regularity is decided by transitivity of the covering transformations
    on a fibre, which for a (always semiregular) CT group means its order
    reaches the fold.
    """
    problems = covering_violations(c)
    if problems:
        return CoveringReport(False, 0, False, 0, tuple(problems))
    fold = c.total.dart_count // c.base.dart_count
    ct = covering_transformations(c)
    return CoveringReport(
        is_covering=True,
        fold=fold,
        is_regular=len(ct) == fold,
        ct_order=len(ct),
        problems=(),
    )


def monodromy_fibre_action(c: CoveringMap, vertex: int) -> PermGroup:
    """Permutations of the vertex fibre induced by base closed walks.

    Generated by the lifts of a fundamental system of closed walks at
    the chosen base vertex; transitive whenever the total graph is
    connected, of order equal to the fold exactly for regular covers.
    """
    problems = covering_violations(c)
    if problems:
        raise NotACovering("; ".join(problems))
    base = c.base
    if not 0 <= vertex < base.vertex_count:
        raise ValueError("base vertex out of range")
    vproj = c.induced_vertex_projection()
    fibre = sorted(v for v in range(c.total.vertex_count) if vproj[v] == vertex)
    position = {v: i for i, v in enumerate(fibre)}
    lift = _star_lift_table(c)

    def walk_end(start: int, darts: Sequence[int]) -> int:
        cur = start
        for d in darts:
            x = lift.get((cur, d))
            if x is None:
                raise NotACovering("walk lift failed")
            cur = c.total.vertex_of[c.total.lam[x]]
        return cur

    tree = bfs_spanning_tree(base)
    generators = []
    for cycle in fundamental_cycles(base, tree):
        w = cycle.start(base)
        out = tree_path_darts(base, tree, vertex, w)
        back = [base.lam[d] for d in reversed(out)]
        walk = out + list(cycle.darts) + back
        image = [0] * len(fibre)
        for v in fibre:
            image[position[v]] = position[walk_end(v, walk)]
        generators.append(Permutation(tuple(image)))
    if not generators:
        return PermGroup.trivial(len(fibre))
    return PermGroup.generate(generators)


@dataclass(frozen=True)
class LocalGroupReport:
    """Cycle defects of a pushed-down flow and the subgroup they generate."""

    defects: tuple[GroupElement, ...]
    subgroup: tuple[GroupElement, ...]
    order: int
    divides_group_order: bool


def local_group(c: CoveringMap, flow: JFlow, group: PermGroup) -> LocalGroupReport:
    """Defect subgroup of a flow pushed down a quotient covering.

    Requires the flow to be constant on the dart orbits of the acting
    group; the pushed-down flow satisfies the vertex law but may break
    the cycle law, and the defects over a fundamental cycle basis of the
    base generate the local group inside the total graph's Jacobian.
    """
    g = c.total
    if flow.graph != g:
        raise ValueError("flow does not live on the total graph of the covering")
    if group.degree != g.dart_count:
        raise ValueError("group acts on a different dart set")
    n = g.dart_count
    rep = list(range(n))
    for p in group.elements:
        for x in range(n):
            if p.image[x] < rep[x]:
                rep[x] = p.image[x]
    if any(
        c.projection[x] != c.projection[rep[x]] for x in range(n)
    ) or len(set(rep)) != c.base.dart_count:
        raise ValueError("covering is not the quotient by the given group")
    for x in range(n):
        if flow.xi[x] != flow.xi[rep[x]]:
            raise NotXiInvariant(f"flow differs along the orbit of dart {x}")
    min_fibre_dart: dict[int, int] = {}
    for x in range(n):
        b = c.projection[x]
        if b not in min_fibre_dart or x < min_fibre_dart[b]:
            min_fibre_dart[b] = x
    base = c.base
    tree = bfs_spanning_tree(base)
    defects = []
    for cycle in fundamental_cycles(base, tree):
        total = flow.group.zero()
        for b in cycle.darts:
            total = total + flow.xi[min_fibre_dart[b]]
        defects.append(total)
    subgroup = flow.group.subgroup_elements(defects)
    order = len(subgroup)
    assert order == flow.group.subgroup_order(defects)
    return LocalGroupReport(
        defects=tuple(defects),
        subgroup=subgroup,
        order=order,
        divides_group_order=group.order % order == 0,
    )


def _connection_partners(group: FiniteGroup, connection: Sequence[int]) -> list[int]:
    m = list(connection)
    if any(x == group.identity for x in m):
        raise IdentityInConnection("connection multisets exclude the identity")
    positions: dict[int, list[int]] = {}
    for j, x in enumerate(m):
        positions.setdefault(x, []).append(j)
    partner = [-1] * len(m)
    for x, plist in positions.items():
        ix = group.inv(x)
        if ix == x:
            for j in plist:
                partner[j] = j
        else:
            qlist = positions.get(ix)
            if qlist is None or len(qlist) != len(plist):
                raise NotInverseClosed(
                    f"element {group.label(x)} and its inverse have unequal multiplicity"
                )
            for j, q in zip(plist, qlist):
                partner[j] = q
    return partner


def cayley_multigraph(group: FiniteGroup, connection: Sequence[int]) -> DartGraph:
    """Cayley multigraph: darts are (element, connection slot) pairs.

    The involution sends (g, x) to (g x, x^-1), matching multiset
    instances slot by slot; self-inverse instances pair with themselves,
    which still yields ordinary edges because left translation is free.
    Connected exactly when the connection generates the group.
    """
    partner = _connection_partners(group, connection)
    k = len(connection)
    n = group.order
    lam = [0] * (n * k)
    vertex_of = [0] * (n * k)
    for g in range(n):
        for j in range(k):
            lam[g * k + j] = group.mul(g, connection[j]) * k + partner[j]
            vertex_of[g * k + j] = g
    result = DartGraph(lam, vertex_of).check()
    cls = classify_edges(result)
    assert not cls.loops and not cls.semiedges
    return result


def cayley_left_action(
    group: FiniteGroup, connection: Sequence[int], h: int
) -> Permutation:
    """Left translation by h as a dart permutation of the Cayley graph."""
    k = len(connection)
    return Permutation(
        tuple(
            group.mul(h, g) * k + j for g in range(group.order) for j in range(k)
        )
    )


def left_regular_group(group: FiniteGroup, connection: Sequence[int]) -> PermGroup:
    elements = sorted(
        (cayley_left_action(group, connection, h) for h in range(group.order)),
        key=lambda p: p.image,
    )
    return PermGroup(
        degree=group.order * len(connection),
        generators=tuple(elements),
        elements=tuple(elements),
    )


def cayley_cover(group: FiniteGroup, connection: Sequence[int]) -> CoveringMap:
    """The regular covering of the one-vertex graph on the connection."""
    total = cayley_multigraph(group, connection)
    partner = _connection_partners(group, connection)
    bouquet = DartGraph(partner, [0] * len(connection)).check()
    projection = tuple(j for _ in range(group.order) for j in range(len(connection)))
    return CoveringMap(total=total, base=bouquet, projection=projection)


def voltage_from_covering(c: CoveringMap) -> VoltageAssignment:
    """Reconstruct a T-reduced voltage assignment from a regular covering.

    Fixes a spanning tree of the base and the lexicographically smallest
    transversal over it; the voltage of a dart is the covering
    transformation carrying the transversal endpoint to the lifted one.
    """
    problems = covering_violations(c)
    if problems:
        raise NotACovering("; ".join(problems))
    ct = covering_transformations(c)
    fold = c.total.dart_count // c.base.dart_count
    if len(ct) != fold:
        raise NotACovering("covering is not regular")
    identity = Permutation.identity(c.total.dart_count)
    elements = [identity] + sorted(
        (p for p in ct if not p.is_identity()), key=lambda p: p.image
    )
    index = {p.image: i for i, p in enumerate(elements)}
    table = [[index[a.compose(b).image] for b in elements] for a in elements]
    group = FiniteGroup.from_table(table)
    vmaps = [induced_vertex_map(c.total, p) for p in elements]

    base = c.base
    lift = _star_lift_table(c)
    vproj = c.induced_vertex_projection()
    tree = bfs_spanning_tree(base)
    transversal: dict[int, int] = {
        0: min(v for v in range(c.total.vertex_count) if vproj[v] == 0)
    }
    pending = [0]
    tree_dart_set = set()
    for e in tree.edges:
        x, y = base.edges()[e]
        tree_dart_set.add(x)
        tree_dart_set.add(y)
    while pending:
        w = pending.pop()
        for x in sorted(base.vertex_darts()[w]):
            if x not in tree_dart_set:
                continue
            w2 = base.vertex_of[base.lam[x]]
            if w2 in transversal:
                continue
            lifted = lift[(transversal[w], x)]
            transversal[w2] = c.total.vertex_of[c.total.lam[lifted]]
            pending.append(w2)

    xi = [0] * base.dart_count
    for x in range(base.dart_count):
        w = base.vertex_of[x]
        w2 = base.vertex_of[base.lam[x]]
        lifted = lift[(transversal[w], x)]
        end = c.total.vertex_of[c.total.lam[lifted]]
        matches = [i for i, vm in enumerate(vmaps) if vm[transversal[w2]] == end]
        if len(matches) != 1:
            raise NotACovering("deck transformations do not act regularly on fibres")
        xi[x] = matches[0]
    assignment = VoltageAssignment(
        base=base, group=group, xi=tuple(xi), tree_darts=frozenset(tree_dart_set)
    )
    leftover = assignment.violations()
    if leftover:
        raise NotACovering("reconstructed voltages are inconsistent: " + "; ".join(leftover))
    return assignment


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PfoldReport:
    prime: int
    tau_total: int
    tau_base: int
    simple: bool
    three_edge_connected: bool
    bound_holds: bool
    strict_when_3ec: bool


def verify_pfold(v: VoltageAssignment) -> PfoldReport:
    """Spanning-tree bound for a prime-order cyclic cover.

    Builds the derived graph, requires it connected, semiedge-free, and
    2-edge-connected, then compares exact spanning tree counts: the
    cover must have at least p times as many, strictly more when it is
    3-edge-connected.
    """
    p = v.group.order
    if not _is_prime(p):
        raise HypothesisUnmet(f"voltage group order {p} is not prime")
    total, _ = derived_graph(v)
    cls = classify_edges(total)
    problems = []
    if cls.semiedges:
        problems.append("derived graph has semiedges")
    if not is_connected(total):
        problems.append("derived graph is disconnected")
    if problems:
        raise HypothesisUnmet("; ".join(problems))
    connectivity = edge_connectivity(total)
    if connectivity < 2:
        raise HypothesisUnmet("derived graph is not 2-edge-connected")
    tau_total = spanning_tree_count(total)
    tau_base = spanning_tree_count(v.base)
    three = connectivity >= 3
    return PfoldReport(
        prime=p,
        tau_total=tau_total,
        tau_base=tau_base,
        simple=not (cls.loops or cls.semiedges or cls.parallel_classes),
        three_edge_connected=three,
        bound_holds=tau_total >= p * tau_base,
        strict_when_3ec=(not three) or tau_total > p * tau_base,
    )
