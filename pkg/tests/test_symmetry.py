import itertools

import pytest

from dartjac.errors import NotAnAutomorphism, ScaleExceeded
from dartjac.families import (
    banana_graph,
    bouquet,
    complete_bipartite,
    complete_graph,
    cube_graph,
    cycle_graph,
    double_banana,
    from_edges,
    path_graph,
    petersen_graph,
)
from dartjac.jacobian import jacobian
from dartjac.symmetry import (
    FiniteGroup,
    PermGroup,
    Permutation,
    automorphisms,
    cyclic_group,
    dart_permutation_from_vertex_map,
    dihedral_group,
    find_isomorphism,
    group_from_permutations,
    is_automorphism,
    is_semiregular,
    jac_rank_check,
    quaternion_group,
    symmetric_group,
    theta,
    theta_image,
    theta_kernel,
    verify_faithful,
)


def rotation_of_cycle(n):
    g = cycle_graph(n)
    vmap = [(v + 1) % n for v in range(n)]
    return g, dart_permutation_from_vertex_map(g, vmap)


def test_permutation_basics():
    p = Permutation.from_cycles(4, "(0 1)(2 3)")
    assert p.image == (1, 0, 3, 2)
    assert p.compose(p).is_identity()
    assert p.inverse() == p
    q = Permutation.from_cycles(4, "(0, 1, 2)")
    assert q.cycle_string() == "(0 1 2)"
    with pytest.raises(ValueError):
        Permutation.from_cycles(3, "(0 5)")


def test_perm_group_generation():
    g, rot = rotation_of_cycle(4)
    group = PermGroup.generate([rot])
    assert group.order == 4
    assert group.elements[0].is_identity()


def test_perm_group_cap():
    perms = [
        Permutation(tuple(p))
        for p in itertools.permutations(range(7))
        if p != tuple(range(7))
    ][:2]
    big = [
        Permutation.from_cycles(9, "(0 1 2 3 4 5 6 7 8)"),
        Permutation.from_cycles(9, "(0 1)"),
    ]
    with pytest.raises(ScaleExceeded):
        PermGroup.generate(big, cap=1000)


def test_cyclic_group():
    g = cyclic_group(6)
    assert g.order == 6
    assert g.mul(4, 5) == 3
    assert g.inv(2) == 4
    assert g.is_abelian
    assert g.element_order(2) == 3


def test_symmetric_group():
    s3 = symmetric_group(3)
    assert s3.order == 6
    assert not s3.is_abelian
    transpositions = [a for a in range(6) if s3.element_order(a) == 2]
    assert len(transpositions) == 3


def test_dihedral_group():
    d4 = dihedral_group(4)
    assert d4.order == 8
    assert not d4.is_abelian


def test_quaternion_group():
    q8 = quaternion_group()
    assert q8.order == 8
    assert not q8.is_abelian
    orders = sorted(q8.element_order(a) for a in range(8))
    assert orders == [1, 2, 4, 4, 4, 4, 4, 4]
    i = q8.labels.index("i")
    j = q8.labels.index("j")
    k = q8.labels.index("k")
    assert q8.mul(i, j) == k
    assert q8.mul(j, i) == q8.labels.index("-k")


def test_group_from_permutations():
    g, rot = rotation_of_cycle(5)
    grp = group_from_permutations([rot])
    assert grp.order == 5
    assert grp.is_abelian


def brute_force_vertex_automorphisms(g):
    """Oracle: try every vertex bijection of a simple graph."""
    n = g.vertex_count
    adj = {frozenset(g.endpoints(e)) for e in range(len(g.edges()))}
    count = 0
    for perm in itertools.permutations(range(n)):
        if all(frozenset((perm[u], perm[w])) in adj for u, w in map(tuple, adj)):
            count += 1
    return count


def test_automorphisms_counts():
    assert automorphisms(path_graph(2)).order == 2
    assert automorphisms(double_banana(3)).order == 72
    assert automorphisms(cycle_graph(4)).order == brute_force_vertex_automorphisms(
        cycle_graph(4)
    )
    assert automorphisms(cycle_graph(4)).order == 8
    assert automorphisms(complete_graph(4)).order == 24
    assert automorphisms(cube_graph()).order == 48
    assert automorphisms(petersen_graph()).order == 120


def test_automorphisms_of_decorated_graphs():
    assert automorphisms(bouquet(semiedges=3)).order == 6
    assert automorphisms(bouquet(loops=2)).order == 8  # swap loops, flip each
    assert automorphisms(banana_graph(3)).order == 12  # 3! matchings x vertex swap


def test_automorphisms_scale_guard():
    with pytest.raises(ScaleExceeded):
        automorphisms(complete_graph(4), max_vertices=3)


def test_every_listed_automorphism_checks_out():
    g = double_banana(3)
    group = automorphisms(g)
    assert all(is_automorphism(g, p) for p in group.elements)


def test_dart_permutation_from_vertex_map_rejects_non_automorphism():
    g = path_graph(3)
    with pytest.raises(NotAnAutomorphism):
        dart_permutation_from_vertex_map(g, [1, 0, 2])


def test_is_semiregular():
    g = cycle_graph(4)
    assert is_semiregular(PermGroup.trivial(g.dart_count), g)
    _, rot = rotation_of_cycle(4)
    assert is_semiregular(PermGroup.generate([rot]), g)
    reflection = dart_permutation_from_vertex_map(g, [0, 3, 2, 1])
    assert not is_semiregular(PermGroup.generate([reflection]), g)


def test_theta_identity():
    g = complete_graph(4)
    _, flow = jacobian(g)
    ident = Permutation.identity(g.dart_count)
    assert theta(ident, flow).is_identity()


def test_theta_on_cycle_rotation_is_trivial():
    g, rot = rotation_of_cycle(4)
    _, flow = jacobian(g)
    assert theta(rot, flow).is_identity()


def test_theta_on_k4_double_transposition_is_not_trivial():
    g = complete_graph(4)
    f = dart_permutation_from_vertex_map(g, [1, 0, 3, 2])
    _, flow = jacobian(g)
    assert not theta(f, flow).is_identity()


def test_theta_rejects_non_automorphism():
    g = complete_graph(4)
    _, flow = jacobian(g)
    bad = Permutation(tuple([1, 0] + list(range(2, g.dart_count))))
    if is_automorphism(g, bad):  # pragma: no cover - defensive
        pytest.skip("unexpectedly an automorphism")
    with pytest.raises(NotAnAutomorphism):
        theta(bad, flow)


def test_theta_kernel_examples():
    g = complete_graph(4)
    _, flow = jacobian(g)
    assert [p.is_identity() for p in theta_kernel(PermGroup.trivial(g.dart_count), flow)] == [True]

    f = dart_permutation_from_vertex_map(g, [1, 0, 3, 2])
    kernel = theta_kernel(PermGroup.generate([f]), flow)
    assert len(kernel) == 1

    c4, rot = rotation_of_cycle(4)
    _, flow4 = jacobian(c4)
    assert len(theta_kernel(PermGroup.generate([rot]), flow4)) == 4


def test_theta_is_a_homomorphism():
    g = complete_graph(4)
    _, flow = jacobian(g)
    group = automorphisms(g)
    images = {p.image: theta(p, flow) for p in group.elements}
    for a in group.elements[:8]:
        for b in group.elements[:8]:
            assert images[a.compose(b).image] == images[a.image].compose(
                images[b.image]
            )


def test_theta_is_invertible():
    g = petersen_graph()
    _, flow = jacobian(g)
    f = dart_permutation_from_vertex_map(
        g, [(v + 1) % 5 if v < 5 else 5 + (v - 4) % 5 for v in range(10)]
    )
    assert theta(f, flow).compose(theta(f.inverse(), flow)).is_identity()


def test_kernel_characterisation():
    g = complete_graph(4)
    _, flow = jacobian(g)
    group = automorphisms(g)
    kernel_images = {p.image for p in theta_kernel(group, flow)}
    for p in group.elements:
        assert (p.image in kernel_images) == theta(p, flow).is_identity()


def test_verify_faithful_k4():
    g = complete_graph(4)
    group = PermGroup.generate(
        [dart_permutation_from_vertex_map(g, [1, 0, 3, 2])]
    )
    report = verify_faithful(g, group)
    assert report.simple and report.three_edge_connected and report.semiregular
    assert report.injective and report.kernel_size == 1
    assert report.image_order == 2
    assert not report.theorem_violation


def test_verify_faithful_petersen_rotation():
    g = petersen_graph()
    rot = dart_permutation_from_vertex_map(
        g, [(v + 1) % 5 if v < 5 else 5 + (v - 4) % 5 for v in range(10)]
    )
    report = verify_faithful(g, PermGroup.generate([rot]))
    assert report.injective and report.image_order == 5
    assert not report.theorem_violation


def test_verify_faithful_c6_control():
    g, rot = rotation_of_cycle(6)
    report = verify_faithful(g, PermGroup.generate([rot]))
    assert report.semiregular
    assert not report.three_edge_connected
    assert report.kernel_size == 6
    assert not report.injective
    assert report.image_order == 1
    assert not report.theorem_violation  # hypotheses fail, so no violation


def test_jac_rank_check():
    r = jac_rank_check(cycle_graph(5))
    assert r.rank == 1 and r.cyclic
    r = jac_rank_check(complete_bipartite(3, 3))
    assert r.rank >= 2 and not r.cyclic
    r = jac_rank_check(double_banana(3))
    assert r.rank == 2 and not r.cyclic


def test_gl2_z3_has_48_elements_and_kernel_is_forced():
    # the Jacobian Z3 x Z3 has 48 automorphisms, fewer than the 72 graph
    # automorphisms, so the kernel cannot be trivial
    invertible = 0
    for a, b, c, d in itertools.product(range(3), repeat=4):
        if (a * d - b * c) % 3 != 0:
            invertible += 1
    assert invertible == 48

    g = double_banana(3)
    group = automorphisms(g)
    assert group.order == 72
    _, flow = jacobian(g)
    kernel = theta_kernel(group, flow)
    assert len(kernel) > 1
    assert len(theta_image(group, flow)) == group.order // len(kernel)


def test_find_isomorphism():
    g1 = complete_bipartite(3, 3)
    relabel = [3, 4, 5, 0, 1, 2]
    g2 = from_edges(6, [(relabel[i], relabel[3 + j]) for i in range(3) for j in range(3)])
    iso = find_isomorphism(g1, g2)
    assert iso is not None
    assert find_isomorphism(cycle_graph(4), path_graph(4)) is None
    assert find_isomorphism(banana_graph(3), banana_graph(3)) is not None
