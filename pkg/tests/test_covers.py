import pytest

from dartjac.covers import (
    CoveringMap,
    VoltageAssignment,
    cayley_cover,
    cayley_left_action,
    cayley_multigraph,
    covering_transformations,
    derived_graph,
    left_regular_group,
    local_group,
    monodromy_fibre_action,
    quotient_graph,
    validate_covering,
    verify_pfold,
    voltage_from_covering,
)
from dartjac.dartgraph import (
    DartGraph,
    classify_edges,
    is_connected,
    spanning_tree_count,
)
from dartjac.errors import (
    HypothesisUnmet,
    IdentityInConnection,
    InvalidVoltage,
    NotInverseClosed,
    NotSemiregular,
    NotXiInvariant,
)
from dartjac.families import (
    banana_graph,
    bouquet,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    from_edges,
    petersen_graph,
)
from dartjac.jacobian import jacobian
from dartjac.symmetry import (
    PermGroup,
    cyclic_group,
    dart_permutation_from_vertex_map,
    find_isomorphism,
    induced_vertex_map,
    quaternion_group,
    symmetric_group,
)


def cycle_rotation_group(n, step=1):
    g = cycle_graph(n)
    vmap = [(v + step) % n for v in range(n)]
    return g, PermGroup.generate([dart_permutation_from_vertex_map(g, vmap)])


def triangle_z3_voltage():
    """Z3 voltage on the triangle: trivial on a tree, 1 on the last edge."""
    g = cycle_graph(3)
    xi = [0] * 6
    xi[2] = 1  # the co-tree edge of the BFS tree has darts 2 and 3
    xi[3] = 2
    return VoltageAssignment(
        base=g, group=cyclic_group(3), xi=tuple(xi), tree_darts=frozenset({0, 1, 4, 5})
    )


def petersen_base_voltage():
    """Two vertices, a spoke edge, one loop each; Z5 voltages 1 and 2."""
    base = from_edges(2, [(0, 1)], loops=[0, 1])
    xi = [0, 0, 1, 4, 2, 3]
    return VoltageAssignment(
        base=base, group=cyclic_group(5), xi=tuple(xi), tree_darts=frozenset({0, 1})
    )


def test_trivial_voltage_gives_isomorphic_copy():
    g = complete_graph(4)
    v = VoltageAssignment(base=g, group=cyclic_group(1), xi=(0,) * g.dart_count)
    total, cover = derived_graph(v)
    assert find_isomorphism(total, g) is not None
    report = validate_covering(cover)
    assert report.is_covering and report.fold == 1 and report.is_regular


def test_semiedges_lift_to_theta_graph():
    base = bouquet(semiedges=3)
    v = VoltageAssignment(
        base=base, group=cyclic_group(2), xi=(1, 1, 1), tree_darts=frozenset()
    )
    assert v.is_t_reduced()
    total, cover = derived_graph(v)
    assert find_isomorphism(total, banana_graph(3)) is not None
    assert classify_edges(total).semiedges == ()
    report = validate_covering(cover)
    assert report.is_covering and report.is_regular and report.ct_order == 2


def test_transposition_voltages_build_k33():
    s3 = symmetric_group(3)
    transpositions = [a for a in range(6) if s3.element_order(a) == 2]
    base = bouquet(semiedges=3)
    v = VoltageAssignment(
        base=base, group=s3, xi=tuple(transpositions), tree_darts=frozenset()
    )
    assert v.is_t_reduced()
    total, cover = derived_graph(v)
    assert find_isomorphism(total, complete_bipartite(3, 3)) is not None
    report = validate_covering(cover)
    assert report.is_regular and report.ct_order == 6


def test_derived_graph_rejects_bad_voltage():
    g = cycle_graph(3)
    with pytest.raises(InvalidVoltage):
        derived_graph(
            VoltageAssignment(base=g, group=cyclic_group(3), xi=(1, 1, 0, 0, 0, 0))
        )


def test_derived_fibres_all_have_group_size():
    v = triangle_z3_voltage()
    total, cover = derived_graph(v)
    for x in range(v.base.dart_count):
        assert sum(1 for y in cover.projection if y == x) == 3
    vproj = cover.induced_vertex_projection()
    for w in range(v.base.vertex_count):
        assert sum(1 for u in vproj if u == w) == 3


def test_z3_cover_of_triangle_is_c9():
    total, cover = derived_graph(triangle_z3_voltage())
    assert find_isomorphism(total, cycle_graph(9)) is not None
    mon = monodromy_fibre_action(cover, 0)
    assert mon.order == 3
    report = validate_covering(cover)
    assert report.is_regular and report.ct_order == 3


def test_quotient_by_trivial_group_is_identity():
    g = complete_graph(4)
    quotient, cover = quotient_graph(g, PermGroup.trivial(g.dart_count))
    assert find_isomorphism(quotient, g) is not None
    assert validate_covering(cover).fold == 1


def test_quotient_k4_by_double_transposition():
    g = complete_graph(4)
    group = PermGroup.generate([dart_permutation_from_vertex_map(g, [1, 0, 3, 2])])
    quotient, cover = quotient_graph(g, group)
    assert quotient.dart_count == 6
    assert quotient.vertex_count == 2
    cls = classify_edges(quotient)
    assert len(cls.semiedges) == 2
    assert len(cls.ordinary) == 2
    assert len(cls.parallel_classes) == 1
    report = validate_covering(cover)
    assert report.is_covering and report.is_regular and report.ct_order == 2


def test_quotient_rejects_non_semiregular():
    g = complete_graph(4)
    group = PermGroup.generate([dart_permutation_from_vertex_map(g, [1, 0, 2, 3])])
    with pytest.raises(NotSemiregular):
        quotient_graph(g, group)


def test_cayley_by_left_regular_action_gives_bouquet():
    s3 = symmetric_group(3)
    transpositions = [a for a in range(6) if s3.element_order(a) == 2]
    g = cayley_multigraph(s3, transpositions)
    group = left_regular_group(s3, transpositions)
    quotient, cover = quotient_graph(g, group)
    assert quotient.vertex_count == 1
    assert quotient.dart_count == 3
    assert validate_covering(cover).ct_order == 6


def test_validate_covering_rejects_garbage():
    g = cycle_graph(4)
    base = banana_graph(2)
    bad = CoveringMap(total=g, base=base, projection=(0,) * g.dart_count)
    report = validate_covering(bad)
    assert not report.is_covering
    assert report.problems


def test_cayley_multigraph_examples():
    z5 = cyclic_group(5)
    g = cayley_multigraph(z5, [1, 4])
    assert find_isomorphism(g, cycle_graph(5)) is not None

    s3 = symmetric_group(3)
    transpositions = [a for a in range(6) if s3.element_order(a) == 2]
    k33 = cayley_multigraph(s3, transpositions)
    assert find_isomorphism(k33, complete_bipartite(3, 3)) is not None

    z3 = cyclic_group(3)
    doubled = cayley_multigraph(z3, [1, 1, 2, 2])
    assert doubled.vertex_count == 3
    assert len(classify_edges(doubled).ordinary) == 6
    assert len(classify_edges(doubled).parallel_classes) == 3


def test_cayley_multigraph_rejects_bad_connections():
    z4 = cyclic_group(4)
    with pytest.raises(IdentityInConnection):
        cayley_multigraph(z4, [0, 1, 3])
    with pytest.raises(NotInverseClosed):
        cayley_multigraph(z4, [1, 1, 3])


def test_cayley_cover_is_regular():
    q8 = quaternion_group()
    conn = [q8.labels.index(s) for s in ("i", "-i", "j", "-j")]
    cover = cayley_cover(q8, conn)
    report = validate_covering(cover)
    assert report.is_covering and report.is_regular and report.ct_order == 8
    mon = monodromy_fibre_action(cover, 0)
    assert mon.order == report.fold == 8


def test_monodromy_of_theta_over_three_semiedges():
    base = bouquet(semiedges=3)
    v = VoltageAssignment(base=base, group=cyclic_group(2), xi=(1, 1, 1))
    _, cover = derived_graph(v)
    mon = monodromy_fibre_action(cover, 0)
    assert mon.order == 2


def test_fold_one_monodromy_trivial():
    g = complete_graph(4)
    v = VoltageAssignment(base=g, group=cyclic_group(1), xi=(0,) * g.dart_count)
    _, cover = derived_graph(v)
    assert monodromy_fibre_action(cover, 0).order == 1


def _non_regular_three_fold_cover():
    """Fibre permutations (0 1) and (0 2) over a two-loop bouquet."""
    base = bouquet(loops=2)
    lam = [4, 3, 5, 1, 0, 2, 11, 10, 9, 8, 7, 6]
    vertex_of = [0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2]
    total = DartGraph(lam, vertex_of).check()
    projection = (0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3)
    return CoveringMap(total=total, base=base, projection=projection)


def test_non_regular_cover_bounds():
    cover = _non_regular_three_fold_cover()
    report = validate_covering(cover)
    assert report.is_covering
    assert report.fold == 3
    assert not report.is_regular
    mon = monodromy_fibre_action(cover, 0)
    assert report.ct_order <= report.fold <= mon.order
    assert mon.order == 6  # the two transpositions generate all of S3
    assert report.ct_order == 1


def test_monodromy_transitive_on_fibre():
    for cover in [
        derived_graph(triangle_z3_voltage())[1],
        _non_regular_three_fold_cover(),
    ]:
        mon = monodromy_fibre_action(cover, 0)
        fold = validate_covering(cover).fold
        reached = {0}
        for p in mon.elements:
            reached.add(p.image[0])
        assert len(reached) == fold


def test_abelian_regular_cover_ct_equals_monodromy_on_fibre():
    v = triangle_z3_voltage()
    total, cover = derived_graph(v)
    vproj = cover.induced_vertex_projection()
    fibre = sorted(u for u in range(total.vertex_count) if vproj[u] == 0)
    position = {u: i for i, u in enumerate(fibre)}
    ct_restricted = set()
    for p in covering_transformations(cover):
        vmap = induced_vertex_map(total, p)
        ct_restricted.add(tuple(position[vmap[u]] for u in fibre))
    mon = monodromy_fibre_action(cover, 0)
    assert ct_restricted == {p.image for p in mon.elements}


def test_local_group_of_trivial_quotient():
    g = cycle_graph(4)
    _, flow = jacobian(g)
    quotient, cover = quotient_graph(g, PermGroup.trivial(g.dart_count))
    report = local_group(cover, flow, PermGroup.trivial(g.dart_count))
    assert report.order == 1
    assert report.divides_group_order


def test_local_group_c6_quotients():
    g, rot2 = cycle_rotation_group(6, step=3)  # order-2 rotation
    _, flow = jacobian(g)
    quotient, cover = quotient_graph(g, rot2)
    assert quotient.vertex_count == 3
    report = local_group(cover, flow, rot2)
    assert report.order == 2
    assert report.divides_group_order

    g, rot3 = cycle_rotation_group(6, step=2)  # order-3 rotation
    _, flow = jacobian(g)
    quotient, cover = quotient_graph(g, rot3)
    assert quotient.vertex_count == 2
    report = local_group(cover, flow, rot3)
    assert report.order == 3
    assert report.divides_group_order


def test_local_group_rejects_non_invariant_flow():
    g = complete_graph(4)
    group = PermGroup.generate([dart_permutation_from_vertex_map(g, [1, 0, 3, 2])])
    _, flow = jacobian(g)
    _, cover = quotient_graph(g, group)
    with pytest.raises(NotXiInvariant):
        local_group(cover, flow, group)


def test_voltage_roundtrip_c6_quotient():
    g, rot = cycle_rotation_group(6, step=3)
    _, cover = quotient_graph(g, rot)
    v = voltage_from_covering(cover)
    assert v.is_t_reduced()
    rebuilt, _ = derived_graph(v)
    assert find_isomorphism(rebuilt, g) is not None
    assert jacobian(rebuilt)[0].factors == jacobian(g)[0].factors


def test_voltage_roundtrip_k4_quotient():
    g = complete_graph(4)
    group = PermGroup.generate([dart_permutation_from_vertex_map(g, [1, 0, 3, 2])])
    _, cover = quotient_graph(g, group)
    v = voltage_from_covering(cover)
    rebuilt, _ = derived_graph(v)
    assert rebuilt.vertex_count == g.vertex_count
    assert rebuilt.dart_count == g.dart_count
    assert sorted(rebuilt.valency(u) for u in range(4)) == [3, 3, 3, 3]
    assert spanning_tree_count(rebuilt) == spanning_tree_count(g)
    assert find_isomorphism(rebuilt, g) is not None


def test_verify_pfold_theta_case():
    base = bouquet(semiedges=3)
    v = VoltageAssignment(
        base=base, group=cyclic_group(2), xi=(1, 1, 1), tree_darts=frozenset()
    )
    report = verify_pfold(v)
    assert report.tau_total == 3 and report.tau_base == 1
    assert report.bound_holds
    assert report.three_edge_connected and report.strict_when_3ec


def test_verify_pfold_c9_equality_case():
    report = verify_pfold(triangle_z3_voltage())
    assert report.tau_total == 9 and report.tau_base == 3
    assert report.bound_holds
    assert not report.three_edge_connected


def test_verify_pfold_petersen():
    v = petersen_base_voltage()
    total, _ = derived_graph(v)
    assert find_isomorphism(total, petersen_graph()) is not None
    report = verify_pfold(v)
    assert report.tau_total == 2000 and report.tau_base == 1
    assert report.simple and report.three_edge_connected
    assert report.bound_holds and report.strict_when_3ec


def test_verify_pfold_rejects_non_prime():
    g = cycle_graph(3)
    v = VoltageAssignment(base=g, group=cyclic_group(4), xi=(0,) * 6)
    with pytest.raises(HypothesisUnmet):
        verify_pfold(v)


def test_verify_pfold_rejects_semiedge_lift():
    # zero voltage on the semiedge keeps it a semiedge in the cover
    base = bouquet(loops=1, semiedges=1)  # darts 0,1 = loop, dart 2 = semiedge
    v = VoltageAssignment(base=base, group=cyclic_group(2), xi=(1, 1, 0))
    with pytest.raises(HypothesisUnmet):
        verify_pfold(v)


def test_base_semiedges_lift_to_ordinary_edges():
    base = bouquet(semiedges=3)
    v = VoltageAssignment(base=base, group=cyclic_group(2), xi=(1, 1, 1))
    total, cover = derived_graph(v)
    assert classify_edges(total).semiedges == ()
    for x in range(base.dart_count):
        fibre = [y for y in range(total.dart_count) if cover.projection[y] == x]
        assert all(not total.is_semiedge_dart(y) for y in fibre)
