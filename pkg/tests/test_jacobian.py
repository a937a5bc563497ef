import itertools
import math
import random

import pytest

from dartjac.dartgraph import (
    bfs_spanning_tree,
    classify_edges,
    is_connected,
    spanning_tree_count,
    spanning_tree_enumerate,
)
from dartjac.errors import Disconnected, LoopOrSemiedgePresent
from dartjac.families import (
    add_decorations,
    banana_graph,
    bouquet,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    double_banana,
    from_edges,
    path_graph,
    petersen_graph,
)
from dartjac.intlinalg import IntMatrix
from dartjac.jacobian import (
    AbelianGroup,
    Divisor,
    divisor_flow,
    jacobian,
    jacobian_via_divisors,
    laplacian,
    make_flow,
    relation_matrix,
    validate_flow,
)

SAMPLE_GRAPHS = [
    path_graph(3),
    cycle_graph(3),
    cycle_graph(5),
    banana_graph(3),
    double_banana(3),
    complete_graph(4),
    bouquet(loops=2, semiedges=2),
    add_decorations(cycle_graph(4), loops=[1], semiedges=[0, 2]),
]


def hom_count_oracle(g, k):
    """Count transversal assignments into Z_k satisfying every relation.

    Independent of the SNF path: brute force over k^|D+| vectors.
    """
    rel = relation_matrix(g)
    rows = rel.to_rows()
    count = 0
    for assign in itertools.product(range(k), repeat=rel.cols):
        if all(sum(c * a for c, a in zip(row, assign)) % k == 0 for row in rows):
            count += 1
    return count


def hom_count_from_factors(factors, k):
    n = 1
    for d in factors:
        n *= math.gcd(d, k)
    return n


def random_connected_multigraph(rng, n):
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    for _ in range(rng.randint(1, 4)):
        u, w = rng.randrange(n), rng.randrange(n)
        if u != w:
            edges.append((min(u, w), max(u, w)))
    loops = [rng.randrange(n) for _ in range(rng.randint(0, 1))]
    semis = [rng.randrange(n) for _ in range(rng.randint(0, 1))]
    return from_edges(n, edges, loops=loops, semiedges=semis)


def test_relation_matrix_single_semiedge():
    g = bouquet(semiedges=1)
    assert relation_matrix(g) == IntMatrix.from_rows([[1]])


def test_relation_matrix_triangle():
    rel = relation_matrix(cycle_graph(3))
    assert rel.rows == 4 and rel.cols == 3


def test_relation_matrix_tree_gives_trivial_quotient():
    g = path_graph(3)
    rel = relation_matrix(g)
    group, _ = jacobian(g)
    assert rel.cols == 2
    assert group.factors == ()


def test_relation_matrix_requires_connected():
    with pytest.raises(Disconnected):
        relation_matrix(from_edges(4, [(0, 1), (2, 3)]))


def test_jacobian_examples():
    assert jacobian(double_banana(3))[0].factors == (3, 3)
    assert jacobian(path_graph(4))[0].factors == ()
    for n in range(2, 7):
        assert jacobian(cycle_graph(n))[0].factors == (n,)
    assert jacobian(complete_graph(4))[0].factors == (4, 4)
    group, _ = jacobian(complete_bipartite(3, 3))
    assert group.order == 81
    assert group.rank >= 2


def test_jacobian_order_is_tree_count():
    for g in SAMPLE_GRAPHS:
        group, _ = jacobian(g)
        count = spanning_tree_count(g)
        assert group.order == count
        assert count == len(spanning_tree_enumerate(g))


def test_jacobian_against_hom_count_oracle():
    for g in [cycle_graph(3), cycle_graph(4), path_graph(3), banana_graph(3)]:
        factors = jacobian(g)[0].factors
        for k in (2, 3, 4):
            assert hom_count_oracle(g, k) == hom_count_from_factors(factors, k)
    # complete graph: 4^6 assignments against Z_4
    factors = jacobian(complete_graph(4))[0].factors
    assert hom_count_oracle(complete_graph(4), 4) == hom_count_from_factors(factors, 4)


def test_jacobian_rank_bound():
    for g in SAMPLE_GRAPHS:
        group, _ = jacobian(g)
        assert group.rank <= g.vertex_count - 1 or g.vertex_count == 1


def test_decorations_do_not_change_factors():
    rng = random.Random(31)
    for _ in range(15):
        g = random_connected_multigraph(rng, rng.randint(2, 5))
        base_factors = jacobian(g)[0].factors
        decorated = add_decorations(
            g,
            loops=[rng.randrange(g.vertex_count) for _ in range(rng.randint(1, 3))],
            semiedges=[rng.randrange(g.vertex_count) for _ in range(rng.randint(1, 3))],
        )
        assert jacobian(decorated)[0].factors == base_factors


def test_emitted_flow_is_valid_and_generates():
    for g in SAMPLE_GRAPHS:
        group, flow = jacobian(g)
        assert validate_flow(g, flow) == []
        plus_values = [flow.xi[x] for x in flow.dplus]
        assert group.subgroup_order(plus_values) == group.order


def test_flow_zero_on_loops_and_semiedges():
    g = add_decorations(cycle_graph(3), loops=[0], semiedges=[1])
    _, flow = jacobian(g)
    for x in range(g.dart_count):
        if g.is_semiedge_dart(x) or g.is_loop_dart(x):
            assert flow.xi[x].is_zero()


def test_all_ones_cycle_flow_is_valid():
    g = cycle_graph(4)
    group = AbelianGroup((4,))
    one = group.element((1,))
    # transversal darts of a cycle built by from_edges all point forward
    flow = make_flow(g, group, [one] * 4)
    assert validate_flow(g, flow) == []


def test_nonzero_semiedge_flow_violates_klc():
    g = bouquet(semiedges=1)
    group = AbelianGroup((2,))
    flow = make_flow(g, group, [group.element((1,))])
    problems = validate_flow(g, flow)
    assert any(p.startswith("KLC") for p in problems)


def test_corrupted_flow_is_flagged():
    g = cycle_graph(3)
    group, flow = jacobian(g)
    bad_values = [flow.xi[x] for x in flow.dplus]
    bad_values[0] = bad_values[0] + group.element((1,))
    bad = make_flow(g, group, bad_values)
    assert any(p.startswith("KLV") for p in validate_flow(g, bad))


def all_simple_cycle_sums(g, flow):
    """Flow sums over every oriented simple cycle, found by DFS."""
    sums = []
    classes = g.vertex_darts()

    def extend(path, visited, start):
        cur = g.vertex_of[g.lam[path[-1]]]
        if cur == start:
            total = flow.group.zero()
            for x in path:
                total = total + flow.xi[x]
            sums.append(total)
            return
        if cur in visited:
            return
        visited.add(cur)
        for y in classes[cur]:
            extend(path + [y], visited, start)
        visited.remove(cur)

    for x in range(g.dart_count):
        start = g.vertex_of[x]
        extend([x], {start}, start)
    return sums


def test_klc_basis_decides_all_simple_cycles():
    rng = random.Random(17)
    for _ in range(50):
        g = random_connected_multigraph(rng, rng.randint(2, 5))
        k = rng.randint(2, 6)
        group = AbelianGroup((k,))
        values = [group.element((rng.randrange(k),)) for _ in g.dart_plus()]
        flow = make_flow(g, group, values)
        basis_ok = not any(
            p.startswith("KLC") for p in validate_flow(g, flow)
        )
        exhaustive_ok = all(s.is_zero() for s in all_simple_cycle_sums(g, flow))
        assert basis_ok == exhaustive_ok


def test_laplacian_examples():
    assert laplacian(path_graph(2)) == IntMatrix.from_rows([[1, -1], [-1, 1]])
    assert laplacian(banana_graph(3)) == IntMatrix.from_rows([[3, -3], [-3, 3]])
    lap = laplacian(double_banana(3))
    assert tuple(lap.get(i, i) for i in range(3)) == (6, 3, 3)


def test_laplacian_rejects_loops():
    with pytest.raises(LoopOrSemiedgePresent):
        laplacian(bouquet(loops=1))


def test_divisor_flow():
    g = complete_graph(4)
    assert divisor_flow(g, Divisor((5, 5, 5, 5))) == (0,) * g.dart_count

    k2 = path_graph(2)
    assert divisor_flow(k2, Divisor((1, 0))) == (-1, 1)

    # flows of divisors satisfy the cycle law on every fundamental cycle
    rng = random.Random(3)
    for g in [complete_graph(4), cycle_graph(5), double_banana(3)]:
        f = Divisor(tuple(rng.randint(-4, 4) for _ in range(g.vertex_count)))
        values = divisor_flow(g, f)
        from dartjac.dartgraph import fundamental_cycles

        for cycle in fundamental_cycles(g, bfs_spanning_tree(g)):
            assert sum(values[x] for x in cycle.darts) == 0


def test_divisor_flow_semiedge_is_zero():
    g = bouquet(semiedges=2)
    assert divisor_flow(g, Divisor((7,))) == (0, 0)


def test_jacobian_via_divisors():
    assert jacobian_via_divisors(cycle_graph(3)).factors == (3,)
    assert jacobian_via_divisors(path_graph(4)).factors == ()
    assert jacobian_via_divisors(petersen_graph()).order == 2000


def test_divisor_and_presentation_paths_agree():
    graphs = [
        cycle_graph(4),
        complete_graph(4),
        complete_bipartite(2, 3),
        banana_graph(4),
        double_banana(2),
        petersen_graph(),
    ]
    for g in graphs:
        assert jacobian_via_divisors(g).factors == jacobian(g)[0].factors
