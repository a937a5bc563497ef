"""Named verification suites over concrete instances.

Each suite builds its instances (fixed ones plus seeded random ones),
evaluates the claimed identity or inequality exactly, and reports one
case per check. Suites are pure functions of (seed, count), so repeated
runs reproduce the same cases in the same order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .covers import (
    VoltageAssignment,
    cayley_multigraph,
    left_regular_group,
    quotient_graph,
    verify_pfold,
)
from .dartgraph import (
    classify_edges,
    edge_connectivity,
    ordinary_reduction,
    spanning_tree_count,
    spanning_tree_enumerate,
)
from .errors import HypothesisUnmet, ScaleExceeded
from .families import (
    add_decorations,
    bouquet,
    complete_graph,
    cube_graph,
    cycle_graph,
    double_banana,
    from_edges,
    petersen_graph,
)
from .generate import gnp_simple, random_multigraph, random_voltage, substream
from .jacobian import jacobian
from .symmetry import (
    PermGroup,
    automorphisms,
    dart_permutation_from_vertex_map,
    dihedral_group,
    jac_rank_check,
    quaternion_group,
    symmetric_group,
    theta_kernel,
    verify_faithful,
)

__all__ = ["VerificationCase", "SUITES", "run_suite", "summarize"]


@dataclass
class VerificationCase:
    case_id: str
    description: str
    outcome: str  # pass | fail | hypothesis-unmet | scale-exceeded
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.outcome == "pass"


def _case(case_id: str, description: str, ok: bool, details: dict) -> VerificationCase:
    return VerificationCase(case_id, description, "pass" if ok else "fail", details)


def _count_invertible_2x2_mod3() -> int:
    count = 0
    for a, b, c, d in itertools.product(range(3), repeat=4):
        if (a * d - b * c) % 3 != 0:
            count += 1
    return count


def suite_example72(seed: int = 1, count: int = 0) -> list[VerificationCase]:
    """Triple-parallel double star: symmetry count versus Jacobian size."""
    g = double_banana(3)
    aut = automorphisms(g)
    group, flow = jacobian(g)
    tau = spanning_tree_count(g)
    gl_order = _count_invertible_2x2_mod3()
    kernel = theta_kernel(aut, flow)
    return [
        _case("example72/aut-order", "|Aut| of the double star is 72",
              aut.order == 72, {"order": aut.order}),
        _case("example72/jac-factors", "Jacobian is Z3 x Z3",
              group.factors == (3, 3), {"factors": list(group.factors)}),
        _case("example72/tree-count", "9 spanning trees",
              tau == 9, {"tau": tau}),
        _case("example72/gl2-order", "48 invertible 2x2 matrices over Z3",
              gl_order == 48, {"count": gl_order}),
        _case("example72/kernel-nontrivial",
              "72 symmetries cannot embed into 48, so the kernel is nontrivial",
              len(kernel) > 1, {"kernel_size": len(kernel)}),
    ]


def suite_p1(seed: int = 1, count: int = 100) -> list[VerificationCase]:
    """Jacobian order equals the spanning tree count, via all routes."""
    cases = []

    def check(case_id, g):
        group, _ = jacobian(g)
        tau = spanning_tree_count(g)
        details = {"jac_order": group.order, "tau": tau}
        ok = group.order == tau
        if len(classify_edges(g).ordinary) <= 12:
            enumerated = len(spanning_tree_enumerate(g))
            details["enumerated"] = enumerated
            ok = ok and enumerated == tau
        cases.append(_case(case_id, "order(Jac) = tree count", ok, details))

    for i in range(count):
        n = 5 + (i % 5)
        g = gnp_simple(seed, n, 0.5, stream=1000 * i)
        check(f"p1/simple-{i:03d}", g)
    for j in range(max(1, count // 5)):
        g = random_multigraph(seed, 2 + (j % 5), 2 + (j % 4), stream=10**6 + j)
        check(f"p1/multi-{j:03d}", g)
    return cases


def _pfold_fixed_cases() -> list[tuple[str, VoltageAssignment]]:
    theta_base = bouquet(semiedges=3)
    theta = VoltageAssignment(
        base=theta_base, group=_z(2), xi=(1, 1, 1), tree_darts=frozenset()
    )
    c3 = cycle_graph(3)
    nine = VoltageAssignment(
        base=c3, group=_z(3), xi=(0, 0, 1, 2, 0, 0), tree_darts=frozenset({0, 1, 4, 5})
    )
    pet_base = from_edges(2, [(0, 1)], loops=[0, 1])
    pet = VoltageAssignment(
        base=pet_base, group=_z(5), xi=(0, 0, 1, 4, 2, 3), tree_darts=frozenset({0, 1})
    )
    return [("theta-over-bouquet", theta), ("nine-cycle", nine), ("petersen", pet)]


def _z(n: int):
    from .symmetry import cyclic_group

    return cyclic_group(n)


def suite_pfold(seed: int = 1, count: int = 100) -> list[VerificationCase]:
    """Spanning-tree lower bound for prime-fold covers.

    Cases count only when the derived graph meets the hypotheses
    (connected, semiedge-free, 2-edge-connected); generation keeps
    drawing until `count` such instances exist.
    """
    cases = []

    def report_case(case_id, report):
        ok = report.bound_holds and report.strict_when_3ec
        cases.append(
            _case(
                case_id,
                f"tau(total) >= {report.prime} * tau(base), strict when 3-edge-connected",
                ok,
                {
                    "p": report.prime,
                    "tau_total": report.tau_total,
                    "tau_base": report.tau_base,
                    "three_edge_connected": report.three_edge_connected,
                },
            )
        )

    for name, assignment in _pfold_fixed_cases():
        report_case(f"pfold/{name}", verify_pfold(assignment))
    produced = 0
    stream = 0
    attempts_left = 300 * count
    while produced < count and attempts_left > 0:
        attempts_left -= 1
        p = (2, 3, 5)[stream % 3]
        base = random_multigraph(
            seed,
            3 + (stream % 3),
            2 + (stream % 3),
            stream=2 * 10**6 + stream,
            allow_semiedges=(p == 2),
        )
        stream += 1
        try:
            assignment = random_voltage(seed, base, p, stream=3 * 10**6 + stream)
            report = verify_pfold(assignment)
        except (HypothesisUnmet, ValueError):
            continue
        if not report.simple:
            continue
        report_case(f"pfold/random-{produced:03d}", report)
        produced += 1
    return cases


def _main_theorem_instances(seed: int):
    k4 = complete_graph(4)
    yield "k4-z2", k4, PermGroup.generate(
        [dart_permutation_from_vertex_map(k4, [1, 0, 3, 2])]
    )
    pet = petersen_graph()
    yield "petersen-z5", pet, PermGroup.generate(
        [
            dart_permutation_from_vertex_map(
                pet, [(v + 1) % 5 if v < 5 else 5 + (v - 4) % 5 for v in range(10)]
            )
        ]
    )
    s3 = symmetric_group(3)
    transpositions = tuple(a for a in range(6) if s3.element_order(a) == 2)
    yield "cayley-s3", cayley_multigraph(s3, transpositions), left_regular_group(
        s3, transpositions
    )
    q8 = quaternion_group()
    conn = tuple(q8.labels.index(s) for s in ("i", "-i", "j", "-j"))
    yield "cayley-q8", cayley_multigraph(q8, conn), left_regular_group(q8, conn)
    cube = cube_graph()
    yield "cube-z2", cube, PermGroup.generate(
        [dart_permutation_from_vertex_map(cube, [v ^ 7 for v in range(8)])]
    )


def suite_main(seed: int = 1, count: int = 0) -> list[VerificationCase]:
    """Faithfulness on semiregular 3-edge-connected instances, with controls.

    The cycle controls are semiregular but only 2-edge-connected; there
    the whole rotation group must act trivially on the Jacobian.
    """
    cases = []
    for name, g, group in _main_theorem_instances(seed):
        report = verify_faithful(g, group)
        if not (report.simple and report.three_edge_connected and report.semiregular):
            cases.append(
                VerificationCase(
                    f"main/{name}",
                    "hypotheses (simple, 3-edge-connected, semiregular)",
                    "hypothesis-unmet",
                    {"simple": report.simple,
                     "three_edge_connected": report.three_edge_connected,
                     "semiregular": report.semiregular},
                )
            )
            continue
        ok = (
            report.kernel_size == 1
            and report.injective
            and report.image_order == group.order
            and not report.theorem_violation
        )
        cases.append(
            _case(
                f"main/{name}",
                "kernel is trivial and the image has full order",
                ok,
                {"kernel_size": report.kernel_size,
                 "group_order": group.order,
                 "image_order": report.image_order},
            )
        )
    for n in range(3, 9):
        g = cycle_graph(n)
        rot = dart_permutation_from_vertex_map(g, [(v + 1) % n for v in range(n)])
        group = PermGroup.generate([rot])
        report = verify_faithful(g, group)
        ok = (
            report.semiregular
            and not report.three_edge_connected
            and report.kernel_size == n
            and report.image_order == 1
        )
        cases.append(
            _case(
                f"main/cn-control-{n}",
                "rotations of a cycle all act trivially on the Jacobian",
                ok,
                {"kernel_size": report.kernel_size, "group_order": n},
            )
        )
    return cases


def _cayley_rank_instances():
    s3 = symmetric_group(3)
    transpositions = tuple(a for a in range(6) if s3.element_order(a) == 2)
    yield "s3-transpositions", s3, transpositions
    three_cycles = tuple(a for a in range(6) if s3.element_order(a) == 3)
    yield "s3-mixed", s3, (transpositions[0],) + three_cycles

    d4 = dihedral_group(4)
    rot4 = next(a for a in range(8) if d4.element_order(a) == 4)
    involutions = [a for a in range(1, 8) if d4.element_order(a) == 2]
    refl = next(
        a for a in involutions if len(d4.generated_subgroup([rot4, a])) == 8
    )
    yield "d4-rotation-reflection", d4, (rot4, d4.inv(rot4), refl)
    for triple in itertools.combinations(involutions, 3):
        if len(d4.generated_subgroup(triple)) == 8:
            yield "d4-involutions", d4, triple
            break

    q8 = quaternion_group()
    ij = tuple(q8.labels.index(s) for s in ("i", "-i", "j", "-j"))
    yield "q8-ij", q8, ij
    ijk = tuple(q8.labels.index(s) for s in ("i", "-i", "j", "-j", "k", "-k"))
    yield "q8-ijk", q8, ijk


def suite_cayley_rank(seed: int = 1, count: int = 0) -> list[VerificationCase]:
    """Cayley graphs of nonabelian groups: connectivity and Jacobian rank."""
    cases = []
    for name, group, connection in _cayley_rank_instances():
        g = cayley_multigraph(group, connection)
        connectivity = edge_connectivity(g)
        valency = g.valency(0)
        rank = jac_rank_check(g)
        ok = (
            connectivity == valency
            and valency == len(connection)
            and valency >= 3
            and rank.rank >= 2
            and not rank.cyclic
        )
        cases.append(
            _case(
                f"cayley-rank/{name}",
                "edge connectivity equals valency and the Jacobian is not cyclic",
                ok,
                {"edge_connectivity": connectivity,
                 "valency": valency,
                 "rank": rank.rank,
                 "factors": list(rank.factors)},
            )
        )
    return cases


def suite_semiedge_null(seed: int = 1, count: int = 25) -> list[VerificationCase]:
    """Loops and semiedges never change the invariant factors."""
    cases = []
    for i in range(count):
        rng = substream(seed, 4 * 10**6 + i)
        g = random_multigraph(seed, 2 + (i % 4), 2 + (i % 3), stream=5 * 10**6 + i)
        before = jacobian(g)[0].factors
        decorated = add_decorations(
            g,
            loops=[rng.randrange(g.vertex_count) for _ in range(rng.randint(1, 3))],
            semiedges=[rng.randrange(g.vertex_count) for _ in range(rng.randint(1, 3))],
        )
        after = jacobian(decorated)[0].factors
        cases.append(
            _case(
                f"semiedge-null/random-{i:03d}",
                "decorating with loops and semiedges preserves the factors",
                before == after,
                {"before": list(before), "after": list(after)},
            )
        )
    k4 = complete_graph(4)
    group = PermGroup.generate([dart_permutation_from_vertex_map(k4, [1, 0, 3, 2])])
    quotient, _ = quotient_graph(k4, group)
    jac_order = jacobian(quotient)[0].order
    reduced_tau = spanning_tree_count(ordinary_reduction(quotient))
    cases.append(
        _case(
            "semiedge-null/k4-quotient",
            "the quotient with semiedges has Jacobian order tau of its reduction",
            jac_order == reduced_tau,
            {"jac_order": jac_order, "reduced_tau": reduced_tau},
        )
    )
    return cases


SUITES = {
    "p1": suite_p1,
    "pfold": suite_pfold,
    "main": suite_main,
    "cayley-rank": suite_cayley_rank,
    "example72": suite_example72,
    "semiedge-null": suite_semiedge_null,
}

DEFAULT_COUNTS = {
    "p1": 100,
    "pfold": 100,
    "main": 0,
    "cayley-rank": 0,
    "example72": 0,
    "semiedge-null": 25,
}


def run_suite(name: str, seed: int = 1, count: int | None = None) -> list[VerificationCase]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    if count is None:
        count = DEFAULT_COUNTS[name]
    return SUITES[name](seed=seed, count=count)


def summarize(cases: list[VerificationCase]) -> tuple[int, int]:
    return sum(1 for c in cases if c.passed), len(cases)
