"""Seeded, reproducible random instances.

Substream derivation: a generator for (seed, stream) is a Mersenne
Twister (Python's `random.Random`) seeded with the top eight bytes,
big-endian, of SHA-256 of the ASCII string "<seed>:<stream>". Identical
(seed, stream) pairs reproduce identical instances on any platform; an
alternate implementation only needs those two conventions.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field

from .covers import VoltageAssignment
from .dartgraph import DartGraph, bfs_spanning_tree, is_connected
from .errors import ScaleExceeded
from .families import from_edges
from .symmetry import FiniteGroup, cyclic_group, dihedral_group, quaternion_group, symmetric_group

__all__ = [
    "RandomSpec",
    "substream",
    "gnp_simple",
    "random_multigraph",
    "random_voltage",
    "random_cayley",
    "generate",
]

FAMILIES = ("gnp-simple", "random-multigraph", "random-voltage", "random-cayley")


def substream(seed: int, stream: int) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{stream}".encode("ascii")).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


@dataclass(frozen=True)
class RandomSpec:
    """Instance description; equal specs produce equal instances."""

    seed: int
    family: str
    params: tuple[tuple[str, int | float], ...] = field(default=())

    def param(self, name, default=None):
        for key, value in self.params:
            if key == name:
                return value
        return default


def gnp_simple(seed: int, n: int, p: float, stream: int = 0, max_tries: int = 1000) -> DartGraph:
    """Connected G(n, p); disconnected draws resample the next substream."""
    if n < 2:
        raise ValueError("need at least two vertices")
    for attempt in range(max_tries):
        rng = substream(seed, stream + attempt)
        edges = [
            (u, w) for u in range(n) for w in range(u + 1, n) if rng.random() < p
        ]
        if not edges or {v for e in edges for v in e} != set(range(n)):
            continue
        g = from_edges(n, edges)
        if is_connected(g):
            return g
    raise ValueError(f"no connected draw in {max_tries} attempts (p too small?)")


def random_multigraph(
    seed: int,
    n: int,
    extra: int,
    stream: int = 0,
    allow_loops: bool = True,
    allow_semiedges: bool = True,
) -> DartGraph:
    """Random connected multigraph: a random tree plus `extra` features."""
    if n < 1:
        raise ValueError("need at least one vertex")
    rng = substream(seed, stream)
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    loops: list[int] = []
    semiedges: list[int] = []
    for _ in range(extra):
        kinds = ["edge", "edge"]
        if allow_loops:
            kinds.append("loop")
        if allow_semiedges:
            kinds.append("semiedge")
        kind = rng.choice(kinds)
        if kind == "edge" and n >= 2:
            u = rng.randrange(n)
            w = rng.randrange(n - 1)
            if w >= u:
                w += 1
            edges.append((min(u, w), max(u, w)))
        elif kind == "loop":
            loops.append(rng.randrange(n))
        elif kind == "semiedge":
            semiedges.append(rng.randrange(n))
    if n == 1 and not loops and not semiedges:
        semiedges.append(0)
    return from_edges(n, edges, loops=loops, semiedges=semiedges)


def random_voltage(
    seed: int, base: DartGraph, order: int, stream: int = 0
) -> VoltageAssignment:
    """T-reduced cyclic voltage assignment on a connected base.

    Tree darts carry 0; co-tree transversal darts draw uniformly, with
    semiedges restricted to self-inverse elements. If every draw is
    trivial, the first co-tree dart that can carry a generator is set to
    1 so the voltages always generate the cyclic group.
    """
    group = cyclic_group(order)
    rng = substream(seed, stream)
    tree = bfs_spanning_tree(base)
    tree_darts = tree.dart_set(base)
    xi = [0] * base.dart_count
    cotree_plus = [x for x in base.dart_plus() if x not in tree_darts]
    for x in cotree_plus:
        if base.is_semiedge_dart(x):
            xi[x] = rng.randrange(2) if order == 2 else 0
        else:
            value = rng.randrange(order)
            xi[x] = value
            xi[base.lam[x]] = (-value) % order
    if order > 1 and not any(xi):
        candidates = [x for x in cotree_plus if not base.is_semiedge_dart(x)]
        if order == 2:
            candidates = cotree_plus
        if not candidates:
            raise ValueError("base has no co-tree dart able to carry a generator")
        x = candidates[0]
        xi[x] = 1
        xi[base.lam[x]] = (-1) % order
    return VoltageAssignment(
        base=base, group=group, xi=tuple(xi), tree_darts=frozenset(tree_darts)
    )


_CAYLEY_CATALOG = (
    lambda: symmetric_group(3),
    lambda: dihedral_group(4),
    quaternion_group,
    lambda: cyclic_group(6),
    lambda: cyclic_group(7),
    lambda: dihedral_group(5),
)


def random_cayley(
    seed: int, stream: int = 0, max_tries: int = 200
) -> tuple[FiniteGroup, tuple[int, ...]]:
    """A catalog group with a random generating inverse-closed connection set."""
    rng = substream(seed, stream)
    group = _CAYLEY_CATALOG[rng.randrange(len(_CAYLEY_CATALOG))]()
    non_identity = list(range(1, group.order))
    for _ in range(max_tries):
        chosen: set[int] = set()
        target = rng.randint(3, min(6, group.order - 1))
        while len(chosen) < target:
            a = non_identity[rng.randrange(len(non_identity))]
            chosen.add(a)
            chosen.add(group.inv(a))
        if len(group.generated_subgroup(chosen)) == group.order:
            return group, tuple(sorted(chosen))
    raise ScaleExceeded("failed to draw a generating connection set")


def generate(spec: RandomSpec):
    """Dispatch a RandomSpec to its family generator."""
    if spec.family == "gnp-simple":
        return gnp_simple(
            spec.seed, int(spec.param("n", 6)), float(spec.param("p", 0.5))
        )
    if spec.family == "random-multigraph":
        return random_multigraph(
            spec.seed, int(spec.param("n", 5)), int(spec.param("extra", 3))
        )
    if spec.family == "random-voltage":
        base = random_multigraph(
            spec.seed, int(spec.param("n", 4)), int(spec.param("extra", 3)), stream=1
        )
        return random_voltage(spec.seed, base, int(spec.param("order", 3)))
    if spec.family == "random-cayley":
        return random_cayley(spec.seed)
    raise ValueError(f"unknown family {spec.family!r}; choose from {FAMILIES}")
