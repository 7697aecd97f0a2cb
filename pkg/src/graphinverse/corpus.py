"""Graph collections used by the verification suites and the tests.

Exhaustive small-graph lists come from networkx's graph atlas (all graphs
on up to 7 vertices, one per isomorphism class) and its non-isomorphic tree
generator; random graphs use a caller-supplied :class:`random.Random`.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterator

import networkx as nx

from .families import alkane_tree
from .graph import WeightedGraph

ATLAS_MAX_N = 7


def from_networkx(g: nx.Graph) -> WeightedGraph:
    nodes = sorted(g.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    return WeightedGraph.from_edges(len(nodes), [(index[u], index[v]) for u, v in g.edges()])


def connected_graphs(max_n: int, min_n: int = 1) -> Iterator[WeightedGraph]:
    """Every connected simple graph with ``min_n <= n <= max_n`` up to isomorphism."""
    if max_n > ATLAS_MAX_N:
        raise ValueError(f"exhaustive lists stop at {ATLAS_MAX_N} vertices")
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if min_n <= n <= max_n and nx.is_connected(g):
            yield from_networkx(g)


def trees(n: int) -> Iterator[WeightedGraph]:
    """Every tree on ``n`` vertices up to isomorphism."""
    if n == 1:
        yield WeightedGraph(1)
        return
    for t in nx.nonisomorphic_trees(n):
        yield from_networkx(t)


def alkanes(max_carbons: int) -> Iterator[WeightedGraph]:
    """Hydrogen-saturated carbon trees (every degree 1 or 4), 1..max_carbons carbons."""
    for k in range(1, max_carbons + 1):
        for skel in trees(k):
            if all(skel.degree(v) <= 4 for v in range(k)):
                yield alkane_tree(skel)


def random_rational(rng: random.Random, bound: int = 2, max_den: int = 4) -> Fraction:
    """Nonzero rational in [-bound, bound] with denominator at most ``max_den``."""
    den = rng.randint(1, max_den)
    num = 0
    while num == 0:
        num = rng.randint(-bound * den, bound * den)
    return Fraction(num, den)


def random_weighted_graph(
    rng: random.Random, n: int, loops: bool = True, density: float | None = None
) -> WeightedGraph:
    p = rng.uniform(0.2, 0.7) if density is None else density
    q = rng.uniform(0.0, 0.5) if loops else 0.0
    edges = {}
    for u in range(n):
        if rng.random() < q:
            edges[(u, u)] = random_rational(rng)
        for v in range(u + 1, n):
            if rng.random() < p:
                edges[(u, v)] = random_rational(rng)
    return WeightedGraph(n, edges)


def random_signature(rng: random.Random, g: WeightedGraph) -> WeightedGraph:
    return WeightedGraph(g.n, {e: rng.choice((-1, 1)) for e in g.edges})


def random_connected_graph(rng: random.Random, n: int, density: float = 0.4) -> WeightedGraph:
    """Unweighted connected simple graph: a random spanning tree plus extra edges."""
    edges = set()
    for v in range(1, n):
        edges.add((rng.randrange(v), v))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density:
                edges.add((u, v))
    return WeightedGraph.from_edges(n, sorted(edges))


def random_bipartite_graph(rng: random.Random, n: int) -> WeightedGraph:
    """Simple bipartite graph with random rational weights on a random 2-colouring."""
    side = [rng.random() < 0.5 for _ in range(n)]
    p = rng.uniform(0.3, 0.8)
    edges = {}
    for u in range(n):
        for v in range(u + 1, n):
            if side[u] != side[v] and rng.random() < p:
                edges[(u, v)] = random_rational(rng)
    return WeightedGraph(n, edges)


def two_triangles() -> WeightedGraph:
    """Two triangles sharing vertex 2; the first triangle positive, the rest negative.

    Not bipartite, yet its spectrum is symmetric about zero: reversing the
    vertex order maps A to -A.
    """
    return WeightedGraph.from_edges(
        5, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (2, 3, -1), (3, 4, -1), (2, 4, -1)]
    )
