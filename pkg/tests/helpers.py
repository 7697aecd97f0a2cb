from fractions import Fraction

from hypothesis import strategies as st

from graphinverse import WeightedGraph

nonzero_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=5).filter(lambda x: x != 0)


@st.composite
def weighted_graphs(draw, max_n=6, loops=True, weights=nonzero_rationals):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u if loops else u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return WeightedGraph(n, {e: draw(weights) for e in chosen})


def signed_graphs(max_n=6):
    return weighted_graphs(max_n=max_n, loops=False, weights=st.sampled_from([Fraction(1), Fraction(-1)]))


def simple_graphs(max_n=7):
    return weighted_graphs(max_n=max_n, loops=False, weights=st.just(Fraction(1)))


def path(n):
    return WeightedGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return WeightedGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(k):
    return WeightedGraph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)])


def complete(n):
    return WeightedGraph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


K2 = path(2)
P4 = path(4)
C3 = cycle(3)
C4 = cycle(4)
PAW = WeightedGraph.from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)])


@st.composite
def bipartite_graphs(draw, max_n=8, matched=False):
    """Random bipartite graphs; ``matched`` forces a perfect matching across
    the sides so that most draws are invertible."""
    if matched:
        k = draw(st.integers(1, max_n // 2))
        n, side = 2 * k, [v < k for v in range(2 * k)]
    else:
        n = draw(st.integers(1, max_n))
        side = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if side[u] != side[v]]
    chosen = set(draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else [])
    if matched:
        chosen |= {(v, v + n // 2) for v in range(n // 2)}
    return WeightedGraph(n, {e: draw(nonzero_rationals) for e in sorted(chosen)})


@st.composite
def unique_sachs_graphs(draw, max_pairs=4, signed=True):
    """Disjoint odd cycles, then pendant pairs (leaf, stem) glued on one at a
    time with the stem joined to anything already present.  Stripping the
    pairs in reverse leaves the cycles, so the Sachs subgraph is unique."""
    edges = []
    n = 0
    for length in draw(st.lists(st.sampled_from([3, 5]), max_size=2)):
        edges += [(n + i, n + (i + 1) % length) for i in range(length)]
        n += length
    for _ in range(draw(st.integers(0 if n else 1, max_pairs))):
        stem, leaf = n, n + 1
        edges.append((stem, leaf))
        if n:
            edges += [(stem, x) for x in draw(st.sets(st.integers(0, n - 1)))]
        n += 2
    sign = st.sampled_from([1, -1]) if signed else st.just(1)
    return WeightedGraph.from_edges(n, [(u, v, draw(sign)) for u, v in edges])
