"""Stellated and corona graphs and their closed-form signed inverses."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .errors import HasLoops, NotCorona, NotPerfectMatching, NotSigned, NotStellatedTree, TooLarge
from .graph import ISOMORPHISM_CAP, Edge, WeightedGraph, edge_key, is_isomorphic
from .inverse import oracle_inverse
from .sachs import is_perfect_matching, perfect_matchings


@dataclass(frozen=True)
class StellationMap:
    """How st(G) was built from G.

    ``pairs[k]`` is the (vertex, incident edge) pair behind st-vertex ``k``;
    ``clique_of[v]`` lists the st-vertices replacing ``v``;
    ``matching_edge[e]`` is the st-edge standing in for edge ``e`` of G.
    """

    pairs: tuple[tuple[int, Edge], ...]
    clique_of: Mapping[int, tuple[int, ...]]
    matching_edge: Mapping[Edge, Edge]
    isolated: tuple[int, ...]


def stellate(g: WeightedGraph) -> tuple[WeightedGraph, StellationMap]:
    """Line graph of the once-subdivided ``g``; every edge gets weight +1."""
    if g.loops:
        raise HasLoops("stellation needs a simple graph")
    pairs = sorted((v, e) for e in g.edges for v in e)
    index = {p: k for k, p in enumerate(pairs)}
    clique_of = {v: tuple(index[(v, e)] for e in sorted(g.edges) if v in e) for v in range(g.n)}
    edges = []
    for members in clique_of.values():
        edges += [(a, b) for k, a in enumerate(members) for b in members[k + 1:]]
    matching_edge = {}
    for e in g.edges:
        m = edge_key(index[(e[0], e)], index[(e[1], e)])
        matching_edge[e] = m
        edges.append(m)
    st = WeightedGraph.from_edges(len(pairs), edges)
    smap = StellationMap(
        pairs=tuple(pairs),
        clique_of=clique_of,
        matching_edge=matching_edge,
        isolated=tuple(v for v in range(g.n) if not clique_of[v]),
    )
    return st, smap


def corona(h: WeightedGraph) -> WeightedGraph:
    """``h`` with a pendant vertex ``n + i`` hung on every vertex ``i``."""
    if h.loops:
        raise HasLoops("corona needs a simple graph")
    n = h.n
    edges = [(u, v) for u, v in h.edges] + [(i, n + i) for i in range(n)]
    return WeightedGraph.from_edges(2 * n, edges)


def alkane_tree(skeleton: WeightedGraph) -> WeightedGraph:
    """Hang hydrogens on a carbon skeleton until every carbon has degree 4."""
    edges = list(skeleton.edges)
    nxt = skeleton.n
    for v in range(skeleton.n):
        free = 4 - skeleton.degree(v)
        if free < 0:
            raise ValueError(f"carbon {v} already has degree {skeleton.degree(v)}")
        for _ in range(free):
            edges.append((v, nxt))
            nxt += 1
    return WeightedGraph.from_edges(nxt, edges)


# -- alternating paths -----------------------------------------------------


@dataclass(frozen=True)
class AlternatingPath:
    vertices: tuple[int, ...]
    tau: int  # edges of the path outside the matching

    def edges(self) -> list[Edge]:
        return [edge_key(a, b) for a, b in zip(self.vertices, self.vertices[1:])]


def _partner_map(g: WeightedGraph, matching: Sequence[Edge]) -> dict[int, int]:
    if not is_perfect_matching(g, matching):
        raise NotPerfectMatching("expected a perfect matching of the graph")
    partner = {}
    for u, v in matching:
        partner[u] = v
        partner[v] = u
    return partner


def alternating_path_between(
    g: WeightedGraph, matching: Sequence[Edge], i: int, j: int
) -> Optional[AlternatingPath]:
    """An M-alternating i-j path that starts and ends with matching edges.

    Such a path is unique when M is the only perfect matching of a
    stellated tree or a corona graph; elsewhere the first one found in
    ascending-neighbour order is returned.
    """
    partner = _partner_map(g, matching)
    if i == j:
        return None
    path = [i]
    on_path = {i}

    def walk(v: int) -> Optional[list[int]]:
        # enter along the matching edge at v
        m = partner[v]
        if m in on_path:
            return None
        path.append(m)
        on_path.add(m)
        if m == j:
            return list(path)
        for x in g.neighbors(m):
            if x in on_path or x == partner[m]:
                continue
            path.append(x)
            on_path.add(x)
            found = walk(x)
            if found:
                return found
            path.pop()
            on_path.discard(x)
        path.pop()
        on_path.discard(m)
        return None

    verts = walk(i)
    if verts is None:
        return None
    return AlternatingPath(tuple(verts), (len(verts) - 2) // 2)


# -- stellated trees -------------------------------------------------------


def stellated_tree_matching(g: WeightedGraph) -> tuple[Edge, ...]:
    """Recognise st(T) for a tree T with at least two vertices.

    Checks a unique perfect matching M, that G - M is a disjoint union of
    cliques, and that contracting those cliques along M leaves a tree.
    Returns M.
    """
    if g.loops:
        raise NotStellatedTree("stellated graphs are simple")
    if g.n < 2:
        raise NotStellatedTree("too few vertices")
    pms = perfect_matchings(g, limit=2)
    if len(pms) != 1:
        raise NotStellatedTree(f"expected a unique perfect matching, found {len(pms)}")
    (m,) = pms
    mset = set(m)
    rest = WeightedGraph(g.n, {e: w for e, w in g.edges.items() if e not in mset})
    comps = rest.components()
    clique = {}
    for k, comp in enumerate(comps):
        size = len(comp)
        if any(len(rest.neighbors(v)) != size - 1 for v in comp):
            raise NotStellatedTree("matching-free part is not a union of cliques")
        for v in comp:
            clique[v] = k
    contracted = WeightedGraph.from_edges(
        len(comps), {edge_key(clique[u], clique[v]) for u, v in m if clique[u] != clique[v]}
    )
    if contracted.edge_count != len(m) or contracted.edge_count != len(comps) - 1 or not contracted.is_connected():
        raise NotStellatedTree("cliques joined by the matching do not form a tree")
    return m


def _require_signed(g: WeightedGraph) -> None:
    if not g.is_signed:
        raise NotSigned("expected every weight in {-1, +1}")


def stellated_tree_inverse(g: WeightedGraph) -> WeightedGraph:
    """Signed inverse of st(T): ij is an edge iff an M-alternating i-j path
    exists, with sign (-1)^tau times the sign product along the path."""
    _require_signed(g)
    m = stellated_tree_matching(g)
    edges = {}
    for i in range(g.n):
        for j in range(i + 1, g.n):
            p = alternating_path_between(g, m, i, j)
            if p is None:
                continue
            sign = -1 if p.tau % 2 else 1
            for e in p.edges():
                sign *= int(g.edges[e])
            edges[(i, j)] = sign
    return WeightedGraph(g.n, edges)


# -- corona graphs ---------------------------------------------------------


def corona_pendants(g: WeightedGraph) -> dict[int, int]:
    """Recognise a corona graph; returns ``{base vertex: its pendant}``.

    A K2 component is read as base = smaller index.
    """
    if g.loops:
        raise NotCorona("corona graphs are simple")
    if g.n == 0 or g.n % 2:
        raise NotCorona("corona graphs have a positive even order")
    pend: dict[int, int] = {}
    for u in range(g.n):
        if g.degree(u) != 1:
            continue
        (v,) = g.neighbors(u)
        if g.degree(v) == 1 and v > u:
            continue  # K2 component; handled from the larger end
        if v in pend:
            raise NotCorona(f"vertex {v} carries two pendant vertices")
        pend[v] = u
    bases, pendants = set(pend), set(pend.values())
    if bases & pendants or len(bases) + len(pendants) != g.n:
        raise NotCorona("pendant vertices do not pair off every vertex")
    return dict(sorted(pend.items()))


def corona_inverse(g: WeightedGraph) -> WeightedGraph:
    """Signed inverse of a signed corona graph.

    Pendant edges keep their sign; pendants u_i, u_j become adjacent exactly
    when their bases are, with sign -s(u_i v_i) s(v_i v_j) s(v_j u_j).
    """
    _require_signed(g)
    pend = corona_pendants(g)
    edges = {}
    for v, u in pend.items():
        edges[edge_key(v, u)] = g.weight(v, u)
    for vi, vj in g.edges:
        if vi in pend and vj in pend:
            ui, uj = pend[vi], pend[vj]
            edges[edge_key(ui, uj)] = -g.weight(ui, vi) * g.weight(vi, vj) * g.weight(vj, uj)
    return WeightedGraph(g.n, edges)


def corona_swap(g: WeightedGraph) -> dict[int, int]:
    """The base <-> pendant exchange on a corona graph's vertex set."""
    phi = {}
    for v, u in corona_pendants(g).items():
        phi[v], phi[u] = u, v
    return dict(sorted(phi.items()))


# -- self-invertibility ----------------------------------------------------


def self_inverse_witness(g: WeightedGraph) -> Optional[dict[int, int]]:
    """An isomorphism from G onto the underlying graph of its inverse, or None.

    The inverse must itself be a signed graph.
    """
    if g.n > ISOMORPHISM_CAP:
        raise TooLarge(f"isomorphism is capped at {ISOMORPHISM_CAP} vertices")
    inv = oracle_inverse(g)
    if not inv.is_signed:
        raise NotSigned("inverse has entries outside {-1, 0, +1}")
    return is_isomorphic(g, inv)


def is_self_invertible(g: WeightedGraph) -> bool:
    return self_inverse_witness(g) is not None
