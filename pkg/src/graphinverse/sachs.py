"""Sachs subgraphs: enumeration, determinant expansion, uniqueness.

A Sachs subgraph is a spanning subgraph whose components are single edges,
cycles of length at least three, or loops.  The determinant of a weighted
adjacency matrix is a signed sum over them::

    det A = sum_S 2^|C| * w(C u L) * w(M)^2 * (-1)^(|C| + |L| + |E(S)|)

Vertex subsets are handled as integer bitmasks internally.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .errors import HasLoops, NotUnweightedSimple, TooLarge
from .graph import Edge, WeightedGraph, edge_key

ENUMERATION_CAP = 24


def check_size(g: WeightedGraph) -> None:
    if g.n > ENUMERATION_CAP:
        raise TooLarge(f"Sachs enumeration is capped at {ENUMERATION_CAP} vertices")


def canonical_cycle(cycle: tuple[int, ...]) -> tuple[int, ...]:
    """Rotate so the smallest vertex is first and its smaller neighbour second."""
    k = cycle.index(min(cycle))
    c = cycle[k:] + cycle[:k]
    if c[1] > c[-1]:
        c = (c[0],) + tuple(reversed(c[1:]))
    return c


def _members(mask: int) -> Iterator[int]:
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


@dataclass(frozen=True, order=True)
class SachsSubgraph:
    cycles: tuple[tuple[int, ...], ...] = ()
    matching: tuple[Edge, ...] = ()
    loops: tuple[int, ...] = ()

    @property
    def edge_count(self) -> int:
        """|E(S)|; a loop counts as one edge."""
        return sum(len(c) for c in self.cycles) + len(self.matching) + len(self.loops)

    @property
    def is_perfect_matching(self) -> bool:
        return not self.cycles and not self.loops

    def vertices(self) -> list[int]:
        out = [v for c in self.cycles for v in c]
        out += [v for e in self.matching for v in e]
        out += list(self.loops)
        return out

    def cycle_edges(self) -> list[Edge]:
        return [edge_key(c[i], c[(i + 1) % len(c)]) for c in self.cycles for i in range(len(c))]

    def validate(self, g: WeightedGraph) -> None:
        """Raise AssertionError unless this is a Sachs subgraph of ``g``."""
        verts = self.vertices()
        assert len(verts) == len(set(verts)), "components overlap"
        assert sorted(verts) == list(range(g.n)), "not spanning"
        assert all(len(c) >= 3 for c in self.cycles), "cycle shorter than 3"
        for e in self.cycle_edges() + list(self.matching):
            assert g.has_edge(*e), f"{e} is not an edge"
        for v in self.loops:
            assert g.has_loop(v), f"no loop at {v}"

    def term(self, g: WeightedGraph) -> Fraction:
        """This subgraph's contribution to det A."""
        t = Fraction(2 ** len(self.cycles))
        for e in self.cycle_edges():
            t *= g.weight(*e)
        for v in self.loops:
            t *= g.weight(v, v)
        for e in self.matching:
            t *= g.weight(*e) ** 2
        sign = len(self.cycles) + len(self.loops) + self.edge_count
        return -t if sign % 2 else t


class _Bits:
    """Bitmask view of a graph shared by the enumerator and the summer."""

    def __init__(self, g: WeightedGraph):
        self.g = g
        self.n = g.n
        self.adj = [0] * g.n
        for u, v in g.edges:
            if u != v:
                self.adj[u] |= 1 << v
                self.adj[v] |= 1 << u
        self.loop = [g.weight(v, v) for v in range(g.n)]

    def dead(self, mask: int) -> bool:
        """Some vertex in ``mask`` can be covered by nothing inside ``mask``."""
        for v in _members(mask):
            if not self.loop[v] and not (self.adj[v] & mask):
                return True
        return False

    def cycles_through(self, v: int, mask: int) -> Iterator[tuple[tuple[int, ...], int, Fraction]]:
        """Cycles inside ``mask`` through ``v``, each yielded once.

        ``v`` must be the smallest vertex of ``mask``; yields
        ``(vertices, vertex mask, weight product)`` in canonical rotation.
        """
        g = self.g
        start_adj = self.adj[v]
        path = [v]

        def walk(last: int, used: int, w: Fraction) -> Iterator[tuple[tuple[int, ...], int, Fraction]]:
            for x in _members(self.adj[last] & mask & ~used):
                b = 1 << x
                wx = w * g.weight(last, x)
                path.append(x)
                if len(path) >= 3 and (start_adj >> x) & 1 and path[1] < x:
                    yield tuple(path), used | b, wx * g.weight(x, v)
                yield from walk(x, used | b, wx)
                path.pop()

        yield from walk(v, 1 << v, Fraction(1))

    def enumerate(self, mask: int) -> Iterator[tuple[list, list, list]]:
        if mask == 0:
            yield [], [], []
            return
        if self.dead(mask):
            return
        b = mask & -mask
        v = b.bit_length() - 1
        rest = mask ^ b
        if self.loop[v]:
            for c, m, l in self.enumerate(rest):
                yield c, m, l + [v]
        for u in _members(self.adj[v] & rest):
            for c, m, l in self.enumerate(rest ^ (1 << u)):
                yield c, m + [(v, u)], l
        for cyc, cmask, _ in self.cycles_through(v, mask):
            for c, m, l in self.enumerate(mask & ~cmask):
                yield c + [cyc], m, l


class SachsSum:
    """Memoised Sachs determinant of induced subgraphs ``G[mask]``.

    Expands along the lowest vertex of the mask: it is covered by its loop,
    by a matching edge, or by a cycle through it, and the remaining vertices
    contribute the Sachs sum of what is left.  This is the same sum over
    Sachs subgraphs as the explicit enumeration, grouped by shared suffix.
    """

    def __init__(self, g: WeightedGraph):
        check_size(g)
        self._bits = _Bits(g)
        self._memo: dict[int, Fraction] = {0: Fraction(1)}
        self.full = (1 << g.n) - 1

    def __call__(self, mask: int) -> Fraction:
        hit = self._memo.get(mask)
        if hit is not None:
            return hit
        bits = self._bits
        if bits.dead(mask):
            self._memo[mask] = Fraction(0)
            return Fraction(0)
        b = mask & -mask
        v = b.bit_length() - 1
        rest = mask ^ b
        total = Fraction(0)
        if bits.loop[v]:
            # loop: (-1)^(1 + 1) = +1
            total += bits.loop[v] * self(rest)
        for u in _members(bits.adj[v] & rest):
            sub = self(rest ^ (1 << u))
            if sub:
                # matching edge: (-1)^1, squared weight
                total -= bits.g.weight(v, u) ** 2 * sub
        for cyc, cmask, w in bits.cycles_through(v, mask):
            sub = self(mask & ~cmask)
            if sub:
                # cycle of length k: factor 2, sign (-1)^(1 + k)
                term = 2 * w * sub
                total += term if len(cyc) % 2 else -term
        self._memo[mask] = total
        return total

    def without(self, vertices) -> Fraction:
        """Sachs determinant of G minus the given vertices."""
        mask = self.full
        for v in vertices:
            mask &= ~(1 << v)
        return self(mask)


def enumerate_sachs(g: WeightedGraph) -> list[SachsSubgraph]:
    """All Sachs subgraphs of ``g`` in a deterministic order."""
    check_size(g)
    bits = _Bits(g)
    out = [
        SachsSubgraph(
            cycles=tuple(sorted(c)),
            matching=tuple(sorted(edge_key(*e) for e in m)),
            loops=tuple(sorted(l)),
        )
        for c, m, l in bits.enumerate((1 << g.n) - 1)
    ]
    out.sort()
    return out


def det_via_sachs(g: WeightedGraph) -> Fraction:
    """det of the adjacency matrix from the Sachs expansion (0 if no Sachs subgraph)."""
    s = SachsSum(g)
    return s(s.full)


def det_unweighted_check(g: WeightedGraph) -> int:
    """Unweighted form: sum over S of 2^|C| (-1)^(|C| + |E(S)|)."""
    if not g.is_simple or not g.is_unweighted:
        raise NotUnweightedSimple("needs a loop-free graph with all weights 1")
    total = 0
    for s in enumerate_sachs(g):
        term = 2 ** len(s.cycles)
        total += -term if (len(s.cycles) + s.edge_count) % 2 else term
    return total


def perfect_matchings(g: WeightedGraph, limit: Optional[int] = None) -> list[tuple[Edge, ...]]:
    """Perfect matchings, each a sorted tuple of edges, in sorted order.

    With ``limit`` the search stops once that many are found, which is
    enough to decide existence or uniqueness; the size cap only applies to
    full enumeration.
    """
    if limit is None:
        check_size(g)
    bits = _Bits(g)
    out: list[tuple[Edge, ...]] = []

    def rec(mask: int, acc: list[Edge]) -> bool:
        if mask == 0:
            out.append(tuple(sorted(acc)))
            return limit is not None and len(out) >= limit
        b = mask & -mask
        v = b.bit_length() - 1
        rest = mask ^ b
        for u in _members(bits.adj[v] & rest):
            left = rest ^ (1 << u)
            # skip if a neighbour of u would be left with nothing to match
            if any(not (bits.adj[x] & left) for x in _members(bits.adj[u] & left)):
                continue
            acc.append((v, u))
            stop = rec(left, acc)
            acc.pop()
            if stop:
                return True
        return False

    if g.n % 2 == 0:
        rec((1 << g.n) - 1, [])
    out.sort()
    return out


def is_perfect_matching(g: WeightedGraph, matching) -> bool:
    covered = [v for e in matching for v in e]
    return (
        sorted(covered) == list(range(g.n))
        and all(u != v and g.has_edge(u, v) for u, v in matching)
    )


# -- pendant reduction ---------------------------------------------------


@dataclass(frozen=True)
class ReductionTrace:
    """Pendant edges removed in order, plus what was left.

    ``removed`` holds ``(leaf, partner)`` pairs in original labels; the
    residual graph is induced on ``kept`` and relabelled ``0..len(kept)-1``.
    """

    removed: tuple[tuple[int, int], ...]
    kept: tuple[int, ...]
    residual: WeightedGraph


def pendant_reduce(g: WeightedGraph, rng: Optional[random.Random] = None) -> ReductionTrace:
    """Strip pendant edges together with both end-vertices until none remain.

    By default the pendant edge whose degree-1 end has the smallest index
    goes first.  Passing ``rng`` picks uniformly among current pendant edges
    instead; the outcome class does not depend on the order.
    """
    if g.loops:
        raise HasLoops("pendant reduction is defined for simple graphs")
    alive = set(range(g.n))
    deg = {v: len(g.neighbors(v)) for v in alive}
    removed = []
    while True:
        leaves = sorted(v for v in alive if deg[v] == 1)
        if not leaves:
            break
        leaf = rng.choice(leaves) if rng is not None else leaves[0]
        (partner,) = [x for x in g.neighbors(leaf) if x in alive]
        removed.append((leaf, partner))
        for v in (leaf, partner):
            alive.discard(v)
        for v in (leaf, partner):
            for x in g.neighbors(v):
                if x in alive:
                    deg[x] -= 1
    kept = tuple(sorted(alive))
    return ReductionTrace(tuple(removed), kept, g.induced(kept))


def _residual_cycles(trace: ReductionTrace) -> Optional[list[tuple[int, ...]]]:
    """Odd cycles of the residual in original labels, or None if it is not a
    family of independent odd cycles."""
    r = trace.residual
    if any(len(r.neighbors(v)) != 2 for v in range(r.n)):
        return None
    cycles = []
    for comp in r.components():
        if len(comp) % 2 == 0:
            return None
        start = min(comp)
        order = [start]
        prev, cur = None, start
        while True:
            nxt = [x for x in r.neighbors(cur) if x != prev][0]
            if nxt == start:
                break
            order.append(nxt)
            prev, cur = cur, nxt
        if len(order) != len(comp):
            return None
        cycles.append(canonical_cycle(tuple(trace.kept[v] for v in order)))
    return sorted(cycles)


def unique_sachs_witness(g: WeightedGraph) -> Optional[SachsSubgraph]:
    """The unique Sachs subgraph of a simple graph, or None if there isn't exactly one."""
    trace = pendant_reduce(g)
    cycles = _residual_cycles(trace)
    if cycles is None:
        return None
    return SachsSubgraph(
        cycles=tuple(cycles),
        matching=tuple(sorted(edge_key(*e) for e in trace.removed)),
    )


def has_unique_sachs(g: WeightedGraph) -> bool:
    return unique_sachs_witness(g) is not None
