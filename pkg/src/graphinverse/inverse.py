"""Graph inverses: exact matrix oracle and the structural path-sum formula.

For i != j the (i, j) entry of A^-1 is::

    1/det(A) * sum_P  w(P) * (-1)^|E(P)| * D(G - V(P))

over i-j paths P, where D(H) is the Sachs determinant of H (1 for the empty
graph).  The diagonal entry is D(G - i) / det(A).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Literal, Optional, Sequence

from .errors import Disagreement, HasLoops, NotSigned, NotUniqueSachs, Singular
from .graph import ExactMatrix, WeightedGraph, adjacency_matrix, graph_from_matrix
from .sachs import (
    SachsSubgraph,
    SachsSum,
    canonical_cycle,
    check_size,
    enumerate_sachs,
    unique_sachs_witness,
)

Method = Literal["structural", "oracle", "both"]


# -- exact linear algebra --------------------------------------------------


def _bareiss(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def determinant(m: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Each row is first scaled by the lcm of its denominators so the
    elimination runs on integers; every division in it is exact.
    """
    rows = []
    scale = 1
    for row in m:
        q = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        rows.append([int(Fraction(x) * q) for x in row])
        scale *= q
    return Fraction(_bareiss(rows), scale)


def invert_matrix_exact(m: Sequence[Sequence[Fraction]]) -> ExactMatrix:
    n = len(m)
    if determinant(m) == 0:
        raise Singular("matrix has zero determinant")
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> ExactMatrix:
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def identity(n: int) -> ExactMatrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


# -- structural inverse --------------------------------------------------


@dataclass(frozen=True)
class AdmissiblePath:
    """An i-j path whose complement has at least one Sachs subgraph.

    ``complement_sachs`` is given in the original vertex labels.
    """

    vertices: tuple[int, ...]
    complement_sachs: tuple[SachsSubgraph, ...]

    def edges(self) -> list[tuple[int, int]]:
        return list(zip(self.vertices, self.vertices[1:]))


def _relabel(s: SachsSubgraph, names: Sequence[int]) -> SachsSubgraph:
    return SachsSubgraph(
        cycles=tuple(sorted(canonical_cycle(tuple(names[v] for v in c)) for c in s.cycles)),
        matching=tuple(sorted(tuple(sorted((names[u], names[v]))) for u, v in s.matching)),
        loops=tuple(sorted(names[v] for v in s.loops)),
    )


def enumerate_admissible_paths(g: WeightedGraph, i: int, j: int) -> list[AdmissiblePath]:
    if i == j:
        raise ValueError("admissible paths need distinct end-vertices")
    check_size(g)
    found: list[AdmissiblePath] = []
    path = [i]
    on_path = {i}

    def walk(v: int) -> None:
        for x in g.neighbors(v):
            if x in on_path:
                continue
            path.append(x)
            on_path.add(x)
            if x == j:
                rest = [u for u in range(g.n) if u not in on_path]
                sachs = [_relabel(s, rest) for s in enumerate_sachs(g.induced(rest))]
                if sachs:
                    found.append(AdmissiblePath(tuple(path), tuple(sachs)))
            else:
                walk(x)
            path.pop()
            on_path.discard(x)

    walk(i)
    found.sort(key=lambda p: p.vertices)
    return found


def inverse_entry_from_paths(g: WeightedGraph, i: int, j: int) -> Fraction:
    """One off-diagonal entry of A^-1, summed literally over admissible paths.

    Slow; kept as the term-by-term reading of the formula.
    """
    det = SachsSum(g)
    d = det(det.full)
    if d == 0:
        raise Singular("graph is not invertible")
    total = Fraction(0)
    for p in enumerate_admissible_paths(g, i, j):
        wp = Fraction(1)
        for u, v in p.edges():
            wp *= g.weight(u, v)
        inner = Fraction(0)
        for s in p.complement_sachs:
            t = Fraction(2 ** len(s.cycles))
            for e in s.cycle_edges():
                t *= g.weight(*e)
            for v in s.loops:
                t *= g.weight(v, v)
            for e in s.matching:
                t *= g.weight(*e) ** 2
            # |E(S) u E(P)| = |E(S)| + |E(P)|: the two are vertex-disjoint
            sign = len(s.cycles) + len(s.loops) + s.edge_count + len(p.vertices) - 1
            inner += -t if sign % 2 else t
        total += wp * inner
    return total / d


def structural_inverse(g: WeightedGraph) -> WeightedGraph:
    """The inverse graph computed from paths and Sachs subgraphs alone.

    Paths from each source are grouped by (vertex set, end-vertex) so paths
    that share both are summed once; the complement term D(G - V(P)) only
    depends on that vertex set.
    """
    sachs = SachsSum(g)
    full = sachs.full
    det = sachs(full)
    if det == 0:
        raise Singular("graph is not invertible (Sachs determinant is 0)")
    n = g.n
    bits_adj = [0] * n
    for u, v in g.edges:
        if u != v:
            bits_adj[u] |= 1 << v
            bits_adj[v] |= 1 << u

    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        out[i][i] = sachs(full ^ (1 << i)) / det
        # value = sum of w(P) * (-1)^|E(P)| over paths from i with this (mask, end)
        layer: dict[tuple[int, int], Fraction] = {(1 << i, i): Fraction(1)}
        while layer:
            nxt: dict[tuple[int, int], Fraction] = {}
            for (mask, v), val in layer.items():
                cand = bits_adj[v] & ~mask
                while cand:
                    b = cand & -cand
                    x = b.bit_length() - 1
                    cand ^= b
                    key = (mask | b, x)
                    nxt[key] = nxt.get(key, Fraction(0)) - val * g.weight(v, x)
            for (mask, x), val in nxt.items():
                if x > i and val:
                    rest = sachs(full & ~mask)
                    if rest:
                        out[i][x] += val * rest
            layer = nxt
        for j in range(i + 1, n):
            out[i][j] /= det
            out[j][i] = out[i][j]
    return graph_from_matrix(out)


# -- reports and predicates ------------------------------------------------


@dataclass(frozen=True)
class InverseReport:
    inverse: WeightedGraph
    method: str
    agreement: Optional[bool] = None


def oracle_inverse(g: WeightedGraph) -> WeightedGraph:
    return graph_from_matrix(invert_matrix_exact(adjacency_matrix(g)))


def invert_graph(g: WeightedGraph, method: Method = "oracle") -> InverseReport:
    """Invert ``g``.  With ``method="both"`` the two routes must agree exactly,
    otherwise :class:`Disagreement` is raised."""
    if method == "oracle":
        return InverseReport(oracle_inverse(g), "oracle")
    if method == "structural":
        return InverseReport(structural_inverse(g), "structural")
    if method == "both":
        a = oracle_inverse(g)
        b = structural_inverse(g)
        if a != b:
            raise Disagreement(f"structural inverse {b!r} differs from oracle {a!r}")
        return InverseReport(a, "both", True)
    raise ValueError(f"unknown method {method!r}")


def is_simply_invertible(g: WeightedGraph) -> bool:
    """True iff G - i has zero determinant for every vertex i."""
    sachs = SachsSum(g)
    if sachs(sachs.full) == 0:
        raise Singular("graph is not invertible")
    return all(sachs.without([i]) == 0 for i in range(g.n))


def has_integral_inverse(g: WeightedGraph) -> bool:
    """For a simple signed graph with a unique Sachs subgraph: is A^-1 integral?

    Decided structurally (the witness is a perfect matching) and confirmed
    against the exact inverse.
    """
    if not g.is_signed:
        raise NotSigned("expected every weight in {-1, +1}")
    if g.loops:
        raise HasLoops("needs a simple graph")
    witness = unique_sachs_witness(g)
    if witness is None:
        raise NotUniqueSachs("graph does not have a unique Sachs subgraph")
    structural = witness.is_perfect_matching
    inv = oracle_inverse(g)
    integral = all(w.denominator == 1 for w in inv.edges.values())
    if structural != integral:
        raise Disagreement(f"witness says {structural}, exact inverse says {integral}")
    return structural
