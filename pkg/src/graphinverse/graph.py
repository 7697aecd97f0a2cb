"""Weighted graphs with exact rational weights.

A graph lives on vertices ``0..n-1``.  Edges are keyed by the ordered pair
``(min, max)`` so a loop at ``v`` is the key ``(v, v)``.  Every stored weight
is a nonzero :class:`fractions.Fraction`.  Graphs are immutable values; every
operation returns a new graph.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import (
    DuplicateEdge,
    HasLoops,
    IndexOutOfRange,
    NotSigned,
    ParseError,
    TooLarge,
    ZeroWeight,
)

Edge = tuple[int, int]
Rational = Union[int, Fraction, str]
ExactMatrix = list[list[Fraction]]

ISOMORPHISM_CAP = 16

_DECIMAL = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)")
_RATIO = re.compile(r"[+-]?\d+/\d+")


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u <= v else (v, u)


def parse_weight(token: str) -> Fraction:
    """Parse ``"3"``, ``"-0.25"`` or ``"2/7"`` exactly; reject everything else."""
    token = token.strip()
    if _DECIMAL.fullmatch(token) or _RATIO.fullmatch(token):
        try:
            return Fraction(token)
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in weight {token!r}") from None
    raise ParseError(f"bad weight literal {token!r}")


@dataclass(frozen=True)
class WeightedGraph:
    n: int
    edges: Mapping[Edge, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        clean: dict[Edge, Fraction] = {}
        for (u, v), w in self.edges.items():
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise IndexOutOfRange(f"edge ({u}, {v}) outside 0..{self.n - 1}")
            key = edge_key(u, v)
            if key in clean:
                raise DuplicateEdge(f"edge {key} given twice")
            w = Fraction(w)
            if w == 0:
                raise ZeroWeight(f"edge {key} has zero weight")
            clean[key] = w
        object.__setattr__(self, "edges", dict(sorted(clean.items())))

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[Union[tuple[int, int], tuple[int, int, Rational]]]
    ) -> "WeightedGraph":
        """Build from ``(u, v)`` or ``(u, v, w)`` tuples; missing weights are 1."""
        out: dict[Edge, Fraction] = {}
        for e in edges:
            u, v = e[0], e[1]
            w = Fraction(e[2]) if len(e) > 2 else Fraction(1)
            key = edge_key(u, v)
            if key in out:
                raise DuplicateEdge(f"edge {key} given twice")
            out[key] = w
        return cls(n, out)

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.edges.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{u}-{v}:{w}" for (u, v), w in self.edges.items())
        return f"WeightedGraph(n={self.n}, {{{body}}})"

    # -- structure -------------------------------------------------------

    @cached_property
    def _adj(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            if u != v:
                nbrs[u].append(v)
                nbrs[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Neighbours of ``v`` other than ``v`` itself, ascending."""
        return self._adj[v]

    def weight(self, u: int, v: int) -> Fraction:
        return self.edges.get(edge_key(u, v), Fraction(0))

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.edges

    def has_loop(self, v: int) -> bool:
        return (v, v) in self.edges

    def degree(self, v: int) -> int:
        """Number of edges at ``v``, a loop counted once."""
        return len(self._adj[v]) + (1 if self.has_loop(v) else 0)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def loops(self) -> tuple[int, ...]:
        return tuple(u for u, v in self.edges if u == v)

    @property
    def is_simple(self) -> bool:
        return not self.loops

    @property
    def is_signed(self) -> bool:
        return all(abs(w) == 1 for w in self.edges.values())

    @property
    def is_unweighted(self) -> bool:
        return all(w == 1 for w in self.edges.values())

    def underlying(self) -> "WeightedGraph":
        """Same edges, every weight set to 1."""
        return WeightedGraph(self.n, {e: Fraction(1) for e in self.edges})

    def with_weights(self, weights: Mapping[Edge, Rational]) -> "WeightedGraph":
        """Re-weight existing edges; keys absent from ``weights`` keep their value."""
        out = dict(self.edges)
        for (u, v), w in weights.items():
            key = edge_key(u, v)
            if key not in out:
                raise KeyError(f"{key} is not an edge")
            out[key] = Fraction(w)
        return WeightedGraph(self.n, out)

    def induced(self, vertices: Sequence[int]) -> "WeightedGraph":
        """Induced subgraph on ``vertices``, relabelled ``0..k-1`` in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        out = {}
        for (u, v), w in self.edges.items():
            if u in index and v in index:
                out[edge_key(index[u], index[v])] = w
        return WeightedGraph(len(vertices), out)

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [], deque([s])
            while queue:
                u = queue.popleft()
                comp.append(u)
                for x in self._adj[u]:
                    if not seen[x]:
                        seen[x] = True
                        queue.append(x)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def bipartition(self) -> Optional[list[int]]:
        """A proper 2-colouring (0/1 per vertex), or None if not bipartite.

        Loops make a graph non-bipartite.
        """
        if self.loops:
            return None
        colour = [-1] * self.n
        for s in range(self.n):
            if colour[s] >= 0:
                continue
            colour[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for x in self._adj[u]:
                    if colour[x] < 0:
                        colour[x] = 1 - colour[u]
                        queue.append(x)
                    elif colour[x] == colour[u]:
                        return None
        return colour


# -- text format ---------------------------------------------------------


def parse_graph(text: str) -> WeightedGraph:
    """Read the ``n m`` header followed by ``m`` lines of ``u v w``.

    Blank lines and lines starting with ``#`` are skipped.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError(f"header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError(f"header must be two integers, got {lines[0]!r}") from None
    if n < 0 or m < 0:
        raise ParseError("negative counts in header")
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header announces {m} edges, found {len(body)}")
    edges: dict[Edge, Fraction] = {}
    for ln in body:
        parts = ln.split()
        if len(parts) != 3:
            raise ParseError(f"edge line must be 'u v w', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"bad vertex index in {ln!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"vertex index out of range in {ln!r}")
        w = parse_weight(parts[2])
        if w == 0:
            raise ZeroWeight(f"zero weight in {ln!r}")
        key = edge_key(u, v)
        if key in edges:
            raise DuplicateEdge(f"duplicate edge {key}")
        edges[key] = w
    return WeightedGraph(n, edges)


def serialize_graph(g: WeightedGraph, comments: Iterable[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"{g.n} {g.edge_count}")
    out.extend(f"{u} {v} {w}" for (u, v), w in g.edges.items())
    return "\n".join(out) + "\n"


# -- matrices ------------------------------------------------------------


def adjacency_matrix(g: WeightedGraph) -> ExactMatrix:
    a = [[Fraction(0)] * g.n for _ in range(g.n)]
    for (u, v), w in g.edges.items():
        a[u][v] = w
        a[v][u] = w
    return a


def graph_from_matrix(m: Sequence[Sequence[Fraction]]) -> WeightedGraph:
    """Read a symmetric matrix as a weighted graph; zero entries are non-edges."""
    n = len(m)
    edges = {}
    for i in range(n):
        for j in range(i, n):
            if m[i][j] != m[j][i]:
                raise ValueError(f"matrix not symmetric at ({i}, {j})")
            if m[i][j] != 0:
                edges[(i, j)] = Fraction(m[i][j])
    return WeightedGraph(n, edges)


# -- operations ----------------------------------------------------------


def delete_vertex(g: WeightedGraph, v: int) -> WeightedGraph:
    if not 0 <= v < g.n:
        raise IndexOutOfRange(f"vertex {v} outside 0..{g.n - 1}")
    return g.induced([u for u in range(g.n) if u != v])


def _require_signed(g: WeightedGraph) -> None:
    if not g.is_signed:
        raise NotSigned("expected every weight in {-1, +1}")


def switch_cut(g: WeightedGraph, side: Iterable[int]) -> WeightedGraph:
    """Negate the sign of every edge with exactly one end in ``side``."""
    _require_signed(g)
    s = set(side)
    return WeightedGraph(
        g.n,
        {(u, v): (-w if (u in s) != (v in s) else w) for (u, v), w in g.edges.items()},
    )


def is_balanced(g: WeightedGraph) -> bool:
    """True iff some switching makes every sign positive.

    Propagates a +/-1 potential along a spanning forest and checks every
    remaining edge against it, i.e. every cycle has positive sign product.
    """
    _require_signed(g)
    if g.loops:
        raise HasLoops("balance is not defined here for graphs with loops")
    pot = [0] * g.n
    for s in range(g.n):
        if pot[s]:
            continue
        pot[s] = 1
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for x in g.neighbors(u):
                sign = 1 if g.weight(u, x) > 0 else -1
                if not pot[x]:
                    pot[x] = pot[u] * sign
                    queue.append(x)
                elif pot[x] != pot[u] * sign:
                    return False
    return True


def is_isomorphism(g1: WeightedGraph, g2: WeightedGraph, phi: Mapping[int, int]) -> bool:
    """Check that ``phi`` maps the underlying graph of g1 onto that of g2."""
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return False
    if sorted(phi) != list(range(g1.n)) or sorted(phi.values()) != list(range(g2.n)):
        return False
    return all(g2.has_edge(phi[u], phi[v]) for u, v in g1.edges)


def is_isomorphic(g1: WeightedGraph, g2: WeightedGraph) -> Optional[dict[int, int]]:
    """Isomorphism of the underlying (unweighted, loop-aware) graphs.

    Backtracking over vertices ordered so that each new vertex is adjacent
    to already-placed ones where possible; candidates must share degree and
    loop status.  Returns a bijection ``g1 vertex -> g2 vertex`` or None.
    """
    if max(g1.n, g2.n) > ISOMORPHISM_CAP:
        raise TooLarge(f"isomorphism is capped at {ISOMORPHISM_CAP} vertices")
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return None

    def signature(g: WeightedGraph, v: int) -> tuple[int, bool]:
        return (len(g.neighbors(v)), g.has_loop(v))

    if sorted(signature(g1, v) for v in range(g1.n)) != sorted(
        signature(g2, v) for v in range(g2.n)
    ):
        return None

    classes: dict[tuple[int, bool], list[int]] = {}
    for v in range(g2.n):
        classes.setdefault(signature(g2, v), []).append(v)

    # Place rare-signature, high-degree vertices first, then grow by adjacency.
    order: list[int] = []
    placed = set()
    remaining = sorted(
        range(g1.n), key=lambda v: (len(classes[signature(g1, v)]), -len(g1.neighbors(v)), v)
    )
    while remaining:
        frontier = [v for v in remaining if any(x in placed for x in g1.neighbors(v))]
        nxt = frontier[0] if frontier else remaining[0]
        order.append(nxt)
        placed.add(nxt)
        remaining.remove(nxt)

    phi: dict[int, int] = {}
    used = set()

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        for cand in classes[signature(g1, v)]:
            if cand in used:
                continue
            ok = True
            for u, img in phi.items():
                if g1.has_edge(u, v) != g2.has_edge(img, cand):
                    ok = False
                    break
            if not ok:
                continue
            phi[v] = cand
            used.add(cand)
            if extend(k + 1):
                return True
            del phi[v]
            used.discard(cand)
        return False

    return dict(sorted(phi.items())) if extend(0) else None
