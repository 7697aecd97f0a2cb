"""Floating-point spectra of weighted graphs and the median-eigenvalue checks.

Eigenvalues come from a cyclic Jacobi rotation sweep, so results are
deterministic for a given matrix.  The zero tolerance used by every
predicate is ``1e-9 * max(1, ||A||_F)``.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import hypot, sqrt
from typing import Literal, Optional, Sequence, Union

import numpy as np

from .errors import (
    Disagreement,
    GraphError,
    NoConvergence,
    NoSplit,
    NotPerfectMatching,
    NotSymmetric,
    WrongFamily,
)
from .families import corona_pendants, stellated_tree_matching
from .graph import Edge, WeightedGraph, adjacency_matrix
from .inverse import oracle_inverse
from .sachs import SachsSum, is_perfect_matching, unique_sachs_witness

ZERO_RTOL = 1e-9
SYMMETRY_RTOL = 1e-12
CONVERGENCE_RTOL = 1e-12
MAX_SWEEPS = 100
RECIPROCAL_TOL = 1e-7

MatrixLike = Union[np.ndarray, Sequence[Sequence[Union[float, Fraction]]]]


class NearZeroWarning(UserWarning):
    """An eigenvalue sits inside the zero band, so sign-based claims are withheld."""


def zero_tolerance(a: np.ndarray) -> float:
    return ZERO_RTOL * max(1.0, float(np.linalg.norm(a)))


def _as_float(m: MatrixLike) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in m], dtype=float).reshape(len(m), len(m))


@dataclass(frozen=True)
class Spectrum:
    values: tuple[float, ...]  # descending
    tol: float
    vectors: np.ndarray = field(repr=False, compare=False)
    matrix: np.ndarray = field(repr=False, compare=False)
    sweeps: int = 0

    @property
    def n(self) -> int:
        return len(self.values)

    def residuals(self) -> np.ndarray:
        """||A v - lambda v|| for every eigenpair."""
        a, v = self.matrix, self.vectors
        return np.linalg.norm(a @ v - v * np.array(self.values), axis=0)


def eigenvalues(m: Union[MatrixLike, WeightedGraph]) -> Spectrum:
    """All eigenvalues of a symmetric matrix (or a graph's adjacency matrix)."""
    if isinstance(m, WeightedGraph):
        m = adjacency_matrix(m)
    a0 = _as_float(m)
    n = a0.shape[0]
    norm = float(np.linalg.norm(a0))
    if np.max(np.abs(a0 - a0.T), initial=0.0) > SYMMETRY_RTOL * max(1.0, norm):
        raise NotSymmetric("matrix is not symmetric")
    a = (a0 + a0.T) / 2
    v = np.eye(n)
    thresh = CONVERGENCE_RTOL * norm
    sweeps = 0
    while True:
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= thresh:
            break
        if sweeps == MAX_SWEEPS:
            raise NoConvergence(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                # hypot keeps theta**2 from overflowing when apq is tiny
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + hypot(theta, 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    diag = np.diag(a).copy()
    order = sorted(range(n), key=lambda k: (-diag[k], k))
    return Spectrum(
        values=tuple(float(diag[k]) for k in order),
        tol=zero_tolerance(a0),
        vectors=v[:, order],
        matrix=a0,
        sweeps=sweeps,
    )


# -- predicates ------------------------------------------------------------


def spectrum_splits(s: Spectrum) -> bool:
    """Exactly half the eigenvalues above +tol and half below -tol."""
    near = [x for x in s.values if abs(x) <= s.tol]
    if near:
        warnings.warn(
            f"{len(near)} eigenvalue(s) within {s.tol:.3g} of zero", NearZeroWarning, stacklevel=2
        )
        return False
    if s.n % 2:
        return False
    pos = sum(1 for x in s.values if x > s.tol)
    return pos == s.n // 2


def is_symmetric_spectrum(s: Spectrum, tol: float) -> bool:
    vals = s.values
    return all(abs(vals[k] + vals[-1 - k]) <= tol for k in range(s.n))


@dataclass(frozen=True)
class MedianReport:
    n: int
    h: int  # 1-based index of the highest occupied level
    l: int  # 1-based index of the lowest unoccupied level
    lambda_h: float
    lambda_l: float
    splits: bool
    symmetric: bool

    @property
    def gap(self) -> float:
        return self.lambda_h - self.lambda_l


def median_eigenvalues(s: Spectrum, symmetry_tol: float = 1e-8) -> MedianReport:
    if s.n < 1:
        raise ValueError("empty spectrum")
    h = (s.n + 1) // 2
    l = (s.n + 2) // 2
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NearZeroWarning)
        splits = spectrum_splits(s)
    return MedianReport(
        n=s.n,
        h=h,
        l=l,
        lambda_h=s.values[h - 1],
        lambda_l=s.values[l - 1],
        splits=splits,
        symmetric=is_symmetric_spectrum(s, symmetry_tol),
    )


def median_via_inverse(g: WeightedGraph) -> MedianReport:
    """Median eigenvalues from the extreme eigenvalues of the inverse graph.

    Requires a split spectrum; cross-checked against the direct spectrum.
    """
    direct_spec = eigenvalues(g)
    direct = median_eigenvalues(direct_spec)
    if not direct.splits:
        raise NoSplit("spectrum does not split about the origin")
    inv_spec = eigenvalues(oracle_inverse(g))
    lam_h = 1.0 / inv_spec.values[0]
    lam_l = 1.0 / inv_spec.values[-1]
    if abs(lam_h - direct.lambda_h) > RECIPROCAL_TOL or abs(lam_l - direct.lambda_l) > RECIPROCAL_TOL:
        raise Disagreement(
            f"inverse route gives ({lam_h}, {lam_l}), direct gives "
            f"({direct.lambda_h}, {direct.lambda_l})"
        )
    return MedianReport(direct.n, direct.h, direct.l, lam_h, lam_l, True, direct.symmetric)


def split_certificate(g: WeightedGraph) -> bool:
    """Certified split: the unique Sachs subgraph exists and is a perfect matching.

    False means "no certificate", not "does not split".
    """
    w = unique_sachs_witness(g)
    return w is not None and w.is_perfect_matching


# -- weight sweeps ---------------------------------------------------------


@dataclass(frozen=True)
class SweepReport:
    samples: int
    seed: int
    min_abs_det: Fraction
    singular_count: int
    first_singular: Optional[dict[Edge, Fraction]]

    @property
    def refuted(self) -> bool:
        return self.singular_count > 0


def sampled_weight_sweep(
    g: WeightedGraph,
    matching: Sequence[Edge],
    samples: int,
    seed: int,
    denominator: int = 4,
) -> SweepReport:
    """Try weightings with +/-1 on the matching and values in [-1, 1] elsewhere.

    Off-matching weights are drawn from the grid ``k/denominator``; a zero
    draw removes the edge.  Sample 0 is the graph's own weighting.  This can
    only refute invertibility over the whole weight box, never certify it.
    """
    if not is_perfect_matching(g, matching):
        raise NotPerfectMatching("expected a perfect matching of the graph")
    rng = random.Random(seed)
    mset = {tuple(sorted(e)) for e in matching}
    min_det: Optional[Fraction] = None
    singular = 0
    first = None
    for k in range(samples):
        if k == 0:
            weights = dict(g.edges)
        else:
            weights = {}
            for e in g.edges:
                if e in mset:
                    weights[e] = Fraction(rng.choice((-1, 1)))
                else:
                    weights[e] = Fraction(rng.randint(-denominator, denominator), denominator)
        h = WeightedGraph(g.n, {e: w for e, w in weights.items() if w != 0})
        s = SachsSum(h)
        d = abs(s(s.full))
        if min_det is None or d < min_det:
            min_det = d
        if d == 0:
            singular += 1
            if first is None:
                first = weights
    return SweepReport(samples, seed, min_det if min_det is not None else Fraction(0), singular, first)


# -- median bounds ---------------------------------------------------------

Family = Literal["stellated_tree", "corona"]


def check_family(g: WeightedGraph, family: Family) -> None:
    if not g.is_unweighted:
        raise WrongFamily("median bounds are stated for all-positive graphs")
    if family == "stellated_tree":
        recognise = stellated_tree_matching
    elif family == "corona":
        recognise = corona_pendants
    else:
        raise WrongFamily(f"unknown family {family!r}")
    try:
        recognise(g)
    except GraphError as exc:
        raise WrongFamily(f"graph is not a {family} graph: {exc}") from exc


def check_median_bounds(g: WeightedGraph, family: Family, tol: Optional[float] = None) -> bool:
    """-1 <= lambda_L < 0 < lambda_H <= 1, closed ends relaxed by ``tol``
    (default: the zero tolerance)."""
    check_family(g, family)
    spec = eigenvalues(g)
    rep = median_eigenvalues(spec)
    t = spec.tol if tol is None else tol
    return -1.0 - t <= rep.lambda_l < 0.0 < rep.lambda_h <= 1.0 + t


@dataclass(frozen=True)
class AlkaneReport:
    lambda_h: float
    lambda_l: float
    gap: float
    gap_ok: bool
    lumo_ok: bool


GAP_BOUND = 1.3
LUMO_BOUND = -3 / 10


def check_alkane_bounds(g: WeightedGraph, tol: float = 1e-7) -> AlkaneReport:
    """Gap <= 1.3 and lambda_L >= -3/10 for the stellated graph of an alkane."""
    check_family(g, "stellated_tree")
    rep = median_eigenvalues(eigenvalues(g))
    return AlkaneReport(
        rep.lambda_h,
        rep.lambda_l,
        rep.gap,
        rep.gap <= GAP_BOUND + tol,
        rep.lambda_l >= LUMO_BOUND - tol,
    )


# -- eigensolver health ----------------------------------------------------


@dataclass(frozen=True)
class HealthReport:
    max_residual: float
    residual_bound: float
    trace_error: float
    trace_bound: float
    det_rel_error: Optional[float]

    @property
    def ok(self) -> bool:
        return (
            self.max_residual <= self.residual_bound
            and self.trace_error <= self.trace_bound
            and (self.det_rel_error is None or self.det_rel_error <= 1e-6)
        )


def eigensolver_health(spec: Spectrum, det: Optional[Fraction] = None) -> HealthReport:
    """Residual, trace and (given an exact det) product-of-eigenvalues checks."""
    a = spec.matrix
    n = spec.n
    res = float(np.max(spec.residuals(), initial=0.0))
    trace_err = abs(sum(spec.values) - float(np.trace(a)))
    rel = None
    if det is not None and det != 0:
        prod = float(np.prod(spec.values))
        rel = abs(prod - float(det)) / abs(float(det))
    return HealthReport(
        max_residual=res,
        residual_bound=ZERO_RTOL * max(1.0, float(np.linalg.norm(a))),
        trace_error=trace_err,
        trace_bound=1e-8 * max(1, n),
        det_rel_error=rel,
    )
