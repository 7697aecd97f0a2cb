"""Batch checks that pit every structural computation against an oracle.

Each suite returns a :class:`CheckResult`; none of them raise on a failed
comparison, they record the first counterexample instead.  Spectra computed
along the way are appended to a shared log so the eigensolver itself can be
audited afterwards.
"""

from __future__ import annotations

import random
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .corpus import (
    alkanes,
    connected_graphs,
    random_bipartite_graph,
    random_connected_graph,
    random_signature,
    random_weighted_graph,
    trees,
    two_triangles,
)
from .families import (
    corona,
    corona_inverse,
    corona_swap,
    is_self_invertible,
    stellate,
    stellated_tree_inverse,
)
from .graph import WeightedGraph, adjacency_matrix, is_isomorphism
from .inverse import determinant, identity, mat_mul, oracle_inverse, structural_inverse
from .sachs import (
    ENUMERATION_CAP,
    SachsSum,
    det_unweighted_check,
    det_via_sachs,
    enumerate_sachs,
    has_unique_sachs,
    perfect_matchings,
    unique_sachs_witness,
)
from .spectra import (
    NearZeroWarning,
    Spectrum,
    check_alkane_bounds,
    check_median_bounds,
    eigensolver_health,
    eigenvalues,
    is_symmetric_spectrum,
    spectrum_splits,
    split_certificate,
)

SpectrumLog = list[tuple[Spectrum, Optional[Fraction]]]


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: int = 0
    first_failure: str = ""
    seconds: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.cases > 0 and self.failures == 0

    def record(self, ok: bool, what: Callable[[], str]) -> None:
        self.cases += 1
        if not ok:
            self.failures += 1
            if not self.first_failure:
                self.first_failure = what()

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{status} {self.name} cases={self.cases} failures={self.failures} time={self.seconds:.1f}s"
        if self.first_failure:
            out += f" first={self.first_failure}"
        return out


def _timed(fn):
    def run(*args, **kwargs) -> CheckResult:
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def _spectrum(g: WeightedGraph, log: Optional[SpectrumLog], det: Optional[Fraction] = None) -> Spectrum:
    s = eigenvalues(g)
    if log is not None:
        if det is None and g.n <= ENUMERATION_CAP:
            ss = SachsSum(g)
            det = ss(ss.full)
        log.append((s, det))
    return s


# -- corpora ---------------------------------------------------------------


def oracle_corpus(max_n: int, samples: int, random_max_n: int, seed: int) -> list[WeightedGraph]:
    """Every connected simple graph up to ``max_n`` plus ``samples`` random
    rational-weighted graphs with loops on 1..random_max_n vertices."""
    rng = random.Random(seed)
    out = list(connected_graphs(max_n))
    out += [random_weighted_graph(rng, rng.randint(1, random_max_n)) for _ in range(samples)]
    return out


def random_invertible(rng: random.Random, max_n: int) -> WeightedGraph:
    while True:
        g = random_weighted_graph(rng, rng.randint(1, max_n))
        if det_via_sachs(g) != 0:
            return g


# -- suites ----------------------------------------------------------------


@_timed
def determinant_suite(corpus: Iterable[WeightedGraph]) -> CheckResult:
    """Sachs determinant equals the Bareiss determinant (and the unweighted form
    on unweighted simple graphs)."""
    res = CheckResult("determinant")
    for g in corpus:
        d = det_via_sachs(g)
        res.record(d == determinant(adjacency_matrix(g)), lambda: repr(g))
        if g.is_simple and g.is_unweighted:
            res.record(det_unweighted_check(g) == d, lambda: f"unweighted form {g!r}")
    return res


@_timed
def inverse_suite(corpus: Iterable[WeightedGraph]) -> CheckResult:
    res = CheckResult("inverse")
    for g in corpus:
        if det_via_sachs(g) == 0:
            continue
        s = structural_inverse(g)
        res.record(s == oracle_inverse(g), lambda: repr(g))
        prod = mat_mul(adjacency_matrix(g), adjacency_matrix(s))
        res.record(prod == identity(g.n), lambda: f"A*inv != I for {g!r}")
    return res


@_timed
def unique_sachs_suite(max_n: int) -> CheckResult:
    res = CheckResult("unique_sachs")
    for g in connected_graphs(max_n):
        count = len(enumerate_sachs(g))
        res.record(has_unique_sachs(g) == (count == 1), lambda: repr(g))
    return res


@_timed
def stellated_matching_suite(max_n: int) -> CheckResult:
    """st(h) has a perfect matching; it is unique iff h is a tree."""
    res = CheckResult("stellated_matchings")
    for h in connected_graphs(max_n, min_n=2):
        st, _ = stellate(h)
        k = len(perfect_matchings(st, limit=2))
        is_tree = h.edge_count == h.n - 1
        res.record(k >= 1 and (k == 1) == is_tree, lambda: f"{h!r}: {k} perfect matchings")
    return res


@_timed
def closed_form_suite(tree_max_n: int, corona_max_n: int, signatures: int, seed: int) -> CheckResult:
    """Stellated-tree and corona inverse formulas against the exact inverse."""
    rng = random.Random(seed)
    res = CheckResult("closed_form_inverses")
    for n in range(2, tree_max_n + 1):
        for t in trees(n):
            st, _ = stellate(t)
            for k in range(signatures):
                g = st if k == 0 else random_signature(rng, st)
                res.record(stellated_tree_inverse(g) == oracle_inverse(g), lambda: f"st {g!r}")
    for h in connected_graphs(corona_max_n):
        c = corona(h)
        for k in range(signatures):
            g = c if k == 0 else random_signature(rng, c)
            inv = corona_inverse(g)
            res.record(inv == oracle_inverse(g), lambda: f"corona {g!r}")
            if g.n <= 16:
                res.record(
                    is_self_invertible(g) and is_isomorphism(g, inv, corona_swap(g)),
                    lambda: f"self-inverse {g!r}",
                )
    return res


def family_graphs(tree_max_n: int, corona_max_n: int) -> list[tuple[str, WeightedGraph]]:
    out = []
    for n in range(2, tree_max_n + 1):
        out += [("stellated_tree", stellate(t)[0]) for t in trees(n)]
    out += [("corona", corona(h)) for h in connected_graphs(corona_max_n)]
    return out


@_timed
def spectral_split_suite(
    families: list[tuple[str, WeightedGraph]], log: Optional[SpectrumLog] = None
) -> CheckResult:
    res = CheckResult("spectral_split")
    for fam, g in families:
        s = _spectrum(g, log)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", NearZeroWarning)
            ok = spectrum_splits(s)
        ok = ok and not caught and split_certificate(g)
        res.record(ok, lambda: f"{fam} {g!r}")
    return res


@_timed
def median_bounds_suite(
    families: list[tuple[str, WeightedGraph]], tol: float, log: Optional[SpectrumLog] = None
) -> CheckResult:
    res = CheckResult("median_bounds")
    for fam, g in families:
        if log is not None:
            _spectrum(g, log)
        res.record(check_median_bounds(g, fam, tol=tol), lambda: f"{fam} {g!r}")
    return res


@_timed
def reciprocity_suite(
    samples: int, max_n: int, seed: int, tol: float, log: Optional[SpectrumLog] = None
) -> CheckResult:
    """spec(G^-1) equals the reciprocals of spec(G)."""
    rng = random.Random(seed)
    res = CheckResult("reciprocity")
    for _ in range(samples):
        g = random_invertible(rng, max_n)
        det = det_via_sachs(g)
        inv = oracle_inverse(g)
        s = _spectrum(g, log, det)
        si = _spectrum(inv, log, 1 / det)
        recip = sorted((1.0 / x for x in s.values), reverse=True)
        res.record(
            all(abs(a - b) <= tol for a, b in zip(recip, si.values)),
            lambda: f"{g!r}: {recip} vs {si.values}",
        )
    return res


@_timed
def bipartite_symmetry_suite(
    samples: int, max_n: int, seed: int, tol: float, log: Optional[SpectrumLog] = None
) -> CheckResult:
    rng = random.Random(seed)
    res = CheckResult("bipartite_symmetry")
    for _ in range(samples):
        g = random_bipartite_graph(rng, rng.randint(1, max_n))
        s = _spectrum(g, log)
        res.record(is_symmetric_spectrum(s, tol), lambda: repr(g))
    g = two_triangles()
    s = _spectrum(g, log)
    res.record(is_symmetric_spectrum(s, tol), lambda: f"two triangles {s.values}")
    return res


@_timed
def split_certificate_suite(graphs: int, signatures: int, max_n: int, seed: int) -> CheckResult:
    """A unique-Sachs perfect-matching witness always comes with a split spectrum."""
    rng = random.Random(seed)
    res = CheckResult("split_certificate")
    found = 0
    while found < graphs:
        n = 2 * rng.randint(1, max_n // 2)
        g = random_connected_graph(rng, n, density=rng.uniform(0.05, 0.4))
        w = unique_sachs_witness(g)
        if w is None or not w.is_perfect_matching:
            continue
        found += 1
        for _ in range(signatures):
            sg = random_signature(rng, g)
            d = det_via_sachs(sg)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", NearZeroWarning)
                ok = split_certificate(sg) and spectrum_splits(eigenvalues(sg))
            res.record(ok and d == (-1) ** len(w.matching), lambda: repr(sg))
    return res


@_timed
def alkane_suite(max_carbons: int, tol: float, log: Optional[SpectrumLog] = None) -> CheckResult:
    """Stellated alkanes: HOMO-LUMO gap at most 1.3 and lambda_L >= -3/10."""
    res = CheckResult("alkane_bounds")
    for t in alkanes(max_carbons):
        g, _ = stellate(t)
        if log is not None:
            _spectrum(g, log)
        rep = check_alkane_bounds(g, tol=tol)
        res.record(rep.gap_ok, lambda: f"gap {rep.gap:.10g} for tree {t!r}")
        res.record(
            rep.lumo_ok,
            lambda: f"lambda_L={rep.lambda_l:.10g} < -3/10 for tree on {t.n} vertices {t!r}",
        )
    return res


@_timed
def eigensolver_health_suite(log: SpectrumLog) -> CheckResult:
    res = CheckResult("eigensolver_health")
    for s, det in log:
        rep = eigensolver_health(s, det)
        res.record(rep.ok, lambda: repr(rep))
    return res


def run_verify(max_n: int = 7, samples: int = 200, seed: int = 0) -> list[CheckResult]:
    """Module invariants at the given size caps, as run by ``graphinv verify``."""
    exhaustive = min(max_n, 7)
    log: SpectrumLog = []
    corpus = oracle_corpus(exhaustive, samples, max_n, seed)
    fams = family_graphs(exhaustive, min(exhaustive, 5))
    results = [
        determinant_suite(corpus),
        inverse_suite(corpus),
        unique_sachs_suite(exhaustive),
        stellated_matching_suite(min(exhaustive, 6)),
        closed_form_suite(exhaustive, min(exhaustive, 5), 20, seed),
        spectral_split_suite(fams, log),
        median_bounds_suite(fams, 1e-7, log),
        reciprocity_suite(samples, max_n, seed, 1e-7, log),
        bipartite_symmetry_suite(samples, max_n, seed, 1e-8, log),
        split_certificate_suite(50, 10, max(2, max_n), seed),
    ]
    results.append(eigensolver_health_suite(log))
    return results
