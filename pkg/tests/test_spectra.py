import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings

from graphinverse.corpus import two_triangles
from graphinverse.errors import NoConvergence, NoSplit, NotPerfectMatching, NotSymmetric, WrongFamily
from graphinverse.families import alkane_tree, corona, stellate
from graphinverse.graph import parse_graph
from graphinverse.inverse import oracle_inverse
from graphinverse.sachs import det_via_sachs
from graphinverse import spectra
from graphinverse.spectra import (
    NearZeroWarning,
    check_alkane_bounds,
    check_median_bounds,
    eigensolver_health,
    eigenvalues,
    is_symmetric_spectrum,
    median_eigenvalues,
    median_via_inverse,
    sampled_weight_sweep,
    spectrum_splits,
    split_certificate,
)

from helpers import C3, C4, K2, P4, bipartite_graphs, complete, path, star, weighted_graphs

GOLDEN = (1 + math.sqrt(5)) / 2


def close(a, b, tol=1e-10):
    return len(a) == len(b) and all(abs(x - y) <= tol for x, y in zip(a, b))


class TestEigenvalues:
    def test_examples(self):
        assert close(eigenvalues(K2).values, [1, -1])
        assert close(eigenvalues(C3).values, [2, -1, -1])
        assert close(eigenvalues(C4).values, [2, 0, 0, -2])
        assert close(eigenvalues([[Fraction(5)]]).values, [5])

    def test_not_symmetric(self):
        with pytest.raises(NotSymmetric):
            eigenvalues([[0, 1], [0, 0]])

    def test_sweep_cap(self, monkeypatch):
        monkeypatch.setattr(spectra, "MAX_SWEEPS", 0)
        with pytest.raises(NoConvergence):
            eigenvalues(C3)

    def test_deterministic(self):
        g = corona(complete(4))
        a, b = eigenvalues(g), eigenvalues(g)
        assert a.values == b.values and np.array_equal(a.vectors, b.vectors)

    @given(weighted_graphs(max_n=8))
    def test_against_numpy(self, g):
        s = eigenvalues(g)
        ref = sorted(np.linalg.eigvalsh(s.matrix), reverse=True)
        assert close(s.values, ref, 1e-9 * max(1.0, float(np.linalg.norm(s.matrix))))
        det = det_via_sachs(g)
        assert eigensolver_health(s, det if det else None).ok


class TestSplitting:
    def test_examples(self):
        with pytest.warns(NearZeroWarning):
            assert not spectrum_splits(eigenvalues(C4))
        assert spectrum_splits(eigenvalues(P4))
        assert spectrum_splits(eigenvalues(corona(C3)))
        assert not spectrum_splits(eigenvalues(C3))

    def test_symmetry(self):
        assert is_symmetric_spectrum(eigenvalues(two_triangles()), 1e-8)
        assert not is_symmetric_spectrum(eigenvalues(C3), 1e-8)

    @settings(max_examples=50)
    @given(bipartite_graphs(max_n=8))
    def test_bipartite_symmetric(self, g):
        assert is_symmetric_spectrum(eigenvalues(g), 1e-8)

    def test_certificate(self):
        assert split_certificate(corona(C3))
        assert split_certificate(stellate(path(3))[0])
        assert not split_certificate(C3)
        assert not split_certificate(C4)


class TestMedian:
    def test_examples(self):
        rep = median_eigenvalues(eigenvalues(P4))
        assert (rep.h, rep.l) == (2, 3)
        assert abs(rep.lambda_h - (GOLDEN - 1)) < 1e-10 and abs(rep.lambda_l + GOLDEN - 1) < 1e-10
        rep = median_eigenvalues(eigenvalues(parse_graph("1 1\n0 0 5")))
        assert (rep.h, rep.l, rep.lambda_h, rep.lambda_l, rep.gap) == (1, 1, 5, 5, 0)
        rep = median_eigenvalues(eigenvalues(K2))
        assert close([rep.lambda_h, rep.lambda_l, rep.gap], [1, -1, 2])

    def test_via_inverse(self):
        assert abs(median_via_inverse(P4).lambda_h - (GOLDEN - 1)) < 1e-9
        assert abs(median_via_inverse(K2).lambda_h - 1) < 1e-12
        g = corona(C3)
        a, b = median_via_inverse(g), median_eigenvalues(eigenvalues(g))
        assert abs(a.lambda_h - b.lambda_h) < 1e-7 and abs(a.lambda_l - b.lambda_l) < 1e-7
        with pytest.raises(NoSplit):
            median_via_inverse(C3)

    def test_bounds(self):
        assert check_median_bounds(P4, "stellated_tree")
        assert check_median_bounds(corona(C3), "corona")
        assert check_median_bounds(stellate(star(4))[0], "stellated_tree")

    def test_wrong_family(self):
        with pytest.raises(WrongFamily):
            check_median_bounds(C4, "corona")
        with pytest.raises(WrongFamily):
            check_median_bounds(C3, "stellated_tree")
        with pytest.raises(WrongFamily):
            check_median_bounds(P4.with_weights({(0, 1): -1}), "stellated_tree")
        with pytest.raises(WrongFamily):
            check_median_bounds(P4, "benzenoid")

    def test_alkanes(self):
        ethane = check_alkane_bounds(stellate(alkane_tree(K2))[0])
        assert ethane.gap_ok and ethane.lumo_ok
        # methane's stellation is corona(K4), whose lambda_L is (3 - sqrt 13)/2
        methane = check_alkane_bounds(stellate(star(4))[0])
        assert abs(methane.lambda_l - (3 - math.sqrt(13)) / 2) < 1e-12
        assert methane.gap_ok and not methane.lumo_ok


class TestReciprocity:
    @given(weighted_graphs(max_n=7))
    def test_reciprocal_spectrum(self, g):
        assume(det_via_sachs(g) != 0)
        s = eigenvalues(g)
        si = eigenvalues(oracle_inverse(g))
        recip = sorted((1 / x for x in s.values), reverse=True)
        assert close(recip, si.values, 1e-7)


class TestSweep:
    def test_corona_never_singular(self):
        g = corona(C3)
        m = [(0, 3), (1, 4), (2, 5)]
        rep = sampled_weight_sweep(g, m, 100, seed=0)
        assert rep.singular_count == 0 and not rep.refuted and rep.min_abs_det == 1

    def test_c4_refuted(self):
        rep = sampled_weight_sweep(C4, [(0, 1), (2, 3)], 50, seed=0)
        assert rep.refuted and rep.first_singular == dict(C4.edges)

    def test_k2(self):
        assert not sampled_weight_sweep(K2, [(0, 1)], 20, seed=5).refuted

    def test_reproducible(self):
        a = sampled_weight_sweep(C4, [(0, 1), (2, 3)], 30, seed=7)
        assert a == sampled_weight_sweep(C4, [(0, 1), (2, 3)], 30, seed=7)

    def test_bad_matching(self):
        with pytest.raises(NotPerfectMatching):
            sampled_weight_sweep(C4, [(0, 1)], 5, seed=0)
