import random
from fractions import Fraction

import numpy as np
import pytest

from conftest import make_gnp
from rewirelab import build_graph, complete_graph, cycle_graph, exact_mu2_leq, matrix_of, propagation_charpoly
from rewirelab.errors import ExactLimitExceeded
from rewirelab.sturm import (
    bareiss_determinant,
    count_roots_above,
    count_roots_below,
    deflate_root,
    poly_gcd,
    sturm_chain,
)


def test_bareiss_matches_numpy():
    rng = random.Random(1)
    for _ in range(30):
        n = rng.randrange(1, 7)
        mat = [[rng.randrange(-5, 6) for _ in range(n)] for _ in range(n)]
        expect = round(float(np.linalg.det(np.array(mat, dtype=float))))
        assert bareiss_determinant(mat) == expect


def test_charpoly_k2():
    # det(x(D+I) - (A+I)) for K2 is (2x-1)^2 - 1 = 4x^2 - 4x
    assert propagation_charpoly(complete_graph(2)) == [0, -4, 4]


def test_charpoly_coefficients_match_float_eigenvalues():
    rng = random.Random(7)
    for _ in range(25):
        g = make_gnp(rng, rng.randrange(2, 9), rng.random())
        coeffs = propagation_charpoly(g)
        eigs = np.linalg.eigvalsh(matrix_of(g, "propagation"))
        det_d = float(np.prod([d + 1 for d in g.degrees]))
        expect = det_d * np.poly(eigs)  # high degree first
        got = np.array(list(reversed(coeffs)), dtype=float)
        assert np.allclose(got, expect, atol=1e-6 * max(1.0, det_d))


def test_gcd_and_deflation():
    # (x-1)^2 (x+2) = x^3 - 3x + 2
    p = [2, -3, 0, 1]
    g = poly_gcd(p, [(-3 + 0), 0, 3][:])  # derivative 3x^2 - 3
    assert g in ([-1, 1], [1, -1])  # x - 1 up to sign
    q, mult = deflate_root(p, Fraction(1))
    assert mult == 2 and q in ([2, 1], [-2, -1])


def test_multiplicity_aware_counting():
    # K3: eigenvalues {1, 0, 0}
    q = propagation_charpoly(complete_graph(3))
    assert count_roots_above(q, Fraction(-1, 2)) == 3
    assert count_roots_above(q, Fraction(0)) == 1
    assert count_roots_below(q, Fraction(0)) == 0
    assert count_roots_below(q, Fraction(1)) == 2


def test_sturm_counts_on_c4():
    q = propagation_charpoly(cycle_graph(4))  # eigenvalues 1, 1/3, 1/3, -1/3
    chain = sturm_chain(q)
    assert len(chain) >= 2
    assert count_roots_above(q, Fraction(1, 3)) == 1
    assert count_roots_above(q, Fraction(1, 4)) == 3


def test_exact_decision_spec_examples():
    k2 = complete_graph(2)
    assert exact_mu2_leq(k2, 0, mode="signed") is True
    assert exact_mu2_leq(k2, Fraction(-1, 100), mode="signed") is False
    assert exact_mu2_leq(build_graph(1, []), Fraction(-1)) is True  # vacuous


def test_exact_decision_absolute_mode():
    c4 = cycle_graph(4)  # propagation eigenvalues 1, 1/3, 1/3, -1/3
    assert exact_mu2_leq(c4, Fraction(1, 3), mode="absolute") is True
    assert exact_mu2_leq(c4, Fraction(33, 100), mode="absolute") is False
    assert exact_mu2_leq(c4, Fraction(-1, 10), mode="absolute") is False


def test_exact_decision_disconnected_multiplicity():
    # two K2 components: eigenvalue 1 has multiplicity 2, so mu2 = 1
    g = build_graph(4, [(0, 1), (2, 3)])
    assert exact_mu2_leq(g, Fraction(99, 100)) is False
    assert exact_mu2_leq(g, Fraction(1)) is True


def test_exact_limit():
    with pytest.raises(ExactLimitExceeded):
        exact_mu2_leq(cycle_graph(12), 0, exact_limit=10)


def test_exact_agrees_with_float_sampler():
    rng = random.Random(3)
    checked = 0
    while checked < 60:
        g = make_gnp(rng, rng.randrange(2, 9), rng.random())
        eigs = np.sort(np.linalg.eigvalsh(matrix_of(g, "propagation")))
        mu2 = float(eigs[-2])
        tau = Fraction(rng.randrange(-100, 101), 100)
        if abs(float(tau) - mu2) <= 1e-6:
            continue
        assert exact_mu2_leq(g, tau) == (mu2 <= float(tau))
        checked += 1
