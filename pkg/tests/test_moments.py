import itertools
import math
from fractions import Fraction

import pytest

from delentropy import (
    asymptotic_mean,
    asymptotic_variance,
    exact_moment,
    exact_moment_set,
    gaussian_diagnostics,
    gaussian_limit_moments,
    kappa_decomposition,
    kappa_max,
    kappa_squared,
    raw_moments,
    variance_coefficient,
)
from delentropy.core import DegenerateDistributionError
from delentropy.moments import MomentSet, diagnostics_from_moments

import oracles


# ---------------------------------------------------------------------------
# exact moments
# ---------------------------------------------------------------------------

def test_exact_moment_examples():
    assert exact_moment("01010", 8, 1) == Fraction(7, 4)
    assert exact_moment("11111", 8, 1) == Fraction(7, 4)
    assert exact_moment("01", 4, 2) == Fraction(62, 16)
    for s in ("0", "01", "0110"):
        assert exact_moment(s, len(s), 1) == Fraction(1, 1 << len(s))


def test_exact_moments_match_enumeration():
    for x in ("0", "1", "01", "10", "00", "010", "011", "000"):
        for n in range(len(x), 9):
            assert raw_moments(x, n, 4) == oracles.brute_raw_moments(x, n, 4)


def test_exact_mean_closed_form():
    for m in range(1, 4):
        for x in ("".join(p) for p in itertools.product("01", repeat=m)):
            for n in range(m, 13):
                assert exact_moment(x, n, 1) == Fraction(math.comb(n, m), 1 << m)


def test_moment_order_contract():
    for bad in (0, 5, -1):
        with pytest.raises(ValueError):
            exact_moment("01", 4, bad)
    with pytest.raises(ValueError):
        exact_moment("01", 1, 2)  # n < m


def test_exact_moment_set_consistency():
    ms = exact_moment_set("01", 4)
    assert ms.provenance == "exact"
    assert ms.mean == Fraction(3, 2)
    assert ms.central[2] == Fraction(62, 16) - Fraction(9, 4)
    assert ms.central[2] >= 0 and ms.central[4] >= 0


# ---------------------------------------------------------------------------
# autocorrelation
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "x,want",
    [("11111", 630), ("00000", 630), ("01010", 350), ("01", 4), ("0", 1), ("1", 1)],
)
def test_kappa_squared_values(x, want):
    assert kappa_squared(x) == want


def test_kappa_decomposition_m2():
    dec = kappa_decomposition("01")
    assert dec.interleavings == [[2, 1], [1, 2]]
    assert dec.symbol_mask == [[1, 0], [0, 1]]
    assert dec.masked == [[2, 0], [0, 2]]
    assert dec.kappa_squared == 4


def test_kappa_decomposition_constant_pattern():
    for m in (1, 3, 5):
        dec = kappa_decomposition("1" * m)
        assert all(all(v == 1 for v in row) for row in dec.symbol_mask)
        assert dec.masked == dec.interleavings
        assert dec.kappa_squared == kappa_max(m)


def test_symbol_mask_complement_invariant():
    for x in ("01101", "0010", "111000"):
        from delentropy import complement

        assert kappa_decomposition(x).symbol_mask == kappa_decomposition(
            complement(x)
        ).symbol_mask


@pytest.mark.parametrize("m,want", [(5, 630), (1, 1), (2, 6), (14, 280816200)])
def test_kappa_max_values(m, want):
    assert kappa_max(m) == want


def test_kappa_rejects_empty():
    with pytest.raises(ValueError):
        kappa_squared("")
    with pytest.raises(ValueError):
        kappa_max(0)


# ---------------------------------------------------------------------------
# asymptotics
# ---------------------------------------------------------------------------

def test_asymptotic_mean_example():
    assert asymptotic_mean(100, 2) == pytest.approx(1250.0)


def test_exact_over_asymptotic_mean_ratio():
    # C(100,2)/4 over 100^2/8
    ratio = float(exact_moment("01", 100, 1)) / asymptotic_mean(100, 2)
    assert ratio == pytest.approx(0.99, abs=1e-12)


def test_variance_coefficient_values():
    # signed interleaving counts, cross-checked against the exact variance
    # growth of the moment DP (see test_asymptotic_variance_is_the_limit)
    assert variance_coefficient(4, 2) == 2
    assert variance_coefficient(6, 2) == 6
    assert variance_coefficient(18, 3) == 6
    assert variance_coefficient(22, 3) == 14
    assert variance_coefficient(30, 3) == 30
    assert variance_coefficient(kappa_max(5), 5) == kappa_max(5)


def test_asymptotic_variance_values():
    assert asymptotic_variance(100, 2, 4) == pytest.approx(20833.333333, rel=1e-9)
    assert asymptotic_variance(100, 2, 6) == pytest.approx(62500.0)


def test_asymptotic_variance_is_the_limit():
    # the exact variance over the asymptotic one approaches 1, for a
    # non-constant pattern where the unsigned count would be off by 3x
    x = "010"
    k2 = kappa_squared(x)
    ratios = []
    for n in (40, 80, 160):
        e1, e2 = raw_moments(x, n, 2)
        exact_var = float(e2 - e1 * e1)
        ratios.append(exact_var / asymptotic_variance(n, 3, k2))
    assert abs(ratios[-1] - 1.0) < 1e-3
    assert abs(ratios[-1] - 1.0) < abs(ratios[0] - 1.0)


def test_gaussian_limit_moments():
    ms = gaussian_limit_moments(100, 2, 4)
    assert ms.provenance == "asymptotic"
    assert ms.mean == pytest.approx(1250.0)
    assert ms.central[3] == 0.0
    assert ms.central[4] == pytest.approx(3.0 * ms.central[2] ** 2)


# ---------------------------------------------------------------------------
# diagnostics
# ---------------------------------------------------------------------------

def test_gaussian_diagnostics_bernoulli():
    diag = gaussian_diagnostics("0", 1)
    assert diag.skewness == pytest.approx(0.0)
    assert diag.excess_kurtosis == pytest.approx(-2.0)


def test_gaussian_diagnostics_trend():
    skew5 = gaussian_diagnostics("01", 5).skewness
    skew15 = gaussian_diagnostics("01", 15).skewness
    assert abs(skew15) < abs(skew5)


def test_gaussian_diagnostics_from_histogram_moments():
    from delentropy import empirical_moments, exact_histogram

    ms = empirical_moments(exact_histogram("01", 8))
    via_hist = gaussian_diagnostics("01", 8, moments=ms)
    direct = gaussian_diagnostics("01", 8)
    assert via_hist.skewness == pytest.approx(direct.skewness)
    assert via_hist.excess_kurtosis == pytest.approx(direct.excess_kurtosis)


def test_gaussian_diagnostics_degenerate():
    flat = MomentSet(mean=Fraction(1), central={2: Fraction(0), 3: 0, 4: 0},
                     provenance="exact")
    with pytest.raises(DegenerateDistributionError):
        diagnostics_from_moments(flat, 4)


def test_normalized_moment_convergence():
    # third normalized moment shrinks toward 0, fourth rises toward 3
    norm3, norm4 = [], []
    for n in (8, 16, 32, 64):
        ms = exact_moment_set("01", n)
        v = float(ms.central[2])
        norm3.append(float(ms.central[3]) / v**1.5)
        norm4.append(float(ms.central[4]) / v**2)
    assert all(a > b for a, b in zip(norm3, norm3[1:]))
    assert all(abs(a - 3) > abs(b - 3) for a, b in zip(norm4, norm4[1:]))
    assert abs(norm3[-1]) < 1e-3
    assert abs(norm4[-1] - 3) < 0.1
