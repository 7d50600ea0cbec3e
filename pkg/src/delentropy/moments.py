"""Moments of the embedding-count random variable and its autocorrelation.

Let W be the number of embeddings of a fixed pattern x (length m) in a
uniform random text of length n.  This module computes:

* exact raw and central moments of W up to order 4, by a tensor dynamic
  program over prefix embedding counts (no text enumeration);
* the autocorrelation coefficient kappa^2(x): the number of ways to
  interleave two copies of x so that they share exactly one position
  carrying equal symbols;
* the leading-order mean and variance of W for large n, and the moment set
  of the Gaussian limit;
* normalized-shape diagnostics (skewness, excess kurtosis).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import core
from .core import DegenerateDistributionError, binomial


@dataclass
class MomentSet:
    """Mean and central moments of orders 2..4, with provenance.

    ``provenance`` is "exact" (rational values from the tensor DP or an
    exact histogram), "asymptotic" (leading-order floats), or "empirical"
    (rational values from a sampled histogram).
    """

    mean: Fraction | float
    central: dict[int, Fraction | float]
    provenance: str

    @property
    def variance(self):
        return self.central[2]


@dataclass
class KappaDecomposition:
    """Matrix view of the autocorrelation sum.

    ``interleavings[r][s]`` counts interleavings of two copies of the
    pattern whose single shared position is the (r+1)-th of one copy and the
    (s+1)-th of the other; ``symbol_mask`` marks where those positions carry
    equal symbols; ``masked`` is their elementwise product, and
    ``kappa_squared`` its total.
    """

    m: int
    symbol_mask: list[list[int]]
    interleavings: list[list[int]]
    masked: list[list[int]]
    kappa_squared: int


@dataclass
class GaussianDiagnostics:
    n: int
    skewness: float
    excess_kurtosis: float


# ---------------------------------------------------------------------------
# exact moments via the tensor dynamic program
# ---------------------------------------------------------------------------

def raw_moments(x: str, n: int, rmax: int = 4) -> list[Fraction]:
    """E[W^j] for j = 1..rmax, exactly, in O(n * 2^rmax * (m+1)^rmax) time.

    State: the rmax-dimensional tensor T[i_1..i_r] summing, over all texts of
    the current length, the product of embedding counts of the prefixes
    x[:i_1], ..., x[:i_r].  Appending a symbol b maps each per-text count
    vector c linearly (c_i += [x_i = b] * c_{i-1}), so the tensor update is
    the r-fold tensor power of that map, applied dimension by dimension and
    summed over b.  All arithmetic is exact integer; the final division by
    2^n produces Fractions.
    """
    core.validate_pattern(x)
    m = len(x)
    if n < m:
        raise ValueError(f"text length {n} shorter than pattern length {m}")
    if not 1 <= rmax <= 4:
        raise ValueError("moment order must be in 1..4")
    width = m + 1
    size = width**rmax
    strides = [width**d for d in range(rmax)]
    tensor = [0] * size
    tensor[0] = 1  # empty text: c = (1, 0, ..., 0)
    for _ in range(n):
        total = None
        for b in "01":
            updated = tensor[:]
            for stride in strides:
                block = stride * width
                # descending i: position i-1 still holds the pre-update value
                for i in range(m, 0, -1):
                    if x[i - 1] == b:
                        lo = i * stride
                        for base in range(0, size, block):
                            for idx in range(base + lo, base + lo + stride):
                                updated[idx] += updated[idx - stride]
            if total is None:
                total = updated
            else:
                total = [a + u for a, u in zip(total, updated)]
        tensor = total
    denom = 1 << n
    out = []
    for j in range(1, rmax + 1):
        flat = m * sum(strides[:j])  # first j indices = m, rest = 0
        out.append(Fraction(tensor[flat], denom))
    return out


def exact_moment(x: str, n: int, r: int) -> Fraction:
    """E[W^r] as an exact rational, r in 1..4."""
    return raw_moments(x, n, r)[r - 1]


def central_from_raw(raw: list) -> tuple:
    """(mean, mu2, mu3, mu4) from raw moments [E, E2, E3, E4]."""
    e1, e2, e3, e4 = raw
    mu2 = e2 - e1 * e1
    mu3 = e3 - 3 * e2 * e1 + 2 * e1**3
    mu4 = e4 - 4 * e3 * e1 + 6 * e2 * e1**2 - 3 * e1**4
    return e1, mu2, mu3, mu4


def exact_moment_set(x: str, n: int) -> MomentSet:
    """Mean and central moments 2..4 of W, exact, from one order-4 DP pass."""
    mean, mu2, mu3, mu4 = central_from_raw(raw_moments(x, n, 4))
    return MomentSet(mean=mean, central={2: mu2, 3: mu3, 4: mu4}, provenance="exact")


# ---------------------------------------------------------------------------
# autocorrelation coefficient
# ---------------------------------------------------------------------------

def interleaving_matrix(m: int) -> list[list[int]]:
    """M[r][s] = C(r+s, r) * C(2m-r-s-2, m-r-1) for 0-based r, s.

    Counts the interleavings of two length-m index sets sharing exactly one
    position, split around the shared position.
    """
    if m < 1:
        raise ValueError("pattern length must be >= 1")
    return [
        [
            binomial(r + s - 2, r - 1) * binomial(2 * m - r - s, m - r)
            for s in range(1, m + 1)
        ]
        for r in range(1, m + 1)
    ]


def kappa_squared(x: str) -> int:
    """Autocorrelation coefficient: single-overlap interleavings of two
    copies of x whose shared position carries equal symbols."""
    core.validate_pattern(x)
    m = len(x)
    mat = interleaving_matrix(m)
    return sum(
        mat[r][s]
        for r in range(m)
        for s in range(m)
        if x[r] == x[s]
    )


def kappa_decomposition(x: str) -> KappaDecomposition:
    """The symbol mask, interleaving matrix, and their Hadamard product."""
    core.validate_pattern(x)
    m = len(x)
    mat = interleaving_matrix(m)
    mask = [[1 if x[r] == x[s] else 0 for s in range(m)] for r in range(m)]
    masked = [[mask[r][s] * mat[r][s] for s in range(m)] for r in range(m)]
    return KappaDecomposition(
        m=m,
        symbol_mask=mask,
        interleavings=mat,
        masked=masked,
        kappa_squared=sum(sum(row) for row in masked),
    )


def kappa_max(m: int) -> int:
    """Largest possible autocorrelation at length m: m * C(2m-1, m),
    attained exactly by the two constant patterns."""
    if m < 1:
        raise ValueError("pattern length must be >= 1")
    return m * binomial(2 * m - 1, m)


def variance_coefficient(kappa2: int, m: int) -> int:
    """Signed interleaving count governing the variance growth of W.

    Single-overlap interleavings contribute +1 when the shared position
    carries equal symbols and -1 otherwise, giving
    2 * kappa2 - m * C(2m-1, m).  The exact variance of W, rescaled by
    2^(2m) * (2m-1)! / n^(2m-1), converges to this number.
    """
    return 2 * kappa2 - kappa_max(m)


def asymptotic_mean(n: int, m: int) -> float:
    """Leading term of E[W]: 2^(-m) * n^m / m!."""
    if m < 1 or n < m:
        raise ValueError("need n >= m >= 1")
    return 2.0 ** (-m) * float(n) ** m / math.factorial(m)


def asymptotic_variance(n: int, m: int, kappa2: int) -> float:
    """Leading term of Var[W] for a pattern with autocorrelation kappa2.

    Matched single-overlap interleavings raise the variance and mismatched
    ones lower it, so the growth constant is the signed count
    2 * kappa2 - m * C(2m-1, m), not kappa2 itself.
    """
    if m < 1 or n < m:
        raise ValueError("need n >= m >= 1")
    coeff = variance_coefficient(kappa2, m)
    return 2.0 ** (-2 * m) * coeff * float(n) ** (2 * m - 1) / math.factorial(2 * m - 1)


def gaussian_limit_moments(n: int, m: int, kappa2: int) -> MomentSet:
    """Moment set of the Gaussian limit of W at length n.

    Mean and variance are the leading-order terms; the third central moment
    vanishes and the fourth is 3 * variance^2, the normal-law values.
    """
    var = asymptotic_variance(n, m, kappa2)
    return MomentSet(
        mean=asymptotic_mean(n, m),
        central={2: var, 3: 0.0, 4: 3.0 * var * var},
        provenance="asymptotic",
    )


# ---------------------------------------------------------------------------
# shape diagnostics
# ---------------------------------------------------------------------------

def diagnostics_from_moments(moments: MomentSet, n: int) -> GaussianDiagnostics:
    """Skewness and excess kurtosis from a moment set.

    Central moments stay exact until the final float divisions, since the
    skewness of a nearly symmetric distribution cancels heavily.
    """
    mu2 = moments.central[2]
    if mu2 <= 0:
        raise DegenerateDistributionError(
            "variance is zero; skewness and kurtosis are undefined"
        )
    v = float(mu2)
    skew = float(moments.central[3]) / v**1.5
    kurt = float(moments.central[4]) / (v * v) - 3.0
    return GaussianDiagnostics(n=n, skewness=skew, excess_kurtosis=kurt)


def gaussian_diagnostics(
    x: str, n: int, moments: MomentSet | None = None
) -> GaussianDiagnostics:
    """Diagnostics for pattern x at text length n.

    With no ``moments`` argument the exact tensor DP supplies them; pass an
    empirical moment set (from a histogram) to diagnose sampled data.
    """
    if moments is None:
        moments = exact_moment_set(x, n)
    return diagnostics_from_moments(moments, n)
