"""Entropies of the posterior over compatible texts, exact and estimated.

The posterior assigns each text probability weight / total.  Writing W for
the weight of a uniform random text and mu for the total weight, the Shannon
entropy satisfies the exact identity

    H = log2(mu) - E[W * log2(W)] / E[W],

because summing w * log2(w) over texts weighted by 1/mu differs from the
uniform expectation E[W log2 W] by the factor 2^n / mu = 1 / E[W].  The
moment-based estimator below expands E[W ln W] around E = E[W] to third
order and carries the rigorous fourth-moment remainder bound through the
same normalization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import core
from .distribution import exact_histogram
from .embedding import total_masks
from .moments import MomentSet, raw_moments

_LN2 = math.log(2.0)


@dataclass
class EntropyReport:
    pattern: str
    n: int
    shannon_bits: float
    renyi2_bits: float
    min_entropy_bits: float
    mode: str  # "exact" | "estimated"


@dataclass
class EntropyEstimate:
    """Moment-based Shannon entropy estimate with a rigorous enclosure.

    Given exact input moments, the exact entropy lies within
    [estimate_bits - error_bound_bits, estimate_bits + error_bound_bits].
    """

    estimate_bits: float
    error_bound_bits: float
    moments: MomentSet
    normalizer: int


def shannon_entropy(x: str, n: int, *, guard: int | None = None) -> float:
    """Exact posterior Shannon entropy in bits.

    Texts with equal weight are grouped through the exact histogram, so the
    log accumulation runs over distinct weight classes with exact
    multiplicities; floats appear only in the per-class products.
    """
    hist = exact_histogram(x, n, guard=guard)
    mu = total_masks(n, len(x))
    acc = 0.0
    for w, mult in hist.counts.items():
        if w > 1:
            acc += float(Fraction(mult * w, mu)) * math.log2(w)
    return math.log2(mu) - acc


def renyi2_entropy(x: str, n: int) -> float:
    """Second-order Renyi entropy -log2(sum p^2) in bits.

    The collision sum over texts is 2^n * E[W^2], served by the moment DP,
    so no enumeration guard applies.
    """
    core.validate_pattern(x)
    m = len(x)
    sum_w2 = int(raw_moments(x, n, 2)[1] * (1 << n))
    return 2.0 * math.log2(total_masks(n, m)) - math.log2(sum_w2)


def min_entropy(x: str, n: int, *, guard: int | None = None) -> float:
    """Min-entropy -log2(max posterior probability) in bits."""
    hist = exact_histogram(x, n, guard=guard)
    w_max = max(w for w in hist.counts if hist.counts[w] > 0)
    return math.log2(total_masks(n, len(x))) - math.log2(w_max)


def entropy_report(x: str, n: int, *, guard: int | None = None) -> EntropyReport:
    """Shannon, Renyi-2 and min-entropy of the exact posterior."""
    return EntropyReport(
        pattern=x,
        n=n,
        shannon_bits=shannon_entropy(x, n, guard=guard),
        renyi2_bits=renyi2_entropy(x, n),
        min_entropy_bits=min_entropy(x, n, guard=guard),
        mode="exact",
    )


def moment_entropy_estimate(moments: MomentSet, normalizer: int) -> EntropyEstimate:
    """Entropy estimate from the mean and central moments 2..4 of W.

    Third-order expansion of w ln w around the mean E:

        E[W ln W] ~ E ln E + V / (2E) - mu3 / (6 E^2),

    with remainder magnitude at most (5/3) * mu4 / E^3 in natural-log units.
    Both the core term and the bound are divided by E * ln 2 on the way to
    bits, applying the posterior normalization of the module docstring.
    """
    mean = float(moments.mean)
    if mean <= 0.0:
        raise ValueError("mean must be positive")
    var = float(moments.central[2])
    mu3 = float(moments.central[3])
    mu4 = float(moments.central[4])
    core_nat = mean * math.log(mean) + var / (2.0 * mean) - mu3 / (6.0 * mean * mean)
    estimate = math.log2(normalizer) - core_nat / (mean * _LN2)
    bound = (5.0 / 3.0) * mu4 / (mean**4 * _LN2)
    return EntropyEstimate(
        estimate_bits=estimate,
        error_bound_bits=bound,
        moments=moments,
        normalizer=normalizer,
    )
