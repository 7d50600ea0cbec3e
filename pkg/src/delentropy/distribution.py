"""Exact and sampled distributions of the embedding count over random texts.

The histogram of W (embedding count of a fixed pattern in a uniform random
text) includes the zero bin: texts that cannot produce the pattern are part
of the text space even though they carry no posterior mass.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import partial

import numpy as np

from . import core
from ._parallel import map_ordered
from .embedding import total_masks
from .moments import MomentSet

# Sample index s is drawn by PRNG stream s // _BLOCK; stream j is
# PCG64(seed).jumped(j).  The rule fixes results for every worker count.
_BLOCK = 8192


@dataclass
class WeightHistogram:
    """Multiplicity of each attained weight value.

    Exact mode: multiplicities over all 2^n texts (they sum to 2^n).
    Sampled mode: counts over ``sample_size`` texts drawn i.i.d. uniform.
    """

    pattern: str
    text_length: int
    counts: dict[int, int]
    mode: str  # "exact" | "sampled"
    sample_size: int | None = None
    seed: int | None = None

    def total(self) -> int:
        return sum(self.counts.values())


def exact_histogram(x: str, n: int, *, guard: int | None = None) -> WeightHistogram:
    """Exact multiplicity of every weight value over all 2^n texts.

    Texts with equal prefix-count vectors are indistinguishable to every
    future symbol, so the walk aggregates them: the state map sends each
    reachable count vector to the number of texts producing it.  The result
    is identical to enumerating all texts, usually far cheaper.
    """
    core.validate_pattern(x)
    m = len(x)
    if n < m:
        raise ValueError(f"text length {n} shorter than pattern length {m}")
    core.check_guard(n, guard)
    states: dict[tuple, int] = {(0,) * m: 1}
    for _ in range(n):
        nxt: dict[tuple, int] = {}
        for vec, mult in states.items():
            for b in "01":
                c = list(vec)
                for i in range(m, 0, -1):
                    if x[i - 1] == b:
                        c[i - 1] += c[i - 2] if i >= 2 else 1
                key = tuple(c)
                if key in nxt:
                    nxt[key] += mult
                else:
                    nxt[key] = mult
        states = nxt
    counts: dict[int, int] = {}
    for vec, mult in states.items():
        w = vec[m - 1]
        counts[w] = counts.get(w, 0) + mult
    return WeightHistogram(pattern=x, text_length=n, counts=counts, mode="exact")


def _count_block(x: str, n: int, seed: int, block: tuple[int, int]) -> dict[int, int]:
    """Tally weights for one PRNG stream's slice of the sample index space."""
    stream, size = block
    rng = np.random.Generator(np.random.PCG64(seed).jumped(stream))
    bits = rng.integers(0, 2, size=(size, n), dtype=np.uint8)
    m = len(x)
    xb = np.array([1 if c == "1" else 0 for c in x], dtype=np.uint8)
    if core.binomial(n, m) < 2**62:
        dp = np.zeros((size, m + 1), dtype=np.int64)
        dp[:, 0] = 1
        for t in range(n):
            col = bits[:, t]
            for i in range(m, 0, -1):
                dp[:, i] += (col == xb[i - 1]) * dp[:, i - 1]
        values, tallies = np.unique(dp[:, m], return_counts=True)
        return {int(v): int(c) for v, c in zip(values, tallies)}
    # counts may overflow int64: same draws, exact big-int DP per text
    out: dict[int, int] = {}
    for row in bits:
        dp_row = [1] + [0] * m
        for b in row:
            for i in range(m, 0, -1):
                if xb[i - 1] == b:
                    dp_row[i] += dp_row[i - 1]
        out[dp_row[m]] = out.get(dp_row[m], 0) + 1
    return out


def sample_histogram(
    x: str,
    n: int,
    sample_size: int,
    seed: int,
    *,
    workers: int = 1,
) -> WeightHistogram:
    """Histogram of weights over sample_size uniform random texts.

    Reproducible: the (seed, sample_size) pair fully determines the result;
    worker count never changes it (see the block-to-stream rule above).
    There is no enumeration guard, so this extends histograms past it.
    """
    core.validate_pattern(x)
    m = len(x)
    if n < m:
        raise ValueError(f"text length {n} shorter than pattern length {m}")
    if sample_size < 1:
        raise ValueError("sample_size must be >= 1")
    blocks = [
        (j, min(_BLOCK, sample_size - j * _BLOCK))
        for j in range((sample_size + _BLOCK - 1) // _BLOCK)
    ]
    counts: dict[int, int] = {}
    for part in map_ordered(partial(_count_block, x, n, seed), blocks, workers):
        for w, c in part.items():
            counts[w] = counts.get(w, 0) + c
    return WeightHistogram(
        pattern=x,
        text_length=n,
        counts=counts,
        mode="sampled",
        sample_size=sample_size,
        seed=seed,
    )


def empirical_moments(hist: WeightHistogram) -> MomentSet:
    """Mean and central moments 2..4 of a histogram, as exact rationals."""
    total = hist.total()
    if total == 0:
        raise ValueError("histogram is empty")
    mean = Fraction(sum(w * c for w, c in hist.counts.items()), total)
    central = {}
    for r in (2, 3, 4):
        central[r] = (
            sum((Fraction(w) - mean) ** r * c for w, c in hist.counts.items()) / total
        )
    return MomentSet(
        mean=mean,
        central=central,
        provenance="exact" if hist.mode == "exact" else "empirical",
    )


def histogram_mass_checks(hist: WeightHistogram) -> None:
    """Raise if an exact histogram breaks its counting identities."""
    if hist.mode != "exact":
        return
    n, m = hist.text_length, len(hist.pattern)
    if hist.total() != 1 << n:
        raise AssertionError("exact multiplicities must sum to 2^n")
    weighted = sum(w * c for w, c in hist.counts.items())
    if weighted != total_masks(n, m):
        raise AssertionError("weighted sum must equal C(n,m) * 2^(n-m)")
