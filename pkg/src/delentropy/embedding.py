"""Subsequence embedding counts and the exact posterior over supersequences.

For a pattern x of length m and a text y of length n, the weight of y is the
number of ways x embeds into y as a subsequence (the number of increasing
index sets projecting y onto x).  Conditioned on observing x, a text carries
posterior probability weight / total, where the total over all length-n texts
is C(n, m) * 2^(n-m).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial
from typing import Iterator

from . import core
from ._parallel import map_ordered

# Subtree tasks for parallel enumeration share the text space by this many
# leading bits; any value gives the same merged output.
_PREFIX_DEPTH = 6


@dataclass
class WeightDistribution:
    """Posterior over the texts compatible with a pattern.

    ``entries`` maps each text with weight >= 1 to its weight, in
    lexicographic text order; weights sum to ``normalizer``.
    """

    pattern: str
    text_length: int
    entries: dict[str, int]
    normalizer: int

    def probability(self, y: str):
        from fractions import Fraction

        return Fraction(self.entries.get(y, 0), self.normalizer)


def count_embeddings(x: str, y: str) -> int:
    """Number of ways x occurs in y as a subsequence (0 if it does not).

    Standard prefix dynamic program: dp[i] counts embeddings of x[:i] in the
    scanned part of y, updated in place per text symbol.
    """
    core.validate_pattern(x)
    core.validate_text(y)
    m = len(x)
    dp = [1] + [0] * m
    for c in y:
        for i in range(m, 0, -1):
            if x[i - 1] == c:
                dp[i] += dp[i - 1]
    return dp[m]


def total_masks(n: int, m: int) -> int:
    """Total embedding count over all length-n texts: C(n, m) * 2^(n-m)."""
    if m < 1:
        raise ValueError("pattern length must be >= 1")
    if m > n:
        raise ValueError(f"pattern length {m} exceeds text length {n}")
    return core.binomial(n, m) * (1 << (n - m))


def _subtree_rows(x: str, n: int, prefix: str) -> list[tuple[str, int]]:
    """All (text, weight) rows with weight >= 1 in the subtree under prefix."""
    m = len(x)
    dp = [1] + [0] * m
    for c in prefix:
        for i in range(m, 0, -1):
            if x[i - 1] == c:
                dp[i] += dp[i - 1]
    rows: list[tuple[str, int]] = []
    bits = list(prefix) + [""] * (n - len(prefix))

    def walk(depth: int) -> None:
        if depth == n:
            if dp[m]:
                rows.append(("".join(bits), dp[m]))
            return
        for b in "01":
            bits[depth] = b
            for i in range(m, 0, -1):
                if x[i - 1] == b:
                    dp[i] += dp[i - 1]
            walk(depth + 1)
            for i in range(1, m + 1):
                if x[i - 1] == b:
                    dp[i] -= dp[i - 1]

    walk(len(prefix))
    return rows


def uncertainty_set(
    x: str, n: int, *, guard: int | None = None, workers: int = 1
) -> Iterator[tuple[str, int]]:
    """Yield (text, weight) for every length-n text with weight >= 1.

    Texts come out in lexicographic order, each exactly once.  The walk keeps
    the vector of prefix embedding counts incrementally, so the whole stream
    costs O(2^n * m) rather than O(2^n * n * m).
    """
    core.validate_pattern(x)
    m = len(x)
    if n < m:
        raise ValueError(f"text length {n} shorter than pattern length {m}")
    core.check_guard(n, guard)
    if workers <= 1:
        yield from _subtree_rows(x, n, "")
        return
    depth = min(n, _PREFIX_DEPTH)
    prefixes = list(core.all_bitstrings(depth)) if depth else [""]
    for rows in map_ordered(partial(_subtree_rows, x, n), prefixes, workers):
        yield from rows


def posterior(
    x: str, n: int, *, guard: int | None = None, workers: int = 1
) -> WeightDistribution:
    """Exact posterior weight distribution over the compatible texts."""
    entries = dict(uncertainty_set(x, n, guard=guard, workers=workers))
    return WeightDistribution(
        pattern=x,
        text_length=n,
        entries=entries,
        normalizer=total_masks(n, len(x)),
    )
