"""Exhaustive extremal scans over all patterns of a fixed length.

The autocorrelation maximum is a proved statement and any counterexample is
a hard error; the autocorrelation minimum and the finite-length entropy
minimum are evidence-gathering scans whose deviations are reported as
findings, never silently absorbed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import partial

from . import core
from ._parallel import map_ordered
from .entropy import shannon_entropy
from .moments import interleaving_matrix, kappa_max, kappa_squared

# float entropies for orbit-mates agree to rounding error; anything closer
# than this relative tolerance counts as a tie
_TIE_RTOL = 1e-9

_SCAN_CHUNKS = 64


class ExtremalInvariantError(Exception):
    """An exhaustive scan contradicted a proved extremal statement."""


@dataclass
class ExtremalResult:
    """Witnesses attaining an extremal value, with the predicted witness set.

    ``finding`` is non-None when the scan deviates from the prediction; for
    evidence-gathering criteria this is a notable finding, not an error.
    """

    criterion: str
    m: int
    value: object
    witnesses: list[str]
    expected: list[str] | None = None
    n: int | None = None

    @property
    def finding(self) -> dict | None:
        if self.expected is None or self.witnesses == self.expected:
            return None
        return {
            "criterion": self.criterion,
            "m": self.m,
            "n": self.n,
            "value": str(self.value),
            "witnesses": self.witnesses,
            "expected": self.expected,
        }


@dataclass
class OrderingTable:
    """All patterns of length m ranked by autocorrelation, with entropies.

    Rows are (pattern, kappa_squared, shannon_bits), kappa descending and
    ties broken lexicographically.  ``violations`` lists every strict
    kappa pair whose entropies are not strictly reversed, and every
    equal-kappa pair whose entropies differ beyond rounding error.
    """

    n: int
    m: int
    rows: list[tuple[str, int, float]]
    violations: list[dict] = field(default_factory=list)

    @property
    def ordering_ok(self) -> bool:
        return not self.violations


def constant_patterns(m: int) -> list[str]:
    return ["0" * m, "1" * m]


def alternating_patterns(m: int) -> list[str]:
    a = "".join("01"[i % 2] for i in range(m))
    return sorted({a, core.complement(a)})


def _kappa_chunk(m: int, bounds: tuple[int, int]):
    """Scan patterns [lo, hi) and return (max, max wits, min, min wits)."""
    lo, hi = bounds
    mat = interleaving_matrix(m)
    best_max = -1
    best_min = None
    wits_max: list[str] = []
    wits_min: list[str] = []
    rng = range(m)
    for v in range(lo, hi):
        x = format(v, f"0{m}b")
        k = 0
        for r in rng:
            xr = x[r]
            row = mat[r]
            for s in rng:
                if xr == x[s]:
                    k += row[s]
        if k > best_max:
            best_max, wits_max = k, [x]
        elif k == best_max:
            wits_max.append(x)
        if best_min is None or k < best_min:
            best_min, wits_min = k, [x]
        elif k == best_min:
            wits_min.append(x)
    return best_max, wits_max, best_min, wits_min


def _kappa_extremes(m: int, workers: int):
    if m < 1:
        raise ValueError("pattern length must be >= 1")
    total = 1 << m
    step = max(1, total // _SCAN_CHUNKS)
    bounds = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
    best_max = -1
    best_min = None
    wits_max: list[str] = []
    wits_min: list[str] = []
    for cmax, cwmax, cmin, cwmin in map_ordered(
        partial(_kappa_chunk, m), bounds, workers
    ):
        if cmax > best_max:
            best_max, wits_max = cmax, list(cwmax)
        elif cmax == best_max:
            wits_max.extend(cwmax)
        if best_min is None or cmin < best_min:
            best_min, wits_min = cmin, list(cwmin)
        elif cmin == best_min:
            wits_min.extend(cwmin)
    return best_max, sorted(wits_max), best_min, sorted(wits_min)


def verify_kappa_max(m: int, *, workers: int = 1) -> ExtremalResult:
    """Exhaustively confirm that exactly the constant patterns maximize the
    autocorrelation, at the closed-form value m * C(2m-1, m).

    A deviation would falsify a proved statement, so it raises instead of
    being reported as a finding.
    """
    best, witnesses, _, _ = _kappa_extremes(m, workers)
    expected_value = kappa_max(m)
    expected = constant_patterns(m)
    if best != expected_value or witnesses != sorted(expected):
        raise ExtremalInvariantError(
            f"autocorrelation maximum scan at m={m} found {best} on "
            f"{witnesses}, expected {expected_value} on {expected}"
        )
    return ExtremalResult(
        criterion="kappa-max",
        m=m,
        value=best,
        witnesses=witnesses,
        expected=sorted(expected),
    )


def search_kappa_min(m: int, *, workers: int = 1) -> ExtremalResult:
    """Exhaustive argmin of the autocorrelation.

    The alternating patterns are the predicted minimizers; the scan reports
    whatever it finds and leaves the comparison to the caller (a deviation
    is a notable finding, not an error).
    """
    _, _, best, witnesses = _kappa_extremes(m, workers)
    return ExtremalResult(
        criterion="kappa-min",
        m=m,
        value=best,
        witnesses=witnesses,
        expected=alternating_patterns(m),
    )


def _entropy_chunk(n: int, m: int, guard: int | None, bounds: tuple[int, int]):
    lo, hi = bounds
    return [
        (x, shannon_entropy(x, n, guard=guard))
        for x in (format(v, f"0{m}b") for v in range(lo, hi))
    ]


def _entropy_rows(n: int, m: int, guard: int | None, workers: int):
    total = 1 << m
    step = max(1, total // _SCAN_CHUNKS)
    bounds = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
    rows: list[tuple[str, float]] = []
    for part in map_ordered(partial(_entropy_chunk, n, m, guard), bounds, workers):
        rows.extend(part)
    return rows


def ordering_table(
    n: int, m: int, *, guard: int | None = None, workers: int = 1
) -> OrderingTable:
    """Rank all 2^m patterns by autocorrelation and check the entropy order.

    For every pair with strictly larger kappa the entropy must be strictly
    smaller; equal-kappa classes must agree in entropy to rounding error.
    Failures land in ``violations``.
    """
    if m < 1:
        raise ValueError("pattern length must be >= 1")
    if m > 16:
        raise ValueError("ordering table capped at m <= 16")
    if n < m:
        raise ValueError(f"text length {n} shorter than pattern length {m}")
    core.check_guard(n, guard)
    entropies = dict(_entropy_rows(n, m, guard, workers))
    rows = sorted(
        ((x, kappa_squared(x), entropies[x]) for x in core.all_bitstrings(m)),
        key=lambda row: (-row[1], row[0]),
    )
    return OrderingTable(n=n, m=m, rows=rows, violations=_ordering_violations(rows))


def _ordering_violations(rows) -> list[dict]:
    groups: list[tuple[int, list[tuple[str, float]]]] = []
    for x, k, h in rows:
        if groups and groups[-1][0] == k:
            groups[-1][1].append((x, h))
        else:
            groups.append((k, [(x, h)]))
    violations: list[dict] = []
    for k, members in groups:
        hs = [h for _, h in members]
        lo, hi = min(hs), max(hs)
        if hi - lo > _TIE_RTOL * max(1.0, abs(hi)):
            violations.append(
                {
                    "kind": "tie-mismatch",
                    "kappa2": k,
                    "patterns": [x for x, _ in members],
                    "H_spread": hi - lo,
                }
            )
    # strict pairs: every member of a higher-kappa group must have lower H
    # than every member of every lower-kappa group
    suffix_min: list[tuple[float, str]] = [None] * len(groups)
    running = None
    for i in range(len(groups) - 1, -1, -1):
        best_here = min((h, x) for x, h in groups[i][1])
        running = best_here if running is None else min(running, best_here)
        suffix_min[i] = running
    for i, (k, members) in enumerate(groups[:-1]):
        min_later, _ = suffix_min[i + 1]
        for x, h in members:
            if h < min_later:
                continue
            for k2, later in groups[i + 1 :]:
                for x2, h2 in later:
                    if h >= h2:
                        violations.append(
                            {
                                "kind": "ordering",
                                "pattern_high": x,
                                "pattern_low": x2,
                                "kappa2_high": k,
                                "kappa2_low": k2,
                                "H_high": h,
                                "H_low": h2,
                            }
                        )
    return violations


def check_entropy_min(
    m: int,
    n_values,
    *,
    guard: int | None = None,
    workers: int = 1,
) -> list[ExtremalResult]:
    """Exhaustive entropy argmin over all patterns, one result per n.

    The constant patterns are predicted to minimize for large n; each result
    records whether they do at this n (deviations surface as findings).
    """
    if m < 1:
        raise ValueError("pattern length must be >= 1")
    results = []
    for n in n_values:
        core.check_guard(n, guard)
        rows = _entropy_rows(n, m, guard, workers)
        best = min(h for _, h in rows)
        tol = _TIE_RTOL * max(1.0, abs(best))
        witnesses = sorted(x for x, h in rows if h <= best + tol)
        results.append(
            ExtremalResult(
                criterion="entropy-min",
                m=m,
                n=n,
                value=best,
                witnesses=witnesses,
                expected=constant_patterns(m),
            )
        )
    return results
