"""Command-line front end.

Every subcommand is deterministic given its full flag set (seed included)
and produces identical bytes for every ``--workers`` value.  Exit codes:
0 success, 1 internal failure (a proved statement falsified), 2 usage error,
3 enumeration-guard capacity error, 4 notable finding (a predicted witness
set deviated or the entropy ordering broke).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from functools import partial
from importlib import resources
from pathlib import Path

from . import core, distribution, embedding, entropy, extremal, moments
from ._parallel import map_ordered
from .core import CapacityError
from .extremal import ExtremalInvariantError

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_FINDING = 4


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _fmt(value, full: bool) -> str:
    if isinstance(value, float):
        return repr(value) if full else f"{value:.4f}"
    return str(value)


def _jval(value, full: bool):
    if isinstance(value, float) and not full:
        return round(value, 4)
    return value


def _render_csv(header, rows, footers=(), full=False) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v, full) for v in row])
    for line in footers:
        buf.write(f"# {line}\n")
    return buf.getvalue()


def _render_json_lines(objs, full=False) -> str:
    out = []
    for obj in objs:
        out.append(json.dumps({k: _jval(v, full) for k, v in obj.items()}))
    return "\n".join(out) + "\n"


def _render(args, header, rows, footers=(), json_objs=None) -> str:
    if args.format == "csv":
        return _render_csv(header, rows, footers, args.full_precision)
    if json_objs is None:
        json_objs = [dict(zip(header, row)) for row in rows]
    return _render_json_lines(json_objs, args.full_precision)


def _write(args, text: str, filename: str | None = None) -> None:
    if args.out is None:
        sys.stdout.write(text)
        return
    dest = Path(args.out)
    if filename is not None:
        dest.mkdir(parents=True, exist_ok=True)
        dest = dest / filename
    else:
        dest.parent.mkdir(parents=True, exist_ok=True)
    dest.write_text(text)


def _parse_n_range(text: str) -> list[int]:
    """'8' -> [8]; '5..15' -> [5, 6, ..., 15] (inclusive)."""
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
        if hi < lo:
            raise ValueError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_kappa(args) -> int:
    if (args.pattern is None) == (args.all is None):
        raise ValueError("give a pattern or --all M, not both")
    if args.all is not None:
        patterns = list(core.all_bitstrings(args.all))
    else:
        patterns = [core.validate_pattern(args.pattern)]
    if args.decomposition:
        if len(patterns) != 1:
            raise ValueError("--decomposition needs a single pattern")
        dec = moments.kappa_decomposition(patterns[0])
        if args.format == "json":
            obj = {
                "pattern": patterns[0],
                "m": dec.m,
                "kappa2": dec.kappa_squared,
                "B": dec.symbol_mask,
                "M": dec.interleavings,
                "R": dec.masked,
            }
            _write(args, _render_json_lines([obj], args.full_precision))
        else:
            buf = io.StringIO()
            for name, mat in (
                ("B", dec.symbol_mask),
                ("M", dec.interleavings),
                ("R", dec.masked),
            ):
                buf.write(f"# {name}\n")
                writer = csv.writer(buf, lineterminator="\n")
                for row in mat:
                    writer.writerow(row)
            buf.write(f"# kappa2={dec.kappa_squared}\n")
            _write(args, buf.getvalue())
        return EXIT_OK
    rows = [(x, moments.kappa_squared(x)) for x in patterns]
    _write(args, _render(args, ["pattern", "kappa2"], rows))
    return EXIT_OK


def _cmd_entropy(args) -> int:
    x = core.validate_pattern(args.pattern)
    n = args.n
    if args.mode == "exact":
        rep = entropy.entropy_report(x, n, guard=args.guard)
        header = ["pattern", "n", "H", "R", "Hmin", "mode"]
        rows = [
            (
                rep.pattern,
                rep.n,
                rep.shannon_bits,
                rep.renyi2_bits,
                rep.min_entropy_bits,
                rep.mode,
            )
        ]
    elif args.mode == "renyi2":
        header = ["pattern", "n", "R"]
        rows = [(x, n, entropy.renyi2_entropy(x, n))]
    elif args.mode == "min":
        header = ["pattern", "n", "Hmin"]
        rows = [(x, n, entropy.min_entropy(x, n, guard=args.guard))]
    else:  # estimate
        ms = moments.exact_moment_set(x, n)
        est = entropy.moment_entropy_estimate(ms, embedding.total_masks(n, len(x)))
        header = ["pattern", "n", "estimate", "bound", "moments"]
        rows = [(x, n, est.estimate_bits, est.error_bound_bits, ms.provenance)]
    _write(args, _render(args, header, rows))
    return EXIT_OK


def _hist_payload(args, hist) -> str:
    rows = sorted(hist.counts.items())
    meta = {"mode": hist.mode, "n": hist.text_length, "pattern": hist.pattern}
    if hist.mode == "sampled":
        meta["seed"] = hist.seed
    if args.format == "csv":
        footers = [f"{k}={v}" for k, v in meta.items()]
        return _render_csv(["omega", "count"], rows, footers, args.full_precision)
    objs = [{"omega": w, "count": c} for w, c in rows]
    objs.append(meta)
    return _render_json_lines(objs, args.full_precision)


def _cmd_hist(args) -> int:
    x = core.validate_pattern(args.pattern)
    ns = _parse_n_range(args.n)
    if (args.sample is None) != (args.seed is None):
        raise ValueError("--sample and --seed go together")
    if len(ns) > 1 and args.out is None:
        raise ValueError("an n range needs --out DIR (one file per n)")
    ext = "csv" if args.format == "csv" else "json"
    for n in ns:
        if args.sample is not None:
            hist = distribution.sample_histogram(
                x, n, args.sample, args.seed, workers=args.workers
            )
        else:
            hist = distribution.exact_histogram(x, n, guard=args.guard)
        payload = _hist_payload(args, hist)
        name = f"hist_{x}_n{n:02d}.{ext}" if len(ns) > 1 else None
        _write(args, payload, name)
    return EXIT_OK


def _table_rows(table):
    return [(x, k, h) for x, k, h in table.rows]


def _cmd_table(args) -> int:
    table = extremal.ordering_table(
        args.n, args.m, guard=args.guard, workers=args.workers
    )
    _write(args, _render(args, ["pattern", "kappa2", "H_bits"], _table_rows(table)))
    if table.violations:
        for v in table.violations:
            print(f"finding: {json.dumps(v)}", file=sys.stderr)
        return EXIT_FINDING
    return EXIT_OK


def _extremal_payload(args, results) -> str:
    header = ["criterion", "m", "n", "value", "witnesses"]
    rows = [
        (r.criterion, r.m, "" if r.n is None else r.n, r.value, ";".join(r.witnesses))
        for r in results
    ]
    objs = [
        {
            "m": r.m,
            "criterion": r.criterion,
            **({"n": r.n} if r.n is not None else {}),
            "value": r.value,
            "witnesses": r.witnesses,
            "violations": [r.finding] if r.finding else [],
        }
        for r in results
    ]
    return _render(args, header, rows, json_objs=objs)


def _cmd_extremal(args) -> int:
    if args.criterion == "kappa-max":
        results = [extremal.verify_kappa_max(args.m, workers=args.workers)]
    elif args.criterion == "kappa-min":
        results = [extremal.search_kappa_min(args.m, workers=args.workers)]
    else:  # entropy-min
        if args.n_range is None:
            raise ValueError("--criterion entropy-min needs --n-range")
        ns = _parse_n_range(args.n_range)
        results = extremal.check_entropy_min(
            args.m, ns, guard=args.guard, workers=args.workers
        )
    _write(args, _extremal_payload(args, results))
    findings = [r.finding for r in results if r.finding]
    if findings:
        for f in findings:
            print(f"finding: {json.dumps(f)}", file=sys.stderr)
        return EXIT_FINDING
    return EXIT_OK


def _cmd_moments(args) -> int:
    x = core.validate_pattern(args.pattern)
    n, r = args.n, args.r
    if args.mode == "exact":
        value = moments.exact_moment(x, n, r)
        header = ["pattern", "n", "r", "value_num", "value_den", "provenance"]
        rows = [(x, n, r, value.numerator, value.denominator, "exact")]
    else:
        if r == 1:
            value = moments.asymptotic_mean(n, len(x))
        elif r == 2:
            value = moments.asymptotic_variance(n, len(x), moments.kappa_squared(x))
        else:
            raise ValueError(
                "asymptotic mode covers r=1 (mean) and r=2 (variance) only"
            )
        header = ["pattern", "n", "r", "value", "provenance"]
        rows = [(x, n, r, value, "asymptotic")]
    _write(args, _render(args, header, rows))
    return EXIT_OK


def _cmd_gaussian(args) -> int:
    x = core.validate_pattern(args.pattern)
    ns = _parse_n_range(args.n)
    rows = []
    for n in ns:
        diag = moments.gaussian_diagnostics(x, n)
        rows.append((x, n, diag.skewness, diag.excess_kurtosis))
    _write(args, _render(args, ["pattern", "n", "skewness", "excess_kurtosis"], rows))
    return EXIT_OK


def _cmd_posterior(args) -> int:
    x = core.validate_pattern(args.pattern)
    dist = embedding.posterior(x, args.n, guard=args.guard, workers=args.workers)
    rows = list(dist.entries.items())
    if args.format == "csv":
        payload = _render_csv(
            ["y", "omega"], rows, [f"mu={dist.normalizer}"], args.full_precision
        )
    else:
        objs = [{"y": y, "omega": w} for y, w in rows]
        objs.append({"mu": dist.normalizer})
        payload = _render_json_lines(objs, args.full_precision)
    _write(args, payload)
    return EXIT_OK


# ---------------------------------------------------------------------------
# repro: regenerate the three reference artifacts and diff them
# ---------------------------------------------------------------------------

def _entropy_row(n: int, x: str):
    rep = entropy.entropy_report(x, n)
    return (x, n, rep.shannon_bits, rep.renyi2_bits, rep.min_entropy_bits)


def build_repro_files(workers: int = 1) -> dict[str, str]:
    """The three reference artifacts as {filename: file text}."""
    files: dict[str, str] = {}
    table = extremal.ordering_table(8, 5, workers=workers)
    files["table_n8_m5.csv"] = _render_csv(
        ["pattern", "kappa2", "H_bits"], _table_rows(table)
    )
    for n in range(5, 16):
        hist = distribution.exact_histogram("01", n)
        rows = sorted(hist.counts.items())
        files[f"fig1_hist_01_n{n:02d}.csv"] = _render_csv(
            ["omega", "count"], rows, ["mode=exact", f"n={n}", "pattern=01"]
        )
    rows = map_ordered(partial(_entropy_row, 8), core.all_bitstrings(5), workers)
    files["fig2_entropy_m5_n8.csv"] = _render_csv(
        ["pattern", "n", "H", "R", "Hmin"], rows
    )
    return files


def _cmd_repro(args) -> int:
    outdir = Path(args.out) if args.out else Path("repro_out")
    outdir.mkdir(parents=True, exist_ok=True)
    files = build_repro_files(workers=args.workers)
    expected_root = resources.files("delentropy").joinpath("repro_expected")
    failures = 0
    for name, text in files.items():
        (outdir / name).write_text(text)
        expected = expected_root.joinpath(name)
        if not expected.is_file():
            print(f"missing expected file: {name}", file=sys.stderr)
            failures += 1
            continue
        if expected.read_text() != text:
            print(f"MISMATCH {name}", file=sys.stderr)
            failures += 1
        else:
            print(f"ok {name}")
    return EXIT_OK if failures == 0 else EXIT_INTERNAL


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_common(sub, guard=False, workers=False):
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--out", default=None, help="output file (or directory for sweeps)")
    sub.add_argument(
        "--full-precision",
        action="store_true",
        help="shortest round-trip floats instead of 4 decimals",
    )
    if guard:
        sub.add_argument(
            "--guard",
            type=int,
            default=None,
            help=f"enumeration guard on n (default {core.DEFAULT_GUARD})",
        )
    if workers:
        sub.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="delentropy",
        description="Embedding counts, posterior entropies and extremal scans "
        "for binary patterns under deletions.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("kappa", help="autocorrelation coefficient")
    p.add_argument("pattern", nargs="?")
    p.add_argument("--all", type=int, metavar="M", help="all patterns of length M")
    p.add_argument("--decomposition", action="store_true", help="dump B, M, R matrices")
    _add_common(p)
    p.set_defaults(func=_cmd_kappa)

    p = subs.add_parser("entropy", help="posterior entropies")
    p.add_argument("pattern")
    p.add_argument("n", type=int)
    p.add_argument(
        "--mode", choices=("exact", "estimate", "renyi2", "min"), default="exact"
    )
    _add_common(p, guard=True)
    p.set_defaults(func=_cmd_entropy)

    p = subs.add_parser("hist", help="weight histogram (exact or sampled)")
    p.add_argument("pattern")
    p.add_argument("n", help="text length or inclusive range a..b")
    p.add_argument("--sample", type=int, default=None, help="Monte Carlo sample size")
    p.add_argument("--seed", type=int, default=None, help="64-bit PRNG seed")
    _add_common(p, guard=True, workers=True)
    p.set_defaults(func=_cmd_hist)

    p = subs.add_parser("table", help="kappa/entropy ordering table")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    _add_common(p, guard=True, workers=True)
    p.set_defaults(func=_cmd_table)

    p = subs.add_parser("extremal", help="exhaustive extremal scans")
    p.add_argument(
        "--criterion",
        required=True,
        choices=("kappa-max", "kappa-min", "entropy-min"),
    )
    p.add_argument("m", type=int)
    p.add_argument("--n-range", default=None, help="n values a..b for entropy-min")
    _add_common(p, guard=True, workers=True)
    p.set_defaults(func=_cmd_extremal)

    p = subs.add_parser("moments", help="moments of the embedding count")
    p.add_argument("pattern")
    p.add_argument("n", type=int)
    p.add_argument("--r", type=int, required=True, choices=(1, 2, 3, 4))
    p.add_argument("--mode", choices=("exact", "asymptotic"), default="exact")
    _add_common(p)
    p.set_defaults(func=_cmd_moments)

    p = subs.add_parser("gaussian", help="skewness and excess kurtosis vs n")
    p.add_argument("pattern")
    p.add_argument("n", help="text length or inclusive range a..b")
    _add_common(p)
    p.set_defaults(func=_cmd_gaussian)

    p = subs.add_parser("posterior", help="weights of all compatible texts")
    p.add_argument("pattern")
    p.add_argument("n", type=int)
    _add_common(p, guard=True, workers=True)
    p.set_defaults(func=_cmd_posterior)

    p = subs.add_parser("repro", help="rebuild reference artifacts and diff them")
    p.add_argument("--out", default=None, help="output directory (default repro_out)")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_repro)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ExtremalInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
