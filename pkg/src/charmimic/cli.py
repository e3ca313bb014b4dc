"""Command-line surface: sums, verification suites, arcs, search, reports.

Subcommands
  sum       partial-sum profile of a twisted harmonic sum (CSV or JSON)
  verify    run a named identity suite; exit 1 if any case fails
  arcs      classify a phase into minor / major arcs (JSON)
  nearest   nearest primitive character to a function (JSON)
  extremal  resumable modulus sweeps for matched or quadratic families
  diag      diagnostic reports: scans, residual envelopes, growth tables

Exit codes are a stable contract: 0 success, 1 a verification assertion
failed, 2 usage or value error, 3 a resource cap was hit.  All JSON going
to stdout is schema-backed (see the schemas directory) and printed with
sorted keys so identical runs emit identical bytes; figures, when
requested with --figures, are rendered next to the delimited output.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .arith import ResourceCapError
from .characters import (
    DirichletCharacter,
    character,
    chi_minus4,
    enumerate_characters,
    legendre,
    primitive_characters,
)
from .config import RunConfig
from .dioph import classify_arc
from .expsums import char_sum_fourier, coprime_split_residual, weighted_expsum, weighted_profile
from .extremal import (
    build_target,
    candidate_moduli,
    growth_report,
    paley_baseline,
    sweep_matching,
)
from .mimicry import (
    distance_ratio_scan,
    distance_sq,
    equidistribution_diagnostic,
    nearest_primitive,
    nearest_twist_distance,
)
from .multfun import from_character, one, random_unimodular, twist
from .verify import SUITES, run_suite
from . import figures

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def parse_char_spec(spec: str) -> DirichletCharacter:
    """Accepts "q=Q,index=I", "chi-4", or "legendre:P"."""
    spec = spec.strip()
    if spec == "chi-4":
        return chi_minus4()
    if spec.startswith("legendre:"):
        return legendre(int(spec.split(":", 1)[1]))
    fields = {}
    for part in spec.split(","):
        if "=" not in part:
            raise ValueError("bad character spec %r" % spec)
        key, _, val = part.partition("=")
        fields[key.strip()] = int(val)
    if set(fields) != {"q", "index"}:
        raise ValueError("character spec needs q= and index=, got %r" % spec)
    return character(fields["q"], fields["index"])


def _parse_function(args):
    if getattr(args, "one", False):
        f = one()
    elif getattr(args, "char", None):
        f = from_character(parse_char_spec(args.char))
    else:
        raise ValueError("specify a function with --char SPEC or --one")
    t = getattr(args, "twist", 0.0) or 0.0
    if t:
        f = twist(f, t)
    return f


def _emit_json(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config_from(args) -> RunConfig:
    cfg = RunConfig(
        jobs=getattr(args, "jobs", 1),
        cache_dir=getattr(args, "cache_dir", None),
        fmt=getattr(args, "format", "csv"),
        seed=getattr(args, "seed", 20260822),
        figure_dir=getattr(args, "figures", None),
    )
    cfg.apply_cache_dir()
    return cfg


# ---------------------------------------------------------------------------
# subcommands

def cmd_sum(args) -> int:
    config = _config_from(args)
    f = _parse_function(args)
    y = args.y if args.y is not None else math.inf
    profile = weighted_profile(f, args.x, y, args.alpha)
    if config.fmt == "json":
        payload = {
            "summary": profile.summary(),
            "rows": [
                {"t": t, "re": re, "im": im, "abs": ab} for t, re, im, ab in profile.rows()
            ],
        }
        _emit_json(payload, args.out)
    else:
        profile.write_csv(args.out)
    if config.figure_dir:
        path = figures.profile_figure(
            profile, os.path.join(config.figure_dir, "sum_profile.png")
        )
        print("figure: %s" % path, file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    config = _config_from(args)
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    reports = [run_suite(name, config) for name in names]
    for rep in reports:
        print(
            "suite %s: %d cases, %d failures, %.2fs"
            % (rep.suite, len(rep.cases), len(rep.failures), rep.duration),
            file=sys.stderr,
        )
    if config.fmt == "json":
        payload = {"reports": [rep.to_json() for rep in reports]}
        payload["passed"] = all(rep.passed for rep in reports)
        _emit_json(payload, args.out)
    else:
        from .ioutil import open_text_sink

        with open_text_sink(args.out) as fh:
            fh.write("suite,name,passed,error,detail\n")
            for rep in reports:
                for c in rep.sorted_cases():
                    fh.write(
                        '%s,%s,%s,%.17g,"%s"\n'
                        % (
                            rep.suite,
                            c.name,
                            "pass" if c.passed else "FAIL",
                            c.error,
                            c.detail,
                        )
                    )
    return EXIT_OK if all(rep.passed for rep in reports) else EXIT_FAIL


def cmd_arcs(args) -> int:
    arc = classify_arc(args.alpha, args.y, args.m, M=args.window)
    _emit_json(arc.to_json(alpha=args.alpha), args.out)
    return EXIT_OK


def cmd_nearest(args) -> int:
    config = _config_from(args)
    f = _parse_function(args)
    result = nearest_primitive(f, args.y, args.bound)
    _emit_json(result.to_json(), args.out)
    return EXIT_OK


def cmd_extremal(args) -> int:
    config = _config_from(args)
    out_dir = args.out_dir or "."
    os.makedirs(out_dir, exist_ok=True)
    if args.family == "paley":
        moduli = candidate_moduli(1, int(args.qmax), q_min=3)
        records = paley_baseline(moduli)
        summary = growth_report(records)
        csv_path = os.path.join(out_dir, "paley_growth.csv")
        summary.write_csv(csv_path)
        payload = {
            "family": "paley",
            "record_count": len(records),
            "summary": {
                k: v for k, v in summary.to_json().items() if k != "records"
            },
            "artifacts": [csv_path],
        }
        if config.figure_dir:
            fig = figures.growth_figure(
                summary, os.path.join(config.figure_dir, "paley_growth.png"), "quadratic family"
            )
            payload["artifacts"].append(fig)
        _emit_json(payload, args.out)
        return EXIT_OK
    xi = parse_char_spec(args.xi)
    pattern = build_target(args.g, xi, args.prime_bound)
    name = args.resume or "sweep"
    records_path = os.path.join(out_dir, name + ".jsonl")
    state_path = os.path.join(out_dir, name + ".state.json")
    records = sweep_matching(
        pattern,
        int(args.qmax),
        args.prime_target,
        records_path,
        state_path,
        jobs=config.jobs,
        stop_after=args.stop_after,
    )
    payload = {
        "family": "order-%d" % args.g,
        "pattern": pattern.to_json(),
        "record_count": len(records),
        "records_file": records_path,
        "state_file": state_path,
        "artifacts": [records_path, state_path],
    }
    if records:
        summary = growth_report(records)
        csv_path = os.path.join(out_dir, name + "_growth.csv")
        summary.write_csv(csv_path)
        payload["summary"] = {
            k: v for k, v in summary.to_json().items() if k != "records"
        }
        payload["artifacts"].append(csv_path)
        if config.figure_dir:
            fig = figures.growth_figure(
                summary,
                os.path.join(config.figure_dir, name + "_growth.png"),
                payload["family"],
            )
            payload["artifacts"].append(fig)
    _emit_json(payload, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# diagnostics

def _diag_scan(config: RunConfig, out_dir: str) -> dict:
    chi = character(7, 2)
    if chi.order != 3 or chi.parity != 1:
        raise AssertionError("expected an even cubic character")
    xi = chi_minus4()
    y = 1e5
    betas = np.linspace(-5.0, 5.0, 201)
    table = distance_ratio_scan(chi, xi, y, betas)
    csv_path = os.path.join(out_dir, "distance_scan.csv")
    table.write_csv(csv_path)
    artifacts = [csv_path]
    if config.figure_dir:
        artifacts.append(
            figures.scan_figure(table, os.path.join(config.figure_dir, "distance_scan.png"))
        )
    return {
        "suite": "scan",
        "summary": {
            "y": y,
            "min_ratio": table.min_ratio,
            "min_beta": table.min_beta,
            "reference_defect": table.reference,
            "slack": table.slack,
        },
        "artifacts": artifacts,
    }


def _diag_fourier(config: RunConfig, out_dir: str) -> dict:
    rows = []
    worst_ratio = 0.0
    for chi in primitive_characters(51):
        q = chi.modulus
        if q < 3:
            continue
        for t in (q / 3.0, q / 2.0, float(q)):
            for mult in (1, 2, 4, 8):
                N = mult * q
                _, residual = char_sum_fourier(chi, t, N)
                base = 1.0 + q * math.log(q) / N
                rows.append((q, chi.index, t, N, residual, base))
                worst_ratio = max(worst_ratio, residual / base)
    csv_path = os.path.join(out_dir, "fourier_residuals.csv")
    with open(csv_path, "w", encoding="ascii") as fh:
        fh.write("q,index,t,N,residual,envelope_base\n")
        for q, idx, t, N, residual, base in rows:
            fh.write("%d,%d,%.17g,%d,%.17g,%.17g\n" % (q, idx, t, N, residual, base))
    artifacts = [csv_path]
    if config.figure_dir:
        xs = [r[3] for r in rows]
        res = [r[4] for r in rows]
        env = [worst_ratio * r[5] for r in rows]
        artifacts.append(
            figures.residual_figure(
                xs, res, env, os.path.join(config.figure_dir, "fourier_residuals.png"), "truncation N"
            )
        )
    return {
        "suite": "fourier",
        "summary": {"fitted_constant": worst_ratio, "cases": len(rows)},
        "artifacts": artifacts,
    }


def _diag_coprime_split(config: RunConfig, out_dir: str) -> dict:
    rng = np.random.default_rng(config.seed + 2)
    funcs = [
        ("character-q7", from_character(character(7, 1))),
        ("character-q12", from_character(character(12, 1))),
        ("random-unimodular", random_unimodular(100_000, rng)),
    ]
    rows = []
    fitted = 0.0
    for fname, g in funcs:
        for x in (1000.0, 10_000.0, 100_000.0):
            for k in (1, 2, 6, 30, 210, 2310, 9240):
                _, _, residual = coprime_split_residual(g, x, k)
                env = math.log(math.log(k + 2)) ** 3 if k > 1 else 1.0
                rows.append((fname, x, k, abs(residual), env))
                if k > 1:
                    fitted = max(fitted, abs(residual) / env)
    csv_path = os.path.join(out_dir, "coprime_split_residuals.csv")
    with open(csv_path, "w", encoding="ascii") as fh:
        fh.write("function,x,k,residual,envelope_base\n")
        for fname, x, k, residual, env in rows:
            fh.write("%s,%.17g,%d,%.17g,%.17g\n" % (fname, x, k, residual, env))
    artifacts = [csv_path]
    return {
        "suite": "coprime-split",
        "summary": {"fitted_constant": fitted, "cases": len(rows)},
        "artifacts": artifacts,
    }


def _diag_growth(config: RunConfig, out_dir: str) -> dict:
    artifacts = []
    paley = growth_report(paley_baseline(candidate_moduli(1, 20_000, q_min=3)))
    paley_csv = os.path.join(out_dir, "paley_growth.csv")
    paley.write_csv(paley_csv)
    artifacts.append(paley_csv)
    pattern = build_target(3, chi_minus4(), 13)
    cubic_records = []
    for q in candidate_moduli(3, 20_000, q_min=7):
        from .extremal import search_matching_character

        cubic_records.extend(search_matching_character(pattern, [q], 5))
    cubic = growth_report(cubic_records) if cubic_records else None
    summary = {
        "paley": {k: v for k, v in paley.to_json().items() if k != "records"},
    }
    if cubic is not None:
        cubic_csv = os.path.join(out_dir, "cubic_growth.csv")
        cubic.write_csv(cubic_csv)
        artifacts.append(cubic_csv)
        summary["order3"] = {k: v for k, v in cubic.to_json().items() if k != "records"}
    if config.figure_dir:
        artifacts.append(
            figures.growth_figure(
                paley, os.path.join(config.figure_dir, "paley_growth.png"), "quadratic family"
            )
        )
        if cubic is not None:
            artifacts.append(
                figures.growth_figure(
                    cubic, os.path.join(config.figure_dir, "cubic_growth.png"), "order-3 matched"
                )
            )
    return {"suite": "growth", "summary": summary, "artifacts": artifacts}


def _diag_equidist(config: RunConfig, out_dir: str) -> dict:
    tables = {
        "chi-4": equidistribution_diagnostic(chi_minus4(), 1e6),
        "cubic-q7": equidistribution_diagnostic(character(7, 2), 1e6),
    }
    csv_path = os.path.join(out_dir, "equidistribution.csv")
    with open(csv_path, "w", encoding="ascii") as fh:
        fh.write("character,class,share,uniform_share\n")
        for name, table in tables.items():
            for c, share in enumerate(table.ratios()):
                fh.write("%s,%d,%.17g,%.17g\n" % (name, c, share, 1.0 / table.order))
    artifacts = [csv_path]
    if config.figure_dir:
        artifacts.append(
            figures.equidist_figure(
                tables["chi-4"], os.path.join(config.figure_dir, "equidistribution.png")
            )
        )
    return {
        "suite": "equidist",
        "summary": {
            name: {"order": t.order, "max_deviation": t.max_deviation}
            for name, t in tables.items()
        },
        "artifacts": artifacts,
    }


def _diag_notwist(config: RunConfig, out_dir: str) -> dict:
    """Compare twist-minimized and untwisted mimicry predictions.

    For twisted test functions, predicts the harmonic sum size once from
    the nearest-twist distance and once from the plain distance to 1; the
    actual computed sums sit alongside for comparison.  No position is
    taken on which predictor is right; the table is the output.
    """
    rng = np.random.default_rng(config.seed + 3)
    rows = []
    for t0 in (0.0, 0.7, 2.5):
        f = twist(random_unimodular(10_000, rng), t0)
        for y in (1e3, 1e4):
            T = math.log(y) ** 2
            rep = nearest_twist_distance(f, y, T)
            d_plain = distance_sq(f, one(), y)
            actual = abs(weighted_expsum(f, y, y, 0.0))
            pred_twist = math.log(y) * math.exp(-rep.distance_sq)
            pred_plain = math.log(y) * math.exp(-d_plain)
            rows.append((t0, y, actual, pred_twist, pred_plain, rep.minimizing_t))
    csv_path = os.path.join(out_dir, "notwist_comparison.csv")
    with open(csv_path, "w", encoding="ascii") as fh:
        fh.write("twist,y,actual_abs,twisted_prediction,plain_prediction,minimizing_t\n")
        for t0, y, actual, pt, pp, mt in rows:
            fh.write(
                "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n" % (t0, y, actual, pt, pp, mt)
            )
    return {
        "suite": "notwist",
        "summary": {"cases": len(rows)},
        "artifacts": [csv_path],
    }


DIAG_SUITES = {
    "scan": _diag_scan,
    "fourier": _diag_fourier,
    "coprime-split": _diag_coprime_split,
    "growth": _diag_growth,
    "equidist": _diag_equidist,
    "notwist": _diag_notwist,
}


def cmd_diag(args) -> int:
    config = _config_from(args)
    out_dir = args.out_dir or "."
    os.makedirs(out_dir, exist_ok=True)
    if args.suite not in DIAG_SUITES:
        raise ValueError(
            "unknown diagnostic %r; choose from %s"
            % (args.suite, ", ".join(sorted(DIAG_SUITES)))
        )
    payload = DIAG_SUITES[args.suite](config, out_dir)
    _emit_json(payload, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    # global flags live in a parent parser with SUPPRESS defaults so they
    # are accepted both before and after the subcommand without the
    # subparser's defaults clobbering values parsed by the main parser
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--cache-dir", default=argparse.SUPPRESS, help="prime cache directory override"
    )
    common.add_argument(
        "--seed", type=int, default=argparse.SUPPRESS, help="randomized-suite seed"
    )
    common.add_argument(
        "--jobs", type=int, default=argparse.SUPPRESS, help="parallel workers for sweeps"
    )
    common.add_argument(
        "--format",
        choices=("csv", "json"),
        default=argparse.SUPPRESS,
        help="tabular output format",
    )
    common.add_argument(
        "--out",
        default=argparse.SUPPRESS,
        help="write primary output to this file instead of stdout",
    )
    common.add_argument(
        "--figures", default=argparse.SUPPRESS, help="also render figures into this directory"
    )
    parser = argparse.ArgumentParser(
        prog="charmimic",
        description="Character sums, mimicry distances, and arc diagnostics.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sum", help="twisted harmonic partial-sum profile", parents=[common])
    spec = p.add_mutually_exclusive_group(required=True)
    spec.add_argument("--char", help='character spec: "q=4,index=1", "chi-4", "legendre:7"')
    spec.add_argument("--one", action="store_true", help="the constant function 1")
    p.add_argument("--twist", type=float, default=0.0, help="multiply by n^(i*t)")
    p.add_argument("--x", type=float, required=True, help="sum length")
    p.add_argument("--y", type=float, default=None, help="smoothness cutoff (default none)")
    p.add_argument("--alpha", type=float, default=0.0, help="phase")
    p.set_defaults(handler=cmd_sum)

    p = sub.add_parser("verify", help="run an identity verification suite", parents=[common])
    p.add_argument("suite", help="one of %s, or all" % ", ".join(sorted(SUITES)))
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("arcs", help="classify a phase into minor/major arcs", parents=[common])
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--y", type=float, required=True, help="smoothness level (>= 16)")
    p.add_argument("--m", type=int, required=True, help="exceptional modulus")
    p.add_argument("--window", type=float, default=None, help="override approximation window")
    p.set_defaults(handler=cmd_arcs)

    p = sub.add_parser("nearest", help="nearest primitive character to a function", parents=[common])
    spec = p.add_mutually_exclusive_group(required=True)
    spec.add_argument("--char", help="character spec for the function")
    spec.add_argument("--one", action="store_true")
    p.add_argument("--twist", type=float, default=0.0)
    p.add_argument("--y", type=float, required=True, help="prime cutoff")
    p.add_argument("--bound", type=int, required=True, help="conductor bound (exclusive)")
    p.set_defaults(handler=cmd_nearest)

    p = sub.add_parser("extremal", help="modulus sweeps for extremal families", parents=[common])
    p.add_argument("--family", choices=("order", "paley"), default="order")
    p.add_argument("--g", type=int, default=3, help="odd character order")
    p.add_argument("--xi", default="chi-4", help="auxiliary odd character spec")
    p.add_argument("--prime-bound", type=int, default=13, help="pattern prime bound")
    p.add_argument("--qmax", type=float, required=True, help="largest modulus to scan")
    p.add_argument(
        "--prime-target",
        type=int,
        default=13,
        help="record characters whose matching span reaches this",
    )
    p.add_argument("--resume", default=None, help="sweep name; reuse to continue a run")
    p.add_argument("--out-dir", default=".", help="directory for records and state")
    p.add_argument("--stop-after", type=int, default=None, help="stop after this many records")
    p.set_defaults(handler=cmd_extremal)

    p = sub.add_parser(
        "diag", help="diagnostic tables (reported, not asserted)", parents=[common]
    )
    p.add_argument("suite", help="one of %s" % ", ".join(sorted(DIAG_SUITES)))
    p.add_argument("--out-dir", default=".", help="directory for CSV artifacts")
    p.set_defaults(handler=cmd_diag)
    return parser


# defaults for the global flags; not wired through set_defaults because
# argparse's set_defaults rewrites the shared SUPPRESS action defaults,
# letting a subparser clobber a value parsed before the subcommand
GLOBAL_DEFAULTS = {
    "cache_dir": None,
    "seed": 20260822,
    "jobs": 1,
    "format": "csv",
    "out": None,
    "figures": None,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for dest, value in GLOBAL_DEFAULTS.items():
        if not hasattr(args, dest):
            setattr(args, dest, value)
    try:
        return args.handler(args)
    except ResourceCapError as exc:
        print("resource cap: %s" % exc, file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        # reader went away (e.g. piped into head); not an error
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
