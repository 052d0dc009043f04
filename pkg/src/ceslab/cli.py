"""Command-line entry point: ``ceslab <command> [options]``.

Output is CSV by default and JSON with ``--json``.  Floats are written with
17 significant digits and rationals as ``p/q``.  A JSON config file may set
any option; flags given on the command line take precedence.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from . import eigen, hahn
from .claims import ClaimStatus, run_claims
from .numeric import Mode, format_scalar, parse_scalar
from .operators import SingularError
from .spaces import parse_space, parse_weight
from .spectral import (
    ergodic_report,
    finite_section_spectrum,
    operator_norm,
    pseudospectrum,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULTS = {
    "space": "l2",
    "t": "1/2",
    "N": 4096,
    "M": 64,
    "mode": "float",
    "json": False,
    "out": None,
    "filter": None,
    "grid": "-0.5,2.5,-1.5,1.5",
    "res": 11,
    "iterations": 60,
    "n_max": 64,
    "weight": "log",
}


class UsageError(Exception):
    pass


def _cell(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, (int, Fraction, float)):
        if isinstance(v, float) and math.isinf(v):
            return "inf"
        return format_scalar(v)
    return "" if v is None else str(v)


def _json_cell(v):
    if isinstance(v, bool) or isinstance(v, int) or v is None:
        return v
    if isinstance(v, float) and math.isfinite(v):
        return v  # repr round-trips exactly
    return _cell(v)


def _emit(rows: list, opts: dict) -> None:
    if opts["json"]:
        text = json.dumps([{k: _json_cell(v) for k, v in r.items()} for r in rows], indent=2) + "\n"
    else:
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            for r in rows:
                writer.writerow({k: _cell(v) for k, v in r.items()})
        text = buf.getvalue()
    if opts["out"]:
        with open(opts["out"], "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _t(opts):
    try:
        return parse_scalar(str(opts["t"]))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --t value {opts['t']!r}") from exc


def cmd_norm(opts) -> int:
    space = parse_space(opts["space"])
    mode = Mode(opts["mode"])
    e = operator_norm(space, _t(opts), int(opts["N"]), mode)
    _emit([{"space": space.name, "t": _t(opts), "N": e.N, "lower": e.lower, "upper": e.upper,
            "method": e.method.value, "note": e.note}], opts)
    return EXIT_OK


def cmd_spectrum(opts) -> int:
    rep = finite_section_spectrum(_t(opts), int(opts["N"]))
    _emit([{"n": n, "eigenvalue": lam} for n, lam in enumerate(rep.eigenvalues)], opts)
    return EXIT_OK


def cmd_pseudospectrum(opts) -> int:
    try:
        grid = tuple(float(v) for v in str(opts["grid"]).split(","))
    except ValueError as exc:
        raise UsageError("--grid must be re0,re1,im0,im1") from exc
    if len(grid) != 4:
        raise UsageError("--grid must be re0,re1,im0,im1")
    rep = pseudospectrum(_t(opts), grid, int(opts["res"]), int(opts["N"]), int(opts["iterations"]))
    _emit([{"re": z.real, "im": z.imag, "resolvent": v} for z, v in rep.grid.items()], opts)
    return EXIT_OK


def cmd_ergodic(opts) -> int:
    space = parse_space(opts["space"])
    r = ergodic_report(space, _t(opts), int(opts["n_max"]), int(opts["N"]))
    rows = [{"n": n + 1, "power_norm": a, "distance": b, "mean_distance": c}
            for n, (a, b, c) in enumerate(zip(r.power_norms, r.distances, r.mean_distances))]
    _emit(rows, opts)
    return EXIT_OK


def cmd_eigen_verify(opts) -> int:
    t, N, M = _t(opts), int(opts["N"]), int(opts["M"])
    rows = []
    for m in range(M + 1):
        rows.append({"m": m, "eigenvalue": Fraction(1, m + 1),
                     "eigenpair": eigen.verify_eigenpair(t, m, N).status.value,
                     "dual_eigenpair": eigen.verify_dual_eigenpair(t, m, N).status.value})
    _emit(rows, opts)
    bad = any(r["eigenpair"] != "CertifiedYes" or r["dual_eigenpair"] != "CertifiedYes" for r in rows)
    return EXIT_FAIL if bad else EXIT_OK


def cmd_hahn_exists(opts) -> int:
    weight = parse_weight(str(opts["weight"]))
    rep = hahn.existence_test(weight, _t(opts), int(opts["M"]), int(opts["N"]))
    rows = [{"m": m, "lower": c.lower, "upper": c.upper} for m, c in enumerate(rep.coordinates)]
    rows.append({"m": "verdict", "lower": rep.verdict.status.value, "upper": rep.verdict.note})
    _emit(rows, opts)
    return EXIT_OK


def cmd_claims(opts) -> int:
    rows = run_claims(opts["filter"])
    _emit([r.as_dict() for r in rows], opts)
    return EXIT_FAIL if any(r.status is ClaimStatus.FAIL for r in rows) else EXIT_OK


COMMANDS = {
    "norm": (cmd_norm, "operator norm enclosure", ("space", "t", "N", "mode")),
    "spectrum": (cmd_spectrum, "finite-section eigenvalues", ("t", "N")),
    "pseudospectrum": (cmd_pseudospectrum, "resolvent norm estimates on a grid (l2)",
                       ("t", "N", "grid", "res", "iterations")),
    "ergodic": (cmd_ergodic, "powers and Cesàro means against P", ("space", "t", "N", "n_max")),
    "eigen-verify": (cmd_eigen_verify, "exact eigenpair and dual eigenpair checks", ("t", "N", "M")),
    "hahn-exists": (cmd_hahn_exists, "existence test on a Hahn space", ("weight", "t", "M", "N")),
    "claims": (cmd_claims, "machine-checked claims table", ("filter",)),
}

_FLAGS = {
    "space": dict(help="space, e.g. l1, l2, linf, c0, cs, ces2, d1, bv, bv0, bv2, h:log"),
    "t": dict(help='parameter t in [0, 1], rational "p/q" or decimal'),
    "N": dict(type=int, help="section size"),
    "M": dict(type=int, help="column or eigenvector depth"),
    "mode": dict(choices=["exact", "float"]),
    "grid": dict(help="re0,re1,im0,im1"),
    "res": dict(type=int, help="grid points per axis"),
    "iterations": dict(type=int, help="power-iteration cap per grid point"),
    "n_max": dict(type=int, help="largest power"),
    "weight": dict(help="Hahn weight: log, power:r, geometric:a, factorial, superpower"),
    "filter": dict(help="claim id substring or tag"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=None, help="JSON instead of CSV")
    common.add_argument("--out", help="write to FILE instead of stdout")
    common.add_argument("--config", help="JSON file with option values")
    parser = argparse.ArgumentParser(prog="ceslab", description="Generalized Cesàro operator experiments")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text, flags) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, parents=[common])
        for flag in flags:
            opt = "--n-max" if flag == "n_max" else f"--{flag}"
            p.add_argument(opt, dest=flag, **_FLAGS[flag])
    return parser


def _merge(args: argparse.Namespace) -> dict:
    opts = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                config = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        unknown = set(config) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        opts.update(config)
    opts.update({k: v for k, v in vars(args).items() if v is not None and k in DEFAULTS})
    return opts


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        opts = _merge(args)
        return COMMANDS[args.command][0](opts)
    except (UsageError, ValueError, SingularError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
