"""Command-line entry point: ``lame3 <subcommand> ...``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .elliptic import LatticeData, lattice_data
from .errors import DomainError, Lame3Error, RegimeError
from .sympoly import NumPoly, RationalWeightedPoly, WeightedPoly, specialize

EXIT_USAGE = 2
EXIT_NUMERIC = 3

CSV_COLUMNS = [
    "tau_re", "tau_im", "B_re", "B_im",
    "lambda1_re", "lambda1_im", "lambda2_re", "lambda2_im",
    "abs_lambda1", "abs_lambda2", "classification",
]


class UsageError(Exception):
    pass


def _complex(text: str) -> complex:
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RE,IM but got {text!r}")
    if len(parts) == 1:
        return complex(parts[0], 0.0)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected RE,IM but got {text!r}")
    return complex(parts[0], parts[1])


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _dump(obj, out) -> None:
    out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def lattice_to_dict(lat: LatticeData) -> dict:
    return {
        "tau": _pair(lat.tau),
        "q": _pair(lat.q),
        "g2": _pair(lat.g2),
        "g3": _pair(lat.g3),
        "e1": _pair(lat.e1),
        "e2": _pair(lat.e2),
        "e3": _pair(lat.e3),
        "eta1": _pair(lat.eta1),
        "eta2": _pair(lat.eta2),
        "discriminant": _pair(lat.discriminant),
        "series_terms": lat.series_terms,
    }


# ------------------------------------------------------------------ commands

def cmd_invariants(args, out) -> int:
    _dump(lattice_to_dict(lattice_data(args.tau)), out)
    return 0


def _poly_object(args) -> WeightedPoly | RationalWeightedPoly:
    from .recurrence import (
        apparent_polynomial,
        lame_spectral_polynomial,
        problem_params,
        second_elliptic_polynomial,
        spectral_polynomial,
    )

    if args.kind == "lame":
        m = args.m if args.m is not None else args.n
        if m is None:
            raise UsageError("poly lame needs --m (or --n)")
        return lame_spectral_polynomial(m)
    if args.n is None or args.l is None:
        raise UsageError(f"poly {args.kind} needs --n and --l")
    pp = problem_params(args.n, args.l)
    if args.kind == "P":
        return apparent_polynomial(pp)
    if args.kind == "Ptilde":
        return second_elliptic_polynomial(pp)
    return spectral_polynomial(pp).Q


def cmd_poly(args, out) -> int:
    p = _poly_object(args)
    if args.tau is not None:
        lat = lattice_data(args.tau)
        payload = {"kind": args.kind, "tau": _pair(args.tau), **specialize(p, lat.g2, lat.g3).to_dict()}
    elif isinstance(p, RationalWeightedPoly):
        payload = {"kind": args.kind, "numerator": p.num.to_records(), "denominator": p.den.to_records()}
    else:
        payload = {"kind": args.kind, "terms": p.to_records(), "text": str(p)}
    _dump(payload, out)
    return 0


def cmd_roots(args, out) -> int:
    from .roots import certify_real_distinct, find_roots

    try:
        with open(args.poly_file) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read polynomial file: {exc}")
    if isinstance(data, dict) and "coeffs" in data:
        p = NumPoly.from_dict(data)
    else:
        recs = data["terms"] if isinstance(data, dict) else data
        if args.tau is None:
            raise UsageError("symbolic polynomial files need --tau to specialize g2, g3")
        lat = lattice_data(args.tau)
        p = specialize(WeightedPoly.from_records(recs), lat.g2, lat.g3)
    rep = certify_real_distinct(p) if args.certify_real else find_roots(p)
    _dump(rep.to_dict(), out)
    if args.certify_real and not (rep.all_real and rep.distinct):
        return 1
    return 0


def cmd_monodromy(args, out) -> int:
    from .monodromy import monodromy_pair
    from .recurrence import problem_params

    rep = monodromy_pair(problem_params(args.n, args.l), args.B, lattice_data(args.tau), args.tol)
    _dump(rep.to_json(), out)
    return 0


def cmd_verify(args, out) -> int:
    from .verify import run_all, run_suite

    checks = run_all() if args.suite == "all" else run_suite(args.suite)
    for c in checks:
        out.write(c.line() + "\n")
    failed = sum(not c.passed for c in checks)
    out.write(f"{len(checks) - failed}/{len(checks)} passed\n")
    return 1 if failed else 0


# ------------------------------------------------------------------ scan

@dataclass(frozen=True)
class ScanConfig:
    n: int
    l: int
    B_grid: dict
    tau_list: list = field(default_factory=list)
    tau_grid: dict | None = None
    ode_tol: float = 1e-10
    output: str | None = None
    format: str = "json"
    workers: int = 1

    @classmethod
    def from_dict(cls, d: dict) -> "ScanConfig":
        known = {f for f in cls.__dataclass_fields__}
        extra = set(d) - known
        if extra:
            raise UsageError(f"unknown scan config keys: {sorted(extra)}")
        cfg = cls(**d)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.format not in ("json", "csv"):
            raise UsageError("format must be json or csv")
        for key, grid in (("B_grid", self.B_grid), ("tau_grid", self.tau_grid)):
            if grid is None:
                continue
            if grid.get("n_re", 0) < 2 or grid.get("n_im", 0) < 2:
                raise UsageError(f"{key} needs n_re, n_im >= 2")
        if not self.tau_list and self.tau_grid is None:
            raise UsageError("give tau_list or tau_grid")
        if not 1e-12 <= self.ode_tol <= 1e-4:
            raise UsageError("ode_tol must lie in [1e-12, 1e-4]")

    def taus(self) -> list[complex]:
        out = [complex(*t) for t in self.tau_list]
        if self.tau_grid is not None:
            out += _grid(self.tau_grid)
        return out

    def Bs(self) -> list[complex]:
        return _grid(self.B_grid)


def _grid(g: dict) -> list[complex]:
    import numpy as np

    xs = np.linspace(g["re_min"], g["re_max"], g["n_re"])
    ys = np.linspace(g["im_min"], g["im_max"], g["n_im"])
    return [complex(x, y) for y in ys for x in xs]


def scan_point(job: tuple[int, int, complex, complex, float]) -> dict:
    from .monodromy import monodromy_pair
    from .recurrence import problem_params

    n, l, tau, B, tol = job
    row = {"tau": _pair(tau), "B": _pair(B), "lambda1": None, "lambda2": None,
           "abs_lambda1": None, "abs_lambda2": None, "classification": None}
    try:
        rep = monodromy_pair(problem_params(n, l), B, lattice_data(tau), tol)
    except Lame3Error as exc:
        row["classification"] = "Error"
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row
    cls = rep.classification
    row["classification"] = cls.tag.value
    if cls.lambdas is not None:
        l1, l2 = cls.lambdas
        row.update(lambda1=_pair(l1), lambda2=_pair(l2), abs_lambda1=abs(l1), abs_lambda2=abs(l2))
    return row


def _csv_line(row: dict) -> str:
    def num(v):
        return "" if v is None else repr(float(v))

    l1 = row["lambda1"] or [None, None]
    l2 = row["lambda2"] or [None, None]
    vals = [*row["tau"], *row["B"], *l1, *l2, row["abs_lambda1"], row["abs_lambda2"]]
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow([num(v) for v in vals] + [row["classification"]])
    return buf.getvalue()


def cmd_scan(args, out) -> int:
    try:
        with open(args.config) as fh:
            cfg = ScanConfig.from_dict(json.load(fh))
    except (OSError, json.JSONDecodeError, TypeError) as exc:
        raise UsageError(f"bad scan config: {exc}")
    jobs = [(cfg.n, cfg.l, t, B, cfg.ode_tol) for t in cfg.taus() for B in cfg.Bs()]
    sink = open(cfg.output, "w") if cfg.output else out
    try:
        if cfg.format == "csv":
            sink.write(",".join(CSV_COLUMNS) + "\n")
        if cfg.workers > 1:
            with ProcessPoolExecutor(cfg.workers) as pool:
                rows = pool.map(scan_point, jobs)  # map preserves submission order
                for row in rows:
                    sink.write(_csv_line(row) if cfg.format == "csv" else json.dumps(row, sort_keys=True) + "\n")
        else:
            for row in map(scan_point, jobs):
                sink.write(_csv_line(row) if cfg.format == "csv" else json.dumps(row, sort_keys=True) + "\n")
    finally:
        if sink is not out:
            sink.close()
    return 0


# ------------------------------------------------------------------ parser

SUITE_NAMES = ["parity-odd-odd", "parity-odd-even", "parity-even", "lame-bridge", "weierstrass", "all"]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lame3", description="Third-order Lame-type equations on tori.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="lattice invariants for a given tau")
    p.add_argument("--tau", type=_complex, required=True, metavar="RE,IM")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("poly", help="apparent, spectral and Lame polynomials")
    p.add_argument("kind", choices=["P", "Ptilde", "Q", "lame"])
    p.add_argument("--n", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--m", type=int, help="Lame index (defaults to --n)")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--symbolic", action="store_true", help="exact term list (default)")
    g.add_argument("--tau", type=_complex, metavar="RE,IM", help="specialize at this lattice")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("roots", help="roots of a polynomial stored as JSON")
    p.add_argument("--poly-file", required=True)
    p.add_argument("--certify-real", action="store_true")
    p.add_argument("--tau", type=_complex, metavar="RE,IM")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("monodromy", help="monodromy pair and classification")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--B", type=_complex, required=True, metavar="RE,IM")
    p.add_argument("--tau", type=_complex, required=True, metavar="RE,IM")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_monodromy)

    p = sub.add_parser("verify", help="run an acceptance suite")
    p.add_argument("suite", choices=SUITE_NAMES)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="grid scan of multipliers over B and tau")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_scan)
    return ap


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on usage errors
    try:
        return args.func(args, out)
    except (UsageError, DomainError, RegimeError) as exc:
        sys.stderr.write(f"lame3: error: {exc}\n")
        return EXIT_USAGE
    except Lame3Error as exc:
        _dump({"error": type(exc).__name__, "message": str(exc), "command": args.command}, out)
        return EXIT_NUMERIC


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
