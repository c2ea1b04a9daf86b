"""Command-line front end.

    python -m selfsim_sl bounds  --params cantor.json --n 1..3 --tol 1/1000
    python -m selfsim_sl moments --params cantor.json
    python -m selfsim_sl inertia --params cantor.json --lambda 20 --m 5
    python -m selfsim_sl sample  --params cantor.json --iterations 8 --grid 729
    python -m selfsim_sl oracle  --params cantor.json --n 1..5 --mesh-level 8

Exit status: 0 on success, 1 on invalid input, 2 when ``bounds`` could not
certify every requested index.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import certify, oracle
from .inertia import inertia_integer
from .pencil import pencil_parts
from .scalar import ScalarSyntaxError, format_approx, parse_scalar, to_float, to_string
from .selfsim import (
    DegenerateMoments,
    InvalidParameters,
    SimilaritySet,
    SizeCapExceeded,
    iterate,
    load,
    moments,
    reflect,
    sample,
)

COMMANDS = ("bounds", "inertia", "moments", "sample", "oracle")
FORMATS = ("table", "json", "csv")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    parameter_file: str
    command: str
    n_range: tuple[int, int] = (1, 1)
    width_tol: Fraction = Fraction(1, 1000)
    lambda_max: Fraction = Fraction(10_000)
    m_max: int | None = None
    negative: bool = False
    output_format: str = "table"
    lam: Fraction | None = None
    level: int = 1
    mesh_level: int = 8
    iterations: int = 8
    grid: int = 256

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.output_format not in FORMATS:
            raise ConfigError(f"unknown output format {self.output_format!r}")
        lo, hi = self.n_range
        if lo < 1 or hi < lo:
            raise ConfigError(f"n range {lo}..{hi} is empty or starts below 1")
        if self.width_tol <= 0:
            raise ConfigError(f"--tol must be positive, got {self.width_tol}")
        if self.lambda_max <= 0:
            raise ConfigError(f"--lambda-max must be positive, got {self.lambda_max}")
        if self.m_max is not None and self.m_max < 1:
            raise ConfigError("--m-max must be >= 1")


def parse_n_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return int(a), int(b)
        return int(text), int(text)
    except ValueError:
        raise ConfigError(f"--n expects K or A..B, got {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="selfsim-sl", description="Certified eigenvalue bounds for self-similar weights.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--params", required=True, metavar="FILE", help="JSON parameter set {a, d, beta}")
    p.add_argument("--n", default="1", help="index or range A..B (default 1)")
    p.add_argument("--tol", default="1/1000", help="bracket width tolerance (default 1/1000)")
    p.add_argument("--lambda-max", default="10000", help="search limit for lambda (default 10000)")
    p.add_argument("--m-max", type=int, default=None, help="deepest refinement level")
    p.add_argument("--negative", action="store_true", help="bracket negative eigenvalues")
    p.add_argument("--format", choices=FORMATS, default="table")
    p.add_argument("--lambda", dest="lam", default=None, help="spectral parameter (inertia)")
    p.add_argument("--m", type=int, default=1, help="refinement level (inertia)")
    p.add_argument("--mesh-level", type=int, default=8, help="refinement level (oracle)")
    p.add_argument("--iterations", type=int, default=8, help="similarity iterations (sample)")
    p.add_argument("--grid", type=int, default=256, help="output cells (sample)")
    return p


def config_from_args(argv=None) -> RunConfig:
    args = build_parser().parse_args(argv)
    return RunConfig(
        parameter_file=args.params,
        command=args.command,
        n_range=parse_n_range(args.n),
        width_tol=parse_scalar(args.tol),
        lambda_max=parse_scalar(args.lambda_max),
        m_max=args.m_max,
        negative=args.negative,
        output_format=args.format,
        lam=None if args.lam is None else parse_scalar(args.lam),
        level=args.m,
        mesh_level=args.mesh_level,
        iterations=args.iterations,
        grid=args.grid,
    )


def _emit_json(doc, out) -> None:
    out.write(json.dumps(doc, indent=2) + "\n")


def _cmd_bounds(cfg: RunConfig, s: SimilaritySet, out) -> int:
    mom = moments(s)
    fn = certify.negative_eigenvalues if cfg.negative else certify.bracket_eigenvalue
    brackets = [
        fn(s, mom, n, cfg.width_tol, cfg.lambda_max, cfg.m_max)
        for n in range(cfg.n_range[0], cfg.n_range[1] + 1)
    ]
    if cfg.output_format == "json":
        _emit_json({"parameters": s.to_json(), "brackets": [b.to_json() for b in brackets]}, out)
    elif cfg.output_format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "sign", "lo", "hi", "status", "lo_approx", "hi_approx"])
        for b in brackets:
            row = b.to_json()
            w.writerow([
                b.n, row["sign"], row["lo"] or "", row["hi"] or "", row["status"],
                "" if b.lo is None else format_approx(b.lo),
                "" if b.hi is None else format_approx(b.hi),
            ])
    else:
        for b in brackets:
            sign = "-" if b.negative else "+"
            if b.certified:
                out.write(
                    f"nu{sign}_{b.n}: [{format_approx(b.lo)}, {format_approx(b.hi)}]"
                    f"  exact [{b.lo}, {b.hi}]  Certified\n"
                )
            elif b.status is certify.Status.NOT_FOUND:
                out.write(f"nu{sign}_{b.n}: not found up to |lambda| = {abs(b.limit)}  NotFoundUpTo\n")
            else:
                out.write(
                    f"nu{sign}_{b.n}: best bracket [{b.lo}, {b.hi}]  RefinementExhausted\n"
                )
    return 0 if all(b.certified for b in brackets) else 2


def _cmd_moments(cfg: RunConfig, s: SimilaritySet, out) -> int:
    mom = moments(s)
    rows = [("N", str(s.n_pieces)), ("theta_sq", to_string(s.theta_sq)),
            ("p0", to_string(mom.p0)), ("p1", to_string(mom.p1)), ("norm_sq", to_string(mom.norm_sq))]
    if cfg.output_format == "json":
        _emit_json(dict(rows), out)
    elif cfg.output_format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["quantity", "value"])
        w.writerows(rows)
    else:
        for name, value in rows:
            approx = "" if name == "N" else f"  ({format_approx(Fraction(value))})"
            out.write(f"{name:9s} {value}{approx}\n")
    return 0


def _cmd_inertia(cfg: RunConfig, s: SimilaritySet, out) -> int:
    if cfg.lam is None or cfg.lam <= 0:
        raise ConfigError("inertia needs --lambda R with R > 0")
    mom = moments(s)
    bounds = certify.counting_bounds(s, mom, cfg.lam, cfg.level)
    parts = pencil_parts(iterate(s, cfg.level), mom)
    plain = inertia_integer(*parts.integer_matrix(cfg.lam))
    shifted = inertia_integer(*parts.integer_matrix(cfg.lam, bounds.epsilon_used)) if bounds.epsilon_used < 1 else None
    doc = bounds.to_json()
    doc["inertia"] = [plain.negatives, plain.zeros, plain.positives]
    doc["inertia_shifted"] = None if shifted is None else [shifted.negatives, shifted.zeros, shifted.positives]
    if cfg.output_format == "json":
        _emit_json(doc, out)
    elif cfg.output_format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(list(doc))
        w.writerow([json.dumps(v) if isinstance(v, (list, type(None))) else v for v in doc.values()])
    else:
        for k, v in doc.items():
            out.write(f"{k:18s} {v}\n")
    return 0


def _cmd_sample(cfg: RunConfig, s: SimilaritySet, out) -> int:
    f = sample(s, cfg.iterations, cfg.grid)
    if cfg.output_format == "json":
        _emit_json({
            "breakpoints": [to_string(x) for x in f.breakpoints],
            "values": [float(v) for v in f.values],
            "sup_error_bound": f.sup_error_bound,
        }, out)
    else:
        f.write_csv(out)
    return 0


def _cmd_oracle(cfg: RunConfig, s: SimilaritySet, out) -> int:
    target = reflect(s) if cfg.negative else s
    est = oracle.approx_eigenvalues(target, moments(target), cfg.n_range[1], cfg.mesh_level, to_float(cfg.lambda_max))
    est = [e for e in est if e.n >= cfg.n_range[0]]
    if cfg.negative:
        est = [oracle.OracleEstimate(e.n, -e.value, e.mesh_level) for e in est]
    if cfg.output_format == "json":
        _emit_json([{"n": e.n, "estimate": e.value, "mesh_level": e.mesh_level} for e in est], out)
    elif cfg.output_format == "csv":
        oracle.write_csv(est, out)
    else:
        for e in est:
            out.write(f"n={e.n:<3d} {e.value:.12g}  (mesh level {e.mesh_level}, not certified)\n")
    return 0


_DISPATCH = {
    "bounds": _cmd_bounds,
    "moments": _cmd_moments,
    "inertia": _cmd_inertia,
    "sample": _cmd_sample,
    "oracle": _cmd_oracle,
}


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        s = load(cfg.parameter_file)
        return _DISPATCH[cfg.command](cfg, s, out)
    except FileNotFoundError as exc:
        err.write(f"error: parameter file not found: {exc.filename}\n")
    except (InvalidParameters, ConfigError, ScalarSyntaxError, DegenerateMoments, SizeCapExceeded) as exc:
        err.write(f"error: {exc}\n")
    return 1


def main(argv=None) -> int:
    try:
        cfg = config_from_args(argv)
    except (ConfigError, ScalarSyntaxError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
