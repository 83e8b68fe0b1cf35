"""Command-line front end: evaluate R(s), count zeros, locate zeros, run the
validation suites, and emit machine-readable tables.

Output is CSV (versioned header comment ``# rzero v1``) or JSON mirroring the
CSV field names; reals carry 17 significant digits so files round-trip
exactly.  Exit codes: 0 success, 1 failed validation suites, 2 evaluation or
argument errors, 3 persistent zero-on-contour, 4 winding integrality
failure, 5 unresolved clusters in strict mode.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import counting
from .auxiliary import r_asymptotic, r_eval, zeta_from_r, zeta_reference
from .counting import (
    BacklundInput,
    PathSegment,
    arg_variation,
    backlund_bound,
    residual_table,
)
from .errors import (
    ContourZeroError,
    NonIntegerWindingError,
    RZeroError,
)
from .special_functions import TWO_PI, chi, eta_batch
from .zeros import Box, locate_zeros, zero_statistics

SCHEMA_TAG = "# rzero v1"

EXIT_OK = 0
EXIT_VALIDATE_FAIL = 1
EXIT_EVAL_FAIL = 2
EXIT_CONTOUR_ZERO = 3
EXIT_WINDING = 4
EXIT_CLUSTERS = 5


@dataclass
class RunConfig:
    """Parsed invocation; numeric parameters are finite, t range ordered."""

    command: str
    t_min: float = 10.0
    t_max: float = 100.0
    t_step: float = 10.0
    box_left: float = -6.0
    point: complex | None = None
    grid_n: int = 1
    grid_step: float = 0.5
    min_size: float = 1e-3
    tol: float | None = None
    precision: str = "std"
    output_format: str = "csv"
    output_path: str | None = None
    seed: int = 12345
    strict: bool = False
    samples: int = 0  # 0 = suite defaults

    def __post_init__(self):
        for name in ("t_min", "t_max", "t_step", "box_left", "grid_step",
                     "min_size"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.t_max < self.t_min:
            raise ValueError("t-max below t-min")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"unknown format {self.output_format}")

    @property
    def precision_mode(self) -> str:
        return "compensated" if self.precision == "comp" else "standard"


def _format_value(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def emit_rows(rows: list[dict], columns: list[str], config: RunConfig,
              footer: dict | None = None) -> str:
    """Render rows to CSV or JSON text (and write it to the output path)."""
    if config.output_format == "csv":
        buf = io.StringIO()
        buf.write(SCHEMA_TAG + "\n")
        writer = csv.writer(buf)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_format_value(row[c]) for c in columns])
        if footer:
            for key, val in footer.items():
                buf.write(f"# {key} = {_format_value(val)}\n")
        text = buf.getvalue()
    else:
        doc = {"schema": SCHEMA_TAG.lstrip("# "), "columns": columns,
               "rows": rows}
        if footer:
            doc["summary"] = footer
        text = json.dumps(doc, indent=1, default=_format_value) + "\n"
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return text


def parse_rows(text: str) -> list[dict]:
    """Inverse of emit_rows for CSV text: list of column->string dicts."""
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    reader = csv.DictReader(lines)
    return list(reader)


def parse_complex(text: str) -> complex:
    """Parse a complex literal; accepts 'i' or 'j' for the imaginary unit."""
    cleaned = text.strip().replace(" ", "").replace("i", "j")
    return complex(cleaned)


EVAL_COLUMNS = ["sigma", "t", "re", "im", "abs", "method", "error_estimate"]


def cmd_eval(config: RunConfig) -> int:
    if config.point is None:
        print("eval requires --point", file=sys.stderr)
        return EXIT_EVAL_FAIL
    offsets = range(-(config.grid_n // 2), config.grid_n // 2 + 1)
    points = sorted(
        (config.point + complex(i * config.grid_step, j * config.grid_step)
         for i in offsets for j in offsets),
        key=lambda z: (z.imag, z.real),
    )
    rows = []
    for s in points:
        try:
            res = r_eval(s, precision_mode=config.precision_mode)
        except RZeroError as exc:
            print(f"evaluation failed at {s}: {exc}", file=sys.stderr)
            return EXIT_EVAL_FAIL
        rows.append({
            "sigma": s.real, "t": s.imag,
            "re": res.value.real, "im": res.value.imag,
            "abs": abs(res.value), "method": res.method,
            "error_estimate": res.error_estimate,
        })
    emit_rows(rows, EVAL_COLUMNS, config)
    return EXIT_OK


COUNT_COLUMNS = ["big_t", "count", "smooth_term", "sqrt_term", "main_value",
                 "residual", "certificates"]


def _cert_summary(result: counting.CountResult) -> str:
    parts = []
    for name, bound in result.certificates:
        parts.append(f"{name}:{'-' if bound is None else format(bound, '.6g')}")
    return ";".join(parts)


def _count_rows(results: list[counting.CountResult]) -> list[dict]:
    return [{
        "big_t": r.big_t, "count": r.count, "smooth_term": r.smooth_term,
        "sqrt_term": r.sqrt_term, "main_value": r.main_value,
        "residual": r.residual, "certificates": _cert_summary(r),
    } for r in results]


def _t_grid(config: RunConfig) -> list[float]:
    ts = []
    t = config.t_min
    while t <= config.t_max + 1e-9:
        ts.append(round(t, 12))
        t += config.t_step
    return ts


def cmd_count(config: RunConfig) -> int:
    ts = [t for t in _t_grid(config) if t > counting.DESK_T0]
    if not ts:
        print("empty T grid above the base height", file=sys.stderr)
        return EXIT_EVAL_FAIL
    try:
        results = residual_table(ts, box_left=config.box_left,
                                 tol=config.tol or 1e-3)
    except ContourZeroError as exc:
        print(f"persistent zero on contour: {exc}", file=sys.stderr)
        return EXIT_CONTOUR_ZERO
    except NonIntegerWindingError as exc:
        print(f"winding integrality failure: {exc}", file=sys.stderr)
        return EXIT_WINDING
    emit_rows(_count_rows(results), COUNT_COLUMNS, config)
    return EXIT_OK


TABLE_COLUMNS = COUNT_COLUMNS[:-1] + ["r_smooth", "r_plus_sqrt"]


def cmd_table(config: RunConfig) -> int:
    """Like count, with the square-root correction made explicit:
    r_smooth = N - smooth and r_plus_sqrt = r_smooth + sqrt_term."""
    ts = [t for t in _t_grid(config) if t > counting.DESK_T0]
    if not ts:
        print("empty T grid above the base height", file=sys.stderr)
        return EXIT_EVAL_FAIL
    try:
        results = residual_table(ts, box_left=config.box_left,
                                 tol=config.tol or 1e-3)
    except ContourZeroError as exc:
        print(f"persistent zero on contour: {exc}", file=sys.stderr)
        return EXIT_CONTOUR_ZERO
    except NonIntegerWindingError as exc:
        print(f"winding integrality failure: {exc}", file=sys.stderr)
        return EXIT_WINDING
    rows = [{
        "big_t": r.big_t, "count": r.count, "smooth_term": r.smooth_term,
        "sqrt_term": r.sqrt_term, "main_value": r.main_value,
        "residual": r.residual,
        "r_smooth": r.count - r.smooth_term,
        "r_plus_sqrt": r.count - r.smooth_term + r.sqrt_term,
    } for r in results]
    x = [math.sqrt(r.big_t / TWO_PI) for r in results]
    y = [r.count - r.smooth_term for r in results]
    n = len(x)
    sx, sy = sum(x), sum(y)
    sxx, sxy = sum(a * a for a in x), sum(a * b for a, b in zip(x, y))
    denom = n * sxx - sx * sx
    slope = (n * sxy - sx * sy) / denom if denom else float("nan")
    emit_rows(rows, TABLE_COLUMNS, config,
              footer={"sqrt_fit_coefficient": slope})
    return EXIT_OK


ZERO_COLUMNS = ["beta", "gamma", "enclosure_radius", "winding_certificate",
                "residual_modulus"]


def cmd_zeros(config: RunConfig) -> int:
    box = Box(config.box_left, 2.0, config.t_min, config.t_max)
    try:
        found, clusters = locate_zeros(box, min_size=config.min_size,
                                       tol=config.tol or 1e-3)
    except ContourZeroError as exc:
        print(f"persistent zero on contour: {exc}", file=sys.stderr)
        return EXIT_CONTOUR_ZERO
    except NonIntegerWindingError as exc:
        print(f"winding integrality failure: {exc}", file=sys.stderr)
        return EXIT_WINDING
    rows = [{
        "beta": z.beta, "gamma": z.gamma,
        "enclosure_radius": z.enclosure_radius,
        "winding_certificate": z.winding_certificate,
        "residual_modulus": z.residual_modulus,
    } for z in found]
    footer = {"unresolved_clusters": len(clusters)}
    if found:
        stats = zero_statistics(found)
        footer["fraction_beta_gt_half"] = stats.fraction_right
        footer["mean_gamma_gap"] = stats.mean_gap
    emit_rows(rows, ZERO_COLUMNS, config, footer=footer)
    if clusters and config.strict:
        print(f"{len(clusters)} unresolved clusters", file=sys.stderr)
        return EXIT_CLUSTERS
    return EXIT_OK


def _suite_identity(rng, samples, tol):
    worst = 0.0
    ts = np.linspace(5.0, 100.0, samples or 20)
    for sigma in (-1.0, 0.0, 0.5, 1.0, 2.0):
        for t in ts:
            s = complex(sigma, float(t))
            dev = abs(zeta_from_r(s) - zeta_reference(s)) / abs(zeta_reference(s))
            worst = max(worst, dev)
    return worst, tol if tol is not None else 1e-8


def _suite_functional_equation(rng, samples, tol):
    n = samples or 2000
    sigma = rng.uniform(-3.0, 4.0, n)
    t = rng.uniform(1.0, 100.0, n)
    worst = 0.0
    for sg, tt in zip(sigma, t):
        s = complex(sg, tt)
        worst = max(worst, abs(chi(s) * chi(1.0 - s) - 1.0))
    return worst, tol if tol is not None else 1e-10


def _suite_eta_branch(rng, samples, tol):
    n = samples or 200_000
    sigma = rng.uniform(-3.0, 4.0, n)
    t = rng.uniform(0.1, 1e5, n)
    values = eta_batch(sigma, t)
    if not np.all(values.real + values.imag > 0.0):
        return math.inf, tol if tol is not None else 1e-12
    squares = (sigma - 1.0 + 1j * t) / (2j * math.pi)
    worst = float(np.max(np.abs(values * values - squares)
                         / np.maximum(1.0, np.abs(squares))))
    return worst, tol if tol is not None else 1e-12


def _suite_backlund(rng, samples, tol):
    # worst = max over cases of (measured variation - bound); any positive
    # value is a violation.
    n = samples or 200
    worst = -math.inf
    for _ in range(n):
        degree = int(rng.integers(1, 13))
        roots = rng.uniform(-1.5, 1.5, degree) + 1j * rng.uniform(-1.5, 1.5, degree)
        reach = float(rng.uniform(0.1, 0.8))
        radius = float(rng.uniform(reach + 0.1, 2.0))
        angle = float(rng.uniform(0.0, TWO_PI))
        b = reach * complex(math.cos(angle), math.sin(angle))
        if min(abs(b * u - r) for r in roots for u in np.linspace(0, 1, 200)) < 1e-2:
            continue

        def poly(z):
            out = 1.0 + 0.0j
            for r in roots:
                out *= z - r
            return out

        seg = PathSegment.line(0.0 + 0.0j, b)
        try:
            variation = arg_variation(poly, seg, seeds=64).total_variation
        except RZeroError:
            continue
        measured = abs(variation) / TWO_PI
        theta = np.linspace(0.0, TWO_PI, 720, endpoint=False)
        sup = float(max(abs(poly(radius * complex(math.cos(a), math.sin(a))))
                        for a in theta)) * 1.01
        f0 = abs(poly(0.0 + 0.0j))
        if f0 == 0.0 or f0 > sup:
            continue
        bound = backlund_bound(BacklundInput(
            big_m=sup, f_at_center=f0, radius=radius, reach=reach))
        worst = max(worst, measured - bound)
    return worst, tol if tol is not None else 0.0


def _suite_left_region(rng, samples, tol):
    n = samples or 12
    worst = 0.0
    for t in np.geomspace(50.0, 2000.0, n):
        sigma = 1.0 - t ** 0.4 * math.log(t)
        res = r_asymptotic(complex(sigma, float(t)), with_reference=True)
        worst = max(worst, res.u_proxy)
    return worst, tol if tol is not None else 1.0


_SUITES = (
    ("identity", _suite_identity),
    ("functional_equation", _suite_functional_equation),
    ("eta_branch", _suite_eta_branch),
    ("backlund", _suite_backlund),
    ("left_region_surrogate", _suite_left_region),
)


def cmd_validate(config: RunConfig) -> int:
    rng = np.random.default_rng(config.seed)
    failures = []
    lines = []
    for name, suite in _SUITES:
        worst, bound = suite(rng, config.samples, config.tol)
        passed = worst <= bound if bound == 0.0 else worst < bound
        if not passed:
            failures.append(name)
        lines.append(
            f"{name:24s} {'PASS' if passed else 'FAIL'} "
            f"worst={worst:.3e} bound={bound:.3e}"
        )
    out = "\n".join(lines) + "\n"
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            fh.write(out)
    sys.stdout.write(out)
    if failures:
        print("failed suites: " + ", ".join(failures), file=sys.stderr)
        return EXIT_VALIDATE_FAIL
    return EXIT_OK


_COMMANDS = {
    "eval": cmd_eval,
    "count": cmd_count,
    "zeros": cmd_zeros,
    "validate": cmd_validate,
    "table": cmd_table,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rzero",
        description="Evaluate the auxiliary function R(s), count and locate "
                    "its zeros, and validate the counting formula.",
    )
    p.add_argument("--command", required=True, choices=sorted(_COMMANDS))
    p.add_argument("--point", type=str, default=None,
                   help="complex evaluation point, e.g. '0.5+25j'")
    p.add_argument("--grid-n", type=int, default=1,
                   help="odd grid size n for an n x n grid around --point")
    p.add_argument("--grid-step", type=float, default=0.5)
    p.add_argument("--t-min", type=float, default=10.0)
    p.add_argument("--t-max", type=float, default=100.0)
    p.add_argument("--t-step", type=float, default=10.0)
    p.add_argument("--box-left", type=float, default=-6.0)
    p.add_argument("--min-size", type=float, default=1e-3)
    p.add_argument("--tol", type=float, default=None,
                   help="override contour tolerance / suite tolerances")
    p.add_argument("--precision", choices=("std", "comp"), default="std")
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   dest="output_format")
    p.add_argument("--out", type=str, default=None, dest="output_path")
    p.add_argument("--seed", type=int, default=12345)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--samples", type=int, default=0,
                   help="sample-count override for validate suites")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    point = None
    if args.point is not None:
        point = parse_complex(args.point)
    return RunConfig(
        command=args.command, t_min=args.t_min, t_max=args.t_max,
        t_step=args.t_step, box_left=args.box_left, point=point,
        grid_n=args.grid_n, grid_step=args.grid_step,
        min_size=args.min_size, tol=args.tol, precision=args.precision,
        output_format=args.output_format, output_path=args.output_path,
        seed=args.seed, strict=args.strict, samples=args.samples,
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except ValueError as exc:
        print(f"bad arguments: {exc}", file=sys.stderr)
        return EXIT_EVAL_FAIL
    return _COMMANDS[config.command](config)


if __name__ == "__main__":
    sys.exit(main())
