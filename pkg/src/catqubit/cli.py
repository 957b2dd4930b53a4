"""Command-line driver: ``catqubit {sweep,fidelity,gates,selftest}``.

Exit codes: 0 success, 1 validation/parameter error, 2 numerical-invariant
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path

import numpy as np

from . import __version__
from .cat import SweepRow, build_logical_basis, find_xi_star, sweep_point
from .channel import fidelity_curve
from .config import RunConfig
from .deformation import DeformationSpec, validate_on_space
from .errors import InvariantError, ParameterError
from .gates import (
    CpsParams,
    RotationParams,
    cps_truth_table,
    logical_action,
    rotation_exact,
    rotation_split,
)
from .selftest import run_selftest

EXIT_OK, EXIT_PARAM, EXIT_INVARIANT = 0, 1, 2


def fmt(value) -> str:
    if value is None:
        return ""
    return f"{value:.12g}"


def _num(value):
    return None if value is None else float(f"{value:.12g}")


def _complex_matrix(m) -> list:
    return [[[_num(z.real), _num(z.imag)] for z in row] for row in np.asarray(m)]


def _write(path: Path, text: str):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise ParameterError(f"cannot write {path}: {exc}") from exc


def _json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _table(config: RunConfig, command: str, header: list[str], rows: list[list]) -> str:
    if config.format == "json":
        return _json({"columns": header, "rows": rows})
    buf = io.StringIO()
    buf.write(
        f"# catqubit {__version__} {command} zeta_sq={config.zeta_sq:g} n_max={config.n_max}\n"
    )
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([c if isinstance(c, str) else fmt(c) for c in row])
    return buf.getvalue()


def _out_path(config: RunConfig, stem: str) -> Path:
    return Path(config.out or f"{stem}.{config.format}")


def run_sweep(config: RunConfig) -> list[SweepRow]:
    """Baseline identity row followed by one row per xi, in grid order."""
    xis = [None] + [float(x) for x in config.xi_grid.values()]
    point = partial(sweep_point, config.zeta, space=config.space)
    if config.workers > 1:
        with ProcessPoolExecutor(config.workers) as pool:
            return list(pool.map(point, xis, chunksize=8))
    return [point(xi) for xi in xis]


def cmd_sweep(config: RunConfig) -> dict:
    rows = run_sweep(config)
    cell = _num if config.format == "json" else (lambda v: v)
    table = [
        [
            "identity" if r.xi is None else cell(r.xi),
            int(r.valid) if config.format == "json" else str(int(r.valid)),
            cell(r.delta),
            cell(r.distance),
        ]
        for r in rows
    ]
    out = _out_path(config, "sweep")
    _write(out, _table(config, "sweep", ["xi", "valid", "delta", "distance"], table))

    star = find_xi_star(rows)
    meta = {
        "xi_star": None if star is None else _num(star.xi),
        "delta_at_star": None if star is None else _num(star.delta),
        "d_at_star": None if star is None else _num(star.distance),
        "n_valid": sum(r.valid and r.xi is not None for r in rows),
        "config": config.to_dict(),
    }
    _write(out.parent / "sweep_meta.json", _json(meta))
    return meta


def resolve_xi(config: RunConfig, xi: str | float | None) -> DeformationSpec:
    """Turn a --xi value ('identity', 'star' or a number) into a validated spec."""
    if xi is None or xi == "identity":
        spec = DeformationSpec.identity()
    elif xi == "star":
        star = find_xi_star(run_sweep(config))
        if star is None:
            raise ParameterError("the xi sweep has no valid point with delta < 0.01")
        spec = DeformationSpec.laguerre(star.xi)
    else:
        try:
            spec = DeformationSpec.laguerre(float(xi))
        except ValueError as exc:
            raise ParameterError(str(exc)) from exc
    report = validate_on_space(spec, config.space)
    if not report.ok:
        raise ParameterError(
            f"{spec.label} is invalid on n_max={config.n_max}: {report.reason} at n={report.n}"
        )
    return spec


def cmd_fidelity(config: RunConfig, xi=None) -> dict:
    spec = resolve_xi(config, xi)
    curve = fidelity_curve(config.zeta, spec, config.space, config.t_grid.values())
    rows = [list(r) for r in curve.rows()]
    if config.format == "json":
        rows = [[_num(v) for v in r] for r in rows]
    out = _out_path(config, "fidelity")
    _write(out, _table(config, "fidelity", ["gamma_t", "eta", "f_plus", "f_minus"], rows))
    check = {
        "deformation": spec.label,
        "max_abs_discrepancy": curve.max_abs_discrepancy,
        "points": curve.checks,
    }
    _write(out.parent / "fidelity_check.json", _json(check))
    return check


def cmd_gates(config: RunConfig, xi=None, theta: float = math.pi / 4, chi_t: float = math.pi) -> dict:
    spec = resolve_xi(config, xi)
    space, zeta = config.space, config.zeta
    basis = build_logical_basis(zeta, spec, space)
    params = RotationParams.from_theta(theta, zeta)
    u_exact = rotation_exact(params, spec, space)
    u_split = rotation_split(params, spec, space)
    exact = logical_action(u_exact, basis)
    split = logical_action(u_split, basis)
    kets = np.column_stack([basis.ket0.amplitudes, basis.ket1.amplitudes])
    state_dev = np.linalg.norm((u_split - u_exact) @ kets, axis=0)
    cps = cps_truth_table(basis, CpsParams(chi_t), strict=False)

    report = {
        "deformation": spec.label,
        "zeta_sq": config.zeta_sq,
        "theta": theta,
        "beta_t": params.beta_t,
        "exact": {
            "logical_matrix": _complex_matrix(exact.matrix),
            "leakage": _num(exact.leakage),
            "column_norms": [_num(v) for v in exact.column_norms],
        },
        "split": {
            "logical_matrix": _complex_matrix(split.matrix),
            "leakage": _num(split.leakage),
            "column_norms": [_num(v) for v in split.column_norms],
        },
        "split_vs_exact": {
            "state_deviation": [_num(v) for v in state_dev],
            "logical_matrix_max_abs": _num(np.max(np.abs(split.matrix - exact.matrix))),
        },
        "cps": {
            "chi_t": chi_t,
            "phases": [[_num(p.real), _num(p.imag)] for p in cps.ordered()],
            "order": ["00", "01", "10", "11"],
            "residuals": [_num(cps.residuals[k]) for k in sorted(cps.residuals)],
        },
    }
    _write(Path(config.out or "gates.json"), _json(report))
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="catqubit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration; flags override it")
    common.add_argument("--zeta-sq", type=float)
    common.add_argument("--n-max", type=int)
    common.add_argument("--xi-min", type=float)
    common.add_argument("--xi-max", type=float)
    common.add_argument("--xi-count", type=int)
    common.add_argument("--t-max", type=float)
    common.add_argument("--t-count", type=int)
    common.add_argument("--out")
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--workers", type=int)

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("sweep", parents=[common], help="delta and d versus xi")
    p = sub.add_parser("fidelity", parents=[common], help="F+ and F- versus gamma t")
    p.add_argument("--xi", default="identity", help="number, 'identity' or 'star'")
    p = sub.add_parser("gates", parents=[common], help="rotation and phase-gate report")
    p.add_argument("--xi", default="identity", help="number, 'identity' or 'star'")
    p.add_argument("--theta", type=float, default=math.pi / 4)
    p.add_argument("--chi-t", type=float, default=math.pi)
    p = sub.add_parser("selftest", parents=[common], help="run the invariant suite")
    p.add_argument("--eta", type=float, action="append", default=[], help="extra eta to check")
    return parser


def config_from_args(args) -> RunConfig:
    config = RunConfig.load(args.config) if args.config else RunConfig()
    return config.with_overrides(
        zeta_sq=args.zeta_sq,
        n_max=args.n_max,
        xi_min=args.xi_min,
        xi_max=args.xi_max,
        xi_count=args.xi_count,
        t_max=args.t_max,
        t_count=args.t_count,
        out=args.out,
        format=args.format,
        workers=args.workers,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
        if args.command == "sweep":
            result = cmd_sweep(config)
        elif args.command == "fidelity":
            result = cmd_fidelity(config, args.xi)
        elif args.command == "gates":
            result = cmd_gates(config, args.xi, args.theta, args.chi_t)
        else:
            result = run_selftest(config, args.eta)
            print(_json(result), end="")
            return EXIT_OK if result["passed"] else EXIT_INVARIANT
    except ParameterError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        if args.command == "selftest":
            print(_json({"passed": False, "error": type(exc).__name__, "message": str(exc)}), end="")
        return EXIT_PARAM
    except InvariantError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_INVARIANT
    if args.command == "sweep" and result["xi_star"] is not None:
        print(f"xi_star={result['xi_star']:g} delta={result['delta_at_star']:.4g} d={result['d_at_star']:.6g}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
