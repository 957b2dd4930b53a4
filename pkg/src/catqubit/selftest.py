"""Invariant checks behind ``catqubit selftest``.

Each check returns a record ``{"name", "ok", "detail"}``. Parameter problems
(bad eta, truncation too small) raise ``ParameterError`` instead of failing a
check, so the CLI can tell configuration mistakes from numerical failures.
"""

from __future__ import annotations

import math

import numpy as np

from .cat import build_logical_basis, delta, find_xi_star, separation_d, sweep_xi
from .channel import apply_channel, fidelity_direct, fidelity_series, kraus_set
from .config import RunConfig
from .deformation import DeformationSpec, coherent_coefficients
from .errors import InvariantError
from .fock import outer
from .gates import CpsParams, cps_truth_table

ETAS = (0.99, 0.9, 0.5, 0.1, 1e-3)


def _record(name, ok, **detail):
    return {"name": name, "ok": bool(ok), "detail": detail}


def check_kraus(config: RunConfig, etas) -> list[dict]:
    space = config.space
    basis = build_logical_basis(config.zeta, DeformationSpec.identity(), space)
    rho = outer(basis.ket0)
    out = []
    for eta in etas:
        ks = kraus_set(eta, space)
        err = ks.completeness_error()
        trace_err = abs(apply_channel(rho, ks).trace() - 1.0)
        out.append(
            _record(
                f"kraus[eta={eta:g}]",
                err < 1e-10 and trace_err < 1e-10,
                completeness=err,
                trace_error=trace_err,
            )
        )
    return out


def check_reduction(config: RunConfig) -> list[dict]:
    space, zeta = config.space, config.zeta
    ident = build_logical_basis(zeta, DeformationSpec.identity(), space)
    lag = build_logical_basis(zeta, DeformationSpec.laguerre(0.0), space)
    basis_err = max(
        np.max(np.abs(ident.ket0.amplitudes - lag.ket0.amplitudes)),
        np.max(np.abs(ident.ket1.amplitudes - lag.ket1.amplitudes)),
    )
    e = math.exp(-2 * zeta * zeta)
    n_plus, n_minus = (2 * (1 + e)) ** -0.5, (2 * (1 - e)) ** -0.5
    delta_closed = abs(n_plus - n_minus) / min(n_plus, n_minus)
    d_err = abs(separation_d(zeta, DeformationSpec.laguerre(0.0), space) - 2 * zeta)
    delta_err = abs(delta(lag) - delta_closed)
    return [
        _record("reduction.basis", basis_err < 1e-12, max_abs=float(basis_err)),
        _record("reduction.separation", d_err < 1e-10, abs_err=d_err),
        _record("reduction.delta", delta_err < 1e-10, abs_err=delta_err),
    ]


def check_parity(config: RunConfig, specs) -> list[dict]:
    out = []
    for spec in specs:
        basis = build_logical_basis(config.zeta, spec, config.space)
        ok = not np.any(basis.ket0.amplitudes[1::2]) and not np.any(basis.ket1.amplitudes[::2])
        overlap = abs(basis.ket0.inner(basis.ket1))
        out.append(_record(f"parity[{spec.label}]", ok and overlap == 0.0, overlap=overlap))
    return out


def check_fidelity_paths(config: RunConfig, specs, etas=(0.99, 0.9, 0.5, 0.1)) -> list[dict]:
    out = []
    for spec in specs:
        basis = build_logical_basis(config.zeta, spec, config.space)
        worst = 0.0
        for eta in etas:
            for which in ("plus", "minus"):
                direct = fidelity_direct(basis, which, eta)
                series = fidelity_series(config.zeta, spec, which, eta, config.space)
                worst = max(worst, abs(direct - series))
        out.append(_record(f"fidelity_paths[{spec.label}]", worst < 1e-8, max_abs=worst))
    return out


def check_cps(config: RunConfig, specs) -> list[dict]:
    out = []
    for spec in specs:
        basis = build_logical_basis(config.zeta, spec, config.space)
        try:
            phases = cps_truth_table(basis, CpsParams(math.pi)).ordered()
        except InvariantError as exc:
            out.append(_record(f"cps[{spec.label}]", False, error=str(exc)))
            continue
        err = max(abs(p - q) for p, q in zip(phases, (1, 1, 1, -1)))
        out.append(_record(f"cps[{spec.label}]", err < 1e-12, max_abs=float(err)))
    return out


def run_selftest(config: RunConfig, extra_etas=()) -> dict:
    # surfaces TailTooHeavy / invalid parameters before any check runs
    coherent_coefficients(config.zeta, DeformationSpec.identity(), config.space)
    for eta in extra_etas:
        kraus_set(eta, config.space)

    rows = sweep_xi(config.zeta, config.xi_grid.values(), config.space)
    star = find_xi_star(rows)
    specs = [DeformationSpec.identity()]
    if star is not None:
        specs.append(DeformationSpec.laguerre(star.xi))

    checks = []
    checks += check_kraus(config, tuple(ETAS) + tuple(extra_etas))
    checks += check_reduction(config)
    checks += check_parity(config, specs)
    checks += check_fidelity_paths(config, specs)
    checks += check_cps(config, specs)
    return {
        "passed": all(c["ok"] for c in checks),
        "xi_star": None if star is None else star.xi,
        "checks": checks,
    }
