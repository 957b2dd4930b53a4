"""Even/odd deformed cat states, the logical basis they define, and the
diagnostics used to pick a deformation (normalization mismatch and separation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .deformation import (
    DeformationSpec,
    coherent_coefficients,
    deformed_factorial_log,
    exp_f,
    f_value,
    validate_on_space,
)
from .errors import InvariantError, ParameterError
from .fock import FockSpace, FockVector, ladder_matrices

CROSS_CHECK_TOL = 1e-10


@dataclass(frozen=True)
class LogicalBasis:
    zeta: float
    spec: DeformationSpec
    ket0: FockVector
    ket1: FockVector
    norm_plus: float
    norm_minus: float
    norm_single: float

    @property
    def space(self) -> FockSpace:
        return self.ket0.space

    def ket(self, which: str) -> FockVector:
        if which in ("plus", 0, "0"):
            return self.ket0
        if which in ("minus", 1, "1"):
            return self.ket1
        raise ParameterError(f"which must be 'plus' or 'minus', got {which!r}")


@dataclass(frozen=True)
class CatDiagnostics:
    delta: float
    separation: float


def _rel_close(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol * max(abs(a), abs(b), 1.0)


def analytic_norms(zeta: float, spec: DeformationSpec, space: FockSpace) -> tuple[float, float, float]:
    """(N, N+, N-) from the deformed exponential, summed over the truncated space."""
    x = zeta * zeta
    single_sq = 1.0 / exp_f(x, spec, n_terms=space.dim)
    overlap = single_sq * exp_f(-x, spec, n_terms=space.dim)
    return (
        math.sqrt(single_sq),
        1.0 / math.sqrt(2.0 + 2.0 * overlap),
        1.0 / math.sqrt(2.0 - 2.0 * overlap),
    )


def build_logical_basis(zeta: float, spec: DeformationSpec, space: FockSpace) -> LogicalBasis:
    if zeta == 0:
        raise ParameterError("zeta must be nonzero (the odd cat vanishes at zeta = 0)")
    coh = coherent_coefficients(zeta, spec, space).amplitudes.real
    even = space.numbers() % 2 == 0

    # |zeta,f> +/- |-zeta,f> doubles one parity and cancels the other exactly
    plus = np.where(even, 2.0 * coh, 0.0)
    minus = np.where(even, 0.0, 2.0 * coh)
    n_plus_num = 1.0 / np.linalg.norm(plus)
    n_minus_num = 1.0 / np.linalg.norm(minus)
    n_single_num = coh[0] * math.sqrt(f_value(spec, 0))

    n_single, n_plus, n_minus = analytic_norms(zeta, spec, space)
    for name, analytic, numeric in (
        ("N", n_single, n_single_num),
        ("N+", n_plus, n_plus_num),
        ("N-", n_minus, n_minus_num),
    ):
        if not _rel_close(analytic, numeric, CROSS_CHECK_TOL):
            raise InvariantError(
                f"{name}: analytic {analytic!r} vs numerical {numeric!r} for {spec.label}"
            )

    return LogicalBasis(
        zeta=zeta,
        spec=spec,
        ket0=FockVector(space, plus * n_plus_num),
        ket1=FockVector(space, minus * n_minus_num),
        norm_plus=n_plus,
        norm_minus=n_minus,
        norm_single=n_single,
    )


def delta(basis: LogicalBasis) -> float:
    """Relative error made by treating N+ and N- as equal."""
    return abs(basis.norm_plus - basis.norm_minus) / min(basis.norm_plus, basis.norm_minus)


def separation_series(zeta: float, spec: DeformationSpec, space: FockSpace) -> float:
    """<zeta,f|(a + a^dagger)|zeta,f> from the explicit coefficient series.

    Terms that would need n_max + 1 are dropped, matching the truncated
    matrix route.
    """
    log_fact = deformed_factorial_log(spec, space)
    n = space.numbers()
    sign = np.sign(zeta) ** n
    coef = sign * np.exp(n * math.log(abs(zeta)) - 0.5 * log_fact)
    norm_sq = 1.0 / exp_f(zeta * zeta, spec, n_terms=space.dim)
    down = np.zeros_like(coef)
    down[1:] = np.sqrt(n[1:]) * coef[:-1]
    up = np.zeros_like(coef)
    up[:-1] = np.sqrt(n[1:]) * coef[1:]
    return float(norm_sq * np.sum(coef * (down + up)))


def separation_d(zeta: float, spec: DeformationSpec, space: FockSpace) -> float:
    a, a_dag, _ = ladder_matrices(space)
    c = coherent_coefficients(zeta, spec, space).amplitudes
    direct = float(np.real(np.vdot(c, (a + a_dag) @ c)))
    series = separation_series(zeta, spec, space)
    if abs(direct - series) > CROSS_CHECK_TOL:
        raise InvariantError(f"separation: matrix {direct!r} vs series {series!r}")
    return direct


def diagnose(zeta: float, spec: DeformationSpec, space: FockSpace) -> CatDiagnostics:
    basis = build_logical_basis(zeta, spec, space)
    return CatDiagnostics(delta(basis), separation_d(zeta, spec, space))


@dataclass(frozen=True)
class SweepRow:
    xi: float | None  # None marks the undeformed baseline
    valid: bool
    delta: float | None = None
    distance: float | None = None
    failing_n: int | None = None
    reason: str | None = None


def sweep_point(zeta: float, xi: float | None, space: FockSpace) -> SweepRow:
    spec = DeformationSpec.identity() if xi is None else DeformationSpec.laguerre(xi)
    report = validate_on_space(spec, space)
    if not report.ok:
        return SweepRow(xi, False, failing_n=report.n, reason=report.reason)
    diag = diagnose(zeta, spec, space)
    return SweepRow(xi, True, diag.delta, diag.separation)


def sweep_xi(zeta: float, xi_values, space: FockSpace) -> list[SweepRow]:
    return [sweep_point(zeta, float(xi), space) for xi in xi_values]


def find_xi_star(rows: list[SweepRow], delta_max: float = 0.01) -> SweepRow | None:
    """Deformed row with the smallest separation among those with delta < delta_max."""
    candidates = [r for r in rows if r.valid and r.xi is not None and r.delta < delta_max]
    if not candidates:
        return None
    return min(candidates, key=lambda r: (r.distance, r.xi))
