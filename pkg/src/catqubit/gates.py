"""Logical gates on cat-encoded qubits.

Single-qubit rotation: the drive ``H = beta (A^dagger + A)`` (beta real) is
evolved exactly by diagonalisation and approximately by the first-order split
product ``exp(-i beta t A^dagger) exp(-i beta t A)``. The split product is not
unitary; its norm defect and distance from the exact evolution are measured,
not assumed away.

Two-qubit gate: the conditional phase shift ``exp(-i chi t n m)`` on two
modes, which at ``chi t = pi`` is ``(-1)^(n m)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cat import LogicalBasis
from .deformation import DeformationSpec, deformed_annihilation
from .errors import InvariantError, ParameterError
from .fock import FockSpace, FockVector, tensor

TAYLOR_TOL = 1e-16


@dataclass(frozen=True)
class RotationParams:
    beta: float
    t: float
    zeta: float

    def __post_init__(self):
        if not math.isfinite(self.beta):
            raise ParameterError("beta must be a finite real number")
        if not self.t >= 0:
            raise ParameterError(f"t must be >= 0, got {self.t!r}")

    @classmethod
    def from_theta(cls, theta: float, zeta: float, t: float = 1.0) -> RotationParams:
        """Choose beta so that 2 zeta beta t = theta."""
        return cls(theta / (2.0 * zeta * t), t, zeta)

    @property
    def theta(self) -> float:
        return 2.0 * self.zeta * self.beta * self.t

    @property
    def beta_t(self) -> float:
        return self.beta * self.t


@dataclass(frozen=True)
class LogicalAction:
    matrix: np.ndarray  # M[i, j] = <i|U|j>
    leakage: float
    column_norms: np.ndarray  # ||U|j>||, equal to 1 only for unitary U


@dataclass(frozen=True)
class CpsParams:
    chi_t: float = math.pi


def expm_taylor(m: np.ndarray) -> np.ndarray:
    """Matrix exponential by scaled Taylor series and repeated squaring."""
    norm = np.max(np.sum(np.abs(m), axis=0), initial=0.0)
    squarings = max(0, math.ceil(math.log2(norm))) + 1 if norm > 0.5 else 0
    scaled = m / 2.0**squarings
    result = np.eye(m.shape[0], dtype=complex)
    term = np.eye(m.shape[0], dtype=complex)
    for k in range(1, 200):
        term = term @ scaled / k
        result = result + term
        if np.max(np.abs(term), initial=0.0) < TAYLOR_TOL:
            break
    else:
        raise ArithmeticError("Taylor series for expm did not converge")
    for _ in range(squarings):
        result = result @ result
    return result


def rotation_split(params: RotationParams, spec: DeformationSpec, space: FockSpace) -> np.ndarray:
    a = deformed_annihilation(spec, space)
    bt = params.beta_t
    return expm_taylor(-1j * bt * a.conj().T) @ expm_taylor(-1j * bt * a)


def rotation_exact(params: RotationParams, spec: DeformationSpec, space: FockSpace) -> np.ndarray:
    a = deformed_annihilation(spec, space)
    h = params.beta * (a + a.conj().T)
    energies, vecs = np.linalg.eigh(h)
    return (vecs * np.exp(-1j * energies * params.t)) @ vecs.conj().T


def logical_action(u: np.ndarray, basis: LogicalBasis) -> LogicalAction:
    kets = np.column_stack([basis.ket0.amplitudes, basis.ket1.amplitudes])
    if u.shape != (kets.shape[0], kets.shape[0]):
        raise ParameterError(f"operator shape {u.shape} does not match the basis space")
    evolved = u @ kets
    m = kets.conj().T @ evolved
    col_norms = np.linalg.norm(evolved, axis=0)
    # share of each evolved column outside span{|0>, |1>}
    captured = np.sum(np.abs(m) ** 2, axis=0) / col_norms**2
    return LogicalAction(m, float(np.mean(1.0 - captured)), col_norms)


def hadamard_like(theta: float) -> np.ndarray:
    """cos(theta) I - i sin(theta) sigma_x."""
    return np.array(
        [[math.cos(theta), -1j * math.sin(theta)], [-1j * math.sin(theta), math.cos(theta)]]
    )


def cps_apply(state: FockVector, params: CpsParams) -> FockVector:
    if state.modes != 2:
        raise ParameterError("the conditional phase shift acts on a two-mode state")
    n = state.space.numbers()
    nm = np.outer(n, n).reshape(-1)
    return FockVector(state.space, state.amplitudes * np.exp(-1j * params.chi_t * nm), modes=2)


@dataclass(frozen=True)
class CpsTable:
    phases: dict[tuple[int, int], complex]  # <xy|CPS|xy>
    residuals: dict[tuple[int, int], float]  # ||CPS|xy> - phase |xy>||

    def ordered(self) -> list[complex]:
        return [self.phases[key] for key in sorted(self.phases)]


def cps_truth_table(
    basis: LogicalBasis, params: CpsParams = CpsParams(), strict: bool = True, tol: float = 1e-12
) -> CpsTable:
    """Diagonal elements of the phase gate on the four logical product states.

    With ``strict`` the outputs must stay the same product states up to a
    unit-modulus phase, which holds at chi_t = pi for any deformation.
    """
    kets = (basis.ket0, basis.ket1)
    phases, residuals = {}, {}
    for x in (0, 1):
        for y in (0, 1):
            product = tensor(kets[x], kets[y])
            out = cps_apply(product, params)
            phase = product.inner(out)
            residual = float(np.linalg.norm(out.amplitudes - phase * product.amplitudes))
            if strict and (abs(abs(phase) - 1.0) > tol or residual > tol):
                raise InvariantError(
                    f"CPS moved |{x}{y}> out of its product state (residual {residual:.3e})"
                )
            phases[(x, y)] = phase
            residuals[(x, y)] = residual
    return CpsTable(phases, residuals)
