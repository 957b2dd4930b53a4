"""Truncated Fock-space arithmetic.

Everything is dense numpy. A single mode keeps the number states
``|0>, ..., |n_max>``; the two-mode product space reuses the same cutoff on
both modes and flattens ``(n, m)`` to ``n * (n_max + 1) + m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError

DEFAULT_N_MAX = 64
NORM_TOL = 1e-10
HERMITIAN_TOL = 1e-12
TAIL_TOL = 1e-12


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class FockSpace:
    n_max: int = DEFAULT_N_MAX

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise ParameterError(f"n_max must be an integer >= 1, got {self.n_max!r}")

    @property
    def dim(self) -> int:
        return self.n_max + 1

    def numbers(self) -> np.ndarray:
        return np.arange(self.dim)

    def basis(self, n: int) -> FockVector:
        amps = np.zeros(self.dim, dtype=complex)
        amps[n] = 1.0
        return FockVector(self, amps)


@dataclass(frozen=True)
class FockVector:
    """Amplitudes over the truncated number basis (one or two modes)."""

    space: FockSpace
    amplitudes: np.ndarray = field(repr=False)
    modes: int = 1

    def __post_init__(self):
        amps = _frozen(self.amplitudes).reshape(-1)
        if amps.shape[0] != self.space.dim**self.modes:
            raise ParameterError(
                f"expected {self.space.dim ** self.modes} amplitudes, got {amps.shape[0]}"
            )
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @property
    def tail_mass(self) -> float:
        """|c_{n_max}|^2 for one mode; for two modes, mass with either index at n_max."""
        if self.modes == 1:
            return float(abs(self.amplitudes[-1]) ** 2)
        grid = np.abs(self.amplitudes.reshape(self.space.dim, self.space.dim)) ** 2
        return float(grid[-1, :].sum() + grid[:, -1].sum() - grid[-1, -1])

    def inner(self, other: FockVector) -> complex:
        """<self|other>."""
        _check_same(self, other)
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class DensityMatrix:
    space: FockSpace
    entries: np.ndarray = field(repr=False)
    modes: int = 1

    def __post_init__(self):
        rho = _frozen(self.entries)
        d = self.space.dim**self.modes
        if rho.shape != (d, d):
            raise ParameterError(f"expected a {d}x{d} matrix, got {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T), initial=0.0) > HERMITIAN_TOL:
            raise ParameterError("density matrix is not Hermitian")
        object.__setattr__(self, "entries", rho)

    def trace(self) -> float:
        return float(np.trace(self.entries).real)


def _check_same(x, y):
    if x.space != y.space or x.modes != y.modes:
        raise ParameterError(
            f"dimension mismatch: {x.space}/{x.modes} modes vs {y.space}/{y.modes} modes"
        )


def ladder_matrices(space: FockSpace) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (a, a^dagger, a^dagger a) on the truncated space."""
    n = space.numbers()
    a = np.diag(np.sqrt(n[1:]).astype(complex), k=1)
    number = np.diag(n.astype(complex))
    return a, a.conj().T, number


def outer(psi: FockVector) -> DensityMatrix:
    if abs(psi.norm() ** 2 - 1.0) > NORM_TOL:
        raise ParameterError(f"state is not normalized (norm^2 = {psi.norm() ** 2!r})")
    v = psi.amplitudes
    return DensityMatrix(psi.space, np.outer(v, v.conj()), psi.modes)


def trace_product(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Re Tr(rho sigma), computed as sum_ij rho_ij sigma_ji."""
    _check_same(rho, sigma)
    value = np.sum(rho.entries * sigma.entries.T)
    if abs(value.imag) >= 1e-10:
        raise ParameterError(f"Tr(rho sigma) has imaginary part {value.imag:.3e}")
    return float(value.real)


def two_mode_index(n: int, m: int, space: FockSpace) -> int:
    if not (0 <= n <= space.n_max and 0 <= m <= space.n_max):
        raise ParameterError(f"({n}, {m}) outside the two-mode space")
    return n * space.dim + m


def two_mode_pair(index: int, space: FockSpace) -> tuple[int, int]:
    if not 0 <= index < space.dim**2:
        raise ParameterError(f"flat index {index} outside the two-mode space")
    return divmod(index, space.dim)


def tensor(psi_a: FockVector, psi_b: FockVector) -> FockVector:
    if psi_a.modes != 1 or psi_b.modes != 1:
        raise ParameterError("tensor expects two single-mode vectors")
    _check_same(psi_a, psi_b)
    return FockVector(psi_a.space, np.kron(psi_a.amplitudes, psi_b.amplitudes), modes=2)
