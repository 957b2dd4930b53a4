"""Deformation functions f(n) and the f-deformed oscillator quantities built on them.

Two families are supported: the identity (ordinary boson algebra) and the
Laguerre deformation

    f(n) = L^1_n(xi^2) / ((n + 1) L^0_n(xi^2)),

which reduces to the identity at ``xi = 0``. The deformed factorial uses the
convention ``[0]_f! = f(0)`` so that ``[n]_f! / [n-1]_f! = n f(n)`` for every
``n >= 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Literal

import numpy as np

from .errors import (
    DeformationError,
    NonConvergence,
    NonPositive,
    TailTooHeavy,
    ZeroDenominator,
)
from .fock import TAIL_TOL, FockSpace, FockVector

ZERO_DENOMINATOR_TOL = 1e-14


@dataclass(frozen=True)
class DeformationSpec:
    kind: Literal["identity", "laguerre"] = "identity"
    xi: float = 0.0

    def __post_init__(self):
        if self.kind not in ("identity", "laguerre"):
            raise ValueError(f"unknown deformation kind {self.kind!r}")
        if self.kind == "laguerre" and not (math.isfinite(self.xi) and self.xi >= 0):
            raise ValueError(f"xi must be finite and >= 0, got {self.xi!r}")

    @classmethod
    def identity(cls) -> DeformationSpec:
        return cls("identity")

    @classmethod
    def laguerre(cls, xi: float) -> DeformationSpec:
        return cls("laguerre", float(xi))

    @property
    def label(self) -> str:
        return "identity" if self.kind == "identity" else f"laguerre(xi={self.xi:g})"


@dataclass(frozen=True)
class Validity:
    ok: bool
    n: int | None = None
    reason: str | None = None
    value: float | None = None

    def raise_if_invalid(self):
        if self.ok:
            return
        exc = {"zero denominator": ZeroDenominator, "non-positive": NonPositive}.get(
            self.reason, DeformationError
        )
        raise exc(self.n, self.value)


def laguerre(n: int, m: int, x: float) -> float:
    """Associated Laguerre polynomial L^m_n(x) by upward three-term recurrence."""
    if n < 0 or m < 0:
        raise ValueError("n and m must be non-negative")
    prev, cur = 1.0, 1.0 + m - x
    if n == 0:
        return prev
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + m - x) * cur - (k + m) * prev) / (k + 1)
    return cur


def _raw_f(spec: DeformationSpec) -> Iterator[float]:
    """Yield f(0), f(1), ... without the positivity check.

    Raises ZeroDenominator at the first n where L^0_n(xi^2) vanishes.
    """
    if spec.kind == "identity":
        while True:
            yield 1.0
    x = spec.xi**2
    # (L^0_{n-1}, L^0_n) and (L^1_{n-1}, L^1_n), advanced together
    l0_prev, l0 = 0.0, 1.0
    l1_prev, l1 = 0.0, 1.0
    n = 0
    while True:
        if abs(l0) < ZERO_DENOMINATOR_TOL:
            raise ZeroDenominator(n, l0)
        yield l1 / ((n + 1) * l0)
        l0_prev, l0 = l0, ((2 * n + 1 - x) * l0 - n * l0_prev) / (n + 1)
        l1_prev, l1 = l1, ((2 * n + 2 - x) * l1 - (n + 1) * l1_prev) / (n + 1)
        n += 1


def f_value(spec: DeformationSpec, n: int) -> float:
    if spec.kind == "identity":
        return 1.0
    x = spec.xi**2
    denominator = laguerre(n, 0, x)
    if abs(denominator) < ZERO_DENOMINATOR_TOL:
        raise ZeroDenominator(n, denominator)
    value = laguerre(n, 1, x) / ((n + 1) * denominator)
    if not math.isfinite(value) or value <= 0:
        raise NonPositive(n, value)
    return value


def validate_on_space(spec: DeformationSpec, space: FockSpace) -> Validity:
    """Report the smallest n <= n_max where f is zero-denominator, non-finite or <= 0."""
    gen = _raw_f(spec)
    for n in range(space.dim):
        try:
            value = next(gen)
        except ZeroDenominator as exc:
            return Validity(False, n, "zero denominator", exc.value)
        if not math.isfinite(value) or value <= 0:
            return Validity(False, n, "non-positive", value)
    return Validity(True)


def f_values(spec: DeformationSpec, space: FockSpace) -> np.ndarray:
    """f(0..n_max); raises if the deformation is invalid anywhere on the space."""
    validate_on_space(spec, space).raise_if_invalid()
    gen = _raw_f(spec)
    return np.array([next(gen) for _ in range(space.dim)])


def deformed_factorial_log(spec: DeformationSpec, space: FockSpace) -> np.ndarray:
    """ln([n]_f!) for n = 0..n_max, with [0]_f! = f(0)."""
    f = f_values(spec, space)
    n = space.numbers()
    steps = np.log(np.where(n == 0, 1, n) * f)
    return np.cumsum(steps)


def exp_f(x: float, spec: DeformationSpec, n_terms: int = 400) -> float:
    """Deformed exponential sum_n x^n / [n]_f!.

    Only requires n f(n) != 0 along the way; positivity of f is not needed
    for the series itself.
    """
    gen = _raw_f(spec)
    term = 1.0 / next(gen)
    terms = [term]
    for n in range(1, n_terms):
        fn = next(gen)
        if fn == 0:
            raise NonPositive(n, fn)
        term *= x / (n * fn)
        terms.append(term)
        total = math.fsum(terms)
        if abs(term) < 1e-16 * abs(total) or term == 0.0:
            return total
    raise NonConvergence(f"exp_f({x}) not converged after {n_terms} terms for {spec.label}")


def coherent_coefficients(zeta: float, spec: DeformationSpec, space: FockSpace) -> FockVector:
    """Normalized f-coherent state |zeta, f> on the truncated space."""
    f = f_values(spec, space)
    c = np.empty(space.dim)
    c[0] = 1.0
    for n in range(1, space.dim):
        c[n] = c[n - 1] * zeta / math.sqrt(n * f[n])
    c /= np.linalg.norm(c)
    tail = float(c[-1] ** 2)
    if tail > TAIL_TOL:
        raise TailTooHeavy(tail, space.n_max, TAIL_TOL)
    return FockVector(space, c)


def deformed_annihilation(spec: DeformationSpec, space: FockSpace) -> np.ndarray:
    """A = a sqrt(f(a^dagger a)); <n-1|A|n> = sqrt(n f(n))."""
    f = f_values(spec, space)
    n = space.numbers()
    return np.diag(np.sqrt(n[1:] * f[1:]).astype(complex), k=1)
