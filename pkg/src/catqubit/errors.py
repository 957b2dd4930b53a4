"""Exception hierarchy shared by every module.

``ParameterError`` covers anything the caller can fix by choosing different
inputs (bad eta, invalid deformation, truncation too small). ``InvariantError``
means two independent numerical routes disagreed, which should never happen
for valid inputs.
"""


class CatQubitError(Exception):
    pass


class ParameterError(CatQubitError, ValueError):
    pass


class DeformationError(ParameterError):
    """The deformation function is unusable at photon number ``n``."""

    reason = "invalid"

    def __init__(self, n: int, value: float | None = None, message: str | None = None):
        self.n = n
        self.value = value
        super().__init__(message or f"deformation {self.reason} at n={n} (value={value!r})")


class ZeroDenominator(DeformationError):
    reason = "zero denominator"


class NonPositive(DeformationError):
    reason = "non-positive"


class TailTooHeavy(ParameterError):
    def __init__(self, tail: float, n_max: int, tol: float):
        self.tail = tail
        self.n_max = n_max
        self.tol = tol
        super().__init__(
            f"tail mass |c_{n_max}|^2 = {tail:.3e} exceeds {tol:.0e}; increase n_max"
        )


class NonConvergence(CatQubitError, ArithmeticError):
    pass


class InvariantError(CatQubitError, RuntimeError):
    pass
