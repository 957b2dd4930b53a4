import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import roots_laguerre

from catqubit import (
    DeformationSpec,
    FockSpace,
    NonConvergence,
    NonPositive,
    TailTooHeavy,
    ZeroDenominator,
    coherent_coefficients,
    deformed_annihilation,
    deformed_factorial_log,
    exp_f,
    f_value,
    ladder_matrices,
    laguerre,
    validate_on_space,
)

mpmath.mp.dps = 30


def laguerre_brute(n, m, x):
    """Explicit finite sum at 30 digits."""
    x = mpmath.mpf(x)
    return sum(
        (-1) ** j * mpmath.binomial(n + m, n - j) * x**j / mpmath.factorial(j) for j in range(n + 1)
    )


CLOSED = {
    (0, 0): lambda x: 1.0,
    (1, 0): lambda x: 1 - x,
    (2, 0): lambda x: 1 - 2 * x + x**2 / 2,
    (3, 0): lambda x: 1 - 3 * x + 1.5 * x**2 - x**3 / 6,
    (0, 1): lambda x: 1.0,
    (1, 1): lambda x: 2 - x,
    (2, 1): lambda x: 3 - 3 * x + x**2 / 2,
    (3, 1): lambda x: 4 - 6 * x + 2 * x**2 - x**3 / 6,
}


def test_laguerre_examples():
    assert laguerre(0, 3, 7.5) == 1.0
    assert laguerre(1, 1, 2.0) == 0.0
    assert laguerre(2, 0, 1.0) == pytest.approx(-0.5, abs=1e-15)


@pytest.mark.parametrize("n,m", sorted(CLOSED))
def test_laguerre_closed_forms(n, m):
    rng = np.random.default_rng(n * 10 + m)
    for x in rng.uniform(0, 5, 10):
        assert laguerre(n, m, x) == pytest.approx(CLOSED[(n, m)](x), abs=1e-10)


@pytest.mark.parametrize("m", [0, 1])
@pytest.mark.parametrize("x", [0.0, 0.0196, 0.25, 1.0, 2.5, 4.0])
def test_laguerre_against_30_digit_oracle(m, x):
    for n in range(65):
        expected = float(laguerre_brute(n, m, x))
        assert laguerre(n, m, x) == pytest.approx(expected, rel=1e-9, abs=1e-10)


@settings(max_examples=50, deadline=None)
@given(n=st.integers(1, 40), m=st.integers(0, 3), x=st.floats(0, 6))
def test_laguerre_recurrence(n, m, x):
    lhs = (n + 1) * laguerre(n + 1, m, x)
    rhs = (2 * n + 1 + m - x) * laguerre(n, m, x) - (n + m) * laguerre(n - 1, m, x)
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-9)


def test_f_value_examples():
    assert f_value(DeformationSpec.identity(), 17) == 1.0
    for xi in (0.0, 0.1, 0.7, 1.3):
        assert f_value(DeformationSpec.laguerre(xi), 0) == 1.0
    for n in range(21):
        assert f_value(DeformationSpec.laguerre(0.0), n) == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ZeroDenominator):
        f_value(DeformationSpec.laguerre(1.0), 1)


def test_f_value_non_positive():
    # x = 1.5 lies between the roots of L^0_1 (x=1) and L^1_1 (x=2)
    with pytest.raises(NonPositive):
        f_value(DeformationSpec.laguerre(math.sqrt(1.5)), 1)


def test_validate_on_space():
    assert validate_on_space(DeformationSpec.identity(), FockSpace(64)).ok
    assert validate_on_space(DeformationSpec.laguerre(0.0), FockSpace(64)).ok
    report = validate_on_space(DeformationSpec.laguerre(1.0), FockSpace(64))
    assert (report.ok, report.n, report.reason) == (False, 1, "zero denominator")
    # 2 - sqrt(2) is a root of L^0_2; nothing goes wrong at n = 0, 1
    report = validate_on_space(DeformationSpec.laguerre(math.sqrt(2 - math.sqrt(2))), FockSpace(64))
    assert (report.ok, report.n) == (False, 2)


def test_validity_window_matches_smallest_laguerre_root():
    # below the smallest root of L^0_64 every L^0_n, L^1_n (n <= 64) is positive
    x_min = roots_laguerre(64)[0][0]
    space = FockSpace(64)
    assert validate_on_space(DeformationSpec.laguerre(math.sqrt(0.999 * x_min)), space).ok
    report = validate_on_space(DeformationSpec.laguerre(math.sqrt(1.001 * x_min)), space)
    assert not report.ok and report.n == 64


def test_deformed_factorial_log():
    space = FockSpace(10)
    table = deformed_factorial_log(DeformationSpec.identity(), space)
    assert table[0] == 0.0
    assert table[4] == pytest.approx(math.log(24), abs=1e-14)
    lag = deformed_factorial_log(DeformationSpec.laguerre(0.0), space)
    assert lag[5] == pytest.approx(math.log(120), abs=1e-13)


@settings(max_examples=25, deadline=None)
@given(xi=st.floats(0.0, 0.149))
def test_deformed_factorial_steps(xi):
    spec = DeformationSpec.laguerre(xi)
    space = FockSpace(64)
    table = deformed_factorial_log(spec, space)
    for n in range(1, 65):
        assert table[n] - table[n - 1] == pytest.approx(math.log(n * f_value(spec, n)), abs=1e-12)


def test_exp_f_identity():
    assert exp_f(1.0, DeformationSpec.identity()) == pytest.approx(math.e, abs=1e-12)
    assert exp_f(0.0, DeformationSpec.identity()) == 1.0
    for x in np.linspace(-10, 10, 201):
        assert exp_f(float(x), DeformationSpec.identity()) == pytest.approx(
            math.exp(x), rel=1e-12, abs=1e-12
        )


def test_exp_f_non_extensive():
    spec = DeformationSpec.laguerre(0.5)
    assert abs(exp_f(1.0, spec) ** 2 - exp_f(2.0, spec)) > 1e-6


def test_exp_f_non_convergence():
    with pytest.raises(NonConvergence):
        exp_f(50.0, DeformationSpec.identity(), n_terms=10)


def test_coherent_identity_closed_form(space, zeta):
    c = coherent_coefficients(zeta, DeformationSpec.identity(), space).amplitudes
    assert c[0].real == pytest.approx(math.exp(-1.5), abs=1e-12)
    n = np.arange(65)
    expected = np.exp(-1.5 + n * math.log(zeta) - 0.5 * np.array([math.lgamma(k + 1) for k in n]))
    assert np.allclose(c, expected, atol=1e-12, rtol=0)


@settings(max_examples=25, deadline=None)
@given(xi=st.floats(0.0, 0.149), zeta=st.floats(0.3, 2.5))
def test_coherent_is_normalized_eigenstate(xi, zeta):
    spec = DeformationSpec.laguerre(xi)
    space = FockSpace(64)
    psi = coherent_coefficients(zeta, spec, space)
    assert psi.norm() == pytest.approx(1.0, abs=1e-12)
    a = deformed_annihilation(spec, space)
    residual = np.linalg.norm(a @ psi.amplitudes - zeta * psi.amplitudes)
    # the only missing piece is zeta * c_{n_max} at the truncation edge
    assert residual <= zeta * math.sqrt(psi.tail_mass) + 1e-12
    assert residual < 1e-8


def test_coherent_normalization_matches_exp_f(space, zeta):
    spec = DeformationSpec.laguerre(0.1)
    psi = coherent_coefficients(zeta, spec, space)
    n_analytic = exp_f(zeta**2, spec, n_terms=space.dim) ** -0.5
    assert psi.amplitudes[0].real * math.sqrt(f_value(spec, 0)) == pytest.approx(n_analytic, rel=1e-12)


def test_coherent_tail_too_heavy(zeta):
    with pytest.raises(TailTooHeavy):
        coherent_coefficients(zeta, DeformationSpec.identity(), FockSpace(2))


def test_deformed_annihilation(space):
    a, _, _ = ladder_matrices(space)
    assert np.array_equal(deformed_annihilation(DeformationSpec.identity(), space), a)
    spec = DeformationSpec.laguerre(0.12)
    big_a = deformed_annihilation(spec, space)
    assert not np.any(big_a @ space.basis(0).amplitudes)
    g = np.array([n * f_value(spec, n) for n in range(65)])
    prod = big_a.conj().T @ big_a
    assert np.allclose(prod, np.diag(g), atol=1e-12, rtol=0)
