import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catqubit import (
    DeformationSpec,
    FockSpace,
    FockVector,
    ParameterError,
    apply_channel,
    build_logical_basis,
    coherent_coefficients,
    fidelity_curve,
    fidelity_direct,
    fidelity_series,
    kraus_set,
    outer,
)
from catqubit.channel import DampingPoint
from catqubit.fock import DensityMatrix

seeds = st.integers(0, 2**32 - 1)
etas = st.floats(0.0, 1.0)


def random_mixed(space, seed, rank=3):
    rng = np.random.default_rng(seed)
    vs = rng.normal(size=(rank, space.dim)) + 1j * rng.normal(size=(rank, space.dim))
    w = rng.uniform(0.1, 1.0, rank)
    rho = sum(wi * np.outer(v, v.conj()) for wi, v in zip(w, vs))
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(space, rho / np.trace(rho).real)


def test_damping_point():
    p = DampingPoint(0.5)
    assert p.eta == math.exp(-0.5)
    with pytest.raises(ParameterError):
        DampingPoint(-1.0)


def test_kraus_no_damping():
    ks = kraus_set(1.0, FockSpace(8))
    assert np.array_equal(ks.operators[0], np.eye(9))
    assert not np.any(ks.operators[1:])


@pytest.mark.parametrize("eta", [0.99, 0.9, 0.5, 0.1, 1e-3, 0.0])
def test_kraus_completeness_and_structure(space, eta):
    ks = kraus_set(eta, space)
    assert ks.completeness_error() < 1e-10
    for k, op in enumerate(ks.operators):
        off = op.copy()
        idx = np.arange(k, space.dim)
        off[idx - k, idx] = 0
        assert not np.any(off)


def test_kraus_matrix_elements():
    eta = 0.3
    ks = kraus_set(eta, FockSpace(6))
    for k in range(7):
        for n in range(k, 7):
            expected = math.sqrt(math.comb(n, k)) * eta ** ((n - k) / 2) * (1 - eta) ** (k / 2)
            assert ks.operators[k][n - k, n] == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("eta", [-0.1, 1.5, float("nan")])
def test_kraus_rejects_bad_eta(eta):
    with pytest.raises(ParameterError):
        kraus_set(eta, FockSpace(4))


@settings(max_examples=20, deadline=None)
@given(seed=seeds)
def test_full_damping_sends_everything_to_vacuum(seed):
    space = FockSpace(5)
    rng = np.random.default_rng(seed)
    v = rng.normal(size=6) + 1j * rng.normal(size=6)
    out = apply_channel(outer(FockVector(space, v / np.linalg.norm(v))), kraus_set(0.0, space))
    assert np.allclose(out.entries, outer(space.basis(0)).entries, atol=1e-12)


def test_identity_channel_leaves_state(space):
    rho = random_mixed(space, 7)
    out = apply_channel(rho, kraus_set(1.0, space))
    assert np.max(np.abs(out.entries - rho.entries)) < 1e-14


@pytest.mark.parametrize("eta", [0.99, 0.9, 0.5, 0.1, 1e-3])
def test_coherent_state_covariance(space, zeta, identity, eta):
    rho = outer(coherent_coefficients(zeta, identity, space))
    out = apply_channel(rho, kraus_set(eta, space))
    target = outer(coherent_coefficients(zeta * math.sqrt(eta), identity, space))
    assert np.max(np.abs(out.entries - target.entries)) < 1e-8
    purity = np.trace(out.entries @ out.entries).real
    assert purity == pytest.approx(1.0, abs=1e-8)


@settings(max_examples=25, deadline=None)
@given(seed=seeds, eta=etas)
def test_channel_is_cptp_on_random_states(seed, eta):
    space = FockSpace(16)
    out = apply_channel(random_mixed(space, seed), kraus_set(eta, space))
    assert abs(out.trace() - 1.0) < 1e-10
    assert np.max(np.abs(out.entries - out.entries.conj().T)) < 1e-12
    assert np.linalg.eigvalsh(out.entries).min() >= -1e-10


@settings(max_examples=25, deadline=None)
@given(seed=seeds, eta1=etas, eta2=etas)
def test_semigroup(seed, eta1, eta2):
    space = FockSpace(16)
    rho = random_mixed(space, seed)
    two_step = apply_channel(apply_channel(rho, kraus_set(eta1, space)), kraus_set(eta2, space))
    one_step = apply_channel(rho, kraus_set(eta1 * eta2, space))
    assert np.max(np.abs(two_step.entries - one_step.entries)) < 1e-8


@pytest.mark.parametrize("which", ["plus", "minus"])
def test_fidelity_at_zero_time(space, zeta, identity, which):
    basis = build_logical_basis(zeta, identity, space)
    assert fidelity_direct(basis, which, 1.0) == pytest.approx(1.0, abs=1e-10)
    assert fidelity_series(zeta, identity, which, 1.0, space) == pytest.approx(1.0, abs=1e-10)


def test_fidelity_long_time_limits(space, zeta, identity):
    basis = build_logical_basis(zeta, identity, space)
    eta = math.exp(-15)
    vacuum_overlap = 2 * math.exp(-3) / (1 + math.exp(-6))
    assert vacuum_overlap == pytest.approx(4 * basis.norm_plus**2 * basis.norm_single**2, rel=1e-12)
    assert fidelity_direct(basis, "plus", eta) == pytest.approx(vacuum_overlap, abs=1e-3)
    assert fidelity_direct(basis, "plus", eta) == pytest.approx(0.0993, abs=1e-4)
    assert fidelity_direct(basis, "minus", eta) < 1e-3


@pytest.mark.parametrize("xi", [None, 0.14])
@pytest.mark.parametrize("eta", [0.99, 0.9, 0.5, 0.1])
@pytest.mark.parametrize("which", ["plus", "minus"])
def test_series_matches_direct(space, zeta, xi, eta, which):
    spec = DeformationSpec.identity() if xi is None else DeformationSpec.laguerre(xi)
    basis = build_logical_basis(zeta, spec, space)
    direct = fidelity_direct(basis, which, eta)
    series = fidelity_series(zeta, spec, which, eta, space)
    assert abs(direct - series) < 1e-8


@settings(max_examples=15, deadline=None)
@given(xi=st.floats(0.0, 0.149), zeta_sq=st.floats(0.5, 5.0), eta=etas)
def test_series_matches_direct_property(xi, zeta_sq, eta):
    space = FockSpace(64)
    spec = DeformationSpec.laguerre(xi)
    zeta = math.sqrt(zeta_sq)
    basis = build_logical_basis(zeta, spec, space)
    for which in ("plus", "minus"):
        assert abs(fidelity_direct(basis, which, eta) - fidelity_series(zeta, spec, which, eta, space)) < 1e-8


def test_even_cat_more_robust(space, zeta, identity):
    basis = build_logical_basis(zeta, identity, space)
    eta = math.exp(-0.5)
    assert fidelity_direct(basis, "plus", eta) >= fidelity_direct(basis, "minus", eta)


def test_fidelity_curve(space, zeta, identity):
    curve = fidelity_curve(zeta, identity, space)
    assert len(curve.gamma_t) == 61
    assert curve.f_plus[0] == pytest.approx(1.0, abs=1e-10)
    assert curve.f_minus[0] == pytest.approx(1.0, abs=1e-10)
    assert np.all((curve.f_plus > 0) & (curve.f_plus <= 1 + 1e-12))
    assert np.all((curve.f_minus > 0) & (curve.f_minus <= 1 + 1e-12))
    assert len({c["gamma_t"] for c in curve.checks}) == 3
    assert curve.max_abs_discrepancy < 1e-8


def test_which_validated(space, zeta, identity):
    basis = build_logical_basis(zeta, identity, space)
    with pytest.raises(ParameterError):
        fidelity_direct(basis, "both", 0.5)
