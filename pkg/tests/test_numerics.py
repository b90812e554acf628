import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import ellipj, ellipk

from wavepar.errors import ModulusOne, NotSimpleRoot, StepFailure, ToleranceNotMet
from wavepar.numerics import (elliptic_K, gauss_legendre_cumulative, gauss_legendre_partial,
                              jacobi_sn, jacobi_sncndn, ode_solve, quad_adaptive, quad_turning)

moduli = st.floats(min_value=0.0, max_value=0.999)
args = st.floats(min_value=-20.0, max_value=20.0)


# -- elliptic functions -----------------------------------------------------

def test_K_of_inverse_sqrt2_frozen():
    assert elliptic_K(1 / math.sqrt(2)) == pytest.approx(1.8540746773013719, abs=1e-15)


def test_K_zero_modulus_is_half_pi():
    assert elliptic_K(0.0) == pytest.approx(math.pi / 2, abs=1e-15)


def test_K_rejects_unit_modulus():
    with pytest.raises(ModulusOne):
        elliptic_K(1.0)


def test_sn_degenerates_to_sin_and_tanh():
    u = np.linspace(-3, 3, 11)
    assert np.allclose(jacobi_sn(u, 0.0), np.sin(u), atol=1e-15)
    assert np.allclose(jacobi_sn(u, 1.0), np.tanh(u), atol=1e-15)


def test_sn_at_quarter_period_is_one():
    p = 0.7
    assert jacobi_sn(elliptic_K(p), p) == pytest.approx(1.0, abs=1e-13)


def test_sn_rejects_bad_modulus():
    with pytest.raises(ValueError):
        jacobi_sn(0.3, 1.5)


@given(u=args, p=moduli)
@settings(max_examples=200, deadline=None)
def test_sncndn_match_scipy_with_squared_parameter(u, p):
    sn, cn, dn = jacobi_sncndn(u, p)
    ref = ellipj(u, p * p)
    assert sn == pytest.approx(ref[0], abs=1e-12)
    assert cn == pytest.approx(ref[1], abs=1e-12)
    assert dn == pytest.approx(ref[2], abs=1e-12)


@given(u=args, p=moduli)
@settings(max_examples=200, deadline=None)
def test_jacobi_identities(u, p):
    sn, cn, dn = jacobi_sncndn(u, p)
    assert sn**2 + cn**2 == pytest.approx(1.0, abs=1e-13)
    assert dn**2 + p * p * sn**2 == pytest.approx(1.0, abs=1e-13)


@given(p=moduli)
@settings(max_examples=100, deadline=None)
def test_K_matches_scipy(p):
    assert elliptic_K(p) == pytest.approx(ellipk(p * p), rel=1e-13)


# -- quadrature ----------------------------------------------------------------

def test_quad_polynomial_exact():
    res = quad_adaptive(lambda x: 3 * x**2, 0.0, 2.0)
    assert res.value == pytest.approx(8.0, abs=1e-14)
    assert res.converged


def test_quad_complex_integrand():
    res = quad_adaptive(lambda x: np.exp(1j * x), 0.0, math.pi)
    assert abs(res.value - 2j) < 1e-13


def test_quad_empty_interval():
    assert quad_adaptive(np.sin, 1.0, 1.0).value == 0.0


def test_quad_budget_exhaustion_flags_or_raises():
    f = lambda x: np.abs(x - 1 / 3) ** -0.5  # noqa: E731
    with pytest.warns(RuntimeWarning):
        res = quad_adaptive(f, 0.0, 1.0, tol=1e-15, max_intervals=20)
    assert not res.converged
    with pytest.raises(ToleranceNotMet):
        quad_adaptive(f, 0.0, 1.0, tol=1e-15, max_intervals=20, strict=True)


@given(a=st.floats(-3, 3), b=st.floats(-3, 3), k=st.floats(0.1, 5))
@settings(max_examples=100, deadline=None)
def test_quad_trig_antiderivative(a, b, k):
    res = quad_adaptive(lambda x: np.cos(k * x), a, b, tol=1e-13)
    assert res.value == pytest.approx((math.sin(k * b) - math.sin(k * a)) / k, abs=1e-12)


def test_quad_turning_arcsine_integral():
    res = quad_turning(lambda c: np.ones_like(c), lambda c: 1 - c**2, -1.0, 1.0)
    assert res.value == pytest.approx(math.pi, abs=1e-13)


def test_quad_turning_weighted():
    # int_{-1}^{1} c^2 / sqrt(1 - c^2) = pi / 2
    res = quad_turning(lambda c: c**2, lambda c: 1 - c**2, -1.0, 1.0)
    assert res.value == pytest.approx(math.pi / 2, abs=1e-13)


def test_quad_turning_double_root_rejected():
    with pytest.raises(NotSimpleRoot):
        quad_turning(lambda c: np.ones_like(c), lambda c: (1 - c) ** 2 * (1 + c), -1.0, 1.0)


def test_gauss_legendre_cumulative_exact_for_quintic():
    grid = np.linspace(0, 2, 9)
    cum = gauss_legendre_cumulative(lambda x: x**5, grid, order=3)
    assert np.allclose(cum, grid**6 / 6, atol=1e-13)


def test_gauss_legendre_partial_vectorized():
    start = np.array([0.0, 1.0])
    stop = np.array([1.0, 3.0])
    out = gauss_legendre_partial(lambda x: x**2, start, stop)
    assert np.allclose(out, (stop**3 - start**3) / 3, atol=1e-14)


# -- ODEs --------------------------------------------------------------------------

def test_ode_exponential():
    traj = ode_solve(lambda t, y: y, [1.0], (0.0, 1.0), tol=1e-12)
    assert traj.y[0, -1] == pytest.approx(math.e, rel=1e-11)


def test_ode_dense_output_harmonic():
    traj = ode_solve(lambda t, y: [y[1], -y[0]], [0.0, 1.0], (0.0, 10.0), tol=1e-12)
    t = np.linspace(0, 10, 57)
    assert np.max(np.abs(traj(t)[0] - np.sin(t))) < 1e-9


def test_ode_t_eval_backward():
    traj = ode_solve(lambda t, y: -y, [1.0], (1.0, 0.0), t_eval=[1.0, 0.5, 0.0], tol=1e-12)
    assert traj.y[0, -1] == pytest.approx(math.e, rel=1e-10)


def test_ode_blowup_raises():
    with pytest.raises(StepFailure):
        ode_solve(lambda t, y: y**2, [1.0], (0.0, 2.0))
