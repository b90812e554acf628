"""Acceptance criteria, one test per criterion.

Each test reports a ``criterion N PASS|FAIL`` line (collected again in the
terminal summary) and then asserts both accuracy and runtime.
"""

import json
import math
import time
import warnings

import numpy as np
import pytest

from wavepar.cli import main
from wavepar.complex_band import (admittance_from_c, c_ode_solve, c_residual,
                                  constant_cfunction, harmonic_cfunction, parametric_from_c,
                                  sin_manifold_cfunction)
from wavepar.design import DesignSpec, Objective, objective_value, optimize_profile, \
    profile_from_coefficients
from wavepar.errors import NoBoundedOrbit
from wavepar.families import (Constant, Linear, QuadraticMinus, QuadraticPlus, Quartic,
                              complex_increment, family_metrics, family_profile, c_function,
                              period_tau, turning_points)
from wavepar.numerics import gauss_legendre_cumulative
from wavepar.oracle import monodromy, wave_residual
from wavepar.profile import LinearPhaseProfile, PhaseProfile, reconstruct_q_of_x
from wavepar.real_band import real_parametric_curve, stopband_metrics

SEED = 20240611


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


# -- random draws over the validity regions ---------------------------------------------------

def _nonzero(rng, lo, hi):
    while True:
        c = rng.uniform(lo, hi)
        if abs(c) >= 1e-3:
            return c


def random_family(rng, kinds=("constant", "linear", "quadratic_minus", "quadratic_plus",
                              "quartic")):
    kind = kinds[rng.integers(len(kinds))]
    if kind == "constant":
        return Constant(_nonzero(rng, -0.95, 5.0))
    if kind == "linear":
        e = rng.uniform(-1.0, 1.0)
        return Linear(_nonzero(rng, -0.95 - 4 * e * e, 5.0), e)
    if kind == "quadratic_minus":
        e, d = rng.uniform(-1.0, 1.0), rng.uniform(0.0, 3.0)
        return QuadraticMinus(_nonzero(rng, -0.95 - 16 * e * e / (d * d + 4), 5.0), e, d)
    if kind == "quadratic_plus":
        k, e = rng.uniform(0.3, 3.0), rng.uniform(-0.5, 0.5)
        lo = -0.95 + 16 * e * e / (k * k)
        return QuadraticPlus(_nonzero(rng, lo, lo + 6.0), e, k)
    while True:
        a = rng.uniform(0.05, 2.0)
        if abs(4 * a * a - 1) > 1e-3:
            return Quartic(a, rng.uniform(0.05, 0.95 / a))


def random_even_family(rng):
    kind = rng.integers(3)
    if kind == 0:
        return Constant(_nonzero(rng, -0.95, 5.0))
    if kind == 1:
        return QuadraticMinus(_nonzero(rng, -0.95, 5.0), 0.0, rng.uniform(0.0, 3.0))
    return random_family(rng, ("quartic",))


def random_profile(rng, m_max=3, scale=0.5):
    return PhaseProfile(a0=rng.uniform(-scale, scale), a=rng.uniform(-scale, scale, m_max),
                        b=rng.uniform(-scale, scale, m_max))


def psi_window(rng, family, n):
    psi0 = rng.uniform(-2.0, 2.0)
    span = 2.0 / family.k if isinstance(family, QuadraticPlus) else 4.0
    return psi0, psi0 + rng.uniform(-span, span, n)


def m_nonvanishing(family, margin=0.05):
    try:
        cm, cp = turning_points(family)
    except NoBoundedOrbit:
        return False
    return bool(np.min(np.abs(family.M(np.linspace(cm, cp, 2001)))) > margin)


def scaled(residual, *terms):
    scale = 1.0 + sum(np.abs(t) for t in terms)
    return float(np.max(np.abs(residual) / scale))


# -- criteria -------------------------------------------------------------------------------------

def test_criterion_01_uniform_medium(acceptance):
    q0 = 1.7
    profile = PhaseProfile(q0=q0)
    psi = np.linspace(0.0, math.pi, 257)
    with Timer() as t:
        metrics = stopband_metrics(profile)
        curve = real_parametric_curve(profile, psi)
    period_err = abs(metrics.spatial_period - math.pi / q0)
    w_err = float(np.max(np.abs(curve.W - np.sin(psi))))
    ok = period_err <= 1e-12 and metrics.nu == 0.0 and w_err <= 1e-12 and t.elapsed < 0.1
    acceptance(1, "uniform medium", ok,
               f"period err={period_err:.1e} nu={metrics.nu} W err={w_err:.1e} "
               f"t={t.elapsed:.3f}s")
    assert ok


def test_criterion_02_stopband_keystone(acceptance):
    details, ok = [], True
    for b2 in (0.1, 0.2, 0.4):
        profile = PhaseProfile(b=[b2])
        with Timer() as t:
            metrics = stopband_metrics(profile)
            curve = real_parametric_curve(profile, np.linspace(0, math.pi, 2049))
            res = monodromy(reconstruct_q_of_x(profile, curve))
        nu_err = abs(metrics.nu - 0.5 * math.pi * b2)
        rel = abs(res.log_max_multiplier - metrics.nu) / metrics.nu
        case = nu_err <= 1e-10 and rel <= 1e-6 and abs(res.trace) > 2 and t.elapsed < 2.0
        ok &= case
        details.append(f"b2={b2}: rel={rel:.1e} |tr|={abs(res.trace):.4f} t={t.elapsed:.2f}s")
    acceptance(2, "stop-band keystone", ok, "; ".join(details))
    assert ok


def test_criterion_03_c_equation_residuals(acceptance):
    rng = np.random.default_rng(SEED)
    worst = {}
    draws = 10_000
    with Timer() as t:
        for i in range(draws):
            which = i % 5
            if which <= 1:
                family = random_family(rng)
                psi0, psi = psi_window(rng, family, 8)
                c, cd, cdd = family.closed_form(psi, psi0, "+" if rng.random() < 0.5 else "-")
                M = family.M(c)
                keep = np.abs(M) > 1e-2
                if not keep.any():
                    continue
                gdot = family.dM(c[keep]) / M[keep]
                res = c_residual(c[keep], cd[keep], cdd[keep], gdot)
                err = scaled(res, cdd[keep], 4 * c[keep], gdot * M[keep])
                key = family.variant
            elif which == 2:
                c0 = rng.uniform(-2.0, 2.0)
                if abs(4 * c0 * c0 - 1) < 1e-3:
                    continue
                slope = LinearPhaseProfile.from_constant_c(c0).slope
                cf = constant_cfunction(rng.uniform(-5, 5, 8), c0)
                err = scaled(c_residual(cf.c, cf.cdot, cf.cddot, slope), 4 * c0,
                             slope * (4 * c0 * c0 - 1))
                key = "constant C, linear G"
            elif which == 3:
                profile = random_profile(rng)
                psi = rng.uniform(-5, 5, 8)
                cf = sin_manifold_cfunction(psi, "+" if rng.random() < 0.5 else "-",
                                            rng.uniform(-2, 2))
                err = scaled(c_residual(cf.c, cf.cdot, cf.cddot, profile.Gdot(psi)))
                key = "real manifold, any G"
            else:
                beta = 2.0 if rng.random() < 0.5 else -2.0
                alpha = (1.0 if rng.random() < 0.5 else -1.0) / beta
                kind = "sin" if rng.random() < 0.5 else "cos"
                profile = random_profile(rng)
                psi = rng.uniform(-5, 5, 8)
                cf = harmonic_cfunction(psi, alpha, beta, kind)
                err = scaled(c_residual(cf.c, cf.cdot, cf.cddot, profile.Gdot(psi)))
                key = "harmonic +-1/2"
            worst[key] = max(worst.get(key, 0.0), err)
    max_err = max(worst.values())
    ok = max_err <= 1e-8 and t.elapsed < 10.0
    acceptance(3, "C-equation residual suite", ok,
               f"{draws} draws, worst={max_err:.1e} over {len(worst)} kinds t={t.elapsed:.2f}s")
    assert ok


def test_criterion_04_energy_integral(acceptance):
    rng = np.random.default_rng(SEED + 1)
    worst = {}
    with Timer() as t:
        for _ in range(2000):
            family = random_family(rng)
            psi0, psi = psi_window(rng, family, 32)
            c, cd, _ = family.closed_form(psi, psi0, "+" if rng.random() < 0.5 else "-")
            err = float(np.max(np.abs(cd**2 - (1 - 4 * c**2 + family.M(c)))
                               / np.maximum(1.0, cd**2 + 4 * c**2 + np.abs(family.M(c)))))
            worst[family.variant] = max(worst.get(family.variant, 0.0), err)
    max_err = max(worst.values())
    ok = max_err <= 1e-9 and "quartic" in worst and t.elapsed < 5.0
    acceptance(4, "energy integral", ok,
               f"worst={max_err:.1e} quartic(sn)={worst.get('quartic', math.nan):.1e} "
               f"t={t.elapsed:.2f}s")
    assert ok


def test_criterion_05_even_symmetry(acceptance):
    rng = np.random.default_rng(SEED + 2)
    worst, count = 0.0, 0
    with Timer() as t:
        while count < 100:
            family = random_even_family(rng)
            if not m_nonvanishing(family):
                continue
            chi, _ = complex_increment(family)
            worst = max(worst, abs(chi))
            count += 1
        linear = [complex_increment(Linear(c, e))[0]
                  for c, e in ((3.0, 0.2), (2.0, -0.3), (1.5, 0.1))]
    ok = worst <= 1e-9 and min(abs(x) for x in linear) > 1e-4 and t.elapsed < 10.0
    acceptance(5, "even-M symmetry", ok,
               f"max|chi| even={worst:.1e}, min|chi| linear={min(abs(x) for x in linear):.1e} "
               f"t={t.elapsed:.2f}s")
    assert ok


def test_criterion_06_transmission_keystone(acceptance):
    with Timer() as t:
        worst_eta = worst_tau = 0.0
        for c in (-0.5, 0.3, 1.0, 3.0, 8.0):
            family = Constant(c)
            _, eta = complex_increment(family)
            worst_eta = max(worst_eta, abs(abs(eta) - math.pi))
            worst_tau = max(worst_tau, abs(period_tau(family) - math.pi))
        quartic = Quartic(0.4, 1.0)
        tau = period_tau(quartic)
        psi = np.linspace(0.0, tau, 2049)
        cfun = c_function(quartic, psi)
        profile = family_profile(quartic, cfun)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            curve = parametric_from_c(profile, cfun)
        res = monodromy(reconstruct_q_of_x(profile, curve))
        metrics = family_metrics(quartic)
    trace_err = abs(res.trace - 2 * math.cos(metrics.eta))
    T_err = abs(metrics.T_modulation - 2 * math.pi / metrics.eta * metrics.tau)
    ok = (worst_eta <= 1e-9 and worst_tau <= 1e-10 and abs(res.trace) <= 2
          and trace_err <= 1e-5 and T_err <= 1e-12 and t.elapsed < 5.0)
    acceptance(6, "transmission keystone", ok,
               f"|eta|-pi={worst_eta:.1e} tau-pi={worst_tau:.1e} trace={res.trace:.9f} "
               f"trace-2cos(eta)={trace_err:.1e} t={t.elapsed:.2f}s")
    assert ok


def _five_point(f, psi, h):
    """Fourth-order central derivative of the samples ``f(psi)``."""
    return (f(psi - 2 * h) - 8 * f(psi - h) + 8 * f(psi + h) - f(psi + 2 * h)) / (12 * h)


def _polar_errors(profile, cfun, h=2e-4):
    psi = cfun.psi[5:-5]

    def state(t):
        c, cd, _ = cfun.evaluate(t)
        return admittance_from_c(c, cd)

    s0 = state(psi)
    c = cfun.evaluate(psi)[0]
    away = np.abs(s0.Y) < 1e3
    gd = profile.Gdot(psi)
    R, th = s0.R, s0.theta
    ydot = _five_point(lambda t: state(t).Y, psi, h)
    rdot = _five_point(lambda t: state(t).R, psi, h)
    tdot = _five_point(lambda t: state(t).theta, psi, h)
    e13 = np.abs(ydot + s0.Y * gd + (1 + s0.Y**2) * (1 - gd * c))
    e15a = np.abs(rdot - (-gd * R + (R**2 + 1) * (gd * s0.C_aux - 1) * np.cos(th)))
    e15b = np.abs(tdot - (R**2 - 1) / R * (gd * s0.C_aux - 1) * np.sin(th))

    def rate(t):
        cc, cd, _ = cfun.evaluate(t)
        st = admittance_from_c(cc, cd)
        return profile.Gdot(t) * (st.R**2 - 1) / (st.R**2 + 1)

    full = admittance_from_c(cfun.c, cfun.cdot)
    invariant = full.J * np.exp(-gauss_legendre_cumulative(rate, cfun.psi))
    first = float(np.ptp(invariant) / abs(invariant[0]))
    return (float(np.max(e13[away])), float(np.max(e15a[away])), float(np.max(e15b[away])),
            first)


def test_criterion_07_compatibility_and_polar(acceptance):
    with Timer() as t:
        cases = []
        for b, c0, cd0 in (([0.2], 0.1, 0.3), ([0.3, -0.1], -0.2, 0.5)):
            profile = PhaseProfile(b=b, a=[0.1])
            cases.append(_polar_errors(profile, c_ode_solve(profile, c0, cd0, (0, math.pi),
                                                            n_samples=401, tol=1e-13)))
        quartic = Quartic(0.4, 1.0)
        psi = np.linspace(0.0, period_tau(quartic), 401)
        cfun = c_function(quartic, psi)
        cases.append(_polar_errors(family_profile(quartic, cfun), cfun))
    worst = np.max(np.array(cases), axis=0)
    ok = bool(np.all(worst <= 1e-6)) and t.elapsed < 5.0
    acceptance(7, "compatibility and polar invariants", ok,
               f"Y eq={worst[0]:.1e} R eq={worst[1]:.1e} angle eq={worst[2]:.1e} "
               f"first integral={worst[3]:.1e} t={t.elapsed:.2f}s")
    assert ok


def test_criterion_08_constant_c(acceptance):
    details, ok = [], True
    q0, w0 = 1.3, 1.0
    for c0 in (0.1, 0.3, 0.45):
        with Timer() as t:
            profile = LinearPhaseProfile.from_constant_c(c0, q0=q0)
            s = profile.slope
            psi = np.linspace(0.0, 2.0, 40001)
            curve = parametric_from_c(profile, constant_cfunction(psi, c0), w0=w0)
            Y = (4 * c0 + 1j * (1 - 4 * c0**2)) / (4 * c0**2 + 1)
            X_exact = (1 - s * c0) / (q0 * s) * (1 - np.exp(-s * psi))
            W_exact = w0 * np.exp((1 - s * c0) * Y * psi)
            x_err = float(np.max(np.abs(curve.X - X_exact)) / np.max(np.abs(X_exact)))
            w_err = float(np.max(np.abs(curve.W - W_exact) / np.abs(W_exact)))
            resid = float(np.max(wave_residual(curve.X, curve.W, profile.Q(psi),
                                               relative="pointwise")[5:-5]))
        case = x_err <= 1e-10 and w_err <= 1e-10 and resid <= 1e-6 and t.elapsed < 2.0
        ok &= case
        details.append(f"C0={c0}: X {x_err:.0e} W {w_err:.0e} res {resid:.0e}")
    acceptance(8, "constant-C family", ok, "; ".join(details))
    assert ok


def test_criterion_09_optimizer(acceptance):
    with Timer() as t:
        best, metrics, _ = optimize_profile(DesignSpec(m_max=1, bounds={"b2": (-0.5, 0.5)}))
        bounds = {"a2": (-0.5, 0.5), "b2": (-0.5, 0.5)}
        _, mu_m, _ = optimize_profile(DesignSpec(m_max=1, bounds=bounds,
                                                 objective=Objective.MAXIMIZE_MU))
        _, nu_m, _ = optimize_profile(DesignSpec(m_max=1, bounds=bounds))
        grid_spec = DesignSpec(m_max=1, bounds=bounds, objective=Objective.MAXIMIZE_MU)
        grid = max(objective_value(grid_spec, profile_from_coefficients(grid_spec, [0, a, b]))[0]
                   for a in np.linspace(-0.5, 0.5, 50) for b in np.linspace(-0.5, 0.5, 50))
    nu_err = abs(metrics.nu - math.pi / 4)
    ok = (abs(best.b[0] - 0.5) <= 1e-8 and nu_err <= 1e-8 and mu_m.mu >= nu_m.mu
          and mu_m.mu >= grid - 1e-9 and t.elapsed < 30.0)
    acceptance(9, "optimizer sanity", ok,
               f"b2={best.b[0]:.10f} nu err={nu_err:.1e} mu(MaxMu)={mu_m.mu:.6f} "
               f"mu(MaxNu)={nu_m.mu:.6f} grid={grid:.6f} t={t.elapsed:.2f}s")
    assert ok


@pytest.mark.parametrize("name,config", [
    ("stopband", {"profile": {"b": [0.2]}}),
    ("quartic", {"family": {"variant": "quartic", "a": 0.4, "b": 1}}),
])
def test_criterion_10_determinism(acceptance, tmp_path, name, config):
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps(config))

    def run(tag, threads):
        out = tmp_path / tag
        code = main(["verify", "--config", str(cfg), "--out", str(out),
                     "--threads", str(threads)])
        return code, (out / "verify.json").read_bytes()

    c1, first = run("a", 1)
    c2, second = run("b", 1)
    c3, threaded = run("c", 2)
    r1, r3 = json.loads(first), json.loads(threaded)
    same_bytes = first == second
    invariant = r1["passed"] == r3["passed"] and all(
        abs(a["measured"] - b["measured"]) <= 1e-12 * max(1.0, abs(a["measured"]))
        for a, b in zip(r1["checks"], r3["checks"]))
    ok = c1 == c2 == c3 == 0 and same_bytes and invariant
    acceptance(10, f"determinism ({name})", ok,
               f"byte-identical={same_bytes} thread-invariant={invariant}")
    assert ok
