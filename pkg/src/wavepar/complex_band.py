"""Complex quasi-phase construction for travelling (transmission-band) waves.

Everything is driven by the auxiliary function ``C(psi) = Re Y / |Y + i|^2``
of the complex admittance ``Y``.  It obeys

    C'' + 4 C = (G'/2) (C'^2 + 4 C^2 - 1),

so a solution can be built either from a chosen modulation ``G`` (solve for
``C``) or from a chosen ``C`` (integrate for ``G``).  Given both, the
admittance, the coordinate map ``X(psi)`` and the wave ``W(psi)`` follow by
quadrature.
"""

import warnings
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import AdmittancePole, BranchFailure, DenominatorVanishes, NonMonotoneWarning
from .io import write_csv
from .numerics import gauss_legendre_cumulative, ode_solve
from .profile import SampledPhaseProfile
from .real_band import GL_ORDER, ParametricCurve, _cot

C_ODE_TOL = 1e-10
DENOM_FLOOR = 1e-8
POLE_FLOOR = 1e-14


class Branch(str, Enum):
    PLUS = "+"
    MINUS = "-"

    @property
    def sign(self):
        return 1.0 if self is Branch.PLUS else -1.0


@dataclass(eq=False)
class CFunction:
    """Samples ``(psi, C, C', C'')`` of the auxiliary function plus an evaluator.

    ``kind`` is ``"closed_form"`` or ``"numeric"``.  ``evaluate(psi)`` returns
    ``(C, C', C'')`` anywhere inside the sampled range (analytic for closed
    forms, dense RK output for numeric trajectories).  ``meta`` records the
    construction (family, branch, psi0, ...).
    """

    kind: str
    psi: np.ndarray
    c: np.ndarray
    cdot: np.ndarray
    cddot: np.ndarray
    evaluator: object = field(repr=False, default=None)
    meta: dict = field(default_factory=dict)

    def evaluate(self, psi):
        return self.evaluator(np.asarray(psi, dtype=float))

    @property
    def energy(self):
        """``C'^2 + 4 C^2 - 1`` on the samples."""
        return self.cdot**2 + 4.0 * self.c**2 - 1.0

    @classmethod
    def from_evaluator(cls, evaluator, psi_grid, kind="closed_form", **meta):
        psi = np.asarray(psi_grid, dtype=float)
        c, cd, cdd = evaluator(psi)
        return cls(kind, psi, np.asarray(c, float), np.asarray(cd, float),
                   np.asarray(cdd, float), evaluator, dict(meta))


def c_residual(c, cdot, cddot, gdot):
    """Pointwise residual of the auxiliary-function equation."""
    return cddot + 4.0 * c - 0.5 * gdot * (cdot**2 + 4.0 * c**2 - 1.0)


# ---------------------------------------------------------------------------
# Particular auxiliary functions
# ---------------------------------------------------------------------------

def sin_manifold_cfunction(psi_grid, branch="+", psi0=0.0):
    """``C = +-1/2 sin 2(psi - psi0)``; solves the equation for any ``G``.

    On this curve ``C'^2 + 4C^2 = 1`` and the admittance is real.
    """
    branch = Branch(branch)
    s = branch.sign

    def evaluator(psi):
        phi = 2.0 * (psi - psi0)
        return 0.5 * s * np.sin(phi), s * np.cos(phi), -2.0 * s * np.sin(phi)

    return CFunction.from_evaluator(evaluator, psi_grid, manifold=branch.value,
                                    branch=branch.value, psi0=psi0)


def harmonic_cfunction(psi_grid, alpha, beta, kind="sin"):
    """``alpha sin(beta psi)`` or ``alpha cos(beta psi)``.

    With ``beta = +-2`` and ``alpha = +-1/beta`` both sides of the equation
    vanish separately for any ``G``.
    """
    if kind == "sin":
        def evaluator(psi):
            return (alpha * np.sin(beta * psi), alpha * beta * np.cos(beta * psi),
                    -alpha * beta**2 * np.sin(beta * psi))
    elif kind == "cos":
        def evaluator(psi):
            return (alpha * np.cos(beta * psi), -alpha * beta * np.sin(beta * psi),
                    -alpha * beta**2 * np.cos(beta * psi))
    else:
        raise ValueError("kind must be 'sin' or 'cos'")
    return CFunction.from_evaluator(evaluator, psi_grid, alpha=alpha, beta=beta, harmonic=kind)


def constant_cfunction(psi_grid, value):
    """``C = value``; pairs with the linear modulation of :class:`LinearPhaseProfile`."""
    value = float(value)

    def evaluator(psi):
        z = np.zeros(np.shape(psi))
        return z + value, z, z

    return CFunction.from_evaluator(evaluator, psi_grid, constant=value)


def c_ode_solve(profile, c_init, cdot_init, psi_span, n_samples=2049, tol=C_ODE_TOL):
    """Integrate ``C'' = -4C + (G'/2)(C'^2 + 4C^2 - 1)`` for a given profile.

    Raises
    ------
    StepFailure
        If the adaptive integrator breaks down.
    """
    a, b = float(psi_span[0]), float(psi_span[1])

    def rhs(t, y):
        gd = profile.Gdot(t)
        return [y[1], -4.0 * y[0] + 0.5 * gd * (y[1] ** 2 + 4.0 * y[0] ** 2 - 1.0)]

    psi = np.linspace(a, b, n_samples)
    traj = ode_solve(rhs, [c_init, cdot_init], (a, b), tol=tol, t_eval=psi)

    def evaluator(t):
        y = traj.sol(t)
        c, cd = y[0], y[1]
        cdd = -4.0 * c + 0.5 * np.asarray(profile.Gdot(t)) * (cd**2 + 4.0 * c**2 - 1.0)
        return c, cd, cdd

    return CFunction.from_evaluator(evaluator, psi, kind="numeric",
                                    c_init=float(c_init), cdot_init=float(cdot_init))


# ---------------------------------------------------------------------------
# Modulation from C
# ---------------------------------------------------------------------------

def _gdot_from_c(cfun, denom_floor):
    def gdot(psi):
        c, cd, cdd = cfun.evaluate(psi)
        denom = cd**2 + 4.0 * c**2 - 1.0
        bad = np.abs(denom) < denom_floor
        if np.any(bad):
            where = np.asarray(psi).ravel()[np.argmax(np.ravel(bad))]
            raise DenominatorVanishes(
                f"C'^2 + 4C^2 - 1 vanishes near psi={where!r}; G is undetermined",
                psi=float(where))
        return 2.0 * (cdd + 4.0 * c) / denom
    return gdot


def g_from_c(cfun, denom_floor=DENOM_FLOOR):
    """Recover ``G(psi) = 2 int (C'' + 4C) / (C'^2 + 4C^2 - 1)``.

    The running integral starts at zero at the first sample.

    Returns
    -------
    G, Gdot : ndarray
        Sampled on ``cfun.psi``.

    Raises
    ------
    DenominatorVanishes
        If ``|C'^2 + 4C^2 - 1| < denom_floor`` anywhere on the grid.
    """
    gdot = _gdot_from_c(cfun, denom_floor)
    gd = gdot(cfun.psi)
    G = gauss_legendre_cumulative(gdot, cfun.psi, order=8)
    return G, gd


def profile_from_c(cfun, q0=1.0, denom_floor=DENOM_FLOOR, psi_period=None):
    """Phase profile whose ``Gdot`` is recovered from ``cfun``."""
    gdot = _gdot_from_c(cfun, denom_floor)
    gdot(cfun.psi)  # fail early on the grid
    return SampledPhaseProfile(q0, gdot, cfun.psi, psi_period=psi_period)


# ---------------------------------------------------------------------------
# Admittance
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ComplexAdmittanceState:
    """Complex admittance and its polar/auxiliary descriptors.

    ``Y = R exp(i theta)``; ``S = Im Y / |Y+i|^2``; ``C_aux = Re Y / |Y+i|^2``;
    ``J = R sin(theta) / (R^2 + 1)`` and ``E`` its conserved-ratio value
    (equal to ``J`` pointwise).
    """

    Y: complex
    R: float
    theta: float
    S: float
    C_aux: float
    J: float
    E: float


def admittance_values(c, cdot, at_pole="raise"):
    """Vectorized ``Y = [4C + i(1 - 4C^2 - C'^2)] / [4C^2 + (1 - C')^2]``.

    ``at_pole`` is ``"raise"`` or ``"inf"`` (return complex infinity there).
    """
    c = np.asarray(c, dtype=float)
    cdot = np.asarray(cdot, dtype=float)
    denom = 4.0 * c**2 + (1.0 - cdot) ** 2
    pole = denom <= POLE_FLOOR
    if np.any(pole):
        if at_pole == "raise":
            raise AdmittancePole("C = 0 and C' = 1: node of w, Y is infinite")
        denom = np.where(pole, 1.0, denom)
    Y = (4.0 * c + 1j * (1.0 - 4.0 * c**2 - cdot**2)) / denom
    if np.any(pole):
        Y = np.where(pole, complex(np.inf, 0.0), Y)
    return Y


def admittance_from_c(c, cdot):
    """Admittance state at a point (or along arrays) of the auxiliary function.

    Raises
    ------
    AdmittancePole
        When ``C = 0`` and ``C' = 1`` simultaneously.
    """
    c_arr = np.asarray(c, dtype=float)
    cd_arr = np.asarray(cdot, dtype=float)
    Y = admittance_values(c_arr, cd_arr)
    num_r = 4.0 * c_arr**2 + (1.0 + cd_arr) ** 2
    den_r = 4.0 * c_arr**2 + (1.0 - cd_arr) ** 2
    R = np.sqrt(num_r / den_r)
    theta = np.arctan2(1.0 - 4.0 * c_arr**2 - cd_arr**2, 4.0 * c_arr)
    if theta.ndim:
        theta = np.unwrap(theta)
    yi2 = np.abs(Y + 1j) ** 2
    S = Y.imag / yi2
    C_aux = Y.real / yi2
    J = R * np.sin(theta) / (R**2 + 1.0)
    if np.ndim(Y) == 0:
        Y, R, theta, S, C_aux, J = (complex(Y), float(R), float(theta), float(S),
                                    float(C_aux), float(J))
    return ComplexAdmittanceState(Y=Y, R=R, theta=theta, S=S, C_aux=C_aux, J=J, E=J)


# ---------------------------------------------------------------------------
# Parametric curves
# ---------------------------------------------------------------------------

def _manifold_curve(profile, cfun, w0, x0):
    branch = Branch(cfun.meta["manifold"])
    psi0 = cfun.meta.get("psi0", 0.0)
    psi = cfun.psi
    s = branch.sign

    def x_rate(t):
        phi = t - psi0
        return (1.0 - s * profile.Gdot(t) * np.sin(phi) * np.cos(phi)) / profile.Q(t)

    def amp_rate(t):
        z = np.cos(t - psi0) if branch is Branch.PLUS else np.sin(t - psi0)
        return profile.Gdot(t) * z**2

    X = x0 + gauss_legendre_cumulative(x_rate, psi, order=GL_ORDER)
    log_amp = gauss_legendre_cumulative(amp_rate, psi, order=GL_ORDER)
    phi = psi - psi0
    if branch is Branch.PLUS:
        W = w0 * np.sin(phi) * np.exp(-log_amp)
        Y = _cot(phi)
    else:
        W = w0 * np.cos(phi) * np.exp(-log_amp)
        Y = -np.tan(phi)
    return X, W, Y


def parametric_from_c(profile, cfun, w0=1.0, x0=0.0):
    """Build ``X(psi)``, ``W(psi)`` and ``Y(psi)`` from a profile and ``C``.

    ``X = x0 + int (1 - G'C) / Q`` and ``W = w0 exp[int (1 - G'C) Y]`` with
    running integrals from the first sample.  On the real-admittance manifold
    ``C = +-1/2 sin 2(psi - psi0)`` the wave passes through nodes, so the
    regularized product form ``W = w0 sqrt(1 - Z^2) exp(-int G' Z^2)`` is used
    instead of the exponential.

    ``profile.Gdot`` must be consistent with ``cfun`` (paired through the
    auxiliary equation or recovered with :func:`g_from_c`).

    Raises
    ------
    AdmittancePole
        If the curve passes through ``C = 0, C' = 1`` off the manifold.
    """
    psi = cfun.psi
    if "manifold" in cfun.meta:
        X, W, Y = _manifold_curve(profile, cfun, w0, x0)
        coeff = 1.0 - profile.Gdot(psi) * cfun.c
    else:
        def weight(t):
            c, cd, _ = cfun.evaluate(t)
            return c, cd, 1.0 - profile.Gdot(t) * c

        def x_rate(t):
            _, _, wgt = weight(t)
            return wgt / profile.Q(t)

        def lnw_rate(t):
            c, cd, wgt = weight(t)
            return wgt * admittance_values(c, cd)

        X = x0 + gauss_legendre_cumulative(x_rate, psi, order=GL_ORDER)
        lnW = gauss_legendre_cumulative(lnw_rate, psi, order=GL_ORDER)
        W = w0 * np.exp(lnW)
        Y = admittance_values(cfun.c, cfun.cdot)
        coeff = 1.0 - profile.Gdot(psi) * cfun.c
    monotone = bool(np.all(coeff > 0) and np.all(np.diff(X) > 0))
    if not monotone:
        warnings.warn("1 - G'C changes sign: X(psi) is not invertible", NonMonotoneWarning,
                      stacklevel=2)
    return ParametricCurve(psi, X, W, Y, w0=w0, x0=x0, psi0=psi[0], monotone=monotone)


def write_complex_curve_csv(path, cfun, curve, G):
    """CSV with header ``psi,c,cdot,g,re_y,im_y,x,re_w,im_w``."""
    write_csv(path, ["psi", "c", "cdot", "g", "re_y", "im_y", "x", "re_w", "im_w"],
              [cfun.psi, cfun.c, cfun.cdot, G, curve.Y.real, curve.Y.imag, curve.X,
               curve.W.real, curve.W.imag])


# ---------------------------------------------------------------------------
# Quasi-phase of sampled waves
# ---------------------------------------------------------------------------

def quasi_phase(w_samples, wprime_samples, q_samples, x_grid, psi_init=0.0,
                branch_floor=1e-12):
    """Quasi-phase ``psi(x) = int [q + (q'/q) Re y / |y + i|^2] dx``.

    ``y = w'/(q w)``.  The integrand is evaluated in the pole-free form
    ``Re y / |y+i|^2 = q Re(w' conj(w)) / |w' + i q w|^2``, so real waves with
    nodes are handled.  ``q'`` comes from a cubic spline of the samples and
    the running integral from the spline antiderivative.

    Raises
    ------
    BranchFailure
        If ``|y + i| < branch_floor`` at some sample.
    """
    w = np.asarray(w_samples, dtype=complex)
    wp = np.asarray(wprime_samples, dtype=complex)
    q = np.asarray(q_samples, dtype=float)
    x = np.asarray(x_grid, dtype=float)
    plus = wp + 1j * q * w
    if np.any(np.abs(plus) < branch_floor * q * np.abs(w)):
        raise BranchFailure("w' + i q w vanishes: the quasi-phase logarithm has no branch")
    c_aux = q * np.real(wp * np.conj(w)) / np.abs(plus) ** 2
    dq = CubicSpline(x, q).derivative()(x)
    rate = q + dq / q * c_aux
    antider = CubicSpline(x, rate).antiderivative()
    return psi_init + antider(x) - antider(x[0])


def quasi_phase_log(w, wprime, q):
    """Logarithmic form ``(1/2i) ln[(w' + iqw) / (conj(w)' - iq conj(w))]``.

    Principal branch, so it is meaningful only locally (used to check plane
    waves).
    """
    w = np.asarray(w, dtype=complex)
    wp = np.asarray(wprime, dtype=complex)
    ratio = (wp + 1j * q * w) / (np.conj(wp) - 1j * q * np.conj(w))
    return (np.log(ratio) / 2j).real
