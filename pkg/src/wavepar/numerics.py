"""Special functions, quadrature and ODE integration.

Elliptic modulus convention: every function here takes the *modulus* ``p``
(often written ``k``), not the parameter ``m = k**2``.  So
``dn(u, p)**2 + p**2 * sn(u, p)**2 == 1`` and ``K(p) = F(pi/2 | k=p)``.
"""

import heapq
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import ModulusOne, NotSimpleRoot, StepFailure, ToleranceNotMet

_EPS = np.finfo(float).eps


# ---------------------------------------------------------------------------
# Elliptic functions
# ---------------------------------------------------------------------------

def _agm_table(p):
    """Descending AGM sequences (a_n, c_n) for modulus p, 0 < p < 1."""
    a = [1.0]
    c = [p]
    b = math.sqrt((1.0 - p) * (1.0 + p))
    while abs(c[-1]) > _EPS * a[-1]:
        a_prev = a[-1]
        a.append(0.5 * (a_prev + b))
        c.append(0.5 * (a_prev - b))
        b = math.sqrt(a_prev * b)
        if len(a) > 40:
            break
    return a, c


def jacobi_sncndn(u, p):
    """Jacobi elliptic functions sn, cn, dn of real argument.

    Uses the descending Landen (AGM) recursion.

    Parameters
    ----------
    u : float or array_like
        Real argument.
    p : float
        Modulus, ``0 <= p <= 1``.

    Returns
    -------
    sn, cn, dn : ndarray or float
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"modulus must lie in [0, 1], got {p}")
    u_arr = np.asarray(u, dtype=float)
    if p == 0.0:
        out = np.sin(u_arr), np.cos(u_arr), np.ones_like(u_arr)
    elif p == 1.0:
        sech = 1.0 / np.cosh(u_arr)
        out = np.tanh(u_arr), sech, sech
    else:
        a, c = _agm_table(p)
        n = len(a) - 1
        phi = (2.0**n) * a[n] * u_arr
        for j in range(n, 0, -1):
            phi = 0.5 * (phi + np.arcsin(c[j] / a[j] * np.sin(phi)))
        sn = np.sin(phi)
        cn = np.cos(phi)
        dn = np.sqrt(1.0 - (p * sn) ** 2)
        out = sn, cn, dn
    if np.ndim(u) == 0:
        return tuple(float(v) for v in out)
    return out


def jacobi_sn(u, p):
    """Elliptic sine ``sn(u, p)`` with modulus ``p`` (see module docstring)."""
    return jacobi_sncndn(u, p)[0]


def elliptic_K(p):
    """Complete elliptic integral of the first kind, modulus convention.

    Computed as ``pi / (2 * AGM(1, sqrt(1 - p**2)))``.

    Raises
    ------
    ModulusOne
        If ``|p| >= 1`` (logarithmic singularity).
    """
    p = abs(float(p))
    if p >= 1.0:
        raise ModulusOne(f"K(p) diverges for |p| >= 1 (p={p})")
    a = 1.0
    b = math.sqrt((1.0 - p) * (1.0 + p))
    while abs(a - b) > 2.0 * _EPS * a:
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (a + b)


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    abs_error_estimate: float
    evaluations: int
    converged: bool = True

    def __post_init__(self):
        if not self.abs_error_estimate >= 0.0:
            raise ValueError("abs_error_estimate must be nonnegative")


# Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15)
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_K15_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_K15_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
# Gauss 7-point nodes sit at odd positions of the Kronrod abscissae
_G7_WEIGHTS = np.zeros(15)
_G7_WEIGHTS[[1, 3, 5]] = _WG[:3]
_G7_WEIGHTS[[13, 11, 9]] = _WG[:3]
_G7_WEIGHTS[7] = _WG[3]


def _gk15(f, a, b):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    fx = np.asarray(f(mid + half * _K15_NODES))
    if fx.shape != _K15_NODES.shape:
        fx = np.broadcast_to(fx, _K15_NODES.shape)
    kron = half * np.dot(_K15_WEIGHTS, fx)
    gauss = half * np.dot(_G7_WEIGHTS, fx)
    return kron, abs(kron - gauss)


def quad_adaptive(f, a, b, tol=1e-12, max_intervals=4000, strict=False):
    """Globally adaptive Gauss-Kronrod (7/15) quadrature.

    ``f`` must accept a 1-D array of abscissae and return an array of the
    same length (real or complex).  The interval with the largest error
    estimate is bisected until the summed estimate drops below
    ``max(tol, 50 * eps * |I|)``.

    If the interval budget runs out the best estimate is returned with
    ``converged=False`` (or :class:`ToleranceNotMet` is raised when
    ``strict``).
    """
    a = float(a)
    b = float(b)
    if a == b:
        return QuadratureResult(0.0, 0.0, 0)
    value, err = _gk15(f, a, b)
    heap = [(-err, a, b, value, err)]
    total, total_err = value, err
    evaluations = 15
    while True:
        target = max(tol, 50.0 * _EPS * abs(total))
        if total_err <= target:
            break
        if len(heap) >= max_intervals:
            result = QuadratureResult(total, float(total_err), evaluations, False)
            msg = f"quad_adaptive: error {total_err:.3g} > tol {tol:.3g}"
            if strict:
                raise ToleranceNotMet(msg, result)
            warnings.warn(msg, RuntimeWarning, stacklevel=2)
            return result
        _, lo, hi, v, e = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        evaluations += 30
        total += v1 + v2 - v
        total_err += e1 + e2 - e
        heapq.heappush(heap, (-e1, lo, mid, v1, e1))
        heapq.heappush(heap, (-e2, mid, hi, v2, e2))
    # re-sum to shed accumulated cancellation in the running total
    total = sum(item[3] for item in heap)
    total_err = sum(item[4] for item in heap)
    if np.iscomplexobj(total):
        total = complex(total)
    else:
        total = float(total)
    return QuadratureResult(total, float(total_err), evaluations, True)


def quad_turning(g, radicand, Cm, Cp, tol=1e-12, simple_root_floor=1e-10, quotient=None):
    """Integrate ``g(C) / sqrt(radicand(C))`` between two simple roots.

    The substitution ``C = mid + half * sin(theta)`` turns the inverse
    square-root endpoint singularities into a smooth integrand on
    ``[-pi/2, pi/2]``.  The integrand needs the smooth quotient
    ``h(C) = radicand(C) / ((C - Cm)(Cp - C))``; if ``quotient`` is given it
    is used for ``h`` directly, otherwise ``h`` is formed by division, which
    loses relative accuracy next to the roots.

    Raises
    ------
    NotSimpleRoot
        If the radicand's slope at either endpoint is below
        ``simple_root_floor``.
    """
    Cm = float(Cm)
    Cp = float(Cp)
    mid = 0.5 * (Cp + Cm)
    half = 0.5 * (Cp - Cm)
    delta = 1e-6 * max(half, 1e-3)
    slopes = []
    for root in (Cm, Cp):
        r = np.asarray(radicand(np.array([root - delta, root + delta])), dtype=float)
        slopes.append((r[1] - r[0]) / (2.0 * delta))
    if min(abs(s) for s in slopes) < simple_root_floor:
        raise NotSimpleRoot(
            f"radicand slope at turning points {slopes} below {simple_root_floor}")
    # h(C) = radicand / ((C - Cm)(Cp - C)) is smooth and positive on [Cm, Cp]
    h_left = slopes[0] / (Cp - Cm)
    h_right = -slopes[1] / (Cp - Cm)

    if quotient is not None:
        def integrand(theta):
            C = mid + half * np.sin(theta)
            return np.asarray(g(C)) / np.sqrt(np.asarray(quotient(C), dtype=float))

        return quad_adaptive(integrand, -0.5 * math.pi, 0.5 * math.pi, tol=tol)

    def integrand(theta):
        s = np.sin(theta)
        cos = np.cos(theta)
        C = mid + half * s
        prod = (half * cos) ** 2
        with np.errstate(divide="ignore", invalid="ignore"):
            h = np.asarray(radicand(C), dtype=float) / prod
        near = cos < 1e-4
        if np.any(near):
            h = np.where(near, np.where(s < 0, h_left, h_right), h)
        return np.asarray(g(C)) / np.sqrt(h)

    return quad_adaptive(integrand, -0.5 * math.pi, 0.5 * math.pi, tol=tol)


def gauss_legendre_cumulative(f, grid, order=5):
    """Cumulative integral of ``f`` over a grid, one Gauss-Legendre panel per cell.

    Returns an array the length of ``grid`` whose first entry is zero.
    ``f`` must be vectorized; complex values are supported.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.size < 2:
        return np.zeros(grid.size)
    x, w = np.polynomial.legendre.leggauss(order)
    lo = grid[:-1, None]
    hi = grid[1:, None]
    half = 0.5 * (hi - lo)
    nodes = 0.5 * (hi + lo) + half * x[None, :]
    vals = np.asarray(f(nodes.ravel())).reshape(nodes.shape)
    cells = (vals * w[None, :]).sum(axis=1) * half[:, 0]
    return np.concatenate([[0.0], np.cumsum(cells)])


def gauss_legendre_partial(f, start, stop, order=8):
    """Vectorized ``int_{start_i}^{stop_i} f`` with one GL panel per pair."""
    start = np.asarray(start, dtype=float)
    stop = np.asarray(stop, dtype=float)
    x, w = np.polynomial.legendre.leggauss(order)
    half = 0.5 * (stop - start)[..., None]
    nodes = 0.5 * (stop + start)[..., None] + half * x
    vals = np.asarray(f(nodes.ravel())).reshape(nodes.shape)
    return (vals * w).sum(axis=-1) * half[..., 0]


# ---------------------------------------------------------------------------
# ODE integration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Trajectory:
    """Output of :func:`ode_solve`: samples plus a dense interpolant."""

    t: np.ndarray
    y: np.ndarray
    sol: object
    nfev: int

    def __call__(self, t):
        return self.sol(t)


def ode_solve(f, y0, span, tol=1e-10, t_eval=None, min_step=None):
    """Integrate ``y' = f(t, y)`` with an embedded 8(5,3) Runge-Kutta pair.

    Both relative and absolute local error per step are held at ``tol``.
    Dense output is always produced.

    Raises
    ------
    StepFailure
        If the step size collapses or the solution leaves the floats.
    """
    y0 = np.atleast_1d(np.asarray(y0, dtype=float))
    t0, t1 = float(span[0]), float(span[1])
    if t_eval is not None:
        t_eval = np.asarray(t_eval, dtype=float)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        res = solve_ivp(f, (t0, t1), y0, method="DOP853", rtol=tol, atol=tol,
                        t_eval=t_eval, dense_output=True)
    if res.status != 0:
        raise StepFailure(f"integrator stopped at t={res.t[-1]!r}: {res.message}")
    if not np.all(np.isfinite(res.y)):
        raise StepFailure("integrator produced non-finite values")
    if min_step is not None and res.t.size > 1 and np.min(np.diff(res.t)) < min_step:
        raise StepFailure(f"step below minimum {min_step}")
    return Trajectory(res.t, res.y, res.sol, res.nfev)
