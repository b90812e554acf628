"""Standing-wave (real) parametric solutions and stop-band metrics."""

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .io import write_csv, write_json
from .numerics import gauss_legendre_cumulative, ode_solve, quad_adaptive

GL_ORDER = 5
METRICS_TOL = 1e-13


def _frozen(values, dtype):
    arr = np.array(values, dtype=dtype)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class ParametricCurve:
    """One branch ``psi -> (X(psi), W(psi), Y(psi))`` of a parametric solution.

    ``monotone`` is False when ``X`` fails to increase somewhere, in which
    case the curve cannot be inverted to ``w(x)``.
    """

    psi: np.ndarray
    X: np.ndarray
    W: np.ndarray
    Y: np.ndarray
    w0: complex = 1.0
    x0: float = 0.0
    psi0: float = 0.0
    monotone: bool = True

    def __post_init__(self):
        psi = _frozen(self.psi, float)
        if psi.ndim != 1 or psi.size < 1:
            raise ValueError("psi must be a non-empty 1-D array")
        if np.any(np.diff(psi) <= 0):
            raise ValueError("psi must be strictly increasing")
        object.__setattr__(self, "psi", psi)
        object.__setattr__(self, "X", _frozen(self.X, float))
        object.__setattr__(self, "W", _frozen(self.W, complex))
        object.__setattr__(self, "Y", _frozen(self.Y, complex))
        if not (self.X.shape == self.W.shape == self.Y.shape == psi.shape):
            raise ValueError("psi, X, W, Y must have equal length")

    def __len__(self):
        return self.psi.size

    def to_csv(self, path):
        write_csv(path, ["psi", "x", "re_w", "im_w", "re_y", "im_y"],
                  [self.psi, self.X, self.W.real, self.W.imag, self.Y.real, self.Y.imag])


@dataclass(frozen=True)
class BandMetrics:
    """Per-period band quantities.

    ``spatial_period`` is the length of one period of ``q(x)``; ``nu`` the
    attenuation per period of the decaying stop-band wave; ``increment_real``
    and ``eta`` the real and imaginary parts of ``ln W`` gained over one
    ``psi``-period ``tau``; ``T_modulation = 2 pi tau / eta``.

    ``mu`` follows the sign convention of the source formulas: for stop bands
    it is the positive rate ``nu / spatial_period`` in ``exp(-mu x)``; for
    integrable families it is ``(increment_real + i eta) / spatial_period``.
    """

    spatial_period: float
    nu: float = None
    eta: float = None
    increment_real: float = None
    tau: float = None
    T_modulation: float = None
    mu: complex = None
    extra: dict = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)

    def to_json(self, path):
        write_json(path, self.to_dict())


def _cot(psi):
    s = np.sin(psi)
    c = np.cos(psi)
    with np.errstate(divide="ignore", invalid="ignore"):
        y = c / s
    # sin(k*pi) is ~1e-16 in floating point; treat as an exact node
    node = np.abs(s) <= 8.0 * np.finfo(float).eps * np.maximum(1.0, np.abs(psi))
    return np.where(node, np.inf, y)


def real_parametric_curve(profile, psi_grid, w0=1.0, x0=0.0):
    """Standing-wave solution parametrized by the real phase.

    ``W = w0 sin(psi) exp(-int Gdot cos^2 psi)`` and
    ``X = x0 + (1/q0) [int e^-G - 1/2 int Gdot e^-G sin 2psi]``, with running
    integrals from ``psi_grid[0]`` (composite 5-point Gauss-Legendre per
    cell).  ``Y = cot(psi)``, infinite at the nodes of ``W``.
    """
    psi = np.asarray(psi_grid, dtype=float)
    if psi.ndim != 1 or psi.size < 1:
        raise ValueError("psi_grid must be a non-empty 1-D array")

    def amp_rate(t):
        return profile.Gdot(t) * np.cos(t) ** 2

    def x_rate(t):
        return np.exp(-profile.G(t)) * (1.0 - 0.5 * profile.Gdot(t) * np.sin(2.0 * t))

    log_amp = gauss_legendre_cumulative(amp_rate, psi, order=GL_ORDER)
    X = x0 + gauss_legendre_cumulative(x_rate, psi, order=GL_ORDER) / profile.q0
    W = w0 * np.sin(psi) * np.exp(-log_amp)
    monotone = bool(np.all(np.diff(X) > 0))
    return ParametricCurve(psi, X, W, _cot(psi), w0=w0, x0=x0, psi0=psi[0],
                           monotone=monotone)


def stopband_metrics(profile, tol=METRICS_TOL):
    """Spatial period and attenuation per period of a Fourier profile.

    ``spatial_period = (2/q0) int_0^pi exp(-G) sin^2 psi`` and
    ``nu = int_0^pi G sin 2psi``.  Over one period the standing wave picks up
    the factor ``-exp(-nu)``, so ``increment_real = -nu`` and ``eta = pi``.
    """
    chi = quad_adaptive(lambda t: np.exp(-profile.G(t)) * np.sin(t) ** 2,
                        0.0, math.pi, tol=tol)
    nu = quad_adaptive(lambda t: profile.G(t) * np.sin(2.0 * t), 0.0, math.pi, tol=tol)
    period = 2.0 * chi.value / profile.q0
    return BandMetrics(
        spatial_period=period,
        nu=nu.value,
        eta=math.pi,
        increment_real=-nu.value,
        tau=math.pi,
        mu=nu.value / period,
        extra={"quad_error": max(chi.abs_error_estimate, nu.abs_error_estimate)},
    )


def phase_from_x(medium, psi_init=0.0, tol=1e-11, x_eval=None):
    """Integrate the real phase equation ``psi' = q + (q'/2q) sin 2psi``.

    Returns ``psi`` sampled on ``x_eval`` (default ``medium.x_grid``).
    """
    x = medium.x_grid if x_eval is None else np.asarray(x_eval, dtype=float)
    spline = medium.spline()
    dspline = spline.derivative()

    def rhs(t, y):
        q = spline(t)
        return [q + 0.5 * dspline(t) / q * math.sin(2.0 * y[0])]

    traj = ode_solve(rhs, [psi_init], (x[0], x[-1]), tol=tol, t_eval=x)
    return traj.y[0]
