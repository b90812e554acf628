"""Direct integration of ``w'' + q(x)^2 w = 0`` and Floquet analysis.

Nothing here looks at the phase-space representation: the medium enters
only through a cubic spline of the sampled ``q(x)``.  That keeps these
routines usable as an independent check on the parametric constructions.
"""

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import NotPeriodic
from .io import write_json
from .numerics import ode_solve

WAVE_TOL = 1e-11


class Band(str, Enum):
    STOP = "stop"
    TRANSMISSION = "transmission"
    EDGE = "edge"


@dataclass(frozen=True, eq=False)
class MonodromyResult:
    """Transfer matrix of ``(w, w')`` over one spatial period.

    ``exponent_mu`` is ``ln(lambda) / period`` for the multiplier ``lambda``
    with ``|lambda| <= 1`` and ``arg(lambda)`` in ``[0, pi]``.  In a stop band
    its real part is the (negative) attenuation rate and its imaginary part
    is ``0`` or ``pi / period`` depending on the sign of the trace.
    """

    matrix: np.ndarray
    trace: float
    det: float
    multipliers: tuple
    exponent_mu: complex
    period: float

    @property
    def phase(self):
        """``arccos(trace / 2)`` clipped to ``[0, pi]``."""
        return math.acos(max(-1.0, min(1.0, 0.5 * self.trace)))

    @property
    def log_max_multiplier(self):
        return max(math.log(abs(m)) for m in self.multipliers)

    def to_dict(self, tol=1e-9):
        return {
            "trace": self.trace,
            "det": self.det,
            "multipliers": [complex(m) for m in self.multipliers],
            "mu_re": self.exponent_mu.real,
            "mu_im": self.exponent_mu.imag,
            "band": classify_band(self, tol).value,
        }

    def to_json(self, path, tol=1e-9):
        write_json(path, self.to_dict(tol))


def _wave_rhs(medium):
    spline = medium.spline()

    def rhs(x, y):
        q = spline(x)
        q2 = q * q
        return [y[1], -q2 * y[0]]

    return rhs


def integrate_wave(medium, w_init, wprime_init, x_eval=None, tol=WAVE_TOL):
    """Solve ``w'' + q^2 w = 0`` on the medium grid.

    Complex initial data are handled by integrating real and imaginary parts
    separately (the equation is real).

    Returns
    -------
    w, wprime : ndarray
        Complex samples on ``x_eval`` (default ``medium.x_grid``).
    """
    x = medium.x_grid if x_eval is None else np.asarray(x_eval, dtype=float)
    rhs = _wave_rhs(medium)
    w_init = complex(w_init)
    wprime_init = complex(wprime_init)
    parts = []
    for y0 in ([w_init.real, wprime_init.real], [w_init.imag, wprime_init.imag]):
        if y0 == [0.0, 0.0]:
            parts.append(np.zeros((2, x.size)))
            continue
        parts.append(ode_solve(rhs, y0, (x[0], x[-1]), tol=tol, t_eval=x).y)
    w = parts[0][0] + 1j * parts[1][0]
    wp = parts[0][1] + 1j * parts[1][1]
    return w, wp


def _propagate(rhs, y0, x0, x1, tol):
    traj = ode_solve(rhs, y0, (x0, x1), tol=tol)
    return traj.y[:, -1]


def monodromy(medium, tol=WAVE_TOL, threads=1, x_start=None):
    """Monodromy matrix of the medium over one ``spatial_period``.

    Columns are the solutions started from ``(w, w') = (1, 0)`` and
    ``(0, 1)`` at ``x_start`` (default: first grid point).  Each column is
    integrated on its own, so ``threads`` only changes scheduling.

    Raises
    ------
    NotPeriodic
        If the medium has no spatial period.
    """
    if medium.spatial_period is None:
        raise NotPeriodic("medium.spatial_period is not set")
    L = medium.spatial_period
    x0 = medium.x_grid[0] if x_start is None else float(x_start)
    rhs = _wave_rhs(medium)
    starts = ([1.0, 0.0], [0.0, 1.0])
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=min(2, threads)) as pool:
            cols = list(pool.map(lambda y0: _propagate(rhs, y0, x0, x0 + L, tol), starts))
    else:
        cols = [_propagate(rhs, y0, x0, x0 + L, tol) for y0 in starts]
    matrix = np.column_stack(cols)
    return _floquet(matrix, L)


def _floquet(matrix, period):
    trace = float(matrix[0, 0] + matrix[1, 1])
    det = float(np.linalg.det(matrix))
    disc = cmath.sqrt(trace * trace - 4.0)
    lam1 = 0.5 * (trace + disc)
    lam2 = 0.5 * (trace - disc)
    if abs(trace) > 2.0:
        # real multipliers; take the attenuating one
        lam = lam1 if abs(lam1) < abs(lam2) else lam2
        lam = complex(lam.real, 0.0)
        phase = math.pi if lam.real < 0 else 0.0
        mu = complex(math.log(abs(lam)), phase) / period
    else:
        theta = math.acos(max(-1.0, min(1.0, 0.5 * trace)))
        lam = cmath.exp(1j * theta)
        mu = complex(0.5 * math.log(abs(det)), theta) / period
    return MonodromyResult(matrix=matrix, trace=trace, det=det,
                           multipliers=(complex(lam1), complex(lam2)),
                           exponent_mu=mu, period=period)


def classify_band(result, tol=1e-9):
    """Stop if ``|trace| > 2 + tol``, transmission if ``< 2 - tol``, else edge."""
    t = abs(result.trace if hasattr(result, "trace") else float(result))
    if t > 2.0 + tol:
        return Band.STOP
    if t < 2.0 - tol:
        return Band.TRANSMISSION
    return Band.EDGE


def wave_residual(x, w, q, relative="global"):
    """Relative residual of ``w'' + q^2 w`` by nonuniform second differences.

    With ``relative="global"`` the residual on the interior nodes is divided
    by ``max|q^2 w|``; with ``"pointwise"`` by ``|q^2 w|`` at each node
    (meaningful only for waves without zeros).
    """
    x = np.asarray(x, dtype=float)
    w = np.asarray(w)
    q = np.asarray(q, dtype=float)
    h1 = x[1:-1] - x[:-2]
    h2 = x[2:] - x[1:-1]
    d2 = 2.0 * (h1 * w[2:] - (h1 + h2) * w[1:-1] + h2 * w[:-2]) / (h1 * h2 * (h1 + h2))
    res = d2 + q[1:-1] ** 2 * w[1:-1]
    if relative == "pointwise":
        return np.abs(res) / np.abs(q[1:-1] ** 2 * w[1:-1])
    if relative != "global":
        raise ValueError("relative must be 'global' or 'pointwise'")
    scale = np.max(np.abs(q ** 2 * w))
    return np.abs(res) / scale
