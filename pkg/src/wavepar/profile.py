"""Medium modulation in phase space and the physical index profile.

A *phase profile* describes the wavenumber as a function of the phase
parameter, ``Q(psi) = q0 * exp(G(psi))``.  Three flavours share one duck-typed
interface (``q0``, ``G``, ``Gdot``, ``Q``, ``psi_period``):

* :class:`PhaseProfile` -- a finite Fourier series in even harmonics,
* :class:`LinearPhaseProfile` -- ``G`` linear in ``psi`` (constant auxiliary
  function solutions),
* :class:`SampledPhaseProfile` -- ``G`` obtained by integrating a supplied
  ``Gdot`` callable, e.g. from an integrable potential family.

:class:`RefractiveProfile` holds ``q(x)`` on a spatial grid.
"""

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline, PchipInterpolator

from .errors import NonMonotoneX
from .numerics import gauss_legendre_cumulative, gauss_legendre_partial

INVERSION_MIN_NODES = 2048


def _as_tuple(values):
    return tuple(float(v) for v in values)


@dataclass(frozen=True)
class PhaseProfile:
    """Fourier modulation ``G(psi) = a0 + sum a_2m cos 2m psi + b_2m sin 2m psi``.

    ``a[m-1]`` and ``b[m-1]`` hold the coefficients of harmonic ``2m``.
    The series is truncated at ``m_max`` (defaults to the longer list).
    """

    q0: float = 1.0
    a0: float = 0.0
    a: tuple = ()
    b: tuple = ()
    m_max: int = None

    psi_period = math.pi

    def __post_init__(self):
        object.__setattr__(self, "q0", float(self.q0))
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "a", _as_tuple(self.a))
        object.__setattr__(self, "b", _as_tuple(self.b))
        if not self.q0 > 0.0:
            raise ValueError(f"q0 must be positive, got {self.q0}")
        m_max = max(len(self.a), len(self.b)) if self.m_max is None else int(self.m_max)
        if m_max < 0:
            raise ValueError("m_max must be nonnegative")
        object.__setattr__(self, "m_max", m_max)

    def _coeffs(self):
        m = self.m_max
        a = np.zeros(m)
        b = np.zeros(m)
        na = min(m, len(self.a))
        nb = min(m, len(self.b))
        a[:na] = self.a[:na]
        b[:nb] = self.b[:nb]
        return a, b

    def G(self, psi):
        psi = np.asarray(psi, dtype=float)
        a, b = self._coeffs()
        out = np.full(psi.shape, self.a0)
        for m in range(1, self.m_max + 1):
            if a[m - 1]:
                out = out + a[m - 1] * np.cos(2 * m * psi)
            if b[m - 1]:
                out = out + b[m - 1] * np.sin(2 * m * psi)
        return out if out.ndim else float(out)

    def Gdot(self, psi):
        psi = np.asarray(psi, dtype=float)
        a, b = self._coeffs()
        out = np.zeros(psi.shape)
        for m in range(1, self.m_max + 1):
            if a[m - 1]:
                out = out - 2 * m * a[m - 1] * np.sin(2 * m * psi)
            if b[m - 1]:
                out = out + 2 * m * b[m - 1] * np.cos(2 * m * psi)
        return out if out.ndim else float(out)

    def Q(self, psi):
        return self.q0 * np.exp(self.G(psi))

    @property
    def is_zero(self):
        return self.a0 == 0.0 and not any(self.a) and not any(self.b)

    def to_dict(self):
        return {"q0": self.q0, "a0": self.a0, "a": list(self.a), "b": list(self.b)}

    @classmethod
    def from_dict(cls, data):
        unknown = set(data) - {"q0", "a0", "a", "b", "m_max"}
        if unknown:
            raise ValueError(f"unknown profile keys: {sorted(unknown)}")
        return cls(q0=data.get("q0", 1.0), a0=data.get("a0", 0.0),
                   a=data.get("a", ()), b=data.get("b", ()), m_max=data.get("m_max"))

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class LinearPhaseProfile:
    """``G(psi) = slope * (psi - psi0)``; an exponentially graded medium."""

    q0: float
    slope: float
    psi0: float = 0.0

    psi_period = None

    def __post_init__(self):
        if not self.q0 > 0.0:
            raise ValueError(f"q0 must be positive, got {self.q0}")

    @classmethod
    def from_constant_c(cls, c_value, q0=1.0, psi0=0.0):
        """Profile that keeps the auxiliary function frozen at ``c_value``."""
        c_value = float(c_value)
        if abs(4.0 * c_value**2 - 1.0) < 1e-12:
            raise ValueError("constant value +-1/2 gives an unbounded slope")
        return cls(q0, 8.0 * c_value / (4.0 * c_value**2 - 1.0), psi0)

    def G(self, psi):
        return self.slope * (np.asarray(psi, dtype=float) - self.psi0)

    def Gdot(self, psi):
        return np.full(np.shape(psi), self.slope) if np.ndim(psi) else float(self.slope)

    def Q(self, psi):
        return self.q0 * np.exp(self.G(psi))


class SampledPhaseProfile:
    """Profile whose ``G`` is the running integral of a ``Gdot`` callable.

    ``G`` is tabulated at ``grid`` nodes by composite Gauss-Legendre; between
    nodes it is completed with one more panel from the nearest node on the
    left, so evaluation off the grid keeps quadrature accuracy.
    """

    def __init__(self, q0, gdot, grid, psi_period=None, g_start=0.0, order=8):
        if not q0 > 0.0:
            raise ValueError(f"q0 must be positive, got {q0}")
        self.q0 = float(q0)
        self._gdot = gdot
        self.grid = np.asarray(grid, dtype=float)
        if self.grid.ndim != 1 or self.grid.size < 2 or np.any(np.diff(self.grid) <= 0):
            raise ValueError("grid must be strictly increasing with >= 2 nodes")
        self.psi_period = psi_period
        self._order = order
        self.G_nodes = g_start + gauss_legendre_cumulative(gdot, self.grid, order=order)

    def Gdot(self, psi):
        return self._gdot(psi)

    def G(self, psi):
        psi_arr = np.asarray(psi, dtype=float)
        flat = psi_arr.ravel()
        idx = np.clip(np.searchsorted(self.grid, flat, side="right") - 1,
                      0, self.grid.size - 1)
        start = self.grid[idx]
        out = self.G_nodes[idx] + gauss_legendre_partial(self._gdot, start, flat,
                                                         order=self._order)
        out = out.reshape(psi_arr.shape)
        return out if out.ndim else float(out)

    def Q(self, psi):
        return self.q0 * np.exp(self.G(psi))


def eval_G(profile, psi):
    """Return ``(G(psi), Gdot(psi))``."""
    return profile.G(psi), profile.Gdot(psi)


def eval_Q(profile, psi):
    """Return ``Q(psi) = q0 * exp(G(psi))``."""
    return profile.Q(psi)


@dataclass(frozen=True, eq=False)
class RefractiveProfile:
    """Wavenumber ``q(x)`` sampled on an increasing spatial grid.

    ``n(x) = scale * q(x)`` with ``scale = c / omega``.  When
    ``spatial_period`` is set the medium is treated as periodic with that
    period.  ``psi_grid`` (optional) records the phase parameter at each node
    so that the inverse map ``psi(x)`` can be interpolated.
    """

    x_grid: np.ndarray
    q_values: np.ndarray
    spatial_period: float = None
    scale: float = 1.0
    psi_grid: np.ndarray = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        x = np.array(self.x_grid, dtype=float)
        q = np.array(self.q_values, dtype=float)
        if x.ndim != 1 or x.shape != q.shape or x.size < 2:
            raise ValueError("x_grid and q_values must be 1-D arrays of equal length >= 2")
        if np.any(np.diff(x) <= 0):
            raise NonMonotoneX("x_grid must be strictly increasing")
        if np.any(q <= 0):
            raise ValueError("q_values must be positive")
        x.flags.writeable = False
        q.flags.writeable = False
        object.__setattr__(self, "x_grid", x)
        object.__setattr__(self, "q_values", q)
        if self.psi_grid is not None:
            p = np.array(self.psi_grid, dtype=float)
            p.flags.writeable = False
            object.__setattr__(self, "psi_grid", p)
        if self.spatial_period is not None:
            if not self.spatial_period > 0:
                raise ValueError("spatial_period must be positive")
            object.__setattr__(self, "spatial_period", float(self.spatial_period))

    def spline(self):
        """Cubic spline of ``q(x)``; periodic when the grid spans whole periods."""
        if "spline" not in self._cache:
            x, q = self.x_grid, self.q_values
            bc = "not-a-knot"
            if self.spatial_period is not None:
                span = x[-1] - x[0]
                k = round(span / self.spatial_period)
                if k >= 1 and abs(span - k * self.spatial_period) <= 1e-9 * span \
                        and abs(q[-1] - q[0]) <= 1e-8 * q[0]:
                    q = q.copy()
                    q[-1] = q[0]
                    bc = "periodic"
            self._cache["spline"] = CubicSpline(x, q, bc_type=bc)
        return self._cache["spline"]

    def q(self, x):
        return self.spline()(x)

    def dq(self, x):
        return self.spline()(x, 1)

    def n(self, x):
        return self.scale * self.q(x)

    def psi_of_x(self, x):
        """Phase parameter at ``x`` via monotone cubic interpolation."""
        if self.psi_grid is None:
            raise ValueError("profile carries no phase samples")
        if "pchip" not in self._cache:
            self._cache["pchip"] = PchipInterpolator(self.x_grid, self.psi_grid)
        return self._cache["pchip"](x)

    def to_csv(self, path):
        from .io import format_float
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["x", "q", "n"])
            for x, q in zip(self.x_grid, self.q_values):
                writer.writerow([format_float(x), format_float(q),
                                 format_float(self.scale * q)])

    @classmethod
    def from_csv(cls, path, spatial_period=None, scale=None):
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        x, q = data[:, 0], data[:, 1]
        if scale is None:
            scale = float(data[0, 2] / data[0, 1]) if data.shape[1] > 2 else 1.0
        return cls(x, q, spatial_period=spatial_period, scale=scale)


def reconstruct_q_of_x(profile, curve, scale=1.0):
    """Build ``q(x)`` from a parametric curve by inverting ``x = X(psi)``.

    The nodes are ``(X(psi_i), Q(psi_i))``.  When the profile has a phase
    period (``pi`` for Fourier profiles, ``tau`` for family profiles) and the
    curve covers it, the spatial period ``X(psi_0 + period) - X(psi_0)`` is
    attached.

    Raises
    ------
    NonMonotoneX
        If ``X`` is not strictly increasing on the sampled grid.
    """
    psi = np.asarray(curve.psi, dtype=float)
    X = np.asarray(curve.X, dtype=float)
    if psi.size < 2:
        raise ValueError("need at least two samples to reconstruct q(x)")
    if np.any(np.diff(X) <= 0):
        bad = int(np.argmax(np.diff(X) <= 0))
        raise NonMonotoneX(f"X(psi) not increasing near psi={psi[bad]!r}")
    period = getattr(profile, "psi_period", None)
    spatial_period = None
    if period is not None and psi[-1] - psi[0] >= period * (1 - 1e-12):
        target = psi[0] + period
        j = int(np.argmin(np.abs(psi - target)))
        if abs(psi[j] - target) <= 1e-12 * max(1.0, abs(target)):
            spatial_period = X[j] - X[0]
        else:
            spatial_period = float(CubicSpline(psi, X)(target) - X[0])
    q = np.asarray(profile.Q(psi), dtype=float)
    return RefractiveProfile(X, q, spatial_period=spatial_period, scale=scale, psi_grid=psi)
