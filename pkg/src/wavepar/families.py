"""Integrable potential families and their transmission-band metrics.

Choosing the modulation through a potential, ``G'(psi) = M'(C) / M(C)``,
gives the auxiliary equation the energy integral

    C'^2 = 1 - 4 C^2 + M(C),

so ``C`` oscillates between two turning points with a period ``tau`` and
everything else (``G``, ``W``, the complex increment of ``ln W`` over a
period) reduces to one-dimensional quadratures in ``C``.

Five potentials have closed-form orbits; arbitrary tabulated potentials are
integrated numerically.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from .complex_band import Branch, CFunction, parametric_from_c
from .errors import (InvalidFamily, MVanishes, NoBoundedOrbit, NotEven,
                     ZeroEta)
from .numerics import jacobi_sncndn, ode_solve, quad_adaptive, quad_turning
from .profile import SampledPhaseProfile
from .real_band import BandMetrics

C_FLOOR = 1e-6
INCREMENT_TOL = 1e-12
_SEARCH_WIDTHS = (1.0, 10.0, 100.0, 1000.0)


def _check_c(c):
    if abs(c) < C_FLOOR:
        raise InvalidFamily(f"|c| must be >= {C_FLOOR} (M must not vanish), got {c}")


class PotentialFamily:
    """Common behaviour of the potentials ``M(C)``.

    Subclasses provide ``M``, ``dM``, ``center`` (the orbit midpoint used as
    the default starting value) and, when available, ``closed_form``.  The
    closed-form potentials also override ``radicand`` with its factored form,
    which keeps full relative accuracy next to the turning points.
    """

    variant = None
    has_closed_form = True

    def radicand(self, c):
        c = np.asarray(c, dtype=float)
        return 1.0 - 4.0 * c**2 + self.M(c)

    def dradicand(self, c):
        c = np.asarray(c, dtype=float)
        return -8.0 * c + self.dM(c)

    # R(C) / ((C - C_-)(C_+ - C)) in closed form, or None when unknown
    radicand_quotient = None

    @property
    def is_even(self):
        return True

    def closed_form(self, psi, psi0=0.0, branch="+"):
        raise NotImplementedError(f"{type(self).__name__} has no closed-form orbit")

    def to_dict(self):
        out = {"variant": self.variant}
        for key, value in self.__dict__.items():
            if not key.startswith("_"):
                out[key] = list(value) if isinstance(value, tuple) else value
        return out


@dataclass(frozen=True)
class Constant(PotentialFamily):
    """``M = c``: uniform medium, ``C = +-(sqrt(1+c)/2) sin 2(psi - psi0)``."""

    c: float
    variant = "constant"

    def __post_init__(self):
        if not self.c > -1.0:
            raise InvalidFamily(f"constant potential needs c > -1, got {self.c}")
        _check_c(self.c)

    def M(self, c):
        return np.full(np.shape(c), self.c) if np.ndim(c) else float(self.c)

    def radicand(self, c):
        c = np.asarray(c, dtype=float)
        amp = math.sqrt(1.0 + self.c) / 2.0
        return 4.0 * (amp - c) * (amp + c)

    def radicand_quotient(self, c):
        return np.full(np.shape(c), 4.0)

    def dM(self, c):
        return np.zeros(np.shape(c)) if np.ndim(c) else 0.0

    center = 0.0

    def closed_form(self, psi, psi0=0.0, branch="+"):
        s = Branch(branch).sign
        amp = s * math.sqrt(1.0 + self.c) / 2.0
        phi = 2.0 * (np.asarray(psi, dtype=float) - psi0)
        return amp * np.sin(phi), 2.0 * amp * np.cos(phi), -4.0 * amp * np.sin(phi)


@dataclass(frozen=True)
class Linear(PotentialFamily):
    """``M = c + 8 e C``: ``C = e +- (sqrt(1+c+4e^2)/2) sin 2(psi - psi0)``."""

    c: float
    e: float
    variant = "linear"

    def __post_init__(self):
        if not self.c > -1.0 - 4.0 * self.e**2:
            raise InvalidFamily("linear potential needs c > -1 - 4 e^2")
        _check_c(self.c)

    def M(self, c):
        return self.c + 8.0 * self.e * np.asarray(c, dtype=float)

    def radicand(self, c):
        u = np.asarray(c, dtype=float) - self.e
        amp = math.sqrt(1.0 + self.c + 4.0 * self.e**2) / 2.0
        return 4.0 * (amp - u) * (amp + u)

    def radicand_quotient(self, c):
        return np.full(np.shape(c), 4.0)

    def dM(self, c):
        return np.full(np.shape(c), 8.0 * self.e) if np.ndim(c) else 8.0 * self.e

    @property
    def center(self):
        return self.e

    @property
    def is_even(self):
        return self.e == 0.0

    def closed_form(self, psi, psi0=0.0, branch="+"):
        s = Branch(branch).sign
        amp = s * math.sqrt(1.0 + self.c + 4.0 * self.e**2) / 2.0
        phi = 2.0 * (np.asarray(psi, dtype=float) - psi0)
        return (self.e + amp * np.sin(phi), 2.0 * amp * np.cos(phi),
                -4.0 * amp * np.sin(phi))


@dataclass(frozen=True)
class QuadraticMinus(PotentialFamily):
    """``M = c + 8 e C - d^2 C^2``; harmonic orbit with frequency ``sqrt(d^2 + 4)``."""

    c: float
    e: float
    d: float
    variant = "quadratic_minus"

    def __post_init__(self):
        if not self.c > -1.0 - 16.0 * self.e**2 / (self.d**2 + 4.0):
            raise InvalidFamily("quadratic_minus potential needs c > -1 - 16 e^2/(d^2+4)")
        _check_c(self.c)

    def M(self, c):
        c = np.asarray(c, dtype=float)
        return self.c + 8.0 * self.e * c - self.d**2 * c**2

    def dM(self, c):
        return 8.0 * self.e - 2.0 * self.d**2 * np.asarray(c, dtype=float)

    def radicand(self, c):
        D = self.d**2 + 4.0
        u = np.asarray(c, dtype=float) - 4.0 * self.e / D
        amp = math.sqrt((1.0 + self.c) * D + 16.0 * self.e**2) / D
        return D * (amp - u) * (amp + u)

    def radicand_quotient(self, c):
        return np.full(np.shape(c), self.d**2 + 4.0)

    @property
    def center(self):
        return 4.0 * self.e / (self.d**2 + 4.0)

    @property
    def is_even(self):
        return self.e == 0.0

    def closed_form(self, psi, psi0=0.0, branch="+"):
        s = Branch(branch).sign
        D = self.d**2 + 4.0
        omega = math.sqrt(D)
        amp = s * math.sqrt((1.0 + self.c) * D + 16.0 * self.e**2) / D
        phi = omega * (np.asarray(psi, dtype=float) - psi0)
        return (4.0 * self.e / D + amp * np.sin(phi), amp * omega * np.cos(phi),
                -amp * D * np.sin(phi))


@dataclass(frozen=True)
class QuadraticPlus(PotentialFamily):
    """``M = c + 8 e C + (k^2 + 4) C^2``; unbounded ``sh`` orbit, no period."""

    c: float
    e: float
    k: float
    variant = "quadratic_plus"

    def __post_init__(self):
        if not self.k > 0.0:
            raise InvalidFamily("quadratic_plus potential needs k > 0")
        if not self.c > -1.0 + 16.0 * self.e**2 / self.k**2:
            raise InvalidFamily("quadratic_plus potential needs c > -1 + 16 e^2/k^2")
        _check_c(self.c)

    def M(self, c):
        c = np.asarray(c, dtype=float)
        return self.c + 8.0 * self.e * c + (self.k**2 + 4.0) * c**2

    def dM(self, c):
        return 8.0 * self.e + 2.0 * (self.k**2 + 4.0) * np.asarray(c, dtype=float)

    def radicand(self, c):
        k2 = self.k**2
        u = np.asarray(c, dtype=float) + 4.0 * self.e / k2
        return k2 * u**2 + (1.0 + self.c) - 16.0 * self.e**2 / k2

    @property
    def center(self):
        return -4.0 * self.e / self.k**2

    @property
    def is_even(self):
        return self.e == 0.0

    def closed_form(self, psi, psi0=0.0, branch="+"):
        s = Branch(branch).sign
        k = self.k
        amp = s * math.sqrt((1.0 + self.c) * k**2 - 16.0 * self.e**2) / k**2
        phi = k * (np.asarray(psi, dtype=float) - psi0)
        return (-4.0 * self.e / k**2 + amp * np.sinh(phi), amp * k * np.cosh(phi),
                amp * k**2 * np.sinh(phi))


@dataclass(frozen=True)
class Quartic(PotentialFamily):
    """``M = (4a^2 - 1) + b^2 C^4``; orbit in Jacobi ``sn`` with modulus ``p``.

    ``C = +-a sqrt(1+p^2) sn[2(psi - psi0)/sqrt(1+p^2), p]`` with
    ``p = (1 - sqrt(1 - a^2 b^2)) / (a b)``.
    """

    a: float
    b: float
    variant = "quartic"

    def __post_init__(self):
        if not (self.a > 0.0 and self.b > 0.0):
            raise InvalidFamily("quartic potential needs a, b > 0")
        if not self.a * self.b < 1.0:
            raise InvalidFamily("quartic potential needs a b < 1")
        _check_c(4.0 * self.a**2 - 1.0)

    @property
    def p(self):
        ab = self.a * self.b
        # (1 - sqrt(1 - x^2)) / x written without cancellation
        return ab / (1.0 + math.sqrt((1.0 - ab) * (1.0 + ab)))

    @property
    def roots_squared(self):
        """``(C_-^2, C_+^2) = (2/b^2)(1 -+ sqrt(1 - a^2 b^2))``."""
        ab = self.a * self.b
        r = math.sqrt((1.0 - ab) * (1.0 + ab))
        small = 2.0 * self.a**2 / (1.0 + r)  # == (2/b^2)(1 - r)
        return small, 2.0 / self.b**2 * (1.0 + r)

    def M(self, c):
        c = np.asarray(c, dtype=float)
        return (4.0 * self.a**2 - 1.0) + self.b**2 * c**4

    def dM(self, c):
        return 4.0 * self.b**2 * np.asarray(c, dtype=float) ** 3

    def radicand(self, c):
        c2 = np.asarray(c, dtype=float) ** 2
        small, big = self.roots_squared
        return self.b**2 * (c2 - small) * (c2 - big)

    def radicand_quotient(self, c):
        return self.b**2 * (self.roots_squared[1] - np.asarray(c, dtype=float) ** 2)

    center = 0.0

    def closed_form(self, psi, psi0=0.0, branch="+"):
        s = Branch(branch).sign
        p = self.p
        scale = math.sqrt(1.0 + p * p)
        amp = s * self.a * scale
        u = 2.0 * (np.asarray(psi, dtype=float) - psi0) / scale
        sn, cn, dn = jacobi_sncndn(u, p)
        rate = 2.0 / scale
        return (amp * sn, amp * rate * cn * dn,
                -amp * rate**2 * sn * (dn**2 + p * p * cn**2))


@dataclass(frozen=True)
class Tabulated(PotentialFamily):
    """Potential given as samples ``(C_i, M_i)``, interpolated by a cubic spline.

    ``c_start`` is the default starting value of the orbit.  Orbits are
    integrated numerically.
    """

    c_values: tuple
    m_values: tuple
    c_start: float = 0.0
    _spline: object = field(default=None, repr=False, compare=False)
    variant = "tabulated"
    has_closed_form = False

    def __post_init__(self):
        c = np.asarray(self.c_values, dtype=float)
        m = np.asarray(self.m_values, dtype=float)
        if c.ndim != 1 or c.shape != m.shape or c.size < 4:
            raise InvalidFamily("tabulated potential needs >= 4 paired samples")
        if np.any(np.diff(c) <= 0):
            raise InvalidFamily("tabulated C values must be strictly increasing")
        object.__setattr__(self, "c_values", tuple(c.tolist()))
        object.__setattr__(self, "m_values", tuple(m.tolist()))
        object.__setattr__(self, "_spline", CubicSpline(c, m))

    def M(self, c):
        return self._spline(c)

    def dM(self, c):
        return self._spline(c, 1)

    @property
    def center(self):
        return self.c_start

    @property
    def is_even(self):
        c = np.asarray(self.c_values)
        probe = np.linspace(max(c[0], -c[-1]), min(c[-1], -c[0]), 257)
        if probe[-1] <= probe[0]:
            return False
        m = self.M(probe)
        return bool(np.max(np.abs(m - m[::-1])) <= 1e-12 * max(1.0, np.max(np.abs(m))))

    def to_dict(self):
        return {"variant": self.variant, "c_values": list(self.c_values),
                "m_values": list(self.m_values), "c_start": self.c_start}


FAMILY_TYPES = {cls.variant: cls for cls in
                (Constant, Linear, QuadraticMinus, QuadraticPlus, Quartic, Tabulated)}


def family_from_dict(data):
    """Build a family from ``{"variant": "quartic", "a": 0.4, "b": 1.0}`` etc."""
    data = dict(data)
    variant = data.pop("variant", None)
    if variant not in FAMILY_TYPES:
        raise InvalidFamily(f"unknown variant {variant!r}; expected one of {sorted(FAMILY_TYPES)}")
    try:
        return FAMILY_TYPES[variant](**data)
    except TypeError as exc:
        raise InvalidFamily(f"bad parameters for {variant}: {exc}") from None


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def m_eval(family, c_val):
    """Return ``(M(C), dM/dC)``."""
    return family.M(c_val), family.dM(c_val)


def _polish(family, root):
    for _ in range(3):
        slope = float(family.dradicand(root))
        if slope == 0.0:
            break
        step = float(family.radicand(root)) / slope
        root -= step
        if abs(step) < 1e-17:
            break
    return root


def _adjacent_root(family, c0, direction):
    limit = None
    if isinstance(family, Tabulated):
        limit = family.c_values[-1] if direction > 0 else family.c_values[0]
    for width in _SEARCH_WIDTHS:
        end = c0 + direction * width
        if limit is not None and direction * (end - limit) > 0:
            end = limit
        grid = np.linspace(c0, end, 20001)
        R = family.radicand(grid)
        nonpos = np.nonzero(R <= 0.0)[0]
        if nonpos.size:
            i = int(nonpos[0])
            if R[i] == 0.0:
                return float(grid[i])
            lo, hi = sorted((grid[i - 1], grid[i]))
            root = brentq(lambda t: float(family.radicand(t)), lo, hi,
                          xtol=1e-16, rtol=4 * np.finfo(float).eps, maxiter=200)
            return _polish(family, root)
        if limit is not None and end == limit:
            break
    side = "above" if direction > 0 else "below"
    raise NoBoundedOrbit(f"radicand has no root {side} C={c0}: the orbit is unbounded")


def turning_points(family, c_start=None):
    """Adjacent simple roots ``(C_-, C_+)`` of ``1 - 4C^2 + M(C)`` around ``c_start``.

    For the quartic potential these are ``(-C_-, +C_-)`` in terms of the
    smaller root of its biquadratic radicand.

    Raises
    ------
    NoBoundedOrbit
        If the radicand has no root on one side (e.g. the ``sh`` family).
    """
    c0 = family.center if c_start is None else float(c_start)
    if not float(family.radicand(c0)) > 0.0:
        raise ValueError(f"radicand must be positive at the start C={c0}")
    return _adjacent_root(family, c0, -1.0), _adjacent_root(family, c0, 1.0)


def closed_form_c(family, branch, psi, psi0=0.0):
    """Closed-form orbit ``C(psi)`` (value only; see ``family.closed_form``)."""
    return family.closed_form(psi, psi0, branch)[0]


def period_tau(family, tol=1e-13, c_start=None):
    """Orbit period ``tau = 2 int_{C_-}^{C_+} dC / sqrt(1 - 4C^2 + M)``."""
    cm, cp = turning_points(family, c_start)
    res = quad_turning(lambda c: np.ones_like(c), family.radicand, cm, cp, tol=tol,
                       quotient=family.radicand_quotient)
    return 2.0 * res.value


def psi_of_c(family, c_target, c_start=None, tol=1e-13):
    """Phase needed to move from ``c_start`` to ``c_target`` on the rising branch.

    ``psi = int_{c_start}^{c_target} dC / sqrt(1 - 4C^2 + M(C))``.  For bounded
    orbits the integral is taken in the angle ``C = mid + half sin(theta)``,
    which removes the square-root singularity at the turning points, so
    ``c_target`` may equal a turning point.
    """
    c0 = family.center if c_start is None else float(c_start)
    try:
        cm, cp = turning_points(family, c0)
    except NoBoundedOrbit:
        return quad_adaptive(lambda c: 1.0 / np.sqrt(family.radicand(c)), c0,
                             float(c_target), tol=tol).value
    if not cm <= c_target <= cp:
        raise ValueError(f"C={c_target} lies outside the orbit [{cm}, {cp}]")
    mid, half = 0.5 * (cp + cm), 0.5 * (cp - cm)
    slopes = (float(family.dradicand(cm)), float(family.dradicand(cp)))

    def integrand(theta):
        c = mid + half * np.sin(theta)
        if family.radicand_quotient is not None:
            return 1.0 / np.sqrt(family.radicand_quotient(c))
        cos = np.cos(theta)
        with np.errstate(divide="ignore", invalid="ignore"):
            h = family.radicand(c) / (half * cos) ** 2
        # R ~ R'(C_end) (C - C_end) at a simple root, so h tends to -+R'/(2 half)
        h_end = np.where(theta > 0, -slopes[1] / (2.0 * half), slopes[0] / (2.0 * half))
        return 1.0 / np.sqrt(np.where(np.abs(cos) < 1e-4, h_end, h))

    def angle(c):
        return math.asin(max(-1.0, min(1.0, (c - mid) / half)))

    return quad_adaptive(integrand, angle(c0), angle(float(c_target)), tol=tol).value


def _check_m_on_orbit(family, cm, cp):
    grid = np.linspace(cm, cp, 4001)
    m = family.M(grid)
    if np.any(np.abs(m) < 1e-12) or np.any(np.sign(m) != np.sign(m[0])):
        raise MVanishes(f"M(C) vanishes on the orbit [{cm}, {cp}]: G' is singular")


def c_function(family, psi_grid, branch="+", psi0=None, tol=1e-12):
    """Orbit ``C(psi)`` of the family sampled on ``psi_grid``.

    At ``psi0`` (default: first grid point) the orbit sits at the family's
    centre value and moves in the direction of ``branch``.
    """
    psi = np.asarray(psi_grid, dtype=float)
    psi0 = float(psi[0]) if psi0 is None else float(psi0)
    branch = Branch(branch)
    if family.has_closed_form:
        def evaluator(t):
            return family.closed_form(t, psi0, branch)
        return CFunction.from_evaluator(evaluator, psi, family=family.to_dict(),
                                        branch=branch.value, psi0=psi0)
    c0 = family.center
    r0 = float(family.radicand(c0))
    if r0 <= 0.0:
        raise ValueError(f"radicand must be positive at the start C={c0}")

    def rhs(t, y):
        return [y[1], -4.0 * y[0] + 0.5 * float(family.dM(y[0]))]

    lo = min(psi0, psi[0])
    hi = max(psi0, psi[-1])
    y0 = [c0, branch.sign * math.sqrt(r0)]
    fwd = ode_solve(rhs, y0, (psi0, hi), tol=tol) if hi > psi0 else None
    bwd = ode_solve(rhs, y0, (psi0, lo), tol=tol) if lo < psi0 else None

    def evaluator(t):
        t = np.asarray(t, dtype=float)
        y = np.empty((2,) + t.shape)
        if fwd is not None:
            m = t >= psi0
            y[:, m] = fwd.sol(t[m])
        if bwd is not None:
            m = t < psi0
            y[:, m] = bwd.sol(t[m])
        c, cd = y
        return c, cd, -4.0 * c + 0.5 * family.dM(c)

    return CFunction.from_evaluator(evaluator, psi, kind="numeric",
                                    family=family.to_dict(), branch=branch.value,
                                    psi0=psi0)


def family_profile(family, cfun, q0=1.0, check=True):
    """Phase profile with ``G' = M'(C(psi)) / M(C(psi))`` along ``cfun``.

    ``psi_period`` is set to ``tau`` for even potentials (where ``G`` is
    periodic).
    """
    tau = None
    if check or family.is_even:
        cm, cp = turning_points(family)
        if check:
            _check_m_on_orbit(family, cm, cp)
        if family.is_even:
            tau = period_tau(family)

    def gdot(t):
        c = cfun.evaluate(t)[0]
        return family.dM(c) / family.M(c)

    return SampledPhaseProfile(q0, gdot, cfun.psi, psi_period=tau)


def g_of_psi_family(family, psi_grid, branch="+", psi0=None):
    """Modulation ``G(psi)`` and ``G'(psi)`` generated by the family's orbit.

    ``G`` starts at zero on the first grid point.

    Raises
    ------
    MVanishes
        If ``M(C) = 0`` somewhere on the orbit.
    """
    cfun = c_function(family, psi_grid, branch, psi0)
    prof = family_profile(family, cfun)
    return prof.G_nodes.copy(), np.asarray(prof.Gdot(cfun.psi))


def _increment_integrand(family):
    def g(c):
        m = family.M(c)
        dm = family.dM(c)
        return 2.0 * (2.0 + m) / (m**2 + 16.0 * c**2) * (4.0 * c / m - 1j) * (m - c * dm)
    return g


def complex_increment(family, tol=INCREMENT_TOL, c_start=None):
    """Increment ``chi + i eta`` of ``ln W`` over one orbit period.

    Single merged integral over ``[C_-, C_+]`` of
    ``2 (2+M)/(M^2 + 16C^2) (4C/M - i)(M - C M') / sqrt(1 - 4C^2 + M)``.

    Returns
    -------
    chi_inc, eta : float
    """
    cm, cp = turning_points(family, c_start)
    _check_m_on_orbit(family, cm, cp)
    res = quad_turning(_increment_integrand(family), family.radicand, cm, cp, tol=tol,
                       quotient=family.radicand_quotient)
    value = complex(res.value)
    return value.real, value.imag


def eta_even(family, tol=INCREMENT_TOL):
    """Phase advance ``4 int_0^{C_+} (2+M)/(M^2+16C^2) (C M' - M) dC / sqrt(R)``.

    Valid for even potentials only; uses ``C = C_+ sin(theta)`` on the
    half range.

    Raises
    ------
    NotEven
        If the potential has odd content.
    """
    if not family.is_even:
        raise NotEven(f"{type(family).__name__} potential is not even")
    _, cp = turning_points(family, 0.0)
    _check_m_on_orbit(family, -cp, cp)
    # R = (C_+^2 - C^2) h(C) with h smooth; h at the turning point from R'
    h_end = -float(family.dradicand(cp)) / (2.0 * cp)

    def integrand(theta):
        c = cp * np.sin(theta)
        if family.radicand_quotient is not None:
            h = family.radicand_quotient(c)
        else:
            cos = np.cos(theta)
            with np.errstate(divide="ignore", invalid="ignore"):
                h = family.radicand(c) / ((cp * cos) ** 2)
            h = np.where(cos < 1e-4, h_end, h)
        m = family.M(c)
        dm = family.dM(c)
        return 4.0 * (2.0 + m) / (m**2 + 16.0 * c**2) * (c * dm - m) / np.sqrt(h)

    return quad_adaptive(integrand, 0.0, 0.5 * math.pi, tol=tol).value


def modulation_period(eta, tau):
    """``T = (2 pi / eta) tau``.

    Raises
    ------
    ZeroEta
        If ``eta == 0``.
    """
    if eta == 0:
        raise ZeroEta("phase advance is zero: no modulation period")
    return 2.0 * math.pi / eta * tau


def w_from_m(family, n_periods=1, q0=1.0, samples_per_period=1024, branch="+",
             psi0=0.0, w0=1.0, x0=0.0):
    """Parametric wave ``W(psi)`` of the family over ``n_periods`` orbit periods.

    The orbit starts at the family centre at ``psi0``; ``G`` is accumulated
    from ``G' = M'/M`` and ``W`` from the admittance of ``(C, C')``.
    """
    n_periods = int(n_periods)
    if n_periods < 0:
        raise ValueError("n_periods must be nonnegative")
    cm, cp = turning_points(family)
    _check_m_on_orbit(family, cm, cp)
    if n_periods == 0:
        from .complex_band import admittance_values
        from .real_band import ParametricCurve
        cfun = c_function(family, np.array([psi0, psi0 + 1.0]), branch, psi0)
        Y = admittance_values(cfun.c[:1], cfun.cdot[:1])
        return ParametricCurve([psi0], [x0], [w0], Y, w0=w0, x0=x0, psi0=psi0)
    tau = period_tau(family)
    psi = psi0 + np.linspace(0.0, n_periods * tau, n_periods * samples_per_period + 1)
    cfun = c_function(family, psi, branch, psi0)
    profile = family_profile(family, cfun, q0, check=False)
    return parametric_from_c(profile, cfun, w0=w0, x0=x0)


def family_metrics(family, q0=1.0, samples_per_period=2048):
    """Band metrics of an integrable family with a bounded orbit."""
    cm, cp = turning_points(family)
    tau = period_tau(family)
    chi, eta = complex_increment(family)
    curve = w_from_m(family, 1, q0=q0, samples_per_period=samples_per_period)
    spatial = float(curve.X[-1] - curve.X[0])
    T = modulation_period(eta, tau) if eta != 0 else None
    return BandMetrics(spatial_period=spatial, nu=-chi, eta=eta, increment_real=chi,
                       tau=tau, T_modulation=T, mu=complex(chi, eta) / spatial,
                       extra={"turning_points": [cm, cp], "even": family.is_even})
