"""Search Fourier modulations for the strongest stop-band attenuation.

The objective is either the attenuation per period ``nu`` or the
characteristic exponent ``mu = nu / spatial_period``.  Both come from
quadratures over one phase period, so the search is derivative-free: a
bounded Nelder-Mead simplex, restarted from the incumbent until it stops
improving or the evaluation budget runs out.
"""

import json
import math
import warnings
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.optimize import minimize

from .errors import EvalBudgetExhausted
from .io import write_csv
from .profile import PhaseProfile
from .real_band import stopband_metrics

MEMO_DIGITS = 12
_MONOTONE_SAMPLES = 4096


class Objective(str, Enum):
    MAXIMIZE_NU = "MaximizeNu"
    MAXIMIZE_MU = "MaximizeMu"


def coefficient_names(m_max):
    """Names of the free coefficients, in optimizer order: ``a0, a2.., b2..``."""
    return ["a0"] + [f"a{2 * m}" for m in range(1, m_max + 1)] + \
        [f"b{2 * m}" for m in range(1, m_max + 1)]


@dataclass(frozen=True)
class DesignSpec:
    """Search space and budget.

    ``bounds`` maps coefficient names (``a0``, ``a2``, ``b2``, ``a4`` ...) to
    ``(lo, hi)``; coefficients not listed are held at zero.
    """

    m_max: int
    bounds: dict
    objective: Objective = Objective.MAXIMIZE_NU
    max_evals: int = 400
    seed: int = 0
    q0: float = 1.0
    restarts: int = 4
    xatol: float = 1e-11
    fatol: float = 1e-14

    def __post_init__(self):
        if int(self.m_max) < 1:
            raise ValueError("m_max must be >= 1")
        if int(self.max_evals) < 1:
            raise ValueError("max_evals must be >= 1")
        object.__setattr__(self, "objective", Objective(self.objective))
        names = set(coefficient_names(self.m_max))
        clean = {}
        for key, pair in dict(self.bounds).items():
            if key not in names:
                raise ValueError(f"unknown coefficient {key!r} for m_max={self.m_max}")
            lo, hi = (float(v) for v in pair)
            if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
                raise ValueError(f"bounds for {key} must be finite with lo <= hi")
            clean[key] = (lo, hi)
        object.__setattr__(self, "bounds", clean)

    def full_bounds(self):
        return [self.bounds.get(n, (0.0, 0.0)) for n in coefficient_names(self.m_max)]

    def to_dict(self):
        return {"m_max": self.m_max, "bounds": {k: list(v) for k, v in self.bounds.items()},
                "objective": self.objective.value, "max_evals": self.max_evals,
                "seed": self.seed, "q0": self.q0, "restarts": self.restarts}

    @classmethod
    def from_dict(cls, data):
        return cls(**data)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def profile_from_coefficients(spec, coeffs):
    m = spec.m_max
    coeffs = [float(c) for c in coeffs]
    return PhaseProfile(q0=spec.q0, a0=coeffs[0], a=coeffs[1:m + 1], b=coeffs[m + 1:],
                        m_max=m)


def x_is_monotone(profile, samples=_MONOTONE_SAMPLES):
    """True when ``dX/dpsi`` is positive, i.e. ``1 - Gdot sin(2 psi)/2 > 0``."""
    psi = np.linspace(0.0, math.pi, samples, endpoint=False)
    return bool(np.all(1.0 - 0.5 * profile.Gdot(psi) * np.sin(2.0 * psi) > 0.0))


def objective_value(spec, profile):
    """Objective for one profile; ``-inf`` when ``X(psi)`` is not invertible."""
    if not x_is_monotone(profile):
        return -math.inf, None
    metrics = stopband_metrics(profile)
    if spec.objective is Objective.MAXIMIZE_NU:
        return metrics.nu, metrics
    return metrics.nu / metrics.spatial_period, metrics


class _BudgetStop(Exception):
    pass


@dataclass
class _Evaluator:
    spec: DesignSpec
    free: np.ndarray
    base: np.ndarray
    memo: dict = field(default_factory=dict)
    history: list = field(default_factory=list)
    best: tuple = None

    def full(self, z):
        x = self.base.copy()
        x[self.free] = z
        return x

    def __call__(self, z):
        x = self.full(np.asarray(z, dtype=float))
        key = tuple(np.round(x, MEMO_DIGITS))
        if key in self.memo:
            return -self.memo[key]
        if len(self.memo) >= self.spec.max_evals:
            raise _BudgetStop
        value, metrics = objective_value(self.spec, profile_from_coefficients(self.spec, x))
        self.memo[key] = value
        if self.best is None or value > self.best[0]:
            self.best = (value, x.copy(), metrics)
        self.history.append((self.best[1].copy(), self.best[0]))
        return -value if math.isfinite(value) else math.inf


def _simplex(z0, lo, hi, rng):
    n = z0.size
    pts = [z0.copy()]
    for i in range(n):
        step = 0.1 * (hi[i] - lo[i])
        direction = 1.0 if rng.random() < 0.5 else -1.0
        p = z0.copy()
        p[i] = z0[i] + direction * step
        if not lo[i] <= p[i] <= hi[i]:
            p[i] = z0[i] - direction * step
        pts.append(p)
    return np.array(pts)


def _snap_to_bounds(ev, z, lo, hi):
    """Try moving near-bound coordinates exactly onto the bound."""
    z = z.copy()
    for i in range(z.size):
        for edge in (lo[i], hi[i]):
            if z[i] != edge and abs(z[i] - edge) <= 1e-6 * max(1.0, hi[i] - lo[i]):
                trial = z.copy()
                trial[i] = edge
                if ev(trial) <= ev(z):
                    z = trial
    return z


def optimize_profile(spec, strict=False):
    """Maximize the stop-band objective over the coefficient box.

    Returns
    -------
    best : PhaseProfile
    metrics : BandMetrics
        ``stopband_metrics`` of ``best``; ``extra`` also carries
        ``objective``, ``evaluations`` and ``budget_exhausted``.
    history : list of (coefficients, objective)
        Best-so-far after every fresh evaluation (nondecreasing objective).

    Raises
    ------
    EvalBudgetExhausted
        Only when ``strict``; otherwise the budget flag is set and a warning
        is issued.
    """
    bounds = np.array(spec.full_bounds())
    lo_all, hi_all = bounds[:, 0], bounds[:, 1]
    free = np.nonzero(hi_all > lo_all)[0]
    base = 0.5 * (lo_all + hi_all)
    ev = _Evaluator(spec, free, base)
    rng = np.random.default_rng(spec.seed)
    exhausted = False
    try:
        if free.size == 0:
            ev(np.empty(0))
        else:
            lo, hi = lo_all[free], hi_all[free]
            z = base[free].copy()
            ev(z)
            for _ in range(max(1, spec.restarts)):
                before = ev.best[0]
                res = minimize(ev, z, method="Nelder-Mead", bounds=list(zip(lo, hi)),
                               options={"initial_simplex": _simplex(z, lo, hi, rng),
                                        "xatol": spec.xatol, "fatol": spec.fatol,
                                        "maxfev": 10 * spec.max_evals})
                z = np.clip(res.x, lo, hi)
                z = _snap_to_bounds(ev, ev.best[1][free], lo, hi)
                if ev.best[0] - before <= spec.fatol:
                    break
    except _BudgetStop:
        exhausted = True

    value, coeffs, metrics = ev.best
    best = profile_from_coefficients(spec, coeffs)
    if metrics is None:
        metrics = stopband_metrics(best)
    extra = dict(metrics.extra)
    extra.update(objective=value, evaluations=len(ev.memo), budget_exhausted=exhausted,
                 coefficients=dict(zip(coefficient_names(spec.m_max), coeffs.tolist())))
    metrics = type(metrics)(**{**metrics.to_dict(), "extra": extra})
    if exhausted:
        if strict:
            raise EvalBudgetExhausted(f"used all {spec.max_evals} evaluations",
                                      (best, metrics, ev.history))
        warnings.warn(f"design search used all {spec.max_evals} evaluations",
                      RuntimeWarning, stacklevel=2)
    return best, metrics, ev.history


def write_history_csv(path, spec, history):
    """History as ``iter,objective,<coefficient names>``."""
    names = coefficient_names(spec.m_max)
    iters = np.arange(len(history))
    obj = np.array([h[1] for h in history], dtype=float)
    coeffs = np.array([h[0] for h in history], dtype=float).reshape(len(history), len(names))
    write_csv(path, ["iter", "objective"] + names,
              [iters, obj] + [coeffs[:, j] for j in range(len(names))])
