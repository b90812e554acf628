"""Parametric phase-space representation of waves in 1D periodic media.

The medium is described by its wavenumber as a function of a phase
parameter, ``Q(psi) = q0 exp(G(psi))``.  For standing waves in stop bands the
real phase gives the solution and the attenuation per period by quadrature;
for travelling waves in transmission bands an auxiliary function ``C(psi)``
plays the same role, and choosing ``G' = M'(C)/M(C)`` yields integrable
families with closed-form orbits.  Every construction can be checked against
direct integration of ``w'' + q(x)^2 w = 0`` through the monodromy matrix.
"""

from .complex_band import (Branch, CFunction, ComplexAdmittanceState, admittance_from_c,
                           c_ode_solve, c_residual, constant_cfunction, g_from_c,
                           harmonic_cfunction, parametric_from_c, profile_from_c,
                           quasi_phase, quasi_phase_log, sin_manifold_cfunction)
from .design import DesignSpec, Objective, optimize_profile
from .errors import (AdmittancePole, BranchFailure, DenominatorVanishes, DomainError,
                     EvalBudgetExhausted, InvalidFamily, ModulusOne, MVanishes,
                     NoBoundedOrbit, NonMonotoneWarning, NonMonotoneX, NotEven, NotPeriodic,
                     NotSimpleRoot, NumericalError, StepFailure, ToleranceNotMet, WaveparError, ZeroEta)
from .families import (Constant, Linear, PotentialFamily, Quartic, QuadraticMinus,
                       QuadraticPlus, Tabulated, c_function, closed_form_c,
                       complex_increment, eta_even, family_from_dict, family_metrics,
                       family_profile, g_of_psi_family, m_eval, modulation_period,
                       period_tau, psi_of_c, turning_points, w_from_m)
from .numerics import (elliptic_K, gauss_legendre_cumulative, jacobi_sn, jacobi_sncndn,
                       ode_solve, quad_adaptive, quad_turning)
from .oracle import Band, MonodromyResult, classify_band, integrate_wave, monodromy
from .profile import (LinearPhaseProfile, PhaseProfile, RefractiveProfile,
                      SampledPhaseProfile, eval_G, eval_Q, reconstruct_q_of_x)
from .real_band import (BandMetrics, ParametricCurve, phase_from_x, real_parametric_curve,
                        stopband_metrics)

__version__ = "0.1.0"

__all__ = [
    "admittance_from_c", "AdmittancePole", "Band", "BandMetrics", "Branch",
    "BranchFailure", "c_function", "c_ode_solve", "c_residual", "CFunction",
    "classify_band", "closed_form_c", "complex_increment", "ComplexAdmittanceState",
    "Constant", "constant_cfunction", "DenominatorVanishes", "DesignSpec", "DomainError",
    "elliptic_K", "eta_even", "eval_G", "eval_Q", "EvalBudgetExhausted",
    "family_from_dict", "family_metrics", "family_profile", "g_from_c", "g_of_psi_family",
    "gauss_legendre_cumulative", "harmonic_cfunction", "integrate_wave", "InvalidFamily",
    "jacobi_sn", "jacobi_sncndn", "Linear", "LinearPhaseProfile", "m_eval",
    "modulation_period", "ModulusOne", "monodromy", "MonodromyResult", "MVanishes",
    "NoBoundedOrbit", "NonMonotoneWarning", "NonMonotoneX", "NotEven", "NotPeriodic",
    "NotSimpleRoot", "NumericalError", "Objective", "ode_solve", "optimize_profile",
    "parametric_from_c", "ParametricCurve", "period_tau", "phase_from_x", "PhaseProfile",
    "PotentialFamily", "profile_from_c", "psi_of_c", "quad_adaptive", "quad_turning",
    "QuadraticMinus", "QuadraticPlus", "Quartic", "quasi_phase", "quasi_phase_log",
    "real_parametric_curve", "reconstruct_q_of_x", "RefractiveProfile",
    "SampledPhaseProfile", "sin_manifold_cfunction", "StepFailure", "stopband_metrics",
    "Tabulated", "ToleranceNotMet", "turning_points", "w_from_m", "WaveparError",
    "ZeroEta",
]
