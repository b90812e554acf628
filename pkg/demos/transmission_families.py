#!/usr/bin/env python3
"""
Travelling waves from integrable potentials M(C)

Goal
----
In a transmission band the wave is complex and the auxiliary function C(psi)
obeys a nonlinear second-order equation that depends on the medium.  Choosing
the medium as ``G' = M'(C)/M(C)`` turns that equation into a mechanical
problem with energy integral ``C'^2 = 1 - 4 C^2 + M(C)``; C oscillates
between two turning points with period tau, and the complex increment of
``ln W`` over one oscillation is ``chi + i eta``.

Contract
--------
  - Constant potentials describe a uniform medium: tau = pi and |eta| = pi.
  - Even potentials (Quartic, QuadraticMinus with e = 0) give chi = 0, so the
    wave neither grows nor decays: a true transmission-band Bloch wave.
  - A Linear potential with e != 0 is not even and gives chi != 0.
  - For the Quartic family the medium rebuilt on an x grid has a monodromy
    trace equal to 2 cos(eta), with |trace| <= 2.

Run:  python demos/transmission_families.py
"""

import math
import sys
import warnings

import numpy as np

from wavepar import (Constant, Linear, QuadraticMinus, Quartic, c_function,
                     complex_increment, family_metrics, family_profile, monodromy,
                     parametric_from_c, period_tau, reconstruct_q_of_x, turning_points)


def increments():
    print(f"{'family':<34}{'C-':>10}{'C+':>10}{'tau':>12}{'chi':>12}{'eta':>12}")
    for family in (Constant(3.0), Constant(-0.5), QuadraticMinus(1.0, 0.0, 1.5),
                   Quartic(0.4, 1.0), Linear(3.0, 0.2)):
        cm, cp = turning_points(family)
        chi, eta = complex_increment(family)
        print(f"{str(family):<34}{cm:>10.5f}{cp:>10.5f}{period_tau(family):>12.8f}"
              f"{chi:>12.3e}{eta:>12.8f}")


def quartic_check():
    family = Quartic(0.4, 1.0)
    psi = np.linspace(0.0, period_tau(family), 2049)
    cfun = c_function(family, psi)
    profile = family_profile(family, cfun)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        curve = parametric_from_c(profile, cfun)
    result = monodromy(reconstruct_q_of_x(profile, curve))
    metrics = family_metrics(family)
    gap = abs(result.trace - 2 * math.cos(metrics.eta))
    print()
    print(f"Quartic(0.4, 1): eta={metrics.eta:.12f}  trace={result.trace:.12f}  "
          f"2cos(eta)={2 * math.cos(metrics.eta):.12f}  gap={gap:.1e}")
    print(f"spatial period={metrics.spatial_period:.10f}  modulation period "
          f"T={metrics.T_modulation:.10f}")
    return gap <= 1e-5 and abs(result.trace) <= 2


def main():
    increments()
    ok = quartic_check()
    print("VERDICT:", "PASS" if ok else "FAIL")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
