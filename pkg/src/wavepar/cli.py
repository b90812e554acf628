"""Command-line front end: ``wavepar <command> --config FILE``.

Every command reads a JSON config, writes machine-readable CSV/JSON into
``--out`` and prints a short human summary.  Exit codes:

====  ==========================================
0     success
2     configuration error (unreadable/invalid)
3     numerical failure
4     domain error (e.g. no bounded orbit)
5     verification failure (report still written)
====  ==========================================
"""

import argparse
import json
import math
import os
import sys
import warnings
from pathlib import Path

import numpy as np

from . import complex_band as cb
from . import families as fam
from .design import DesignSpec, optimize_profile, write_history_csv
from .errors import DomainError, InvalidFamily, NotEven, NumericalError, WaveparError
from .io import write_csv, write_json
from .oracle import classify_band, monodromy, wave_residual
from .profile import PhaseProfile, RefractiveProfile, reconstruct_q_of_x
from .real_band import real_parametric_curve, stopband_metrics

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_DOMAIN = 4
EXIT_VERIFY = 5

DEFAULT_SAMPLES = 2048
DEFAULT_VERIFY_TOL = {"profile": 1e-6, "family": 1e-5}
DEFAULT_RESIDUAL_TOL = 1e-4


class ConfigError(WaveparError):
    pass


def _require(config, key):
    if key not in config:
        raise ConfigError(f"config has no {key!r} block")
    return config[key]


def _normalization(config):
    norm = config.get("normalization", {})
    return float(norm.get("w0", 1.0)), float(norm.get("x0", 0.0)), float(norm.get("psi0", 0.0))


def _samples(config):
    n = int(config.get("grid", {}).get("samples_per_period", DEFAULT_SAMPLES))
    if n < 4:
        raise ConfigError("grid.samples_per_period must be >= 4")
    return n


def _build(factory, block, what):
    """Construct a config object; bad parameters are configuration errors."""
    try:
        return factory(block)
    except (ValueError, TypeError, KeyError) as exc:
        raise ConfigError(f"invalid {what} block: {exc}") from None


def _positive(value, name):
    value = float(value)
    if not value > 0:
        raise ConfigError(f"{name} must be positive")
    return value


# ---------------------------------------------------------------------------
# Pipelines shared by the commands
# ---------------------------------------------------------------------------

def _stopband_pipeline(profile, config):
    w0, x0, psi0 = _normalization(config)
    n = _samples(config)
    metrics = stopband_metrics(profile, tol=config.get("quad_tol", 1e-13))
    psi = psi0 + np.linspace(0.0, math.pi, n + 1)
    curve = real_parametric_curve(profile, psi, w0=w0, x0=x0)
    medium = reconstruct_q_of_x(profile, curve)
    return metrics, curve, medium


def _family_pipeline(family, config):
    w0, x0, psi0 = _normalization(config)
    n = _samples(config)
    q0 = float(config.get("q0", 1.0))
    branch = config.get("branch", "+")
    tau = fam.period_tau(family)
    chi, eta = fam.complex_increment(family)
    cm, cp = fam.turning_points(family)
    psi = psi0 + np.linspace(0.0, tau, n + 1)
    cfun = fam.c_function(family, psi, branch, psi0)
    profile = fam.family_profile(family, cfun, q0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        curve = cb.parametric_from_c(profile, cfun, w0=w0, x0=x0)
    summary = {
        "variant": family.variant,
        "family": family.to_dict(),
        "tau": tau,
        "chi_inc": chi,
        "eta": eta,
        "T_modulation": fam.modulation_period(eta, tau) if eta != 0 else None,
        "turning_points": [cm, cp],
        "even": family.is_even,
        "spatial_period": float(curve.X[-1] - curve.X[0]),
        "monotone": curve.monotone,
    }
    return summary, cfun, profile, curve


def _cfunction_from_config(block, psi):
    kind = block.get("kind")
    if kind == "constant":
        return cb.constant_cfunction(psi, float(block["value"]))
    if kind == "sin_manifold":
        return cb.sin_manifold_cfunction(psi, block.get("branch", "+"),
                                         float(block.get("psi0", psi[0])))
    if kind == "harmonic":
        return cb.harmonic_cfunction(psi, float(block["alpha"]), float(block["beta"]),
                                     block.get("form", "sin"))
    if kind == "family":
        family = _build(fam.family_from_dict, block["family"], "family")
        return fam.c_function(family, psi, block.get("branch", "+"))
    if kind == "ode":
        profile = _build(PhaseProfile.from_dict, block["profile"], "profile")
        return cb.c_ode_solve(profile, float(block["c_init"]), float(block["cdot_init"]),
                              (psi[0], psi[-1]), n_samples=psi.size)
    raise ConfigError(f"unknown cfunction kind {kind!r}")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_stopband(config, out, threads=1, tol=None):
    profile = _build(PhaseProfile.from_dict, _require(config, "profile"), "profile")
    if tol is not None:
        config = {**config, "quad_tol": tol}
    metrics, curve, medium = _stopband_pipeline(profile, config)
    report = {"spatial_period": metrics.spatial_period, "nu": metrics.nu,
              "mu": metrics.mu, "eta": metrics.eta, "tau": metrics.tau,
              "increment_real": metrics.increment_real, "profile": profile.to_dict()}
    write_json(out / "metrics.json", report)
    curve.to_csv(out / "curve.csv")
    medium.to_csv(out / "medium.csv")
    print(f"stop band: spatial_period={metrics.spatial_period:.12g} "
          f"nu={metrics.nu:.12g} mu={metrics.mu:.12g}")
    return EXIT_OK


def cmd_family(config, out, threads=1, tol=None):
    family = _build(fam.family_from_dict, _require(config, "family"), "family")
    summary, cfun, profile, curve = _family_pipeline(family, config)
    write_json(out / "metrics.json", summary)
    write_csv(out / "c_curve.csv", ["psi", "c", "cdot"], [cfun.psi, cfun.c, cfun.cdot])
    curve.to_csv(out / "w_curve.csv")
    print(f"{family.variant}: tau={summary['tau']:.12g} chi_inc={summary['chi_inc']:.3g} "
          f"eta={summary['eta']:.12g} turning points={summary['turning_points']}")
    return EXIT_OK


def cmd_transmission(config, out, threads=1, tol=None):
    block = _require(config, "cfunction")
    w0, x0, _ = _normalization(config)
    span = block.get("psi_span", [0.0, math.pi])
    n = int(block.get("samples", DEFAULT_SAMPLES + 1))
    psi = np.linspace(float(span[0]), float(span[1]), n)
    cfun = _cfunction_from_config(block, psi)
    q0 = float(config.get("q0", 1.0))
    floor = float(config.get("denom_floor", cb.DENOM_FLOOR))
    profile_block = block.get("profile") if block.get("kind") == "ode" else config.get("profile")
    if profile_block is not None:
        profile = _build(PhaseProfile.from_dict, profile_block, "profile")
    elif "manifold" in cfun.meta:
        raise ConfigError("the sin manifold fixes no G: supply a 'profile' block")
    else:
        profile = cb.profile_from_c(cfun, q0, denom_floor=floor)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        curve = cb.parametric_from_c(profile, cfun, w0=w0, x0=x0)
    G = np.asarray(profile.G(psi))
    cb.write_complex_curve_csv(out / "curve.csv", cfun, curve, G)
    summary = {"kind": block.get("kind"), "monotone": curve.monotone,
               "x_span": float(curve.X[-1] - curve.X[0]),
               "ln_w_increment": (complex(np.log(curve.W[-1] / curve.W[0]))
                                  if curve.W[0] != 0 and curve.W[-1] != 0 else None)}
    if curve.monotone:
        reconstruct_q_of_x(profile, curve).to_csv(out / "medium.csv")
    write_json(out / "summary.json", summary)
    print(f"transmission ({block.get('kind')}): x span={summary['x_span']:.12g} "
          f"monotone={curve.monotone}")
    return EXIT_OK


def _perturbed(medium, block):
    amp = float(block.get("amplitude", 0.05))
    harmonic = int(block.get("harmonic", 1))
    x = medium.x_grid
    L = medium.spatial_period
    q = medium.q_values * (1.0 + amp * np.sin(2.0 * math.pi * harmonic * (x - x[0]) / L))
    return RefractiveProfile(x, q, spatial_period=L, scale=medium.scale)


def cmd_verify(config, out, threads=1, tol=None):
    which = "profile" if "profile" in config else "family" if "family" in config else None
    if which is None:
        raise ConfigError("verify needs a 'profile' or 'family' block")
    verify_tol = float(tol if tol is not None
                       else config.get("tolerances", {}).get("verify", DEFAULT_VERIFY_TOL[which]))
    residual_tol = float(config.get("tolerances", {}).get("residual", DEFAULT_RESIDUAL_TOL))
    ode_tol = float(config.get("tolerances", {}).get("ode", 1e-11))
    rows = []

    if which == "profile":
        profile = _build(PhaseProfile.from_dict, config["profile"], "profile")
        metrics, curve, medium = _stopband_pipeline(profile, config)
        predicted = {"nu": metrics.nu, "spatial_period": metrics.spatial_period}
        residual = float(np.max(wave_residual(curve.X, curve.W, profile.Q(curve.psi))))
    else:
        family = _build(fam.family_from_dict, config["family"], "family")
        if not family.is_even:
            raise NotEven("verify needs a periodic medium: the potential must be even")
        summary, cfun, profile, curve = _family_pipeline(family, config)
        medium = reconstruct_q_of_x(profile, curve)
        predicted = {"eta": summary["eta"], "spatial_period": summary["spatial_period"]}
        residual = float(np.max(wave_residual(curve.X, curve.W, profile.Q(curve.psi))))

    if "medium_csv" in config:
        medium = RefractiveProfile.from_csv(config["medium_csv"],
                                            spatial_period=medium.spatial_period)
    if "perturb_q" in config:
        medium = _perturbed(medium, config["perturb_q"])

    mono = monodromy(medium, tol=ode_tol, threads=threads)
    band = classify_band(mono).value

    if which == "profile":
        nu = predicted["nu"]
        measured = mono.log_max_multiplier
        err = abs(measured - nu) / abs(nu) if nu != 0 else abs(measured)
        rows.append(("nu vs ln|lambda_max|", nu, measured, err, verify_tol))
        if nu != 0:
            rows.append(("|trace| > 2", 2.0, abs(mono.trace), 0.0 if abs(mono.trace) > 2 else 1.0,
                         verify_tol))
    else:
        eta = predicted["eta"]
        theta = mono.phase
        # compare |eta| with arccos(trace/2) modulo 2 pi, both orientations
        diffs = [abs(abs(eta) - s * theta - 2.0 * math.pi * k)
                 for s in (1, -1) for k in range(-3, 4)]
        rows.append(("eta vs arccos(trace/2)", abs(eta), theta, min(diffs), math.sqrt(verify_tol)))
        rows.append(("trace vs 2 cos(eta)", 2.0 * math.cos(eta), mono.trace,
                     abs(mono.trace - 2.0 * math.cos(eta)), verify_tol))
    rows.append(("det(monodromy) - 1", 1.0, mono.det, abs(mono.det - 1.0), verify_tol))
    rows.append(("wave residual max", 0.0, residual, residual, residual_tol))

    passed = all(err <= limit for _, _, _, err, limit in rows)
    report = {
        "source": which,
        "passed": passed,
        "band": band,
        "monodromy": mono.to_dict(),
        "predicted": predicted,
        "checks": [{"name": name, "predicted": p, "measured": m, "error": e, "tolerance": t,
                    "pass": e <= t} for name, p, m, e, t in rows],
    }
    write_json(out / "verify.json", report)
    print(f"{'check':<26}{'predicted':>22}{'measured':>22}{'error':>12}  status")
    for name, p, m, e, t in rows:
        print(f"{name:<26}{p:>22.15g}{m:>22.15g}{e:>12.3e}  {'PASS' if e <= t else 'FAIL'}")
    print("PASS" if passed else "FAIL")
    return EXIT_OK if passed else EXIT_VERIFY


def cmd_design(config, out, threads=1, tol=None):
    block = dict(_require(config, "design"))
    if "seed" in config and "seed" not in block:
        block["seed"] = config["seed"]
    spec = _build(DesignSpec.from_dict, block, "design")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        best, metrics, history = optimize_profile(spec)
    write_json(out / "best_profile.json", {"profile": best.to_dict(),
                                           "objective": spec.objective.value,
                                           "value": metrics.extra["objective"],
                                           "nu": metrics.nu,
                                           "spatial_period": metrics.spatial_period,
                                           "mu": metrics.mu,
                                           "evaluations": metrics.extra["evaluations"],
                                           "budget_exhausted": metrics.extra["budget_exhausted"]})
    write_history_csv(out / "history.csv", spec, history)
    print(f"design ({spec.objective.value}): best={metrics.extra['objective']:.12g} "
          f"coefficients={metrics.extra['coefficients']} evals={metrics.extra['evaluations']}")
    return EXIT_OK


COMMANDS = {
    "stopband": cmd_stopband,
    "transmission": cmd_transmission,
    "family": cmd_family,
    "verify": cmd_verify,
    "design": cmd_design,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="wavepar",
        description="Parametric waves in periodic media: band metrics, integrable "
                    "families, direct verification and stop-band design.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", required=True, help="JSON config file")
    parser.add_argument("--out", default=".", help="output directory (created if missing)")
    parser.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="worker threads for the monodromy columns")
    parser.add_argument("--tol", type=float, default=None,
                        help="comparison tolerance for verify; quadrature tolerance "
                             "for stopband")
    return parser


def _load_config(path):
    with open(path) as fh:
        config = json.load(fh)
    if not isinstance(config, dict):
        raise ConfigError("config must be a JSON object")
    return config


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = _load_config(args.config)
        if args.tol is not None:
            _positive(args.tol, "--tol")
        if args.threads < 1:
            raise ConfigError("--threads must be >= 1")
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
    except (OSError, ValueError, ConfigError) as exc:
        print(f"wavepar: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return COMMANDS[args.command](config, out, threads=args.threads, tol=args.tol)
    except (ConfigError, InvalidFamily, KeyError, TypeError) as exc:
        print(f"wavepar: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"wavepar: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (NumericalError, ArithmeticError, ValueError) as exc:
        print(f"wavepar: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
