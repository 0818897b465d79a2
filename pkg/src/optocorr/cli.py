"""Command-line front end.

Four modes: ``point`` prints the correlations of a single parameter point,
``sweep`` writes one CSV for a configured sweep, ``preset`` writes the CSV
family behind one of the published figures, and ``physical-convert`` prints
the reduced model parameters derived from lab-frame inputs.

Every error class maps to its own exit code (EXIT_CODES); diagnostics go to
stderr, results to stdout or the requested files.
"""

import argparse
import math
import os
import sys

from . import __version__
from .config import parse_config
from .errors import (
    DegenerateMeasuredMode,
    DomainError,
    InvalidSpec,
    NonPhysicalInput,
    NotBracketed,
    OptocorrError,
    ParseError,
    SingularSystem,
    ToleranceNotMet,
    UnitError,
    UnknownKey,
    UnknownPreset,
    UnstableDrift,
    UnstablePoint,
)
from .gaussian import PAIR_LABELS, _discord_detail, _eta_detail, pair_invariants
from .model import C_LIGHT, build_diffusion, build_drift, model_params_from_physical
from .steadystate import LyapunovProblem, reduce_pair, solve_lyapunov
from .sweeps import evaluate_point, figure_preset, run_sweep, spec_meta, write_csv

__all__ = ["main", "EXIT_CODES"]

EXIT_CODES = {
    ParseError: 2,
    UnitError: 3,
    UnknownKey: 4,
    InvalidSpec: 5,
    UnknownPreset: 6,
    NonPhysicalInput: 7,
    DomainError: 8,
    DegenerateMeasuredMode: 9,
    UnstableDrift: 10,
    SingularSystem: 11,
    ToleranceNotMet: 12,
    NotBracketed: 13,
    UnstablePoint: 14,
}


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="optocorr",
        description="Steady-state entanglement and Gaussian discord of a "
                    "two-cavity optomechanical system fed with squeezed light.",
    )
    p.add_argument("--mode", choices=("point", "sweep", "preset", "physical-convert"))
    p.add_argument("--config", help="TOML configuration file")
    p.add_argument("--out", help="output CSV path (sweep) or directory (preset)")
    p.add_argument("--preset", help="one of fig2..fig7")
    p.add_argument("--verbose", action="store_true")
    # rates accept '2pi*<hz>' shorthand or plain rad/s
    for flag in ("--kappa1", "--kappa2", "--gamma", "--omega-m"):
        p.add_argument(flag)
    for flag in ("--C1", "--C2", "--r", "--nth", "--T",
                 "--lo", "--hi", "--c2-ratio"):
        p.add_argument(flag, type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--scale", choices=("linear", "log"))
    p.add_argument("--variable", choices=("T", "r", "C1"))
    p.add_argument("--pairs", help="subset like 'mo1+o1o2' (default: all)")
    p.add_argument("--label")
    return p


_FLAG_TO_KEY = {
    "mode": "mode", "out": "out", "preset": "preset", "verbose": "verbose",
    "kappa1": "kappa1", "kappa2": "kappa2", "gamma": "gamma",
    "omega_m": "omega_m", "C1": "C1", "C2": "C2", "r": "r", "nth": "nth",
    "T": "T", "lo": "lo", "hi": "hi", "c2_ratio": "c2_ratio",
    "points": "points", "scale": "scale", "variable": "variable",
    "pairs": "pairs", "label": "label",
}


def _overrides(ns: argparse.Namespace) -> dict:
    out = {}
    for attr, key in _FLAG_TO_KEY.items():
        value = getattr(ns, attr, None)
        if value is None:
            continue
        if attr == "verbose" and value is False:
            continue
        out[key] = value
    return out


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _run_point(cfg) -> int:
    rep = evaluate_point(cfg.model)
    for pair in PAIR_LABELS:
        print(f"pair={pair} eta={_fmt(rep.eta[pair])} "
              f"entangled={int(rep.entangled[pair])} "
              f"discord={_fmt(rep.discord[pair])}")
    print(f"stable={int(rep.stable)} margin={_fmt(rep.stability_margin)} "
          f"residual={_fmt(rep.residual)}")
    if cfg.verbose:
        # Re-solve once to report which numerical guards fired per pair.
        prob = LyapunovProblem(build_drift(cfg.model), build_diffusion(cfg.model))
        cov = solve_lyapunov(prob)
        for pair in PAIR_LABELS:
            pcm = reduce_pair(cov, pair)
            eta = _eta_detail(pair_invariants(pcm))
            disc = _discord_detail(pcm)
            print(f"detail pair={pair} eta_snap={int(eta.disc_snapped)} "
                  f"branch={disc.branch} rad_snap={int(disc.radicand_snapped)} "
                  f"clamped={int(disc.clamped)}", file=sys.stderr)
    return 0


def _run_sweep(cfg) -> int:
    reports = run_sweep(cfg.spec)
    write_csv(reports, cfg.out, spec_meta(cfg.spec, version=__version__))
    if cfg.verbose:
        print(f"wrote {len(reports)} points to {cfg.out}", file=sys.stderr)
    return 0


def _run_preset(cfg) -> int:
    specs = figure_preset(cfg.preset)
    os.makedirs(cfg.out, exist_ok=True)
    for spec in specs:
        path = os.path.join(cfg.out, f"{cfg.preset}_{spec.label}.csv")
        write_csv(run_sweep(spec), path, spec_meta(spec, version=__version__))
        if cfg.verbose:
            print(f"wrote {path}", file=sys.stderr)
    return 0


def _run_physical(cfg) -> int:
    rep = model_params_from_physical(cfg.physical)
    mp = rep.model
    print(f"C1 = {_fmt(mp.C1)}")
    print(f"C2 = {_fmt(mp.C2)}")
    print(f"n_th = {_fmt(mp.n_th)}")
    print(f"N = {_fmt(mp.N)}")
    print(f"M = {_fmt(mp.M)}")
    for j, (coop, st) in enumerate(((rep.coop1, rep.steady1),
                                    (rep.coop2, rep.steady2)), start=1):
        print(f"g{j} = {_fmt(coop.g)}  # single-photon coupling, rad/s")
        print(f"n_cav{j} = {_fmt(coop.n_cav)}")
        print(f"a_s{j} = {st.a_s!r}")
        print(f"phi{j} = {_fmt(st.phi)}")
        print(f"detuning_bare{j} = {_fmt((rep.detuning_bare1, rep.detuning_bare2)[j - 1])}")
    print(f"b_s = {rep.steady1.b_s!r}")
    # the cooperativity scales with omega_c^2; warn when omega_c is far from
    # the drive frequency, the usual sign that it was quoted in cycles/s
    for j, omega_c in ((1, cfg.physical.omega_c1), (2, cfg.physical.omega_c2)):
        omega_l = 2.0 * math.pi * C_LIGHT / cfg.physical.wavelength(j)
        ratio = omega_c / omega_l
        if abs(ratio - 1.0) > 0.5:
            print(f"note: omega_c{j} is {ratio:.3g}x the drive frequency "
                  f"2*pi*c/wavelength{j}; C{j} scales with omega_c^2, so check "
                  "the angular-frequency convention of the input",
                  file=sys.stderr)
    return 0


def main(argv=None) -> int:
    ns = _build_parser().parse_args(argv)
    try:
        text = None
        if ns.config:
            try:
                with open(ns.config, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise ParseError(f"cannot read config file: {exc}") from exc
        cfg = parse_config(text, _overrides(ns))
        runner = {
            "point": _run_point,
            "sweep": _run_sweep,
            "preset": _run_preset,
            "physical-convert": _run_physical,
        }[cfg.mode]
        return runner(cfg)
    except OptocorrError as exc:
        code = EXIT_CODES.get(type(exc), 1)
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return code
    except Exception as exc:  # anything unexpected: code 1, still one line
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
