"""Parameter sweeps of the correlation pipeline and their CSV output.

A sweep varies one of {T, r, C1} over a grid, solving the steady state and
reporting per-pair entanglement (eta minus, Simon criterion) and Gaussian
discord at every point. Figure presets package the published parameter sets;
grid densities and curve lists that the source figures do not pin down are
reconstructed here and exposed for override.
"""

import dataclasses
import math
import os
import tempfile
from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpec, NotBracketed, UnknownPreset, UnstablePoint
from .gaussian import PAIR_LABELS, gaussian_discord, pair_invariants, simon_eta_minus
from .model import (
    ModelParams,
    build_diffusion,
    build_drift,
    is_stable,
    squeeze_moments,
    thermal_occupancy,
)
from .steadystate import LyapunovProblem, reduce_pair, solve_lyapunov

__all__ = [
    "SWEEP_VARIABLES",
    "PRESET_NAMES",
    "PRESET_R_VALUES",
    "PRESET_C1_VALUES",
    "SweepSpec",
    "CorrelationReport",
    "evaluate_point",
    "run_sweep",
    "figure_preset",
    "find_threshold",
    "write_csv",
    "CSV_HEADER",
]

SWEEP_VARIABLES = ("T", "r", "C1")
PRESET_NAMES = ("fig2", "fig3", "fig4", "fig5", "fig6", "fig7")

# Curve lists the source figures show but never print; reconstructed
# defaults, overridable by building SweepSpec values directly.
PRESET_R_VALUES = (0.0, 0.1, 0.3, 0.5, 1.0)
PRESET_C1_VALUES = (25.0, 50.0, 100.0)

_TWO_PI = 2.0 * math.pi
_KAPPA_PRESET = _TWO_PI * 215e3      # rad/s, both cavities
_OMEGA_M_PRESET = _TWO_PI * 947e3    # rad/s
_POINTS_DEFAULT = 400


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: a swept variable, its grid, and the fixed parameters.

    ``base`` supplies every model parameter; the swept field of ``base`` is
    ignored and replaced per grid point. T sweeps additionally need
    ``omega_m`` to convert temperature to thermal occupancy. C1 sweeps tie
    the second cooperativity to the first through ``c2_ratio``.
    """

    variable: str
    lo: float
    hi: float
    points: int
    scale: str                      # "linear" or "log"
    base: ModelParams
    omega_m: float | None = None
    c2_ratio: float = 2.0
    pairs: tuple = PAIR_LABELS
    label: str = ""

    def validate(self):
        if self.variable not in SWEEP_VARIABLES:
            raise InvalidSpec(f"unknown sweep variable {self.variable!r}")
        if not (self.lo < self.hi):
            raise InvalidSpec("sweep range must satisfy lo < hi")
        if self.points < 2:
            raise InvalidSpec("a sweep needs at least 2 points")
        if self.scale not in ("linear", "log"):
            raise InvalidSpec(f"unknown scale {self.scale!r}")
        if self.scale == "log" and self.lo <= 0.0:
            raise InvalidSpec("log-scale sweeps need lo > 0")
        if self.lo < 0.0:
            raise InvalidSpec("swept values must be nonnegative")
        if self.variable == "T" and (self.omega_m is None or self.omega_m <= 0.0):
            raise InvalidSpec("T sweeps need a positive omega_m")
        if self.variable == "C1" and self.c2_ratio < 0.0:
            raise InvalidSpec("c2_ratio must be nonnegative")
        if not self.pairs or any(p not in PAIR_LABELS for p in self.pairs):
            raise InvalidSpec(f"pairs must be a nonempty subset of {PAIR_LABELS}")

    def grid(self) -> np.ndarray:
        self.validate()
        if self.scale == "log":
            return np.geomspace(self.lo, self.hi, self.points)
        return np.linspace(self.lo, self.hi, self.points)

    def model_at(self, x: float) -> ModelParams:
        """ModelParams with the swept variable set to x."""
        if self.variable == "T":
            return dataclasses.replace(
                self.base, n_th=thermal_occupancy(x, self.omega_m)
            )
        if self.variable == "r":
            N, M = squeeze_moments(x)
            return dataclasses.replace(self.base, N=N, M=M)
        return dataclasses.replace(self.base, C1=x, C2=self.c2_ratio * x)


@dataclass(frozen=True)
class CorrelationReport:
    """Entanglement and discord of the selected pairs at one sweep point."""

    variable: str
    value: float
    eta: dict
    discord: dict
    entangled: dict
    stable: bool
    stability_margin: float
    residual: float


def evaluate_point(mp: ModelParams, pairs=PAIR_LABELS,
                   variable: str = "point", value: float = math.nan) -> CorrelationReport:
    """Solve one parameter point and report per-pair correlations.

    Raises UnstablePoint when the drift is unstable (run_sweep converts that
    into a flagged report instead of aborting).
    """
    A = build_drift(mp)
    D = build_diffusion(mp)
    verdict = is_stable(A)
    if not verdict.stable:
        raise UnstablePoint(
            f"unstable drift at {variable}={value!r} "
            f"(max eigenvalue real part {verdict.max_real_part:.3e})"
        )
    V = solve_lyapunov(LyapunovProblem(drift=A, diffusion=D))
    residual = float(
        np.linalg.norm(A @ V + V @ A.T + D) / np.linalg.norm(D)
    )
    eta, discord, entangled = {}, {}, {}
    for pair in pairs:
        inv = pair_invariants(reduce_pair(V, pair))
        e = simon_eta_minus(inv)
        eta[pair] = e
        discord[pair] = gaussian_discord(reduce_pair(V, pair))
        entangled[pair] = e < 0.5
    return CorrelationReport(
        variable=variable, value=value, eta=eta, discord=discord,
        entangled=entangled, stable=True,
        stability_margin=verdict.margin, residual=residual,
    )


def _flagged_report(spec: SweepSpec, x: float) -> CorrelationReport:
    nan = math.nan
    return CorrelationReport(
        variable=spec.variable, value=float(x),
        eta={p: nan for p in spec.pairs},
        discord={p: nan for p in spec.pairs},
        entangled={p: False for p in spec.pairs},
        stable=False, stability_margin=nan, residual=nan,
    )


def run_sweep(spec: SweepSpec) -> list:
    """Evaluate the sweep grid in order; unstable points are flagged, not fatal."""
    spec.validate()
    reports = []
    for x in spec.grid():
        try:
            reports.append(
                evaluate_point(spec.model_at(float(x)), spec.pairs,
                               variable=spec.variable, value=float(x))
            )
        except UnstablePoint:
            reports.append(_flagged_report(spec, float(x)))
    return reports


def _base_params(kappa, gamma, C1, C2, n_th, r) -> ModelParams:
    return ModelParams.from_squeeze(
        kappa1=kappa, kappa2=kappa, gamma=gamma, C1=C1, C2=C2, n_th=n_th, r=r
    )


def figure_preset(name: str) -> list:
    """Sweep specs behind the published figures, one per curve.

    fig2/fig5: temperature sweep (log, 1e-5 to 0.1 K) at C1=35, C2=70,
    gamma = 2pi*1500, one curve per squeeze value in PRESET_R_VALUES.
    fig3/fig6: squeeze sweep (linear, 0 to 4.5) at n_th=1e-3, gamma=2pi*140,
    one curve per C1 in PRESET_C1_VALUES with C2=2*C1.
    fig4/fig7: cooperativity sweep (log, 1 to 1e4, C2=2*C1) at n_th=1e-2,
    gamma=2pi*140, one curve per squeeze value.

    The entanglement figures (2, 3, 4) and discord figures (5, 6, 7) share
    parameters pairwise; every report carries both quantities, so the paired
    presets are identical.
    """
    if name in ("fig2", "fig5"):
        gamma = _TWO_PI * 1500.0
        return [
            SweepSpec(
                variable="T", lo=1e-5, hi=0.1, points=_POINTS_DEFAULT,
                scale="log",
                base=_base_params(_KAPPA_PRESET, gamma, 35.0, 70.0, 0.0, r),
                omega_m=_OMEGA_M_PRESET, label=f"r{r:g}",
            )
            for r in PRESET_R_VALUES
        ]
    if name in ("fig3", "fig6"):
        gamma = _TWO_PI * 140.0
        return [
            SweepSpec(
                variable="r", lo=0.0, hi=4.5, points=_POINTS_DEFAULT,
                scale="linear",
                base=_base_params(_KAPPA_PRESET, gamma, C1, 2.0 * C1, 1e-3, 0.0),
                label=f"C1_{C1:g}",
            )
            for C1 in PRESET_C1_VALUES
        ]
    if name in ("fig4", "fig7"):
        gamma = _TWO_PI * 140.0
        return [
            SweepSpec(
                variable="C1", lo=1.0, hi=1e4, points=_POINTS_DEFAULT,
                scale="log",
                base=_base_params(_KAPPA_PRESET, gamma, 1.0, 2.0, 1e-2, r),
                c2_ratio=2.0, label=f"r{r:g}",
            )
            for r in PRESET_R_VALUES
        ]
    raise UnknownPreset(f"unknown preset {name!r}, expected one of {PRESET_NAMES}")


_QUANTITIES = ("eta-crossing", "eta-min", "discord-max")


def _quantity_value(spec: SweepSpec, pair: str, quantity: str, x: float) -> float:
    report = evaluate_point(spec.model_at(x), (pair,))
    if quantity == "discord-max":
        return report.discord[pair]
    return report.eta[pair]


def find_threshold(spec: SweepSpec, pair: str, quantity: str) -> float:
    """Locate a feature of one pair's curve along the sweep.

    quantity = "eta-crossing": the swept value where eta minus crosses 1/2
    (bisection on the first sign change of the grid).
    quantity = "eta-min" / "discord-max": the interior extremum
    (golden-section refinement around the grid extremum).

    The result is refined to 1e-4 relative in the swept variable; log-scale
    sweeps are refined in log space.

    Raises
    ------
    NotBracketed
        If the grid shows no sign change (crossing) or the extremum sits on
        the boundary of the range.
    """
    spec.validate()
    if pair not in PAIR_LABELS:
        raise ValueError(f"unknown pair {pair!r}")
    if quantity not in _QUANTITIES:
        raise ValueError(f"unknown quantity {quantity!r}, expected one of {_QUANTITIES}")

    xs = spec.grid()
    ys = np.array([_quantity_value(spec, pair, quantity, float(x)) for x in xs])
    log = spec.scale == "log"

    def to_u(x):
        return math.log(x) if log else x

    def from_u(u):
        return math.exp(u) if log else u

    if quantity == "eta-crossing":
        f = ys - 0.5
        idx = None
        for i in range(len(xs) - 1):
            if f[i] == 0.0:
                return float(xs[i])
            if f[i] * f[i + 1] < 0.0:
                idx = i
                break
        if idx is None:
            raise NotBracketed("eta minus never crosses 1/2 inside the sweep range")
        lo_u, hi_u = to_u(float(xs[idx])), to_u(float(xs[idx + 1]))
        f_lo = f[idx]
        while abs(hi_u - lo_u) > 1e-4 * max(abs(lo_u), abs(hi_u), 1e-30):
            mid_u = 0.5 * (lo_u + hi_u)
            f_mid = _quantity_value(spec, pair, quantity, from_u(mid_u)) - 0.5
            if f_mid == 0.0:
                return from_u(mid_u)
            if f_lo * f_mid < 0.0:
                hi_u = mid_u
            else:
                lo_u, f_lo = mid_u, f_mid
        return from_u(0.5 * (lo_u + hi_u))

    sign = 1.0 if quantity == "eta-min" else -1.0   # minimize sign*y
    k = int(np.argmin(sign * ys))
    if k == 0 or k == len(xs) - 1:
        raise NotBracketed(f"{quantity} extremum sits on the sweep boundary")
    lo_u, hi_u = to_u(float(xs[k - 1])), to_u(float(xs[k + 1]))

    def g(u):
        return sign * _quantity_value(spec, pair, quantity, from_u(u))

    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi_u - invphi * (hi_u - lo_u)
    d = lo_u + invphi * (hi_u - lo_u)
    gc, gd = g(c), g(d)
    while abs(hi_u - lo_u) > 1e-4 * max(abs(lo_u), abs(hi_u), 1e-30):
        if gc < gd:
            hi_u, d, gd = d, c, gc
            c = hi_u - invphi * (hi_u - lo_u)
            gc = g(c)
        else:
            lo_u, c, gc = c, d, gd
            d = lo_u + invphi * (hi_u - lo_u)
            gd = g(d)
    return from_u(0.5 * (lo_u + hi_u))


CSV_HEADER = ("swept_var,value,eta_mo1,eta_mo2,eta_o1o2,"
              "disc_mo1,disc_mo2,disc_o1o2,stable,residual")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_csv(reports: list, path: str, meta: dict | None = None):
    """Write sweep reports as CSV, atomically (temp file + rename).

    Numeric fields carry 17 significant digits so re-reading reproduces the
    values bitwise. Comment lines prefixed '#' record the resolved parameter
    set; they contain nothing run-dependent, so identical sweeps produce
    byte-identical files.
    """
    lines = []
    for key in sorted((meta or {})):
        lines.append(f"# {key} = {meta[key]}")
    lines.append(CSV_HEADER)
    for rep in reports:
        cells = [rep.variable, _fmt(rep.value)]
        for field in (rep.eta, rep.discord):
            for pair in PAIR_LABELS:
                cells.append(_fmt(field.get(pair, math.nan)))
        cells.append(str(int(rep.stable)))
        cells.append(_fmt(rep.residual))
        lines.append(",".join(cells))
    payload = "\n".join(lines) + "\n"

    out_dir = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=out_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def spec_meta(spec: SweepSpec, version: str = "") -> dict:
    """Provenance dictionary for write_csv: the fully resolved sweep."""
    meta = {
        "variable": spec.variable,
        "lo": _fmt(spec.lo),
        "hi": _fmt(spec.hi),
        "points": spec.points,
        "scale": spec.scale,
        "pairs": "+".join(spec.pairs),
        "kappa1": _fmt(spec.base.kappa1),
        "kappa2": _fmt(spec.base.kappa2),
        "gamma": _fmt(spec.base.gamma),
        "C1": _fmt(spec.base.C1),
        "C2": _fmt(spec.base.C2),
        "n_th": _fmt(spec.base.n_th),
        "N": _fmt(spec.base.N),
        "M": _fmt(spec.base.M),
    }
    if spec.label:
        meta["label"] = spec.label
    if spec.variable == "T":
        meta["omega_m"] = _fmt(spec.omega_m)
    if spec.variable == "C1":
        meta["c2_ratio"] = _fmt(spec.c2_ratio)
    if version:
        meta["version"] = version
    return meta
