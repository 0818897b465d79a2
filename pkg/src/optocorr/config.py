"""Configuration parsing for the CLI: TOML documents plus flag overrides.

All rates are rad/s. Because published values are quoted as 2 pi x Hz, rate
keys additionally accept the string shorthand ``"2pi*215e3"``. Unknown keys
are errors, not warnings; command-line values override file values.
"""

import math
from dataclasses import dataclass

try:
    import tomllib
except ModuleNotFoundError:                      # Python 3.10
    import tomli as tomllib

from .errors import ParseError, UnitError, UnknownKey
from .gaussian import PAIR_LABELS
from .model import ModelParams, PhysicalParams, thermal_occupancy
from .sweeps import SweepSpec

__all__ = ["RunConfig", "parse_config", "parse_rate"]

MODES = ("point", "sweep", "preset", "physical-convert")

_RATE_KEYS = {"kappa1", "kappa2", "gamma", "omega_m", "omega_c1", "omega_c2"}
_POSITIVE_KEYS = {"wavelength1", "wavelength2", "power1", "power2",
                  "length1", "length2", "mass"}
_NONNEG_KEYS = {"C1", "C2", "nth", "T", "r", "lo", "hi", "c2_ratio"}

_COMMON_KEYS = {"mode", "out", "verbose"}
_MODEL_KEYS = {"kappa1", "kappa2", "gamma", "C1", "C2", "r", "nth", "T", "omega_m"}
_ALLOWED = {
    "point": _COMMON_KEYS | _MODEL_KEYS,
    "sweep": _COMMON_KEYS | _MODEL_KEYS
    | {"variable", "lo", "hi", "points", "scale", "pairs", "c2_ratio", "label"},
    "preset": _COMMON_KEYS | {"preset"},
    "physical-convert": _COMMON_KEYS | _POSITIVE_KEYS
    | {"kappa1", "kappa2", "gamma", "omega_m", "omega_c1", "omega_c2", "T", "r"},
}


@dataclass(frozen=True)
class RunConfig:
    """A fully resolved run: exactly one mode's payload is populated."""

    mode: str
    out: str | None
    verbose: bool
    preset: str | None = None
    model: ModelParams | None = None
    spec: SweepSpec | None = None
    physical: PhysicalParams | None = None


def parse_rate(value, key: str = "rate") -> float:
    """Interpret a rate in rad/s; strings may use the '2pi*<hz>' shorthand."""
    if isinstance(value, bool):
        raise UnitError(f"{key}: expected a rate, got a boolean")
    if isinstance(value, (int, float)):
        rate = float(value)
    elif isinstance(value, str):
        text = value.strip().lower().replace(" ", "")
        try:
            if text.startswith("2pi*"):
                rate = 2.0 * math.pi * float(text[4:])
            elif text.startswith("2*pi*"):
                rate = 2.0 * math.pi * float(text[5:])
            else:
                rate = float(text)
        except ValueError:
            raise UnitError(
                f"{key}: cannot read {value!r} as rad/s (use a number or '2pi*<hz>')"
            ) from None
    else:
        raise UnitError(f"{key}: cannot read {value!r} as a rate")
    if not math.isfinite(rate) or rate <= 0.0:
        raise UnitError(f"{key}: rate must be finite and positive, got {rate!r}")
    return rate


def _parse_float(value, key: str, nonneg: bool = False, positive: bool = False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise UnitError(f"{key}: expected a number, got {value!r}")
    try:
        x = float(value)
    except ValueError:
        raise UnitError(f"{key}: cannot read {value!r} as a number") from None
    if not math.isfinite(x):
        raise UnitError(f"{key}: value must be finite")
    if positive and x <= 0.0:
        raise UnitError(f"{key}: value must be positive, got {x!r}")
    if nonneg and x < 0.0:
        raise UnitError(f"{key}: value must be nonnegative, got {x!r}")
    return x


def _coerce(key: str, value):
    if key in _RATE_KEYS:
        return parse_rate(value, key)
    if key in _POSITIVE_KEYS:
        return _parse_float(value, key, positive=True)
    if key in _NONNEG_KEYS:
        return _parse_float(value, key, nonneg=True)
    if key == "points":
        if isinstance(value, bool) or not isinstance(value, int):
            raise UnitError(f"points: expected an integer, got {value!r}")
        return value
    if key == "pairs":
        if isinstance(value, str):
            return tuple(part for part in value.split("+") if part)
        if isinstance(value, (list, tuple)):
            return tuple(value)
        raise UnitError(f"pairs: expected 'mo1+mo2+o1o2' style or a list, got {value!r}")
    if key == "verbose":
        if not isinstance(value, bool):
            raise UnitError(f"verbose: expected a boolean, got {value!r}")
        return value
    return value


def _require(cfg: dict, key: str):
    if key not in cfg:
        raise UnknownKey(f"missing required key {key!r}")
    return cfg[key]


def _thermal_input(cfg: dict) -> float:
    # n_th directly, or (T, omega_m) to derive it; nth wins if both appear
    if "nth" in cfg:
        return cfg["nth"]
    if "T" in cfg:
        if "omega_m" not in cfg:
            raise UnknownKey("key 'T' needs 'omega_m' to derive the occupancy")
        return thermal_occupancy(cfg["T"], cfg["omega_m"])
    raise UnknownKey("missing required key 'nth' (or 'T' with 'omega_m')")


def _model_from(cfg: dict, swept: str | None = None) -> ModelParams:
    # the swept variable's own key becomes optional: its base value is
    # replaced at every grid point anyway
    if swept == "C1":
        C1 = cfg.get("C1", 1.0)
        C2 = cfg.get("C2", 2.0 * C1)
    else:
        C1 = _require(cfg, "C1")
        C2 = _require(cfg, "C2")
    if swept == "r":
        r = cfg.get("r", 0.0)
    else:
        r = _require(cfg, "r")
    if swept == "T":
        n_th = cfg.get("nth", 0.0)
    else:
        n_th = _thermal_input(cfg)
    return ModelParams.from_squeeze(
        kappa1=_require(cfg, "kappa1"),
        kappa2=_require(cfg, "kappa2"),
        gamma=_require(cfg, "gamma"),
        C1=C1, C2=C2, n_th=n_th, r=r,
    )


def _spec_from(cfg: dict) -> SweepSpec:
    variable = _require(cfg, "variable")
    if variable == "T":
        omega_m = _require(cfg, "omega_m")
    else:
        omega_m = cfg.get("omega_m")
    default_scale = "linear" if variable == "r" else "log"
    spec = SweepSpec(
        variable=variable,
        lo=_require(cfg, "lo"),
        hi=_require(cfg, "hi"),
        points=cfg.get("points", 400),
        scale=cfg.get("scale", default_scale),
        base=_model_from(cfg, swept=variable),
        omega_m=omega_m,
        c2_ratio=cfg.get("c2_ratio", 2.0),
        pairs=cfg.get("pairs", PAIR_LABELS),
        label=cfg.get("label", ""),
    )
    spec.validate()
    return spec


def _physical_from(cfg: dict) -> PhysicalParams:
    return PhysicalParams(
        wavelength1=_require(cfg, "wavelength1"),
        wavelength2=_require(cfg, "wavelength2"),
        power1=_require(cfg, "power1"),
        power2=_require(cfg, "power2"),
        length1=_require(cfg, "length1"),
        length2=_require(cfg, "length2"),
        kappa1=_require(cfg, "kappa1"),
        kappa2=_require(cfg, "kappa2"),
        omega_m=_require(cfg, "omega_m"),
        gamma=_require(cfg, "gamma"),
        mass=_require(cfg, "mass"),
        omega_c1=_require(cfg, "omega_c1"),
        omega_c2=_require(cfg, "omega_c2"),
        temperature=_require(cfg, "T"),
        r=_require(cfg, "r"),
    )


def parse_config(text: str | None, overrides: dict | None = None) -> RunConfig:
    """Merge a TOML document with override values and validate everything.

    Parameters
    ----------
    text : str or None
        The configuration document (None or empty when flags alone define
        the run).
    overrides : dict
        Flag values; these replace file values key by key.

    Raises
    ------
    ParseError, UnknownKey, UnitError
    """
    raw = {}
    if text:
        try:
            raw = tomllib.loads(text)
        except tomllib.TOMLDecodeError as exc:
            raise ParseError(f"config document: {exc}") from exc
    raw.update(overrides or {})

    mode = raw.get("mode")
    if mode not in MODES:
        raise UnknownKey(f"key 'mode' must be one of {MODES}, got {mode!r}")
    allowed = _ALLOWED[mode]
    for key in raw:
        if key not in allowed:
            raise UnknownKey(f"unknown key {key!r} for mode {mode!r}")
    cfg = {key: _coerce(key, value) for key, value in raw.items()}

    out = cfg.get("out")
    verbose = cfg.get("verbose", False)
    if mode == "point":
        return RunConfig(mode=mode, out=out, verbose=verbose, model=_model_from(cfg))
    if mode == "sweep":
        if out is None:
            raise UnknownKey("missing required key 'out' for sweep mode")
        return RunConfig(mode=mode, out=out, verbose=verbose, spec=_spec_from(cfg))
    if mode == "preset":
        if out is None:
            raise UnknownKey("missing required key 'out' for preset mode")
        return RunConfig(mode=mode, out=out, verbose=verbose,
                         preset=_require(cfg, "preset"))
    return RunConfig(mode=mode, out=out, verbose=verbose, physical=_physical_from(cfg))
