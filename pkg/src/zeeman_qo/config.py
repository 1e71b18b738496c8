"""Flat ``key = value`` run configurations.

Blank lines and ``#`` comments are ignored. Every scenario has a fixed set of
allowed keys; unknown keys are rejected rather than silently ignored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional

from .errors import ConfigError

REQUIRED = object()


def _float(text: str) -> float:
    return float(text)


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise ValueError("must be a positive integer")
    return v


def _angular_momentum(text: str) -> Fraction:
    v = Fraction(text.strip())
    if (2 * v).denominator != 1 or v < 0:
        raise ValueError("must be a non-negative integer or half-integer")
    return v


def _float_list(text: str) -> list[float]:
    items = [s.strip() for s in text.split(",")]
    if not items or any(not s for s in items):
        raise ValueError("must be a comma-separated list of numbers")
    return [float(s) for s in items]


def _choice(*options: str) -> Callable[[str], str]:
    def parse(text: str) -> str:
        if text not in options:
            raise ValueError(f"must be one of {', '.join(options)}")
        return text
    return parse


@dataclass(frozen=True)
class Key:
    parse: Callable[[str], Any]
    default: Any = REQUIRED


SCHEMAS: dict[str, dict[str, Key]] = {
    "pump": {
        "jg": Key(_angular_momentum),
        "je": Key(_angular_momentum),
        "polarization": Key(_choice("x", "y", "z", "sigma+", "sigma-")),
        "gamma": Key(_float, 1.0),
        "omega": Key(_float, None),  # None means "equal to gamma"
        "delta": Key(_float, 0.0),
        "initial_populations": Key(_float_list, None),  # None means isotropic
        "tol": Key(_float, 1e-10),
    },
    "burshtein": {
        "case": Key(_choice("1", "2", "3", "4")),
        "omega": Key(_float, 1.0),
        "gamma_factor": Key(_float, 10.0),
        "small_factor": Key(_float, 0.1),
        "cycles": Key(_float, 5.0),
        "samples": Key(_positive_int, 1000),
    },
    "dml": {
        "n": Key(_float),
        "L": Key(_float),
        "R": Key(_float),
        "wavelength": Key(_float),
        "omega": Key(_float, 1.0),
        "delta": Key(_float, 0.0),
        "gamma": Key(_float, 1.0),
        "direction": Key(_choice("forward", "backward", "both"), "both"),
        "threshold": Key(_float, 30.0),
    },
    "scan": {
        "omega": Key(_float_list),
        "n": Key(_float_list),
        "L": Key(_float_list),
        "R": Key(_float),
        "wavelength": Key(_float),
        "delta": Key(_float_list, [0.0]),
        "gamma": Key(_float, 1.0),
        "direction": Key(_choice("forward", "backward"), "backward"),
        "threshold": Key(_float, 30.0),
    },
}


@dataclass(frozen=True)
class RunConfig:
    scenario: str
    parameters: dict = field(default_factory=dict)
    output_path: Optional[str] = None
    output_format: str = "csv"


def parse_config(text: str) -> RunConfig:
    """Parse and validate configuration text."""
    raw: dict[str, tuple[str, int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", line=lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if not key or not value:
            raise ConfigError(f"expected 'key = value', got {line!r}", line=lineno)
        if key in raw:
            raise ConfigError(f"duplicate key {key!r}", line=lineno)
        raw[key] = (value, lineno)

    if "scenario" not in raw:
        raise ConfigError("missing required key 'scenario'")
    scenario, lineno = raw.pop("scenario")
    if scenario not in SCHEMAS:
        raise ConfigError(f"unknown scenario {scenario!r}; expected one of {', '.join(SCHEMAS)}", line=lineno)
    schema = SCHEMAS[scenario]

    params = {}
    for key, (value, lineno) in raw.items():
        if key not in schema:
            raise ConfigError(f"unknown key {key!r} for scenario {scenario!r}", line=lineno)
        try:
            params[key] = schema[key].parse(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"invalid value for {key!r}: {exc}", line=lineno) from None
    for key, spec in schema.items():
        if key in params:
            continue
        if spec.default is REQUIRED:
            raise ConfigError(f"missing required key {key!r} for scenario {scenario!r}")
        params[key] = spec.default

    if scenario == "pump" and params["omega"] is None:
        params["omega"] = params["gamma"]
    return RunConfig(scenario=scenario, parameters=params)
