"""Resonant Rabi coupling between two states that decay into unobserved states.

The amplitudes obey

    dc_A/dt = -(gamma_a/2) c_A - i (omega/2) c_B
    dc_B/dt = -(gamma_b/2) c_B - i (omega/2) c_A

Writing the generator as ``-s I + N`` with ``s = (gamma_a + gamma_b)/4`` and
traceless ``N``, ``N^2 = kappa^2 I`` where
``kappa^2 = ((gamma_b - gamma_a)/4)^2 - (omega/2)^2``; hence

    exp(N t) = cosh(kappa t) I + t * shc(kappa t) N,   shc(z) = sinh(z)/z,

which covers the oscillatory (kappa imaginary), overdamped (kappa real) and
critically damped (kappa = 0, secular ``t e^{-s t}`` term) regimes in one
closed form.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError

CASE_LABELS = {
    1: "gamma_a = gamma_b = 0",
    2: "gamma_a = 0, gamma_b << omega",
    3: "gamma_a = 0, gamma_b >> omega",
    4: "gamma_a = gamma_b = gamma >> omega",
}


@dataclass(frozen=True)
class TwoLevelParams:
    omega: float
    gamma_a: float = 0.0
    gamma_b: float = 0.0

    def __post_init__(self):
        for name in ("omega", "gamma_a", "gamma_b"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise DomainError(f"{name} must be finite and non-negative, got {v!r}")

    def swapped(self) -> "TwoLevelParams":
        return TwoLevelParams(self.omega, self.gamma_b, self.gamma_a)


@dataclass(frozen=True)
class TimeSeries:
    times: np.ndarray  # Rabi cycles, omega t / 2 pi
    p_a: np.ndarray
    p_b: np.ndarray
    params: TwoLevelParams
    label: str = ""


class Regime(str, Enum):
    OSCILLATORY = "oscillatory"
    CRITICALLY_DAMPED = "critically_damped"
    OVERDAMPED = "overdamped"


def _shc(z):
    """sinh(z)/z, accurate near z = 0 and for complex z."""
    z = np.asarray(z, dtype=complex)
    small = np.abs(z) < 1e-3
    safe = np.where(small, 1.0, z)
    z2 = z * z
    series = 1 + z2 / 6 * (1 + z2 / 20 * (1 + z2 / 42))
    return np.where(small, series, np.sinh(safe) / safe)


def _damped_amplitudes(t, p: TwoLevelParams, rate: float, c0=(1.0, 0.0)):
    """Amplitudes multiplied by ``exp(rate t)``.

    ``rate = 0`` gives the physical amplitudes; ``rate = s`` strips the common
    decay factor. For real ``kappa`` the exponentials are merged before
    evaluation so that nothing overflows at long times.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("time must be non-negative")
    delta = (p.gamma_b - p.gamma_a) / 4
    half_omega = p.omega / 2
    shift = rate - _common_rate(p)
    kappa = cmath.sqrt(delta * delta - half_omega * half_omega)
    kt = kappa * t
    if kappa.imag == 0 and kappa.real > 0:
        k = kappa.real
        grow = np.exp((k + shift) * t)
        decay = np.exp((shift - k) * t)
        ch = 0.5 * (grow + decay)
        # sinh(kt)/k loses digits to cancellation when kt is small
        near = np.real(_shc(np.minimum(kt.real, 1.0)))
        sh = np.where(kt.real < 1.0, t * near * np.exp(shift * t), (grow - decay) / (2 * k))
    else:
        envelope = np.exp(shift * t)
        ch = np.cosh(kt) * envelope
        sh = t * _shc(kt) * envelope
    ca0, cb0 = complex(c0[0]), complex(c0[1])
    ca = ch * ca0 + sh * (delta * ca0 - 1j * half_omega * cb0)
    cb = ch * cb0 + sh * (-1j * half_omega * ca0 - delta * cb0)
    return ca, cb


def _common_rate(p: TwoLevelParams) -> float:
    return (p.gamma_a + p.gamma_b) / 4


def amplitudes(t, p: TwoLevelParams, c0=(1.0, 0.0)):
    """Exact ``(c_A(t), c_B(t))``; ``c0`` defaults to all population in A.

    ``t`` may be a scalar or an array (seconds, or any unit consistent with the rates).
    """
    ca, cb = _damped_amplitudes(t, p, 0.0, c0)
    if np.ndim(t) == 0:
        return complex(ca), complex(cb)
    return ca, cb


def population_a(t, p: TwoLevelParams, c0=(1.0, 0.0)):
    return np.abs(amplitudes(t, p, c0)[0]) ** 2


def population_b(t, p: TwoLevelParams, c0=(1.0, 0.0)):
    """Population of state B, ``|c_B(t)|^2``."""
    return np.abs(amplitudes(t, p, c0)[1]) ** 2


def restored_envelope(t, p: TwoLevelParams):
    """``exp(gamma t) * population_b(t)`` for equal decay rates.

    Computed without forming the decayed population, so it stays finite
    however many decay times ``t`` spans.
    """
    if p.gamma_a != p.gamma_b:
        raise DomainError(
            "envelope restoration needs equal decay rates gamma_a == gamma_b, "
            f"got {p.gamma_a} and {p.gamma_b}"
        )
    # exp(gamma t) cancels exp(-2 s t) exactly when gamma_a == gamma_b
    _, cb = _damped_amplitudes(t, p, _common_rate(p))
    return np.abs(cb) ** 2


def classify_regime(p: TwoLevelParams) -> Regime:
    """Sign of the discriminant of the 2x2 amplitude generator."""
    half_gap = abs(p.gamma_a - p.gamma_b) / 2
    if math.isclose(p.omega, half_gap, rel_tol=1e-12, abs_tol=0.0):
        return Regime.CRITICALLY_DAMPED
    return Regime.OSCILLATORY if p.omega > half_gap else Regime.OVERDAMPED


def case_params(case: int, omega: float = 1.0, gamma_factor: float = 10.0,
                small_factor: float = 0.1) -> TwoLevelParams:
    """Parameters of one of the four decay cases.

    "<<" is ``small_factor * omega``; ">>" is ``gamma_factor * omega``.
    """
    if case == 1:
        return TwoLevelParams(omega)
    if case == 2:
        return TwoLevelParams(omega, 0.0, small_factor * omega)
    if case == 3:
        return TwoLevelParams(omega, 0.0, gamma_factor * omega)
    if case == 4:
        return TwoLevelParams(omega, gamma_factor * omega, gamma_factor * omega)
    raise DomainError(f"case must be 1, 2, 3 or 4, got {case!r}")


def time_series(p: TwoLevelParams, cycles: float = 5.0, samples: int = 1000, label: str = "") -> TimeSeries:
    if not cycles > 0:
        raise DomainError("time horizon must be positive")
    if samples < 2:
        raise DomainError("need at least two samples")
    if p.omega == 0:
        raise DomainError("time in Rabi cycles is undefined for omega = 0")
    cyc = np.linspace(0.0, cycles, samples)
    t = 2 * np.pi * cyc / p.omega
    ca, cb = amplitudes(t, p)
    return TimeSeries(cyc, np.abs(ca) ** 2, np.abs(cb) ** 2, p, label)


def four_cases(omega: float = 1.0, gamma: float = None, T: float = 5.0, samples: int = 1000,
               small_factor: float = 0.1) -> list[TimeSeries]:
    """Time series for the four decay cases over ``T`` Rabi cycles.

    ``gamma`` is the large decay rate of cases 3 and 4 (default ``10 omega``);
    case 2 uses ``small_factor * omega``.
    """
    gamma_factor = 10.0 if gamma is None else gamma / omega
    return [
        time_series(case_params(c, omega, gamma_factor, small_factor), T, samples, CASE_LABELS[c])
        for c in (1, 2, 3, 4)
    ]
