"""Linear-response probe gain for degenerate mirrorless lasing on J=1 -> J'=2.

Atoms are pumped by resonant z-polarized light; a weak x-polarized probe
travels along the cylinder axis (lab y). At this level of description the
gain follows from sublevel populations only:

    g = n * sigma0 * sum_{probe transitions} w * (rho_ee - rho_gg),
    sigma0 = 3 lambda^2 / (2 pi),

where ``w`` is the probe-weighted squared Clebsch-Gordan coefficient of each
transition, normalized over the transitions the probe drives. Pump-induced
coherences and four-wave mixing are ignored, which is adequate only well below
saturation (see ``GainReport.saturation``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Iterable, Mapping

import numpy as np

from .angmom import HalfInteger, PolarizationVector, clebsch_gordan, named_polarization, projections
from .errors import ConsistencyError, DomainError
from .lindblad import TransitionScheme, kernel, scheme_liouvillian, solve_stationary

DEFAULT_THRESHOLD = 30.0
DIRECTIONS = ("forward", "backward")


@dataclass(frozen=True)
class DmlScenario:
    scheme: TransitionScheme
    n: float           # atoms / m^3
    L: float           # m
    R: float           # m, carried for reporting only
    wavelength: float  # m
    direction: str = "backward"

    def __post_init__(self):
        if not (self.n > 0 and self.L > 0 and self.R > 0 and self.wavelength > 0):
            raise DomainError("n, L, R and wavelength must all be positive")
        if self.scheme.jg != HalfInteger(2) or self.scheme.je != HalfInteger(4):
            raise DomainError(f"DML scenario needs a J=1 -> J'=2 scheme, got {self.scheme.jg} -> {self.scheme.je}")
        if self.direction not in DIRECTIONS:
            raise DomainError(f"direction must be one of {DIRECTIONS}, got {self.direction!r}")


@dataclass(frozen=True)
class TransitionInversion:
    m_g: float
    m_e: float
    q: int
    inversion: float  # rho_ee - rho_gg
    weight: float


@dataclass(frozen=True)
class GainReport:
    direction: str
    g: float          # 1/m
    gL: float
    lases: bool
    threshold: float
    per_transition_inversions: tuple
    q_contributions: dict
    saturation: float  # 2 omega^2 / (gamma^2 + 4 delta^2); linear response needs << 1
    scenario: DmlScenario


def cross_section(wavelength: float) -> float:
    return 3 * wavelength ** 2 / (2 * np.pi)


def pump_scheme(omega: float, delta: float = 0.0, gamma: float = 1.0) -> TransitionScheme:
    return TransitionScheme(1, 2, gamma=gamma, omega=omega, delta=delta)


def pumping_rate(omega: float, delta: float, gamma: float) -> float:
    """Scale of the slowest relaxation, the optical-pumping rate (saturates at gamma/2)."""
    return omega ** 2 * gamma / (gamma ** 2 + 4 * delta ** 2 + 2 * omega ** 2)


MIN_RESOLVABLE_RATE = 1e-13


def pump_steady_state_j1j2(omega: float, delta: float = 0.0, gamma: float = 1.0) -> np.ndarray:
    """Unique steady state of J=1 -> J'=2 pumped by z-polarized light.

    The kernel rank is judged against the optical-pumping rate rather than the
    largest rate in the problem; at weak pumping the two differ by many orders
    of magnitude.
    """
    if not (omega > 0 and gamma > 0):
        raise DomainError("pump steady state needs omega > 0 and gamma > 0")
    rate = pumping_rate(omega, delta, gamma)
    if rate < MIN_RESOLVABLE_RATE * gamma:
        raise DomainError(
            f"pumping rate {rate:.3g} is below {MIN_RESOLVABLE_RATE:g}*gamma; "
            "the steady state cannot be resolved in double precision"
        )
    scheme = pump_scheme(omega, delta, gamma)
    L = scheme_liouvillian(scheme, named_polarization("z"))
    K = kernel(L, threshold=1e-2, scale=rate)
    if K.shape[1] != 1:
        raise ConsistencyError(
            f"expected a unique steady state for z-pumped J=1 -> J'=2, kernel has dimension {K.shape[1]}"
        )
    return solve_stationary(L)


def unpumped_state() -> np.ndarray:
    """Isotropic ground state, no excitation."""
    rho = np.zeros((8, 8), dtype=complex)
    rho[:3, :3] = np.eye(3) / 3
    return rho


def probe_transitions(scheme: TransitionScheme, probe: PolarizationVector):
    """``(m_g, m_e, q, weight)`` for every transition the probe drives, weights summing to 1."""
    rows = []
    for mg in projections(scheme.jg):
        for q in (-1, 1):
            me = mg + q
            if abs(me.twice_value) > scheme.je.twice_value:
                continue
            w = abs(probe.component(q)) ** 2 * clebsch_gordan(scheme.jg, mg, 1, q, scheme.je, me) ** 2
            if w > 0:
                rows.append((mg, me, q, w))
    total = sum(r[3] for r in rows)
    return [(mg, me, q, w / total) for mg, me, q, w in rows]


def probe_gain(scenario: DmlScenario, rho_ss, threshold: float = DEFAULT_THRESHOLD,
               probe: PolarizationVector = None) -> GainReport:
    """Small-signal intensity gain of an x-polarized probe along the cylinder axis."""
    scheme = scenario.scheme
    rho_ss = np.asarray(rho_ss)
    if rho_ss.shape != (scheme.dim, scheme.dim):
        raise DomainError(f"steady state shape {rho_ss.shape} does not match the {scheme.dim}-level scheme")
    if probe is None:
        probe = named_polarization("x")
    pops = np.real(np.diag(rho_ss))
    ng = scheme.n_ground
    jg2, je2 = scheme.jg.twice_value, scheme.je.twice_value
    inversions = []
    q_sum = {-1: 0.0, 1: 0.0}
    for mg, me, q, w in probe_transitions(scheme, probe):
        diff = pops[ng + (me.twice_value + je2) // 2] - pops[(mg.twice_value + jg2) // 2]
        inversions.append(TransitionInversion(mg.value, me.value, q, float(diff), float(w)))
        q_sum[q] += w * diff
    # stationary atoms: no Doppler shift, so nothing here depends on direction
    scale = scenario.n * cross_section(scenario.wavelength)
    g = scale * (q_sum[-1] + q_sum[1])
    gL = g * scenario.L
    sat = 2 * scheme.omega ** 2 / (scheme.gamma ** 2 + 4 * scheme.delta ** 2)
    return GainReport(
        direction=scenario.direction,
        g=float(g),
        gL=float(gL),
        lases=bool(gL >= threshold),
        threshold=threshold,
        per_transition_inversions=tuple(inversions),
        q_contributions={q: float(scale * v) for q, v in q_sum.items()},
        saturation=float(sat),
        scenario=scenario,
    )


def threshold_scan(grid: Mapping[str, Iterable[float]], threshold: float = DEFAULT_THRESHOLD, *,
                   wavelength: float, R: float, gamma: float = 1.0,
                   direction: str = "backward") -> list[GainReport]:
    """Gain reports over the product grid of ``omega``, ``delta``, ``n`` and ``L``.

    Rows follow ``itertools.product`` order with ``omega`` slowest and ``L`` fastest.
    """
    keys = ("omega", "delta", "n", "L")
    unknown = set(grid) - set(keys)
    if unknown:
        raise DomainError(f"unknown scan axes: {sorted(unknown)}")
    axes = [list(grid.get(k, [0.0] if k == "delta" else [])) for k in keys]
    for k, ax in zip(keys, axes):
        if not ax:
            raise DomainError(f"scan axis {k!r} is empty")
    states = {}
    rows = []
    for omega, delta, n, L in itertools.product(*axes):
        if (omega, delta) not in states:
            states[omega, delta] = pump_steady_state_j1j2(omega, delta, gamma)
        scenario = DmlScenario(pump_scheme(omega, delta, gamma), n=n, L=L, R=R,
                               wavelength=wavelength, direction=direction)
        rows.append(probe_gain(scenario, states[omega, delta], threshold))
    return rows


def both_directions(scenario: DmlScenario, rho_ss, threshold: float = DEFAULT_THRESHOLD) -> list[GainReport]:
    return [probe_gain(replace(scenario, direction=d), rho_ss, threshold) for d in DIRECTIONS]
