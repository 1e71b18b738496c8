"""Zeeman-sublevel quantum optics: optical pumping, decaying Rabi dynamics, mirrorless-lasing gain."""

from .angmom import (
    HalfInteger,
    PolarizationVector,
    RotationAngles,
    clebsch_gordan,
    named_polarization,
    polarization_from_cartesian,
    rotate_density_matrix,
    wigner_D,
    wigner_d,
)
from .lindblad import (
    Liouvillian,
    TransitionScheme,
    build_coupling,
    build_dissipator,
    build_hamiltonian,
    build_liouvillian,
    evolve,
    scheme_liouvillian,
    steady_state,
)
from .pumping import PumpingReport, dark_states, naive_answers, run_pumping
from .burshtein import TwoLevelParams, amplitudes, classify_regime, four_cases, population_b, restored_envelope
from .dml import DmlScenario, GainReport, probe_gain, pump_steady_state_j1j2, threshold_scan

__version__ = "0.1.0"
