"""Optical pumping of Zeeman sublevels to the dark-state endpoint."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .angmom import PolarizationVector, alignment_angles, rotate_density_matrix
from .errors import DomainError
from .lindblad import (
    DEFAULT_RTOL,
    KERNEL_THRESHOLD,
    Propagator,
    TransitionScheme,
    build_coupling,
    run_to_completion,
    scheme_liouvillian,
)


@dataclass(frozen=True)
class PumpingReport:
    final_ground_populations: np.ndarray
    dark_basis: list
    time_to_completion: float  # in units of 1/gamma
    consistency_residual: float
    final_state: np.ndarray
    excited_population: float


def dark_states(scheme: TransitionScheme, pol: PolarizationVector) -> list[np.ndarray]:
    """Orthonormal basis of ground states the light does not couple to."""
    V = build_coupling(scheme, pol)
    _, s, vh = np.linalg.svd(V)
    rank = int(np.sum(s > KERNEL_THRESHOLD))
    return [vh[k].conj() for k in range(rank, scheme.n_ground)]


def embed_ground(scheme: TransitionScheme, rho_g) -> np.ndarray:
    rho_g = np.asarray(rho_g, dtype=complex)
    if rho_g.shape != (scheme.n_ground, scheme.n_ground):
        raise DomainError(
            f"ground density matrix must be {scheme.n_ground}x{scheme.n_ground}, got {rho_g.shape}"
        )
    if np.max(np.abs(rho_g - rho_g.conj().T)) > 1e-10:
        raise DomainError("ground density matrix is not Hermitian")
    if abs(np.trace(rho_g) - 1) > 1e-10:
        raise DomainError("ground density matrix must have unit trace")
    if np.linalg.eigvalsh(rho_g)[0] < -1e-10:
        raise DomainError("ground density matrix is not positive semidefinite")
    rho = np.zeros((scheme.dim, scheme.dim), dtype=complex)
    rho[scheme.ground, scheme.ground] = rho_g
    return rho


def _pump(scheme, pol, rho0, tol, max_time):
    L = scheme_liouvillian(scheme, pol)
    return run_to_completion(rho0, L, excited=scheme.excited, gamma=scheme.gamma, tol=tol, max_time=max_time)


def run_pumping(scheme: TransitionScheme, pol: PolarizationVector, rho_g0, tol: float = DEFAULT_RTOL,
                max_time=None) -> PumpingReport:
    """Pump the ground state ``rho_g0`` until completion and report the endpoint.

    The same problem is also solved with the quantization axis along the
    light's natural axis and rotated back; ``consistency_residual`` is the
    max-norm difference between the two endpoints.
    """
    rho0 = embed_ground(scheme, rho_g0)
    rho, t_done = _pump(scheme, pol, rho0, tol, max_time)

    angles = alignment_angles(pol)
    rho0_rot = rotate_density_matrix(rho0, angles, scheme)
    rho_rot, _ = _pump(scheme, pol.rotated(angles), rho0_rot, tol, max_time)
    back = rotate_density_matrix(rho_rot, angles.inverse(), scheme)
    residual = float(np.max(np.abs(back - rho)))

    return PumpingReport(
        final_ground_populations=np.real(np.diag(rho)[scheme.ground]).copy(),
        dark_basis=dark_states(scheme, pol),
        time_to_completion=t_done * scheme.gamma,
        consistency_residual=residual,
        final_state=rho,
        excited_population=float(np.real(np.trace(rho[scheme.excited, scheme.excited]))),
    )


def dark_occupation_history(scheme: TransitionScheme, pol: PolarizationVector, rho_g0, t_end: float,
                            samples: int = 100, tol: float = DEFAULT_RTOL):
    """Occupation of each dark basis state at ``samples`` equally spaced times up to ``t_end``."""
    basis = dark_states(scheme, pol)
    prop = Propagator(embed_ground(scheme, rho_g0), scheme_liouvillian(scheme, pol), tol)
    times = np.linspace(0.0, t_end, samples)
    out = np.zeros((samples, len(basis)))
    for i, t in enumerate(times):
        rho_g = prop.advance_to(t)[scheme.ground, scheme.ground]
        out[i] = [np.real(v.conj() @ rho_g @ v) for v in basis]
    return times, out


NAIVE_ANSWERS = (
    ("only m=0 is dark", (Fraction(0), Fraction(1), Fraction(0))),
    ("bright superposition emptied, no repumping into dark states", (Fraction(1, 6), Fraction(2, 3), Fraction(1, 6))),
    ("both dark states filled, bright state empty", (Fraction(1, 4), Fraction(1, 2), Fraction(1, 4))),
)


def naive_answers():
    """The three candidate endpoint populations for J=1 -> J'=0 pumped by x light.

    Rows are ``(label, (p_-1, p_0, p_+1))``; only the last one is correct.
    """
    return list(NAIVE_ANSWERS)
