"""Master-equation machinery for a driven dipole transition ``jg -> je``.

The state space is the ground manifold (``m = -jg..jg``) followed by the
excited manifold (``m = -je..je``). Hamiltonians are written in the frame
rotating with the drive, in units where hbar = 1, so all rates share the
unit of ``gamma``. Superoperators act on column-stacked density matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .angmom import HalfInteger, PolarizationVector, clebsch_gordan, projections
from .errors import (
    ConvergenceTimeout,
    DomainError,
    InitialConditionRequired,
    PositivityError,
)
from .integrate import DormandPrince

DEFAULT_RTOL = 1e-10
DEFAULT_ATOL = 1e-13
KERNEL_THRESHOLD = 1e-10


@dataclass(frozen=True)
class TransitionScheme:
    """Dipole transition ``jg -> je`` with decay rate, Rabi frequency and detuning."""

    jg: HalfInteger
    je: HalfInteger
    gamma: float = 1.0
    omega: float = 1.0
    delta: float = 0.0

    def __post_init__(self):
        jg, je = HalfInteger.of(self.jg), HalfInteger.of(self.je)
        object.__setattr__(self, "jg", jg)
        object.__setattr__(self, "je", je)
        if jg.twice_value < 0 or je.twice_value < 0:
            raise DomainError("angular momenta must be non-negative")
        if abs(jg.twice_value - je.twice_value) > 2 or (jg.twice_value - je.twice_value) % 2:
            raise DomainError(f"{jg} -> {je} is not an electric-dipole transition")
        if jg.twice_value == 0 and je.twice_value == 0:
            raise DomainError("0 -> 0 transitions are dipole forbidden")
        if not (self.gamma >= 0 and self.omega >= 0):
            raise DomainError("gamma and omega must be non-negative")
        if not np.isfinite(self.delta):
            raise DomainError("detuning must be finite")

    @property
    def manifolds(self) -> tuple[HalfInteger, HalfInteger]:
        return (self.jg, self.je)

    @property
    def n_ground(self) -> int:
        return self.jg.twice_value + 1

    @property
    def n_excited(self) -> int:
        return self.je.twice_value + 1

    @property
    def dim(self) -> int:
        return self.n_ground + self.n_excited

    @property
    def ground(self) -> slice:
        return slice(0, self.n_ground)

    @property
    def excited(self) -> slice:
        return slice(self.n_ground, self.dim)


@dataclass(frozen=True, eq=False)
class Liouvillian:
    """Matrix of the master-equation generator on column-stacked density matrices."""

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        n = int(round(np.sqrt(m.shape[0])))
        if m.ndim != 2 or m.shape[0] != m.shape[1] or n * n != m.shape[0]:
            raise DomainError(f"Liouvillian must be d^2 x d^2, got shape {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        """Hilbert-space dimension ``d``."""
        return int(round(np.sqrt(self.matrix.shape[0])))

    def apply(self, rho) -> np.ndarray:
        return unvec(self.matrix @ vec(rho))


def vec(rho) -> np.ndarray:
    return np.asarray(rho).reshape(-1, order="F")


def unvec(v) -> np.ndarray:
    n = int(round(np.sqrt(v.shape[0])))
    return np.asarray(v).reshape((n, n), order="F")


def hermitize(rho) -> np.ndarray:
    return 0.5 * (rho + rho.conj().T)


def build_coupling(scheme: TransitionScheme, pol: PolarizationVector) -> np.ndarray:
    """Excited-by-ground coupling block ``V[m_e, m_g] = sum_q e_q <jg m_g; 1 q|je m_e>``."""
    if not isinstance(pol, PolarizationVector):
        raise DomainError("polarization must be a PolarizationVector")
    V = np.zeros((scheme.n_excited, scheme.n_ground), dtype=complex)
    for a, me in enumerate(projections(scheme.je)):
        for b, mg in enumerate(projections(scheme.jg)):
            q2 = me.twice_value - mg.twice_value
            if abs(q2) > 2:
                continue
            q = q2 // 2
            V[a, b] = pol.component(q) * clebsch_gordan(scheme.jg, mg, 1, q, scheme.je, me)
    return V


def build_hamiltonian(scheme: TransitionScheme, pol: PolarizationVector) -> np.ndarray:
    """Rotating-wave Hamiltonian ``-delta P_e + (omega/2)(V + V^dagger)``."""
    V = build_coupling(scheme, pol)
    H = np.zeros((scheme.dim, scheme.dim), dtype=complex)
    H[scheme.excited, scheme.excited] = -scheme.delta * np.eye(scheme.n_excited)
    H[scheme.excited, scheme.ground] = 0.5 * scheme.omega * V
    H[scheme.ground, scheme.excited] = 0.5 * scheme.omega * V.conj().T
    return H


def build_dissipator(scheme: TransitionScheme) -> list[np.ndarray]:
    """Spontaneous-emission jump operators, one per emitted photon component q = -1, 0, +1."""
    rate = np.sqrt(scheme.gamma)
    jumps = []
    for q in (-1, 0, 1):
        L = np.zeros((scheme.dim, scheme.dim), dtype=complex)
        for a, mg in enumerate(projections(scheme.jg)):
            for b, me in enumerate(projections(scheme.je)):
                if me.twice_value - mg.twice_value == 2 * q:
                    L[a, scheme.n_ground + b] = rate * clebsch_gordan(scheme.jg, mg, 1, q, scheme.je, me)
        jumps.append(L)
    return jumps


def build_liouvillian(H, jumps: Sequence[np.ndarray] = ()) -> Liouvillian:
    """Superoperator of ``-i[H, rho] + sum_k (L rho L^+ - {L^+ L, rho}/2)``."""
    H = np.asarray(H, dtype=complex)
    d = H.shape[0]
    if H.shape != (d, d):
        raise DomainError(f"Hamiltonian must be square, got {H.shape}")
    eye = np.eye(d)
    # column stacking: vec(A rho B) = (B^T kron A) vec(rho)
    out = -1j * (np.kron(eye, H) - np.kron(H.T, eye))
    for L in jumps:
        L = np.asarray(L, dtype=complex)
        if L.shape != (d, d):
            raise DomainError(f"jump operator shape {L.shape} does not match Hamiltonian {H.shape}")
        LdL = L.conj().T @ L
        out += np.kron(L.conj(), L) - 0.5 * (np.kron(eye, LdL) + np.kron(LdL.T, eye))
    return Liouvillian(out)


def scheme_liouvillian(scheme: TransitionScheme, pol: PolarizationVector) -> Liouvillian:
    return build_liouvillian(build_hamiltonian(scheme, pol), build_dissipator(scheme))


def _check_rho(rho, L: Liouvillian) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (L.dim, L.dim):
        raise DomainError(f"density matrix shape {rho.shape} does not match Liouvillian dimension {L.dim}")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-10:
        raise DomainError("density matrix is not Hermitian")
    return rho


class Propagator:
    """Incremental ``rho(t) = exp(L t) rho0`` by adaptive Runge-Kutta integration.

    Hermiticity is re-imposed after every accepted step.
    """

    def __init__(self, rho0, L: Liouvillian, tol: float = DEFAULT_RTOL, atol: float = DEFAULT_ATOL):
        if not 0 < tol <= 1e-3:
            raise DomainError(f"tolerance must lie in (0, 1e-3], got {tol}")
        rho0 = _check_rho(rho0, L)
        self.tol = tol
        M = L.matrix
        d = L.dim

        def post(v):
            r = v.reshape((d, d), order="F")
            return vec(hermitize(r))

        self._stepper = DormandPrince(lambda t, y: M @ y, 0.0, vec(rho0), rtol=tol, atol=atol, postprocess=post)

    @property
    def t(self) -> float:
        return self._stepper.t

    @property
    def rho(self) -> np.ndarray:
        return unvec(self._stepper.y).copy()

    def advance_to(self, t: float) -> np.ndarray:
        self._stepper.advance_to(t)
        rho = self.rho
        lowest = np.linalg.eigvalsh(rho)[0]
        if lowest < -10 * self.tol:
            raise PositivityError(
                f"density matrix eigenvalue {lowest:.3e} at t={t:.6g} is below -10*tol; "
                "tighten the tolerance"
            )
        return rho


def evolve(rho0, L: Liouvillian, t: float, tol: float = DEFAULT_RTOL) -> np.ndarray:
    """Propagate ``rho0`` for a time ``t`` under the generator ``L``."""
    if t < 0:
        raise DomainError("evolution time must be non-negative")
    return Propagator(rho0, L, tol).advance_to(t)


def kernel(L: Liouvillian, threshold: float = KERNEL_THRESHOLD, scale: Optional[float] = None) -> np.ndarray:
    """Orthonormal basis (columns) of the null space of ``L``.

    Singular values below ``threshold * scale`` count as zero; ``scale``
    defaults to the largest singular value.
    """
    M = L.matrix
    _, s, vh = np.linalg.svd(M)
    if scale is None:
        scale = s[0] if s.size and s[0] > 0 else 1.0
    rank = int(np.sum(s > threshold * scale))
    return vh[rank:].conj().T


def solve_stationary(L: Liouvillian) -> np.ndarray:
    """Trace-one solution of ``L rho = 0`` assuming the kernel is one-dimensional.

    One equation is replaced by the trace condition. Unlike taking the
    smallest singular vector, this keeps full relative accuracy when the
    slowest rate is many orders below the fastest one.
    """
    d = L.dim
    A = np.array(L.matrix)
    b = np.zeros(d * d, dtype=complex)
    A[0, :] = vec(np.eye(d))
    b[0] = 1.0
    return hermitize(unvec(np.linalg.solve(A, b)))


def _normalized_state(v) -> np.ndarray:
    rho = unvec(v)
    tr = np.trace(rho)
    if abs(tr) < 1e-12:
        raise DomainError("kernel element has zero trace")
    return hermitize(rho / tr)


def run_to_completion(
    rho0,
    L: Liouvillian,
    excited: Optional[slice] = None,
    gamma: float = 1.0,
    tol: float = DEFAULT_RTOL,
    max_time: Optional[float] = None,
    settle: float = 1e-10,
):
    """Evolve until excited population < settle and rho changes by < settle over ``5/gamma``.

    Returns ``(rho, t_complete)`` where ``t_complete`` is the earliest checkpoint
    from which the criterion held.
    """
    if gamma <= 0:
        raise DomainError("completion criterion needs a positive decay rate")
    window = 5.0 / gamma
    if max_time is None:
        max_time = 1e7 / gamma
    prop = Propagator(rho0, L, tol)
    prev = prop.rho
    t_prev = 0.0
    while True:
        t_next = t_prev + window
        if t_next > max_time:
            pe = np.real(np.trace(prev[excited, excited])) if excited is not None else float("nan")
            raise ConvergenceTimeout(
                f"no convergence by t={max_time:.3g} (excited population {pe:.3e})"
            )
        cur = prop.advance_to(t_next)
        pe = np.real(np.trace(prev[excited, excited])) if excited is not None else 0.0
        if pe < settle and np.max(np.abs(cur - prev)) < settle:
            return prev, t_prev
        prev, t_prev = cur, t_next


def steady_state(L: Liouvillian, rho0=None, *, excited: Optional[slice] = None, gamma: float = 1.0,
                 tol: float = DEFAULT_RTOL, max_time: Optional[float] = None) -> np.ndarray:
    """Stationary state of ``L``.

    A one-dimensional kernel gives the unique trace-one state directly.
    Otherwise the long-time limit depends on where the system started, so
    ``rho0`` is required and evolved until the completion criterion holds.
    """
    K = kernel(L)
    if K.shape[1] == 1:
        return _normalized_state(K[:, 0])
    if K.shape[1] == 0:
        raise DomainError("Liouvillian has no stationary state (empty kernel)")
    if rho0 is None:
        raise InitialConditionRequired(
            f"kernel of the Liouvillian is {K.shape[1]}-dimensional; "
            "the long-time state depends on the initial condition, supply rho0"
        )
    rho, _ = run_to_completion(rho0, L, excited=excited, gamma=gamma, tol=tol, max_time=max_time)
    residual = np.linalg.norm(L.matrix @ vec(rho))
    if residual > 1e-8 * np.linalg.norm(rho):
        raise ConvergenceTimeout(f"long-time state still drifts, |L rho| = {residual:.3e}")
    return rho
