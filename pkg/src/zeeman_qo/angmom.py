"""Angular-momentum algebra on Zeeman sublevels.

Conventions
-----------
* Condon-Shortley phases for Clebsch-Gordan coefficients.
* Rotations use z-y-z Euler angles and the active convention
  ``D^j_{m'm}(alpha, beta, gamma) = exp(-i m' alpha) d^j_{m'm}(beta) exp(-i m gamma)``.
* Sublevel vectors and matrices are ordered by ascending projection,
  ``m = -j, -j+1, ..., j``.
* Spherical unit vectors ``e_{+1} = -(x + iy)/sqrt(2)``, ``e_0 = z``,
  ``e_{-1} = (x - iy)/sqrt(2)``. Polarization components are stored in the
  order ``(q=-1, q=0, q=+1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Real
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError

J_MAX = 10


@dataclass(frozen=True, order=True)
class HalfInteger:
    """An integer or half-integer stored exactly as twice its value."""

    twice_value: int

    def __post_init__(self):
        if not isinstance(self.twice_value, (int, np.integer)):
            raise DomainError(f"twice_value must be an integer, got {self.twice_value!r}")
        object.__setattr__(self, "twice_value", int(self.twice_value))

    @classmethod
    def of(cls, value) -> "HalfInteger":
        """Build from an int, a float such as 1.5, a Fraction or a HalfInteger."""
        if isinstance(value, HalfInteger):
            return value
        if isinstance(value, Fraction):
            twice = 2 * value
            if twice.denominator != 1:
                raise DomainError(f"{value} is not a multiple of 1/2")
            return cls(int(twice))
        if isinstance(value, Real):
            twice = 2 * float(value)
            if not math.isfinite(twice) or twice != round(twice):
                raise DomainError(f"{value!r} is not a multiple of 1/2")
            return cls(int(round(twice)))
        raise DomainError(f"cannot interpret {value!r} as a half-integer")

    @property
    def value(self) -> float:
        return self.twice_value / 2

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    @property
    def is_integer(self) -> bool:
        return self.twice_value % 2 == 0

    def __neg__(self):
        return HalfInteger(-self.twice_value)

    def __add__(self, other):
        return HalfInteger(self.twice_value + HalfInteger.of(other).twice_value)

    def __sub__(self, other):
        return HalfInteger(self.twice_value - HalfInteger.of(other).twice_value)

    def __float__(self):
        return self.value

    def __str__(self):
        if self.is_integer:
            return str(self.twice_value // 2)
        return f"{self.twice_value}/2"


def _as_j(j) -> HalfInteger:
    j = HalfInteger.of(j)
    if j.twice_value < 0:
        raise DomainError(f"angular momentum must be non-negative, got {j}")
    if j.twice_value > 2 * J_MAX:
        raise DomainError(f"angular momentum {j} exceeds the supported range j <= {J_MAX}")
    return j


def _check_pair(j: HalfInteger, m: HalfInteger):
    if abs(m.twice_value) > j.twice_value or (j.twice_value - m.twice_value) % 2:
        raise DomainError(f"invalid projection m={m} for j={j}")


def projections(j) -> list[HalfInteger]:
    """Projections ``-j..j`` in ascending order."""
    j = _as_j(j)
    return [HalfInteger(tm) for tm in range(-j.twice_value, j.twice_value + 1, 2)]


def dimension(j) -> int:
    return _as_j(j).twice_value + 1


@lru_cache(maxsize=None)
def _cg_twice(j1, m1, j2, m2, J, M) -> float:
    # all arguments are doubled integers; Racah's single-sum formula
    if m1 + m2 != M:
        return 0.0
    if J > j1 + j2 or J < abs(j1 - j2) or (j1 + j2 + J) % 2:
        return 0.0
    f = math.factorial

    def h(x):
        return x // 2

    pre = Fraction(
        (J + 1) * f(h(J + j1 - j2)) * f(h(J - j1 + j2)) * f(h(j1 + j2 - J)),
        f(h(j1 + j2 + J) + 1),
    )
    pre *= (
        f(h(J + M)) * f(h(J - M)) * f(h(j1 - m1)) * f(h(j1 + m1))
        * f(h(j2 - m2)) * f(h(j2 + m2))
    )
    k_min = max(0, h(j2 - J - m1), h(j1 - J + m2))
    k_max = min(h(j1 + j2 - J), h(j1 - m1), h(j2 + m2))
    total = Fraction(0)
    for k in range(k_min, k_max + 1):
        denom = (
            f(k) * f(h(j1 + j2 - J) - k) * f(h(j1 - m1) - k) * f(h(j2 + m2) - k)
            * f(h(J - j2 + m1) + k) * f(h(J - j1 - m2) + k)
        )
        total += Fraction((-1) ** k, denom)
    if total == 0:
        return 0.0
    return math.copysign(math.sqrt(pre * total * total), total)


def clebsch_gordan(j1, m1, j2, m2, J, M) -> float:
    """Clebsch-Gordan coefficient ``<j1 m1; j2 m2 | J M>``.

    Evaluated with Racah's formula in exact rational arithmetic; only the
    final square root is taken in floating point.
    """
    j1, j2, J = _as_j(j1), _as_j(j2), _as_j(J)
    m1, m2, M = HalfInteger.of(m1), HalfInteger.of(m2), HalfInteger.of(M)
    _check_pair(j1, m1)
    _check_pair(j2, m2)
    _check_pair(J, M)
    return _cg_twice(
        j1.twice_value, m1.twice_value, j2.twice_value,
        m2.twice_value, J.twice_value, M.twice_value,
    )


def wigner_d(j, beta: float) -> np.ndarray:
    """Small Wigner matrix ``d^j_{m'm}(beta)``, rows m', columns m."""
    j = _as_j(j)
    tj = j.twice_value
    n = tj + 1
    c, s = math.cos(beta / 2), math.sin(beta / 2)
    f = math.factorial
    out = np.zeros((n, n))
    for a, tmp in enumerate(range(-tj, tj + 1, 2)):
        for b, tm in enumerate(range(-tj, tj + 1, 2)):
            jp, jm = (tj + tmp) // 2, (tj - tmp) // 2  # j+m', j-m'
            kp, km = (tj + tm) // 2, (tj - tm) // 2    # j+m,  j-m
            shift = (tmp - tm) // 2                    # m'-m
            norm = math.sqrt(f(jp) * f(jm) * f(kp) * f(km))
            total = 0.0
            for k in range(max(0, -shift), min(kp, jm) + 1):
                denom = f(kp - k) * f(k) * f(jm - k) * f(k + shift)
                total += (
                    (-1) ** (k + shift) / denom
                    * c ** (tj - 2 * k - shift) * s ** (2 * k + shift)
                )
            out[a, b] = norm * total
    return out


@dataclass(frozen=True)
class RotationAngles:
    """z-y-z Euler angles in radians."""

    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        if not all(math.isfinite(x) for x in (self.alpha, self.beta, self.gamma)):
            raise DomainError("rotation angles must be finite")

    def inverse(self) -> "RotationAngles":
        return RotationAngles(-self.gamma, -self.beta, -self.alpha)

    def cartesian(self) -> np.ndarray:
        """3x3 rotation matrix ``Rz(alpha) Ry(beta) Rz(gamma)``."""
        def rz(a):
            return np.array([[math.cos(a), -math.sin(a), 0], [math.sin(a), math.cos(a), 0], [0, 0, 1]])

        def ry(b):
            return np.array([[math.cos(b), 0, math.sin(b)], [0, 1, 0], [-math.sin(b), 0, math.cos(b)]])

        return rz(self.alpha) @ ry(self.beta) @ rz(self.gamma)


def wigner_D(j, angles: RotationAngles) -> np.ndarray:
    """Full rotation matrix ``D^j(alpha, beta, gamma)``."""
    m = np.array([p.value for p in projections(j)])
    left = np.exp(-1j * m * angles.alpha)
    right = np.exp(-1j * m * angles.gamma)
    return left[:, None] * wigner_d(j, angles.beta) * right[None, :]


def block_rotation(manifolds: Iterable, angles: RotationAngles) -> np.ndarray:
    """Block-diagonal rotation over a sequence of J manifolds."""
    blocks = [wigner_D(j, angles) for j in manifolds]
    size = sum(b.shape[0] for b in blocks)
    out = np.zeros((size, size), dtype=complex)
    i = 0
    for b in blocks:
        n = b.shape[0]
        out[i:i + n, i:i + n] = b
        i += n
    return out


def _manifolds(level_structure) -> Sequence:
    return getattr(level_structure, "manifolds", level_structure)


def rotate_density_matrix(rho, angles: RotationAngles, level_structure) -> np.ndarray:
    """Return ``D rho D^dagger`` for the block rotation over ``level_structure``.

    ``level_structure`` is either a sequence of J values or any object with a
    ``manifolds`` attribute (e.g. a ``TransitionScheme``).
    """
    rho = np.asarray(rho)
    D = block_rotation(_manifolds(level_structure), angles)
    if rho.shape != D.shape:
        raise DomainError(
            f"density matrix of shape {rho.shape} does not match level structure of dimension {D.shape[0]}"
        )
    return D @ rho @ D.conj().T


@dataclass(frozen=True)
class PolarizationVector:
    """Normalized light polarization in spherical components (q = -1, 0, +1)."""

    e_minus: complex
    e_zero: complex
    e_plus: complex

    def __post_init__(self):
        norm = abs(self.e_minus) ** 2 + abs(self.e_zero) ** 2 + abs(self.e_plus) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise DomainError(f"polarization vector must be normalized, |e|^2 = {norm}")

    @property
    def components(self) -> np.ndarray:
        return np.array([self.e_minus, self.e_zero, self.e_plus], dtype=complex)

    def component(self, q: int) -> complex:
        return self.components[q + 1]

    def cartesian(self) -> np.ndarray:
        em, e0, ep = self.components
        return np.array([(em - ep) / math.sqrt(2), -1j * (em + ep) / math.sqrt(2), e0])

    def rotated(self, angles: RotationAngles) -> "PolarizationVector":
        """Actively rotated polarization (transforms with ``D^1``)."""
        return PolarizationVector.from_components(wigner_D(1, angles) @ self.components)

    @classmethod
    def from_components(cls, comps) -> "PolarizationVector":
        comps = np.asarray(comps, dtype=complex)
        norm = np.linalg.norm(comps)
        if norm == 0:
            raise DomainError("zero polarization vector")
        comps = comps / norm
        return cls(complex(comps[0]), complex(comps[1]), complex(comps[2]))


def polarization_from_cartesian(ex, ey, ez) -> PolarizationVector:
    """Spherical components of the lab-frame polarization ``(ex, ey, ez)``."""
    ex, ey, ez = complex(ex), complex(ey), complex(ez)
    if ex == 0 and ey == 0 and ez == 0:
        raise DomainError("polarization vector must be nonzero")
    s = math.sqrt(2)
    return PolarizationVector.from_components([(ex + 1j * ey) / s, ez, -(ex - 1j * ey) / s])


NAMED_POLARIZATIONS = {
    "x": (1, 0, 0),
    "y": (0, 1, 0),
    "z": (0, 0, 1),
    "sigma+": (-1 / math.sqrt(2), -1j / math.sqrt(2), 0),
    "sigma-": (1 / math.sqrt(2), -1j / math.sqrt(2), 0),
}


def named_polarization(name: str) -> PolarizationVector:
    try:
        return polarization_from_cartesian(*NAMED_POLARIZATIONS[name])
    except KeyError:
        raise DomainError(
            f"unknown polarization {name!r}; expected one of {sorted(NAMED_POLARIZATIONS)}"
        ) from None


def alignment_angles(pol: PolarizationVector) -> RotationAngles:
    """Rotation taking the natural axis of ``pol`` onto the z axis.

    For linear light the natural axis is the polarization direction, so the
    rotated light is pure q = 0. Otherwise it is the normal of the
    polarization ellipse, so circular light becomes pure q = +-1.
    """
    e = pol.cartesian()
    normal = np.imag(np.cross(e.conj(), e))
    if np.linalg.norm(normal) < 1e-12:
        # linear up to a global phase: pick the phase that makes e real
        k = np.argmax(np.abs(e))
        axis = np.real(e * np.exp(-1j * np.angle(e[k])))
    else:
        axis = normal
    axis = axis / np.linalg.norm(axis)
    theta = math.acos(max(-1.0, min(1.0, axis[2])))
    phi = math.atan2(axis[1], axis[0])
    # R(phi, theta, 0) maps z onto axis; its inverse maps axis onto z
    return RotationAngles(phi, theta, 0.0).inverse()
