"""Adaptive Dormand-Prince 5(4) integration for linear and nonlinear ODEs."""

from __future__ import annotations

import math
from typing import Callable, Optional

import numpy as np

from .errors import StiffnessError

# Butcher tableau, Dormand & Prince (1980)
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40])
_E = _B5 - _B4

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 5.0


class DormandPrince:
    """Stateful embedded 5(4) stepper with local extrapolation.

    The fifth-order solution is propagated and the embedded fourth-order
    solution supplies the error estimate. ``advance_to`` lands exactly on the
    requested time and keeps the current step size for the next call.

    Parameters
    ----------
    fun : callable
        Right-hand side ``fun(t, y)``.
    t0, y0 :
        Initial time and state (any shape; complex allowed).
    rtol, atol : float
        Per-component error target ``atol + rtol * max(|y|, |y_new|)``.
    postprocess : callable, optional
        Applied to each accepted state, e.g. to re-impose a symmetry.
    """

    def __init__(
        self,
        fun: Callable[[float, np.ndarray], np.ndarray],
        t0: float,
        y0,
        rtol: float = 1e-10,
        atol: float = 1e-13,
        postprocess: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        max_steps: int = 10_000_000,
    ):
        self.fun = fun
        self.t = float(t0)
        self.y = np.array(y0)
        self.rtol = rtol
        self.atol = atol
        self.postprocess = postprocess
        self.max_steps = max_steps
        self.h = None
        self.n_accepted = 0
        self.n_rejected = 0
        self._k0 = self.fun(self.t, self.y)

    def _initial_step(self, direction_span):
        scale = self.atol + self.rtol * np.abs(self.y)
        d0 = np.sqrt(np.mean(np.abs(self.y / scale) ** 2))
        d1 = np.sqrt(np.mean(np.abs(self._k0 / scale) ** 2))
        h = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
        return min(h, direction_span)

    def _try_step(self, h):
        y, t = self.y, self.t
        k = [self._k0]
        for i in range(1, 7):
            yi = y + h * sum(a * kk for a, kk in zip(_A[i], k))
            k.append(self.fun(t + _C[i] * h, yi))
        # stage 7 is evaluated at the fifth-order solution (FSAL)
        y_new = y + h * sum(b * kk for b, kk in zip(_B5[:6], k[:6]))
        err = h * sum(e * kk for e, kk in zip(_E, k))
        scale = self.atol + self.rtol * np.maximum(np.abs(y), np.abs(y_new))
        err_norm = float(np.max(np.abs(err) / scale))
        return y_new, k[6], err_norm

    def advance_to(self, t_end: float) -> np.ndarray:
        t_end = float(t_end)
        if t_end < self.t:
            raise ValueError("DormandPrince only integrates forward in time")
        if t_end == self.t:
            return self.y
        if self.h is None:
            self.h = self._initial_step(t_end - self.t)
        steps = 0
        while self.t < t_end:
            h_min = 1e-14 * max(abs(self.t), abs(t_end), 1e-300) + 1e-300
            remaining = t_end - self.t
            h = min(self.h, remaining)
            last = h == remaining
            if h < h_min:
                raise StiffnessError(
                    f"step size underflow at t={self.t:.6g} (h={h:.3g}); the problem "
                    "is too stiff for explicit integration, use the steady-state solver"
                )
            y_new, k_last, err = self._try_step(h)
            if not math.isfinite(err):
                self.h = h * MIN_FACTOR
                self.n_rejected += 1
                continue
            factor = MAX_FACTOR if err == 0 else min(MAX_FACTOR, max(MIN_FACTOR, SAFETY * err ** -0.2))
            if err <= 1.0:
                self.t = t_end if last else self.t + h
                if self.postprocess is not None:
                    y_new = self.postprocess(y_new)
                    k_last = self.fun(self.t, y_new)
                self.y = y_new
                self._k0 = k_last
                self.n_accepted += 1
                # a truncated final step says nothing about the natural step size
                if not last or factor < 1.0:
                    self.h = h * factor
            else:
                self.h = h * min(1.0, factor)
                self.n_rejected += 1
            steps += 1
            if steps > self.max_steps:
                raise StiffnessError(f"exceeded {self.max_steps} steps before t={t_end:.6g}")
        return self.y
