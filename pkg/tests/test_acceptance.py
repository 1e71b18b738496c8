"""Acceptance checks, one test per criterion, each at its stated tolerance and time budget."""

import math
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from zeeman_qo.angmom import alignment_angles, named_polarization, polarization_from_cartesian, rotate_density_matrix
from zeeman_qo.burshtein import TwoLevelParams, amplitudes, case_params, classify_regime, population_b, restored_envelope
from zeeman_qo.dml import (
    DmlScenario,
    probe_gain,
    probe_transitions,
    pump_scheme,
    pump_steady_state_j1j2,
    unpumped_state,
)
from zeeman_qo.lindblad import DEFAULT_RTOL, TransitionScheme, evolve, scheme_liouvillian, unvec, vec
from zeeman_qo.pumping import dark_states, naive_answers, run_pumping

ROOT = Path(__file__).resolve().parent.parent
ISOTROPIC = np.eye(3, dtype=complex) / 3
criterion = pytest.mark.criterion


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


@pytest.fixture(scope="module")
def problem_one():
    with Timer() as t:
        report = run_pumping(TransitionScheme(1, 0), named_polarization("x"), ISOTROPIC)
    return report, t.elapsed


@criterion(1, "Problem One endpoint (1/4, 1/2, 1/4)")
def test_problem_one_endpoint(problem_one):
    report, elapsed = problem_one
    assert np.max(np.abs(report.final_ground_populations - [0.25, 0.5, 0.25])) <= 1e-6
    assert elapsed < 5


@criterion(2, "wrong-answer exclusion")
def test_wrong_answers_excluded(problem_one):
    report, _ = problem_one
    for label, row in naive_answers()[:2]:
        assert np.max(np.abs(report.final_ground_populations - np.array(row, dtype=float))) > 0.05, label


@criterion(3, "basis invariance of Problem One")
def test_basis_invariance():
    with Timer() as t:
        x = named_polarization("x")
        direct = run_pumping(TransitionScheme(1, 0), x, ISOTROPIC).final_state
        angles = alignment_angles(x)
        # in the rotated frame the light is pi-polarized; the isotropic start is unchanged
        rotated_pol = x.rotated(angles)
        assert abs(abs(rotated_pol.component(0)) - 1) < 1e-12
        rotated_start = rotate_density_matrix(ISOTROPIC, angles, [1])
        in_frame = run_pumping(TransitionScheme(1, 0), rotated_pol, rotated_start).final_state
        back = rotate_density_matrix(in_frame, angles.inverse(), [1, 0])
    assert np.max(np.abs(back - direct)) <= 1e-6
    assert t.elapsed < 10


@criterion(4, "dark-state structure for x and z light")
def test_dark_state_structure():
    with Timer() as t:
        s = TransitionScheme(1, 0)
        bx = dark_states(s, named_polarization("x"))
        bz = dark_states(s, named_polarization("z"))
    assert len(bx) == 2 and len(bz) == 2
    v = np.array([1, 0, 1]) / math.sqrt(2)
    Px = sum(np.outer(b, b.conj()) for b in bx)
    assert np.real(v @ Px @ v) >= 1 - 1e-10
    Pz = sum(np.outer(b, b.conj()) for b in bz)
    assert np.max(np.abs(Pz - np.diag([1, 0, 1]))) <= 1e-10
    assert t.elapsed < 1


@criterion(5, "two-state case 1 is sin^2(omega t / 2)")
def test_case1_sin_squared():
    with Timer() as t:
        p = case_params(1, omega=1.0)
        times = np.linspace(0, 10 * np.pi, 1000)
        pb = population_b(times, p)
    assert np.max(np.abs(pb - np.sin(times / 2) ** 2)) <= 1e-9
    assert t.elapsed < 1


@criterion(6, "case 4 envelope restoration")
def test_case4_restoration():
    with Timer() as t:
        p = case_params(4, omega=1.0, gamma_factor=10)
        times = np.linspace(0, 10 * np.pi, 1000)
        case1 = population_b(times, case_params(1, omega=1.0))
        restored = restored_envelope(times, p)
    assert np.max(np.abs(restored - case1)) <= 1e-8
    assert t.elapsed < 1


@criterion(7, "case 3 shape: zero at 0 and at T = 200/gamma_b, positive between")
def test_case3_shape():
    with Timer() as t:
        omega = 1.0
        p = TwoLevelParams(omega, 0.0, 20 * omega)
        T = 200 / p.gamma_b
        times = np.linspace(0, T, 1000)
        pb = population_b(times, p)
    assert pb[0] == 0
    assert np.all(pb[1:-1] > 0)
    assert t.elapsed < 1
    # A drains through B at omega^2 / gamma_b, so this T is only half of one
    # such decay time; p_b(T) ~ 1.5e-3 here
    assert pb[-1] < 1e-6


def _numeric(t, p, c0):
    def rhs(_, y):
        return [-p.gamma_a / 2 * y[0] - 0.5j * p.omega * y[1], -p.gamma_b / 2 * y[1] - 0.5j * p.omega * y[0]]

    return solve_ivp(rhs, (0, t), np.asarray(c0, dtype=complex), method="DOP853", rtol=1e-12, atol=1e-14).y[:, -1]


@criterion(8, "closed form vs adaptive integration, 200 random sets")
def test_closed_form_vs_integration():
    rng = np.random.default_rng(20260601)
    regimes = set()
    worst = 0.0
    with Timer() as timer:
        for i in range(200):
            omega = rng.uniform(0.1, 3.0)
            ga = rng.uniform(0, 6)
            kind = i % 3
            if kind == 0:    # oscillatory
                gb = ga + rng.uniform(0, 1.9 * omega) * rng.choice([-1, 1])
            elif kind == 1:  # critically damped
                gb = ga + 2 * omega
            else:            # overdamped
                gb = ga + 2 * omega + rng.uniform(0.5, 10)
            gb = abs(gb)
            p = TwoLevelParams(omega, ga, gb)
            regimes.add(classify_regime(p))
            theta = rng.uniform(0, 2 * np.pi)
            c0 = (math.cos(theta), 1j * math.sin(theta))
            t = rng.uniform(0, 20 / omega)
            worst = max(worst, np.max(np.abs(np.array(amplitudes(t, p, c0)) - _numeric(t, p, c0))))
    assert len(regimes) == 3
    assert worst <= 1e-9
    assert timer.elapsed < 30


def _small_schemes():
    for jg2 in range(0, 5):
        for je2 in range(0, 5):
            if (jg2 + 1) + (je2 + 1) <= 5 and abs(jg2 - je2) <= 2 and (jg2, je2) != (0, 0) and (jg2 + je2) % 2 == 0:
                yield jg2 / 2, je2 / 2


@criterion(9, "Lindblad evolution vs dense exponentiation, d <= 5")
def test_lindblad_vs_expm():
    rng = np.random.default_rng(7)
    schemes = list(_small_schemes())
    assert schemes
    tol = DEFAULT_RTOL
    worst = 0.0
    with Timer() as timer:
        for jg, je in schemes:
            s = TransitionScheme(jg, je, omega=1.3, delta=0.4)
            pol = polarization_from_cartesian(*(rng.normal(size=3) + 1j * rng.normal(size=3)))
            L = scheme_liouvillian(s, pol)
            t = 3.0
            U = expm(L.matrix * t)
            for _ in range(20):
                a = rng.normal(size=(s.dim, s.dim)) + 1j * rng.normal(size=(s.dim, s.dim))
                rho0 = a @ a.conj().T
                rho0 /= np.trace(rho0)
                ref = unvec(U @ vec(rho0))
                worst = max(worst, np.max(np.abs(evolve(rho0, L, t, tol=tol) - ref)))
    assert worst <= 10 * tol
    assert timer.elapsed < 60


@criterion(10, "DML baseline properties")
def test_dml_properties():
    with Timer() as timer:
        wl = 780.24e-9

        def scenario(omega, n):
            return DmlScenario(pump_scheme(omega), n=n, L=0.05, R=1e-3, wavelength=wl)

        assert probe_gain(scenario(1.0, 1e17), unpumped_state()).g < 0
        for omega in (0.1, 1.0, 10.0):
            rho = pump_steady_state_j1j2(omega)
            g1 = probe_gain(scenario(omega, 1e16), rho).g
            for k in (3.0, 1e3):
                assert abs(probe_gain(scenario(omega, k * 1e16), rho).g - k * g1) <= 1e-12 * abs(k * g1)
            pops = np.real(np.diag(rho))
            assert np.max(np.abs(pops[:3] - pops[2::-1])) <= 1e-10
            assert np.max(np.abs(pops[3:] - pops[:2:-1])) <= 1e-10
        weights = [w for *_, w in probe_transitions(pump_scheme(1.0), named_polarization("x"))]
        assert abs(sum(weights) - 1) <= 1e-12
    assert timer.elapsed < 30


@criterion(11, "CLI determinism on every bundled config")
def test_cli_determinism():
    configs = sorted((ROOT / "configs").glob("*.conf"))
    assert configs
    with Timer() as timer:
        for cfg in configs:
            outs = [
                subprocess.run([sys.executable, "-m", "zeeman_qo", "run", str(cfg)],
                               capture_output=True, check=True).stdout
                for _ in range(2)
            ]
            assert outs[0] and outs[0] == outs[1], cfg.name
    assert timer.elapsed < 60
