import math

import numpy as np
import pytest

from zeeman_qo.angmom import named_polarization, polarization_from_cartesian
from zeeman_qo.errors import DomainError
from zeeman_qo.lindblad import TransitionScheme, build_coupling
from zeeman_qo.pumping import dark_occupation_history, dark_states, naive_answers, run_pumping

ISOTROPIC = np.eye(3, dtype=complex) / 3


def projector(vectors):
    return sum(np.outer(v, v.conj()) for v in vectors)


class TestDarkStates:
    def test_x_polarization(self):
        basis = dark_states(TransitionScheme(1, 0), named_polarization("x"))
        assert len(basis) == 2
        P = projector(basis)
        for v in (np.array([0, 1, 0]), np.array([1, 0, 1]) / math.sqrt(2)):
            assert np.real(v.conj() @ P @ v) >= 1 - 1e-10

    def test_z_polarization(self):
        basis = dark_states(TransitionScheme(1, 0), named_polarization("z"))
        np.testing.assert_allclose(projector(basis), np.diag([1, 0, 1]), atol=1e-12)

    def test_j1_j2_z_has_none(self):
        s = TransitionScheme(1, 2)
        pol = named_polarization("z")
        # oracle: singular values of the 5x3 coupling block
        assert np.min(np.linalg.svd(build_coupling(s, pol), compute_uv=False)) > 0.1
        assert dark_states(s, pol) == []

    @pytest.mark.parametrize("name", ["x", "y", "z", "sigma+"])
    def test_orthonormal(self, name):
        for jg, je in [(1, 0), (1, 1), (2, 1), (1.5, 0.5)]:
            basis = dark_states(TransitionScheme(jg, je), named_polarization(name))
            if basis:
                G = np.array(basis).conj() @ np.array(basis).T
                np.testing.assert_allclose(G, np.eye(len(basis)), atol=1e-12)


class TestRunPumping:
    def test_problem_one(self):
        rep = run_pumping(TransitionScheme(1, 0), named_polarization("x"), ISOTROPIC)
        np.testing.assert_allclose(rep.final_ground_populations, [0.25, 0.5, 0.25], atol=1e-6)
        assert rep.consistency_residual <= 1e-6
        assert rep.excited_population <= 1e-10
        assert abs(rep.final_ground_populations.sum() - 1) <= 1e-8
        for label, row in naive_answers()[:2]:
            assert np.max(np.abs(rep.final_ground_populations - np.array(row, dtype=float))) > 0.05

    def test_z_polarization(self):
        rep = run_pumping(TransitionScheme(1, 0), named_polarization("z"), ISOTROPIC)
        np.testing.assert_allclose(rep.final_ground_populations, [0.5, 0.0, 0.5], atol=1e-6)

    def test_dark_start_is_complete(self):
        v = np.array([1, 0, 1]) / math.sqrt(2)
        rep = run_pumping(TransitionScheme(1, 0), named_polarization("x"), np.outer(v, v))
        assert rep.time_to_completion == 0.0
        np.testing.assert_allclose(rep.final_state[:3, :3], np.outer(v, v), atol=1e-14)

    @pytest.mark.parametrize("omega", [0.1, 1.0, 10.0])
    def test_endpoint_independent_of_intensity(self, omega):
        rep = run_pumping(TransitionScheme(1, 0, omega=omega), named_polarization("x"), ISOTROPIC)
        np.testing.assert_allclose(rep.final_ground_populations, [0.25, 0.5, 0.25], atol=1e-6)

    @pytest.mark.parametrize("jg,je,pol", [
        (1, 0, polarization_from_cartesian(0.3, -0.5, 0.8)),
        (1, 1, named_polarization("z")),
        (1, 1, named_polarization("x")),
        (2, 1, named_polarization("sigma+")),
        (0.5, 0.5, named_polarization("sigma-")),
    ])
    def test_basis_consistency(self, jg, je, pol):
        s = TransitionScheme(jg, je)
        rep = run_pumping(s, pol, np.eye(s.n_ground, dtype=complex) / s.n_ground)
        assert rep.consistency_residual <= 1e-6
        assert rep.excited_population <= 1e-10
        assert abs(rep.final_ground_populations.sum() - 1) <= 1e-8

    def test_rejects_bad_initial_state(self):
        with pytest.raises(DomainError):
            run_pumping(TransitionScheme(1, 0), named_polarization("x"), np.eye(3))
        with pytest.raises(DomainError):
            run_pumping(TransitionScheme(1, 0), named_polarization("x"), np.eye(2) / 2)

    def test_dark_occupation_never_decreases(self):
        s = TransitionScheme(1, 0)
        for name in ("x", "z"):
            _, occ = dark_occupation_history(s, named_polarization(name), ISOTROPIC, t_end=60.0, samples=100)
            assert np.all(np.diff(occ, axis=0) >= -1e-8)
            np.testing.assert_allclose(occ[0], [1 / 3, 1 / 3], atol=1e-12)


def test_naive_answers():
    rows = [row for _, row in naive_answers()]
    assert rows[0] == (0, 1, 0)
    assert [float(x) for x in rows[1]] == pytest.approx([1 / 6, 2 / 3, 1 / 6])
    assert [float(x) for x in rows[2]] == pytest.approx([0.25, 0.5, 0.25])
