"""Tests for the C*-norm oracle."""
import math

import numpy as np
import pytest

from qsu2.algebra import AlgebraElement, from_word, generators
from qsu2.config import RepNormConfig
from qsu2.errors import ParameterError, UnsupportedError
from qsu2.repnorm import (
    RepPoint, character_values, cstar_norm, evaluate_su2, fock_matrix, norm_estimate, represent, sample_su2,
    su2_values, theta_grid, top_singular_pair,
)

CFG = RepNormConfig(theta_points=8, cutoff_start=20, cutoff_max=80, cutoff_tol=1e-8, su2_samples=4096)


# ---------------------------------------------------------------------------
# Fock representations
# ---------------------------------------------------------------------------
class TestFockMatrix:
    def test_a_star_is_adjoint(self):
        q = 0.5
        a, _, a_s, _ = generators(q)
        ma = fock_matrix(a, 0.3, 10)
        np.testing.assert_allclose(fock_matrix(a_s, 0.3, 10), ma.conj().T, atol=1e-14)

    def test_a_shift_weights(self):
        q = 0.5
        ma = fock_matrix(generators(q).a, 0.0, 5)
        for n in range(5):
            assert ma[n + 1, n] == pytest.approx(math.sqrt(1 - q ** (2 * n + 2)))

    def test_b_diagonal(self):
        q, theta = 0.5, 1.1
        mb = fock_matrix(generators(q).b, theta, 6)
        expected = np.exp(1j * theta) * q ** np.arange(7)
        np.testing.assert_allclose(np.diag(mb), expected, atol=1e-14)

    def test_products_represent_exactly_away_from_edge(self):
        q = 0.6
        x, y = from_word("aB", q), from_word("bA", q)
        cutoff = 12
        product = fock_matrix(x * y, 0.4, cutoff)
        composed = fock_matrix(x, 0.4, cutoff) @ fock_matrix(y, 0.4, cutoff)
        np.testing.assert_allclose(product[:cutoff - 2, :cutoff - 2], composed[:cutoff - 2, :cutoff - 2],
                                   atol=1e-12)

    def test_q_one_unsupported(self):
        with pytest.raises(UnsupportedError):
            represent(generators(1.0).a, RepPoint(0.0, 4))

    def test_bad_cutoff(self):
        with pytest.raises(ParameterError):
            RepPoint(0.0, 0)

    def test_matrix_operand_shape(self):
        q = 0.5
        a = generators(q).a
        z = AlgebraElement.zero(q)
        rep = represent(((a, z), (z, a)), RepPoint(0.0, 4))
        assert rep.shape == (10, 10)


# ---------------------------------------------------------------------------
# Norm estimates
# ---------------------------------------------------------------------------
class TestNormEstimate:
    def test_generators_have_norm_one(self):
        a, b, _, _ = generators(0.5)
        assert cstar_norm(a, CFG) == pytest.approx(1.0, abs=1e-9)
        assert cstar_norm(b, CFG) == pytest.approx(1.0, abs=1e-12)

    def test_converges_for_polynomial(self):
        est = norm_estimate(from_word("bB", 0.5), CFG)
        assert est.converged
        assert est.method == "fock"
        assert est.value == pytest.approx(1.0)

    def test_characters_included(self):
        q = 0.5
        a, _, a_s, _ = generators(q)
        # a + a* peaks at the character phi = 0 with value 2
        assert cstar_norm(a + a_s, CFG) == pytest.approx(2.0, abs=1e-6)

    def test_matrix_operand(self):
        q = 0.5
        a, b, _, _ = generators(q)
        z = AlgebraElement.zero(q)
        assert cstar_norm(((a, z), (z, b)), CFG) == pytest.approx(1.0, abs=1e-9)

    def test_non_square_operand(self):
        a = generators(0.5).a
        with pytest.raises(ParameterError):
            cstar_norm(((a,), (a,)), CFG)

    def test_budget_exhaustion_reported(self):
        cfg = RepNormConfig(theta_points=2, cutoff_start=2, cutoff_max=4, cutoff_tol=1e-14)
        est = norm_estimate(from_word("ab", 0.9), cfg)
        assert est.converged is False
        assert est.notes

    def test_to_dict(self):
        data = norm_estimate(generators(0.5).b, CFG).to_dict()
        assert data["lower_bound"] is True
        assert set(data) >= {"value", "residual", "method", "converged"}


class TestClassical:
    def test_sup_of_b(self):
        b = generators(1.0).b
        est = norm_estimate(b, CFG)
        assert est.method == "su2-sample"
        assert est.value == pytest.approx(1.0, abs=1e-4)

    def test_evaluate_su2(self):
        a, b, _, _ = generators(1.0)
        assert evaluate_su2(a, (1j, 0)) == pytest.approx(-1j)
        assert evaluate_su2(b, (0, 1)) == pytest.approx(1)

    def test_evaluate_requires_q_one(self):
        with pytest.raises(UnsupportedError):
            evaluate_su2(generators(0.5).a, (1, 0))

    def test_evaluate_requires_unit_point(self):
        with pytest.raises(ParameterError):
            evaluate_su2(generators(1.0).a, (1, 1))

    def test_samples_on_sphere(self):
        _, alpha, beta = sample_su2(100, seed=1)
        assert len(alpha) == 128
        np.testing.assert_allclose(np.abs(alpha) ** 2 + np.abs(beta) ** 2, 1.0, atol=1e-12)


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------
class TestHelpers:
    def test_characters(self):
        a = generators(0.5).a
        np.testing.assert_allclose(character_values(a, np.array([0.0, np.pi])), [1.0, -1.0], atol=1e-14)

    def test_theta_grid(self):
        np.testing.assert_allclose(theta_grid(4), [0, np.pi / 2, np.pi, 3 * np.pi / 2])

    def test_top_singular_pair(self):
        rng = np.random.default_rng(0)
        m = rng.normal(size=(6, 4)) + 1j * rng.normal(size=(6, 4))
        sigma, u_vec, v_vec = top_singular_pair(m, max_iter=2000, tol=1e-14)
        assert sigma == pytest.approx(np.linalg.norm(m, 2), rel=1e-8)
        np.testing.assert_allclose(m @ v_vec, sigma * u_vec, atol=1e-8)

    def test_top_singular_pair_zero(self):
        sigma, _, _ = top_singular_pair(np.zeros((3, 3)))
        assert sigma == 0.0


# ---------------------------------------------------------------------------
# C*-identities
# ---------------------------------------------------------------------------
class TestCStarIdentities:
    @pytest.mark.parametrize("q", [0.5, 1.0])
    def test_cstar_identity(self, q):
        a, b, _, b_s = generators(q)
        x = a + b_s.scale(2.0) + a * b
        norm = cstar_norm(x, CFG)
        assert cstar_norm(x.adjoint() * x, CFG) == pytest.approx(norm ** 2, rel=1e-4)

    @pytest.mark.parametrize("q", [0.5, 1.0])
    def test_adjoint_has_same_norm(self, q):
        a, b, _, b_s = generators(q)
        x = a + b_s.scale(2.0) + a * b
        assert cstar_norm(x.adjoint(), CFG) == pytest.approx(cstar_norm(x, CFG), rel=1e-6)

    def test_dominates_characters(self):
        a, b, a_s, _ = generators(0.5)
        x = a + a_s.scale(0.5j) + b
        values = np.abs(character_values(x, theta_grid(CFG.theta_points)))
        assert cstar_norm(x, CFG) >= values.max() - 1e-12

    def test_classical_dominates_sampled_values(self):
        a, b, _, b_s = generators(1.0)
        x = a * b + b_s.scale(0.5)
        _, alpha, beta = sample_su2(CFG.su2_samples, 0)
        assert cstar_norm(x, CFG) >= np.abs(su2_values(x, alpha, beta)).max() - 1e-12
