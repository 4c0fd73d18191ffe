"""Tests for corepresentation matrix coefficients."""
import pytest

from qsu2.algebra import AlgebraElement, generators, haar, modular_nu, project_grade
from qsu2.cache import DiskCache, LayeredStore
from qsu2.corep import (
    adjoint_formula_check, adjoint_formula_residual, coproduct_residual, corep_level, expected_norm_squared, l2_inner,
    matrix_coeff, pairing, pairing_action_residual, product_rule_residual, reconstruct_spectral, reset_store, u,
    u_matrix, unitarity_residual,
)
from qsu2.errors import IdentityError, ParameterError


class TestLowLevels:
    def test_level_zero(self):
        assert u(0, 0, 0, 0.5).allclose(AlgebraElement.one(0.5))

    def test_fundamental_unitary(self):
        q = 0.5
        a, b, a_s, b_s = generators(q)
        (u00, u01), (u10, u11) = u_matrix(q)
        assert u00.allclose(a_s)
        assert u01.allclose(b.scale(-q))
        assert u10.allclose(b_s)
        assert u11.allclose(a)

    def test_corner_is_power_of_a_star(self):
        q = 0.5
        a_s = generators(q).a_star
        assert u(4, 0, 0, q).allclose(a_s ** 4, 1e-12)

    def test_out_of_range_is_zero(self):
        assert matrix_coeff(2, 3, 0, 0.5).expansion.is_zero()
        assert matrix_coeff(-1, 0, 0, 0.5).expansion.is_zero()

    def test_negative_level_rejected(self):
        with pytest.raises(ParameterError):
            corep_level(-1, 0.5)

    def test_grade(self):
        assert matrix_coeff(3, 1, 2, 0.5).grade == 1
        coeff = u(3, 1, 2, 0.5)
        assert coeff.grades() == {1}
        assert project_grade(coeff, 1).allclose(coeff)


# ---------------------------------------------------------------------------
# Identities
# ---------------------------------------------------------------------------
class TestIdentities:
    @pytest.mark.parametrize("n", range(7))
    def test_unitarity(self, n, q):
        assert unitarity_residual(n, q) < 1e-9

    def test_adjoint_formula(self, q):
        for n in range(5):
            for i in range(n + 1):
                for j in range(n + 1):
                    assert adjoint_formula_residual(n, i, j, q) < 1e-9

    def test_adjoint_formula_check(self, q):
        assert all(adjoint_formula_check(n, i, j, q) for n in range(5) for i in range(n + 1) for j in range(n + 1))

    def test_adjoint_formula_check_uses_tolerance(self, monkeypatch):
        import qsu2.corep as corep

        monkeypatch.setattr(corep, "adjoint_formula_residual", lambda n, i, j, q: 1e-6)
        assert not adjoint_formula_check(1, 0, 1, 0.5)
        assert adjoint_formula_check(1, 0, 1, 0.5, tol=1e-5)

    def test_coproduct(self):
        for i in range(3):
            for j in range(3):
                assert coproduct_residual(2, i, j, 0.6) < 1e-10

    @pytest.mark.parametrize("gen", ["a", "a_star", "b", "b_star"])
    def test_product_rules(self, gen, q):
        for n in range(4):
            for i in range(n + 1):
                for j in range(n + 1):
                    assert product_rule_residual(gen, n, i, j, q) < 1e-9

    def test_product_rule_unknown_generator(self):
        with pytest.raises(ParameterError):
            product_rule_residual("c", 1, 0, 0, 0.5)

    def test_l2_norms(self):
        q = 0.5
        for n in range(5):
            for i in range(n + 1):
                x = u(n, i, 0, q)
                assert l2_inner(x, x).real == pytest.approx(expected_norm_squared(n, i, q), rel=1e-9)

    def test_orthogonality(self):
        q = 0.5
        assert abs(l2_inner(u(2, 0, 1, q), u(2, 1, 1, q))) < 1e-12
        assert abs(haar(u(3, 1, 1, q))) < 1e-12


class TestModular:
    def test_scales_matrix_coefficients(self, q):
        for n in range(4):
            for i in range(n + 1):
                for j in range(n + 1):
                    x = u(n, i, j, q)
                    assert modular_nu(x).allclose(x.scale(q ** (2 * (n - i - j))), 1e-9)

    def test_square_root_and_inverse(self, q):
        for n, i, j in ((1, 0, 0), (2, 0, 1), (3, 2, 2), (3, 1, 0)):
            x = u(n, i, j, q)
            assert modular_nu(x, 0.5).allclose(x.scale(q ** (n - i - j)), 1e-9)
            assert modular_nu(x, -1.0).allclose(x.scale(q ** (-2 * (n - i - j))), 1e-9)

    def test_rejects_other_powers(self):
        with pytest.raises(ParameterError):
            modular_nu(u(1, 0, 0, 0.5), 2.0)


class TestPairing:
    def test_k_diagonal(self):
        q = 0.5
        assert pairing("k", 2, 1, 1, q) == pytest.approx(1.0)
        assert pairing("k", 2, 0, 1, q) == 0.0

    def test_unknown_generator(self):
        with pytest.raises(ParameterError):
            pairing("h", 1, 0, 0, 0.5)

    @pytest.mark.parametrize("gen", ["e", "f", "k"])
    def test_action_matches_pairing(self, gen):
        for n in range(4):
            for i in range(n + 1):
                for j in range(n + 1):
                    assert pairing_action_residual(gen, n, i, j, 0.7) < 1e-9


class TestSpectralReconstruction:
    def test_reconstructs_grade(self):
        q = 0.5
        x = u(2, 0, 2, q) + u(2, 1, 1, q) + u(1, 0, 1, q)
        for m in (-1, 0, 1, 2):
            assert reconstruct_spectral(x, m).allclose(project_grade(x, m), 1e-9)

    def test_raises_on_failure(self, monkeypatch):
        import qsu2.corep as corep

        monkeypatch.setattr(corep, "_frame", lambda m, q: [AlgebraElement.one(q).scale(2.0)])
        with pytest.raises(IdentityError):
            reconstruct_spectral(u(1, 1, 1, 0.5), 1)


class TestCaching:
    def test_levels_persist_to_disk(self, tmp_path):
        disk = DiskCache(tmp_path / "corep")
        reset_store(LayeredStore(disk))
        first = corep_level(3, 0.5)
        assert disk.size() == 4  # levels 0..3

        reset_store(LayeredStore(disk))
        second = corep_level(3, 0.5)
        for row_a, row_b in zip(first, second):
            for x, y in zip(row_a, row_b):
                assert x.allclose(y, 1e-15)
