"""Tests for the twisted derivations, seminorms and Dirac spectra."""
import math

import numpy as np
import pytest

from qsu2.algebra import AlgebraElement, QParams, from_word, generators, random_element
from qsu2.algebra.qnumbers import mu
from qsu2.config import RepNormConfig
from qsu2.dirac import (
    GradedOperator2, adjoint_residual, block_entries, conjugation_residual, delta_adjoint_residual, derivative,
    derivative_podles, dirac_block, dirac_blocks, dirac_spectrum, first_order_check, lipschitz_estimate, partial_three,
    real_structure_J, seminorm_estimate, seminorm_L, seminorm_podles, twisted_leibniz_residual,
)
from qsu2.errors import ParameterError, QParamsMismatchError, UnsupportedError

CFG = RepNormConfig(theta_points=8, cutoff_start=20, cutoff_max=80, cutoff_tol=1e-8, su2_samples=4096)


def monomials(q, degree):
    out = []
    for k in range(-degree, degree + 1):
        for l in range(degree - abs(k) + 1):  # noqa: E741
            for m in range(degree - abs(k) - l + 1):
                out.append(AlgebraElement.monomial(k, l, m, q))
    return out


# ---------------------------------------------------------------------------
# Derivations
# ---------------------------------------------------------------------------
class TestDerivative:
    def test_kills_scalars(self):
        assert derivative(AlgebraElement.one(0.5), QParams(0.5, 0.7)).is_zero()

    def test_vertical_entry(self):
        p = QParams(0.5, 0.7)
        a = generators(p.q).a
        assert partial_three(a, p).coeff(1, 0, 0) == pytest.approx(mu(p.t))

    def test_derivative_of_b(self):
        p = QParams(0.5, 0.5)
        _, b, a_s, _ = generators(p.q)
        d = derivative(b, p)
        assert d[0, 1].is_zero()
        assert d[1, 0].allclose(a_s.scale(1 / math.sqrt(p.q)))

    @pytest.mark.parametrize("q", [0.5, 0.8, 1.0])
    def test_conjugation_by_fundamental_unitary(self, q):
        for x in monomials(q, 4):
            assert conjugation_residual(x) < 1e-9

    def test_adjoint_rule(self):
        p = QParams(0.6, 0.8)
        for x in monomials(p.q, 3):
            assert adjoint_residual(x, p) < 1e-10

    def test_twisted_leibniz(self):
        p = QParams(0.6, 0.8)
        rng = np.random.default_rng(2)
        for _ in range(5):
            x, y = random_element(rng, p.q, max_degree=2), random_element(rng, p.q, max_degree=2)
            assert twisted_leibniz_residual(x, y, p) < 1e-9

    def test_first_order(self):
        p = QParams(0.5, 0.5)
        a, b, _, _ = generators(p.q)
        assert first_order_check(a, b, p, cutoff=4) < 1e-9

    def test_first_order_cutoff_too_small(self):
        p = QParams(0.5, 0.5)
        x = from_word("aa", p.q)
        with pytest.raises(ParameterError):
            first_order_check(x, x, p, cutoff=3)

    def test_podles_needs_grade_zero(self):
        with pytest.raises(ParameterError):
            derivative_podles(generators(0.5).a, 0.5)

    def test_mismatched_q(self):
        with pytest.raises(QParamsMismatchError):
            derivative(generators(0.5).a, QParams(0.8, 0.5))


class TestRightDelta:
    def test_star_compatible(self, q):
        for x in monomials(q, 3):
            assert delta_adjoint_residual(x) < 1e-9

    def test_random_elements(self):
        rng = np.random.default_rng(5)
        for _ in range(4):
            assert delta_adjoint_residual(random_element(rng, 0.5, max_degree=3)) < 1e-9


class TestRealStructure:
    def test_involution(self, q):
        rng = np.random.default_rng(7)
        for _ in range(4):
            x = random_element(rng, q, max_degree=3)
            assert real_structure_J(real_structure_J(x)).allclose(x, 1e-9)

    def test_antilinear(self):
        rng = np.random.default_rng(8)
        x, y = random_element(rng, 0.5, max_degree=2), random_element(rng, 0.5, max_degree=2)
        c = 2.0 - 3.0j
        assert real_structure_J(x.scale(c)).allclose(real_structure_J(x).scale(c.conjugate()), 1e-9)
        assert real_structure_J(x + y).allclose(real_structure_J(x) + real_structure_J(y), 1e-9)

    def test_fixes_unit(self):
        one = AlgebraElement.one(0.5)
        assert real_structure_J(one).allclose(one)


class TestGradedOperator2:
    def test_matmul_and_adjoint(self):
        q = 0.5
        a, b, a_s, b_s = generators(q)
        u_op = GradedOperator2(((a_s, b.scale(-q)), (b_s, a)))
        product = u_op @ u_op.adjoint()
        assert product.distance(GradedOperator2.diagonal(AlgebraElement.one(q), AlgebraElement.one(q))) < 1e-12

    def test_shape_checked(self):
        a = generators(0.5).a
        with pytest.raises(ParameterError):
            GradedOperator2(((a,), (a,)))


# ---------------------------------------------------------------------------
# Seminorms
# ---------------------------------------------------------------------------
class TestSeminorm:
    def test_scalar_exact_zero(self):
        est = seminorm_estimate(AlgebraElement.scalar(3.0, 0.5), QParams(0.5, 0.5), CFG)
        assert est.value == 0.0
        assert est.method == "exact"

    def test_adjoint_invariant(self):
        p = QParams(0.5, 0.5)
        b = generators(p.q).b
        assert seminorm_L(b.adjoint(), p, CFG) == pytest.approx(seminorm_L(b, p, CFG), rel=1e-9)

    def test_bounded_below_by_entry(self):
        p = QParams(0.5, 0.5)
        # the (1, 0) entry of d(b) is q^{-1/2} a*, of norm q^{-1/2}
        assert seminorm_L(generators(p.q).b, p, CFG) >= 1 / math.sqrt(p.q) - 1e-9

    def test_classical_real_part_of_a(self):
        p = QParams(1.0, 1.0)
        a, _, a_s, _ = generators(1.0)
        f = (a + a_s).scale(0.5)
        lip = seminorm_L(f, p, CFG)
        assert lip == pytest.approx(0.5, rel=0.05)
        assert 2 * lip == pytest.approx(lipschitz_estimate(f, samples=2048), rel=0.05)


class TestPodlesSeminorm:
    def test_matches_tq_seminorm_on_grade_zero(self):
        q = 0.5
        x = from_word("bB", q) + from_word("Aa", q).scale(2.0)
        podles = seminorm_podles(x, q, CFG)
        assert podles > 0
        for t in (0.3, 0.7, 1.0):
            assert seminorm_L(x, QParams(q, t), CFG) == pytest.approx(podles, rel=1e-9)

    def test_scalars(self):
        assert seminorm_podles(AlgebraElement.scalar(2.0, 0.5), 0.5, CFG) == 0.0

    def test_rejects_nonzero_grade(self):
        with pytest.raises(ParameterError):
            seminorm_podles(generators(0.5).b, 0.5, CFG)


class TestClassicalCoordinates:
    def test_imaginary_part_of_a(self):
        p = QParams(1.0, 1.0)
        a, _, a_s, _ = generators(1.0)
        f = (a - a_s).scale(-0.5j)
        lip = seminorm_L(f, p, CFG)
        assert lip == pytest.approx(0.5, rel=0.05)
        assert 2 * lip == pytest.approx(lipschitz_estimate(f, samples=2048), rel=0.05)

    def test_real_part_of_b(self):
        p = QParams(1.0, 1.0)
        _, b, _, b_s = generators(1.0)
        f = (b + b_s).scale(0.5)
        lip = seminorm_L(f, p, CFG)
        assert lip == pytest.approx(0.5, rel=0.05)
        assert 2 * lip == pytest.approx(lipschitz_estimate(f, samples=2048), rel=0.05)


class TestLipschitz:
    def test_coordinate_function(self):
        a, _, a_s, _ = generators(1.0)
        assert lipschitz_estimate((a + a_s).scale(0.5), samples=2048) == pytest.approx(1.0, abs=1e-3)

    def test_requires_classical(self):
        a = generators(0.5).a
        with pytest.raises(UnsupportedError):
            lipschitz_estimate(a + a.adjoint())

    def test_requires_real_function(self):
        with pytest.raises(ParameterError):
            lipschitz_estimate(generators(1.0).a)


# ---------------------------------------------------------------------------
# Spectrum
# ---------------------------------------------------------------------------
class TestSpectrum:
    @pytest.mark.parametrize("n", range(11))
    def test_classical_eigenvalues(self, n):
        p = QParams(1.0, 1.0)
        for block in dirac_blocks(n, p):
            if block.n != n:
                continue
            for ev in block.eigenvalues:
                assert abs(abs(ev) - (n + 1) / 2) < 1e-12

    def test_classical_multiplicities(self):
        result = dirac_spectrum(6, QParams(1.0, 1.0))
        for n, counts in result.multiplicities.items():
            assert counts.get((n + 1) / 2, 0) == n * (n + 1)
            assert counts[-(n + 1) / 2] == (n + 1) * (n + 2)

    def test_two_lambda_plus_one_column(self):
        rows = dirac_spectrum(2, QParams(1.0, 1.0)).rows
        assert all(row["two_lambda_plus_one"] == 2 * row["eigenvalue"] + 1 for row in rows)

    def test_block_closed_form(self):
        p = QParams(0.6, 0.8)
        for n in range(5):
            for j in range(1, n + 1):
                a, c = block_entries(n, j, p)
                expected = math.sqrt(a * a + c * c)
                assert dirac_block(n, 0, j, p).eigenvalues == pytest.approx([-expected, expected], abs=1e-12)

    def test_known_block(self):
        assert dirac_block(1, 0, 1, QParams(0.5, 0.5)).eigenvalues == pytest.approx([-1.0, 1.0], abs=1e-12)

    def test_level_zero(self):
        p = QParams(0.5, 0.5)
        result = dirac_spectrum(0, p)
        assert len(result.rows) == 2
        values = sorted(row["eigenvalue"] for row in result.rows)
        assert values == pytest.approx(sorted([-math.sqrt(p.t) * mu(p.t), -mu(p.t) / math.sqrt(p.t)]))

    def test_vertical_horizontal_anticommute(self):
        for block in dirac_blocks(3, QParams(0.5, 0.7)):
            assert block.anticommutator_residual() < 1e-14

    def test_bad_labels(self):
        with pytest.raises(ParameterError):
            dirac_block(1, 2, 0, QParams(0.5, 0.5))
        with pytest.raises(ParameterError):
            dirac_blocks(-1, QParams(0.5, 0.5))
