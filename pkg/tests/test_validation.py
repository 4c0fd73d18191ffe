"""Tests for the validation engine and the identity suites."""
from unittest import mock

import pytest

from qsu2.algebra import actions
from qsu2.errors import OracleError, ParameterError
from qsu2.validation import SUITES, SuiteContext, ValidationResult, Validator, run_suites


# ---------------------------------------------------------------------------
# Engine
# ---------------------------------------------------------------------------

class TestValidator:
    def test_bool_checks(self):
        v = Validator("demo")
        v.add_check("yes", lambda ctx: True, "never")
        v.add_check("no", lambda ctx: False, "always")
        result = v.validate(None)
        assert not result.is_valid
        assert result.checks_passed == 1
        assert result.checks_failed == 1
        assert result.errors == ["no: always"]

    def test_residual_against_tolerance(self):
        v = Validator("demo", tolerance=1e-6)
        v.add_check("small", lambda ctx: 1e-9, "too big")
        v.add_check("large", lambda ctx: 1e-3, "too big")
        result = v.validate(None)
        assert result.residuals == {"small": 1e-9, "large": 1e-3}
        assert result.worst_residual == 1e-3
        assert "residual 1.000e-03" in result.errors[0]

    def test_per_check_tolerance(self):
        v = Validator("demo", tolerance=1e-12)
        v.add_check("loose", lambda ctx: 1e-8, "too big", tolerance=1e-6)
        assert v.validate(None).is_valid

    def test_non_finite_residual_fails(self):
        v = Validator("demo")
        v.add_check("nan", lambda ctx: float("nan"), "not finite")
        assert not v.validate(None).is_valid

    def test_warnings_do_not_fail(self):
        v = Validator("demo")
        v.add_check("soft", lambda ctx: False, "soft failure", severity="warning")
        result = v.validate(None)
        assert result.is_valid
        assert result.warnings == ["soft: soft failure"]

    def test_qsu2_error_is_reported(self):
        def boom(ctx):
            raise OracleError("norm", "diverged")

        v = Validator("demo")
        v.add_check("oracle", boom, "oracle check")
        result = v.validate(None)
        assert "ORACLE_ERROR" in result.errors[0]

    def test_unexpected_exception_is_reported(self):
        v = Validator("demo")
        v.add_check("crash", lambda ctx: 1 / 0, "crash")
        result = v.validate(None)
        assert "Check failed with exception" in result.errors[0]

    def test_len(self):
        v = Validator("demo")
        v.add_check("one", lambda ctx: True, "")
        assert len(v) == 1


class TestValidationResult:
    def test_empty_pass_rate(self):
        result = ValidationResult(suite="empty", is_valid=True)
        assert result.pass_rate == 1.0
        assert result.worst_residual == 0.0

    def test_to_dict(self):
        result = ValidationResult(suite="s", is_valid=False, checks_passed=2, checks_failed=1, checks_total=3)
        data = result.to_dict()
        assert data["pass_rate"] == 0.667
        assert data["suite"] == "s"


# ---------------------------------------------------------------------------
# Suite context
# ---------------------------------------------------------------------------

class TestSuiteContext:
    def test_monomials_up_to_degree(self):
        ctx = SuiteContext(q=0.5, t=0.5, max_degree=1)
        assert len(ctx.monomials) == 5

    def test_no_random_elements_at_degree_zero(self):
        ctx = SuiteContext(max_degree=0)
        assert ctx.random_elements(3) == []

    def test_seeded_samples(self):
        first = SuiteContext(seed=4).random_elements(2, salt=1)
        second = SuiteContext(seed=4).random_elements(2, salt=1)
        assert all(x.distance(y) == 0.0 for x, y in zip(first, second))


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

class TestSuites:
    def test_registry(self):
        assert list(SUITES) == ["relations", "hopf", "haar", "pairing", "derV", "firstorder", "schur", "berezin"]

    def test_unknown_suite(self):
        with pytest.raises(ParameterError, match="unknown suite"):
            run_suites(["nope"], SuiteContext())

    @pytest.mark.parametrize("name", ["relations", "hopf", "haar", "pairing", "derV", "firstorder"])
    def test_suite_passes(self, q, name):
        ctx = SuiteContext(q=q, t=0.6, max_degree=2, samples=2)
        (result,) = run_suites([name], ctx)
        assert result.is_valid, result.errors
        assert result.checks_total > 0

    def test_degree_zero_is_trivial(self):
        results = run_suites(["relations"], SuiteContext(max_degree=0))
        assert results[0].is_valid

    def test_bound_checks_registered(self):
        schur, berezin = run_suites(["schur", "berezin"], SuiteContext(q=0.5, t=0.5, max_degree=0, samples=1))
        assert schur.checks_total == 7
        assert berezin.checks_total == 12

    def test_delta_adjoint_in_derv(self):
        (result,) = run_suites(["derV"], SuiteContext(q=0.5, t=0.5, max_degree=2, samples=2))
        assert result.residuals["delta_adjoint"] < 1e-9

    def test_broken_right_action_fails_conjugation(self):
        original = actions._generator_table

        def flipped(action, q):
            table = original(action, q)
            if action.side == "right" and action.gen == "e":
                table = {**table, "b": {mono: -c for mono, c in table["b"].items()}}
            return table

        actions._act_monomial.cache_clear()
        try:
            with mock.patch("qsu2.algebra.actions._generator_table", flipped):
                (result,) = run_suites(["derV"], SuiteContext(q=0.5, t=0.5, max_degree=2, samples=2))
        finally:
            actions._act_monomial.cache_clear()
        assert not result.is_valid
        assert any(line.startswith("conjugation") for line in result.errors)
