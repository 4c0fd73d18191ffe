"""Tests for the error taxonomy."""
import pytest

from qsu2.errors import (
    IdentityError, OracleError, ParameterError, ParseError, QParamsMismatchError, Qsu2Error, UnsupportedError,
)


class TestErrors:
    @pytest.mark.parametrize("error, code, status", [
        (ParameterError("bad q"), "INVALID_PARAMETER", 2),
        (ParseError("unexpected ')'", 4), "PARSE_ERROR", 2),
        (QParamsMismatchError(0.5, 0.8), "QPARAMS_MISMATCH", 2),
        (UnsupportedError("no representation at q = 1"), "UNSUPPORTED", 2),
        (OracleError("norm", "non-finite"), "ORACLE_ERROR", 3),
        (IdentityError("unitarity", 1e-3), "IDENTITY_FAILED", 1),
    ])
    def test_codes_and_status(self, error, code, status):
        assert isinstance(error, Qsu2Error)
        assert error.code == code
        assert error.status == status

    def test_parse_error_position(self):
        err = ParseError("unexpected ')'", 7)
        assert err.position == 7
        assert err.message.endswith("(at position 7)")

    def test_oracle_prefix(self):
        assert OracleError("norm", "diverged").message == "norm: diverged"

    def test_base_defaults(self):
        err = Qsu2Error("boom")
        assert err.code == "INTERNAL_ERROR"
        assert str(err) == "boom"
