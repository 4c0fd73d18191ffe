"""Tests for CLI output formatter."""
import json

from qsu2.formatter import _fmt_num, _unwrap, format_output


def _envelope(command, data, status="success"):
    return {"schema": 1, "status": status, "command": command, "requested": {}, "data": data,
            "metadata": {"service": "qsu2", "version": "0.1.0"}}


class TestFmtNum:
    def test_none(self):
        assert _fmt_num(None) == "-"

    def test_bool_and_int(self):
        assert _fmt_num(True) == "True"
        assert _fmt_num(3) == "3"

    def test_plain_float(self):
        assert _fmt_num(0.5) == "0.5"
        assert _fmt_num(1.23456789) == "1.23457"

    def test_scientific(self):
        assert _fmt_num(1e-9) == "1.0000e-09"
        assert _fmt_num(2.5e7) == "2.5000e+07"

    def test_zero(self):
        assert _fmt_num(0.0) == "0"


class TestUnwrap:
    def test_envelope(self):
        command, inner, status = _unwrap(_envelope("spectrum", {"rows": []}))
        assert command == "spectrum"
        assert inner == {"rows": []}
        assert status == "success"

    def test_raw_data(self):
        command, inner, status = _unwrap({"value": 1})
        assert command == ""
        assert inner == {"value": 1}
        assert status == "success"


class TestJson:
    def test_round_trip(self):
        env = _envelope("info", {"version": "0.1.0"})
        assert json.loads(format_output(env, "json")) == env

    def test_unicode_kept(self):
        assert "⊗" in format_output({"note": "Δ(x) in A ⊗ A"}, "json")


class TestTable:
    def test_error(self):
        env = _envelope("seminorm", {"error": "bad input", "code": "PARSE_ERROR"}, status="error")
        assert "Error [PARSE_ERROR]: bad input" in format_output(env, "table")

    def test_check(self):
        suites = [{"suite": "relations", "is_valid": True, "checks_passed": 3, "checks_total": 3,
                   "worst_residual": 1e-16, "errors": [], "warnings": []},
                  {"suite": "derV", "is_valid": False, "checks_passed": 5, "checks_total": 6,
                   "worst_residual": 0.25, "errors": ["conjugation: off"], "warnings": []}]
        text = format_output(_envelope("check", {"q": 0.5, "t": 0.5, "suites": suites}), "table")
        assert "relations" in text
        assert "FAIL" in text
        assert "5/6" in text
        assert "conjugation: off" in text

    def test_rows(self):
        data = {"columns": ["n", "eigenvalue"], "rows": [{"n": 0, "eigenvalue": -0.5}]}
        text = format_output(_envelope("spectrum", data), "table")
        assert "eigenvalue" in text
        assert "-0.5" in text

    def test_generic(self):
        text = format_output(_envelope("berezin", {"result": "1", "element": {"terms": []}}), "table")
        assert "result" in text
        assert '{"terms": []}' in text


class TestCsv:
    def test_spectrum_exporter(self):
        data = {"classical": False, "rows": [{"n": 0, "i": 0, "j": 0, "eigenvalue": -0.5, "multiplicity": 1}]}
        text = format_output(_envelope("spectrum", data), "csv")
        assert text.startswith("n,i,j,eigenvalue,multiplicity\r\n")

    def test_check_rows(self):
        suites = [{"suite": "hopf", "is_valid": True, "checks_passed": 3, "checks_total": 3,
                   "worst_residual": 0.0, "errors": [], "warnings": []}]
        lines = format_output(_envelope("check", {"suites": suites}), "csv").split("\r\n")
        assert lines[0] == "suite,is_valid,checks_passed,checks_total,worst_residual"
        assert lines[1] == "hopf,True,3,3,0.0"

    def test_key_values(self):
        lines = format_output(_envelope("seminorm", {"norm_tq": 2.0, "grades": [0]}), "csv").split("\r\n")
        assert lines[0] == "key,value"
        assert lines[1] == "norm_tq,2.0"
        assert lines[2] == "grades,[0]"

    def test_error(self):
        env = _envelope("berezin", {"error": "N + M too big", "code": "INVALID_PARAMETER"}, status="error")
        assert "INVALID_PARAMETER" in format_output(env, "csv")
