"""Tests for the command handlers and their input helpers."""
import pytest

from qsu2.algebra.element import AlgebraElement, generators
from qsu2.config import AlgebraConfig
from qsu2.errors import ParameterError, ParseError
from qsu2.handlers.berezin import berezin_handler
from qsu2.handlers.check import check_handler, suite_names
from qsu2.handlers.distance import distance_handler
from qsu2.handlers.export import spectrum_csv, sweep_csv
from qsu2.handlers.info import info_handler
from qsu2.handlers.inputs import element_text, parse_input
from qsu2.handlers.seminorm import seminorm_handler
from qsu2.handlers.spectrum import spectrum_handler
from qsu2.handlers.table import _distance_triple, parse_sweep, table_handler


@pytest.fixture
def classical_config(small_config):
    small_config.algebra = AlgebraConfig(q=1.0, t=1.0)
    return small_config


# ---------------------------------------------------------------------------
# Input helpers
# ---------------------------------------------------------------------------

class TestElementText:
    def test_scalars(self):
        assert element_text(AlgebraElement.one(0.5)) == "1"
        assert element_text(AlgebraElement.zero(0.5)) == "0"
        assert element_text(AlgebraElement.scalar(0.25, 0.5)) == "0.25"

    def test_monomials(self):
        assert element_text(AlgebraElement.monomial(0, 2, 2, 0.5)) == "b^2 * (b*)^2"
        assert element_text(AlgebraElement.monomial(-2, 1, 1, 0.5)) == "b * b* * (a*)^2"
        assert element_text(AlgebraElement.monomial(3, 0, 1, 0.5)) == "a^3 * b*"

    def test_ordering_and_coefficients(self):
        a, b, _, _ = generators(0.5)
        assert element_text(a + b.scale(2.0)) == "2 * b + a"
        assert element_text(a.scale(-1.0)) == "-1 * a"
        assert element_text(a.scale(1j)) == "1i * a"
        assert element_text(a.scale(1 + 2j)) == "(1 + 2i) * a"


class TestParseInput:
    def test_parses_at_configured_q(self, small_config):
        small_config.algebra = AlgebraConfig(q=0.7, t=0.7)
        assert parse_input("a", small_config).q == 0.7

    def test_empty(self, small_config):
        with pytest.raises(ParameterError):
            parse_input("  ", small_config)

    def test_degree_cap(self, small_config):
        with pytest.raises(ParameterError, match="max_degree"):
            parse_input("b^13", small_config)

    def test_parse_errors_pass_through(self, small_config):
        with pytest.raises(ParseError):
            parse_input("a*b", small_config)


# ---------------------------------------------------------------------------
# Sweep specs
# ---------------------------------------------------------------------------

class TestParseSweep:
    def test_tied_range(self):
        assert parse_sweep("q=0.6:1.0:0.1,t=q") == [(0.6, 0.6), (0.7, 0.7), (0.8, 0.8), (0.9, 0.9), (1.0, 1.0)]

    def test_fixed_axis(self):
        assert parse_sweep("t=0.5:0.9:0.2,q=0.7") == [(0.5, 0.7), (0.7, 0.7), (0.9, 0.7)]

    def test_list_and_default_axis(self):
        assert parse_sweep("q=0.6;0.8") == [(1.0, 0.6), (1.0, 0.8)]

    def test_t_major(self):
        assert parse_sweep("t=0.5;1,q=0.5;1") == [(0.5, 0.5), (0.5, 1.0), (1.0, 0.5), (1.0, 1.0)]

    @pytest.mark.parametrize("spec", [
        "",
        "q",
        "x=0.5",
        "t=q,q=t",
        "q=0:1:0.5",
        "q=1:0.5:0.1",
        "q=0.5:1:0",
        "q=abc",
        "t=0.01:1:0.01,q=0.01:1:0.01",
    ])
    def test_rejects(self, spec):
        with pytest.raises(ParameterError):
            parse_sweep(spec)

    def test_distance_triple(self):
        assert _distance_triple("1,2,3") == (1, 2, 3)
        assert _distance_triple(None) is None
        with pytest.raises(ParameterError):
            _distance_triple("1,2")
        with pytest.raises(ParameterError):
            _distance_triple("1,-1,0")


# ---------------------------------------------------------------------------
# Handlers
# ---------------------------------------------------------------------------

class TestCheckHandler:
    def test_relations(self, small_config):
        data = check_handler({"max_degree": 2, "suites": ["relations"], "samples": 2}, small_config)
        assert data["passed"]
        assert data["failed_suites"] == []
        assert [s["suite"] for s in data["suites"]] == ["relations"]
        assert data["tolerance"] == small_config.algebra.assert_tol

    def test_rejects_bad_arguments(self, small_config):
        with pytest.raises(ParameterError):
            check_handler({"max_degree": -1}, small_config)
        with pytest.raises(ParameterError):
            check_handler({"tolerance": 0.0}, small_config)

    def test_suite_names(self):
        assert "derV" in suite_names()


class TestSpectrumHandler:
    def test_classical_columns(self, classical_config):
        data = spectrum_handler({"nmax": 1}, classical_config)
        assert data["classical"]
        assert data["columns"][-1] == "two_lambda_plus_one"
        assert all(row["two_lambda_plus_one"] == 2 * row["eigenvalue"] + 1 for row in data["rows"])

    def test_deformed_columns(self, small_config):
        data = spectrum_handler({"nmax": 1}, small_config)
        assert not data["classical"]
        assert "two_lambda_plus_one" not in data["columns"]

    @pytest.mark.parametrize("nmax", [-1, 201])
    def test_nmax_range(self, small_config, nmax):
        with pytest.raises(ParameterError):
            spectrum_handler({"nmax": nmax}, small_config)


class TestSeminormHandler:
    def test_grade_zero_gets_podles(self, small_config):
        data = seminorm_handler({"expr": "b * b*"}, small_config)
        assert data["grades"] == [0]
        assert data["L_podles"] > 0
        assert data["element"] == "b * b*"
        assert data["L"]["value"] > 0

    def test_graded_element(self, small_config):
        data = seminorm_handler({"expr": "a"}, small_config)
        assert data["grades"] == [1]
        assert "L_podles" not in data
        assert data["norm"]["value"] == pytest.approx(1.0, abs=1e-6)

    def test_constant_has_zero_seminorm(self, small_config):
        data = seminorm_handler({"expr": "3"}, small_config)
        assert data["L"]["value"] == 0.0


class TestBerezinHandler:
    def test_unit(self, small_config):
        data = berezin_handler({"N": 0, "M": 0, "expr": "1"}, small_config)
        assert data["result"] == "1"
        assert data["input"] == "1"
        assert not data["extended"]

    def test_level_zero_is_haar(self, small_config):
        data = berezin_handler({"N": 0, "M": 0, "expr": "a"}, small_config)
        assert data["result"] == "0"

    def test_extended(self, small_config):
        data = berezin_handler({"N": 1, "M": 1, "expr": "b * b*", "extended": True}, small_config)
        assert data["extended"]

    def test_rejects(self, small_config):
        with pytest.raises(ParameterError):
            berezin_handler({"N": -1, "M": 0, "expr": "a"}, small_config)
        with pytest.raises(ParameterError, match="exceeds"):
            berezin_handler({"N": 5, "M": 5, "expr": "a"}, small_config)

    def test_error_report(self, small_config):
        data = berezin_handler({"N": 1, "M": 1, "expr": "b", "error_report": True, "seed": 1}, small_config)
        report = data["error_report"]
        assert {"N", "M", "error", "distance", "seminorm", "product"} <= set(report)
        assert report["error"] >= 0

    def test_no_error_report_by_default(self, small_config):
        assert "error_report" not in berezin_handler({"N": 0, "M": 0, "expr": "1"}, small_config)


class TestDistanceHandler:
    def test_chi_against_counit(self, small_config):
        data = distance_handler({"state1": "chi:1:1", "state2": "counit", "band": 0, "fuzzy": 1}, small_config)
        assert data["basis_dimension"] == 4
        assert data["value"] > 0
        assert data["seminorm"] == "tq"
        assert "diameter" not in data

    def test_diameter(self, small_config):
        data = distance_handler({"state1": "chi:1:1", "state2": "counit", "band": 0, "fuzzy": 1, "seed": 2,
                                 "diameter": True}, small_config)
        diameter = data["diameter"]
        assert diameter["diameter_estimate"] >= data["value"] * (1 - 1e-6)
        assert diameter["structural_bound"] >= diameter["vertical_term"]

    def test_podles_uses_grade_zero(self, small_config):
        data = distance_handler({"state1": "podles:1", "state2": "counit", "band": 2, "fuzzy": 1,
                                 "seminorm": "podles"}, small_config)
        assert data["basis_dimension"] == 4

    def test_rejects(self, small_config):
        with pytest.raises(ParameterError):
            distance_handler({"state1": "chi:1", "state2": "counit"}, small_config)
        with pytest.raises(ParameterError):
            distance_handler({"state1": "haar", "state2": "counit", "band": -1}, small_config)
        with pytest.raises(ParameterError):
            distance_handler({"state1": "haar", "state2": "counit", "seminorm": "sup"}, small_config)
        with pytest.raises(ParameterError):
            distance_handler({"state1": "chi:6:6", "state2": "counit"}, small_config)


class TestTableHandler:
    def test_classical_point(self, small_config):
        data = table_handler({"sweep": "q=1,t=1", "words": "b,1"}, small_config)
        assert [row["observable"] for row in data["rows"]] == ["L(b)", "L(1)"]
        assert data["sweep"] == "q=1,t=1"

    def test_bad_word(self, small_config):
        with pytest.raises(ParameterError, match="bad word"):
            table_handler({"sweep": "q=1", "words": "bx"}, small_config)

    def test_distance_cap(self, small_config):
        with pytest.raises(ParameterError):
            table_handler({"sweep": "q=1", "distance": "9,1,0"}, small_config)


class TestInfoHandler:
    def test_report(self, small_config):
        data = info_handler({}, small_config)
        assert data["version"] == "0.1.0"
        assert "spectrum" in data["commands"]
        assert data["suites"][0] == "relations"
        assert data["issues"] == []


# ---------------------------------------------------------------------------
# CSV export
# ---------------------------------------------------------------------------

class TestExport:
    def test_spectrum_classical(self):
        data = {"classical": True, "rows": [{"n": 0, "i": 0, "j": 0, "eigenvalue": -0.5, "multiplicity": 1,
                                             "two_lambda_plus_one": 0.0}]}
        lines = spectrum_csv(data).split("\r\n")
        assert lines[0] == "n,i,j,eigenvalue,multiplicity,two_lambda_plus_one"
        assert lines[1] == "0,0,0,-0.5,1,0.0"

    def test_spectrum_deformed(self):
        text = spectrum_csv({"classical": False, "rows": []})
        assert text == "n,i,j,eigenvalue,multiplicity\r\n"

    def test_sweep_blanks_none(self):
        data = {"columns": ["t", "q", "N"], "rows": [{"t": 1.0, "q": 0.5, "N": None}]}
        assert sweep_csv(data).split("\r\n")[1] == "1.0,0.5,"
