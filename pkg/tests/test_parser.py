"""Tests for the expression parser."""
import pytest

from qsu2.algebra.element import AlgebraElement, generators
from qsu2.corep import u
from qsu2.errors import ParameterError, ParseError
from qsu2.parser import Coefficient, Generator, Number, Power, parse, parse_element


class TestParse:
    def test_adjoint_suffix(self):
        assert parse("a*") == Generator("a*")
        assert parse("(b*)") == Generator("b*")

    def test_power(self):
        node = parse("b^3")
        assert isinstance(node, Power)
        assert node.exponent == 3

    def test_coefficient(self):
        node = parse("u[2, 1, 0]")
        assert isinstance(node, Coefficient)
        assert (node.n, node.i, node.j) == (2, 1, 0)

    def test_imaginary_numbers(self):
        assert parse("2i") == Number(2j)
        assert parse("i") == Number(1j)
        assert parse("0.25") == Number(0.25 + 0j)

    @pytest.mark.parametrize("text, position", [
        ("a*b", 1),
        ("b*a", 1),
        ("", 0),
        ("a +", 3),
        ("(a", 2),
        ("a )", 2),
        ("a^", 2),
        ("2 * c", 4),
    ])
    def test_errors_carry_position(self, text, position):
        with pytest.raises(ParseError) as exc:
            parse(text)
        assert exc.value.position == position
        assert exc.value.code == "PARSE_ERROR"

    def test_ambiguous_star_message(self):
        with pytest.raises(ParseError, match="a\\* \\* b"):
            parse("a*b")


class TestEvaluate:
    def test_monomial(self):
        x = parse_element("b^2 * (b*)^2", 0.5)
        assert x.allclose(AlgebraElement.monomial(0, 2, 2, 0.5), 1e-14)

    def test_spaced_adjoint_product(self):
        a, _, a_star, _ = generators(0.7)
        assert parse_element("a* * a", 0.7).allclose(a_star * a, 1e-14)

    def test_commutation(self):
        assert parse_element("b * a - 0.5 * a * b", 0.5).is_zero(1e-14)

    def test_unitarity_relation(self, q):
        x = parse_element("a* * a", q) + parse_element("b * b*", q).scale(q * q)
        assert x.allclose(AlgebraElement.one(q), 1e-12)

    def test_coefficient_value(self):
        assert parse_element("u[1,0,0]", 0.5).allclose(generators(0.5).a_star, 1e-14)
        assert parse_element("u[2,1,1]", 0.5).allclose(u(2, 1, 1, 0.5), 1e-14)

    def test_coefficient_index_range(self):
        with pytest.raises(ParameterError):
            parse_element("u[1,2,0]", 0.5)

    def test_negation_and_scalars(self):
        x = parse_element("-a + 2i * a", 0.5)
        assert x.coeff(1, 0, 0) == pytest.approx(-1 + 2j)
        assert parse_element("3 - 1", 0.5).allclose(AlgebraElement.scalar(2.0, 0.5), 1e-14)
