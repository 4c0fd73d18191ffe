"""Shared input handling for command handlers."""
from qsu2.algebra.element import ONE, AlgebraElement, QParams
from qsu2.config import Config
from qsu2.errors import ParameterError
from qsu2.parser import parse_element


def qparams(config: Config) -> QParams:
    return QParams(config.algebra.q, config.algebra.t)


def parse_input(expr: str, config: Config) -> AlgebraElement:
    """Parse --expr at the configured q and enforce the degree cap."""
    if not expr or not expr.strip():
        raise ParameterError("--expr is required")
    x = parse_element(expr, config.algebra.q)
    cap = config.algebra.max_degree
    if x.degree > cap:
        raise ParameterError(f"expression has degree {x.degree}, above the cap {cap} (algebra.max_degree)")
    return x


def _word(k: int, l: int, m: int) -> str:  # noqa: E741
    parts = []
    if k > 0:
        parts.append("a" if k == 1 else f"a^{k}")
    if l:
        parts.append("b" if l == 1 else f"b^{l}")
    if m:
        parts.append("b*" if m == 1 else f"(b*)^{m}")
    if k < 0:
        parts.append("a*" if k == -1 else f"(a*)^{-k}")
    return " * ".join(parts)


def _coefficient(c: complex) -> str:
    if abs(c.imag) < 1e-15:
        return f"{c.real:.12g}"
    if abs(c.real) < 1e-15:
        return f"{c.imag:.12g}i"
    sign = "+" if c.imag >= 0 else "-"
    return f"({c.real:.12g} {sign} {abs(c.imag):.12g}i)"


def element_text(x: AlgebraElement) -> str:
    """Render an element in the input grammar, monomials in normal order."""
    if not x.terms:
        return "0"
    parts = []
    for mono in sorted(x.terms, key=lambda mono: (mono.degree, mono.k, mono.l, mono.m)):
        c = x.terms[mono]
        if mono == ONE:
            parts.append(_coefficient(c))
        elif abs(c - 1) < 1e-15:
            parts.append(_word(*mono))
        else:
            parts.append(f"{_coefficient(c)} * {_word(*mono)}")
    return " + ".join(parts)
