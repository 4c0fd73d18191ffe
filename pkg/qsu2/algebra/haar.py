"""Haar state and its modular automorphism."""
from __future__ import annotations

from qsu2.algebra.actions import KINV_LEFT, KINV_RIGHT, K_LEFT, K_RIGHT, act
from qsu2.algebra.element import AlgebraElement, Monomial
from qsu2.algebra.qnumbers import qint
from qsu2.errors import ParameterError


def haar_monomial(mono: Monomial, q: float) -> float:
    if mono.k != 0 or mono.l != mono.m:
        return 0.0
    return 1.0 / qint(mono.m + 1, q)


def haar(x: AlgebraElement) -> complex:
    """h(b^m (b*)^m) = 1/<m+1>_q; every other basis monomial integrates to zero."""
    return sum((c * haar_monomial(mono, x.q) for mono, c in x.terms.items()), 0j)


def modular_nu(x: AlgebraElement, power: float = 1.0) -> AlgebraElement:
    """nu^power for power in {-1, -1/2, 1/2, 1}; nu^{1/2} = delta_{k^{-1}} d_{k^{-1}}.

    h(xy) = h(nu(y) x).
    """
    if power not in (-1.0, -0.5, 0.5, 1.0):
        raise ParameterError(f"modular power must be one of -1, -1/2, 1/2, 1; got {power!r}")
    left, right = (KINV_LEFT, KINV_RIGHT) if power > 0 else (K_LEFT, K_RIGHT)
    steps = 2 if abs(power) == 1.0 else 1
    for _ in range(steps):
        x = act(right, act(left, x))
    return x


def twisted_trace_residual(x: AlgebraElement, y: AlgebraElement) -> float:
    """|h(xy) - h(nu(y) x)|."""
    return abs(haar(x * y) - haar(modular_nu(y) * x))
