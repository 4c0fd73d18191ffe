"""Coproduct, counit and antipode.

All three are fixed by the fundamental unitary u = [[a*, -q b], [b*, a]]:
Delta(u) = u ⊗ u, eps(u) = 1, S(u) = u*.
"""
from __future__ import annotations

from collections import defaultdict
from functools import lru_cache

from qsu2.algebra.element import LETTERS, ONE, AlgebraElement, Monomial, TensorElement

_A, _B, _AS, _BS = LETTERS["a"], LETTERS["b"], LETTERS["A"], LETTERS["B"]


def drop_last_letter(mono: Monomial) -> tuple[Monomial, str]:
    """Split the canonical word of ``mono`` into (prefix monomial, last letter)."""
    k, l, m = mono  # noqa: E741
    if k < 0:
        return Monomial(k + 1, l, m), "A"
    if m > 0:
        return Monomial(k, l, m - 1), "B"
    if l > 0:
        return Monomial(k, l - 1, 0), "b"
    return Monomial(k - 1, 0, 0), "a"


def _generator_coproduct(letter: str, q: float) -> TensorElement:
    table = {
        "a": {(_A, _A): 1.0, (_BS, _B): -q},
        "b": {(_AS, _B): 1.0, (_B, _A): 1.0},
        "A": {(_AS, _AS): 1.0, (_B, _BS): -q},
        "B": {(_A, _BS): 1.0, (_BS, _AS): 1.0},
    }
    return TensorElement(table[letter], q)


@lru_cache(maxsize=8192)
def _coproduct_monomial(mono: Monomial, q: float) -> TensorElement:
    if mono == ONE:
        return TensorElement({(ONE, ONE): 1.0}, q)
    prefix, letter = drop_last_letter(mono)
    return _coproduct_monomial(prefix, q) * _generator_coproduct(letter, q)


def coproduct(x: AlgebraElement) -> TensorElement:
    """Delta(x), extended multiplicatively from the generators."""
    acc: dict[tuple[Monomial, Monomial], complex] = defaultdict(complex)
    for mono, c in x.terms.items():
        for pair, g in _coproduct_monomial(mono, x.q).terms.items():
            acc[pair] += c * g
    return TensorElement(acc, x.q)


def counit_monomial(mono: Monomial) -> float:
    return 1.0 if mono.l == 0 and mono.m == 0 else 0.0


def counit(x: AlgebraElement) -> complex:
    """eps(a) = eps(a*) = 1, eps(b) = eps(b*) = 0."""
    return sum((c for mono, c in x.terms.items() if mono.l == 0 and mono.m == 0), 0j)


def _generator_antipode(letter: str, q: float) -> AlgebraElement:
    table = {
        "a": {_AS: 1.0},
        "A": {_A: 1.0},
        "b": {_B: -1.0 / q},
        "B": {_BS: -q},
    }
    return AlgebraElement(table[letter], q)


@lru_cache(maxsize=8192)
def _antipode_monomial(mono: Monomial, q: float) -> AlgebraElement:
    if mono == ONE:
        return AlgebraElement.one(q)
    prefix, letter = drop_last_letter(mono)
    # antihomomorphism: S(w g) = S(g) S(w)
    return _generator_antipode(letter, q) * _antipode_monomial(prefix, q)


def antipode(x: AlgebraElement) -> AlgebraElement:
    """S(a) = a*, S(a*) = a, S(b) = -q^{-1} b, S(b*) = -q b*, extended antimultiplicatively."""
    result = AlgebraElement.zero(x.q)
    for mono, c in x.terms.items():
        result = result + _antipode_monomial(mono, x.q).scale(c)
    return result


def antipode_axiom(x: AlgebraElement) -> AlgebraElement:
    """m(S ⊗ id) Delta(x); equals eps(x) 1."""
    result = AlgebraElement.zero(x.q)
    for (m1, m2), c in coproduct(x).terms.items():
        right = AlgebraElement({m2: 1.0}, x.q)
        result = result + (_antipode_monomial(m1, x.q) * right).scale(c)
    return result


def coassociativity_residual(x: AlgebraElement) -> float:
    """max |(Delta ⊗ id)Delta(x) - (id ⊗ Delta)Delta(x)|, on triple tensors."""
    q = x.q
    left: dict[tuple, complex] = defaultdict(complex)
    right: dict[tuple, complex] = defaultdict(complex)
    for (m1, m2), c in coproduct(x).terms.items():
        for (p1, p2), g in _coproduct_monomial(m1, q).terms.items():
            left[(p1, p2, m2)] += c * g
        for (p1, p2), g in _coproduct_monomial(m2, q).terms.items():
            right[(m1, p1, p2)] += c * g
    keys = set(left) | set(right)
    scale = max([1.0] + [abs(v) for v in left.values()])
    return max((abs(left[key] - right[key]) for key in keys), default=0.0) / scale
