"""
Left and right actions of the generators e, f, k, k^{-1} of U_q(su(2)).

Left actions d_eta(x) = (id ⊗ <eta, .>) Delta(x), right actions
delta_eta(x) = (<eta, .> ⊗ id) Delta(x). On generators:

    d_e(a) = b*      d_e(b) = -q^{-1} a*     d_f(a*) = -q b    d_f(b*) = a
    delta_e(a*) = b* delta_e(b) = -q^{-1} a  delta_f(a) = -q b  delta_f(b*) = a*

and zero on the remaining generators. k acts as q^{w/2} on a monomial of
weight w (left weight k+l-m, right weight k-l+m). e and f extend by the
twisted Leibniz rule  D(xy) = D(x) k(y) + k^{-1}(x) D(y).
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

from qsu2.algebra.element import LETTERS, AlgebraElement, Monomial
from qsu2.errors import ParameterError

_GENS = ("e", "f", "k", "k_inv")
_SIDES = ("left", "right")

# letter weights under k: left weight counts a, b as +1; right weight counts a, b* as +1
_LEFT_WEIGHT = {"a": 1, "b": 1, "A": -1, "B": -1}
_RIGHT_WEIGHT = {"a": 1, "B": 1, "A": -1, "b": -1}


@dataclass(frozen=True)
class GeneratorAction:
    gen: str
    side: str = "left"

    def __post_init__(self):
        if self.gen not in _GENS or self.side not in _SIDES:
            raise ParameterError(f"unknown action {self.gen!r}/{self.side!r}")

    @classmethod
    def parse(cls, tag: str) -> GeneratorAction:
        """'e', 'k_inv', 'e_right', 'f_left' ..."""
        for side in _SIDES:
            suffix = f"_{side}"
            if tag.endswith(suffix):
                return cls(tag[: -len(suffix)], side)
        return cls(tag, "left")


E_LEFT = GeneratorAction("e", "left")
F_LEFT = GeneratorAction("f", "left")
K_LEFT = GeneratorAction("k", "left")
KINV_LEFT = GeneratorAction("k_inv", "left")
E_RIGHT = GeneratorAction("e", "right")
F_RIGHT = GeneratorAction("f", "right")
K_RIGHT = GeneratorAction("k", "right")
KINV_RIGHT = GeneratorAction("k_inv", "right")


def _generator_table(action: GeneratorAction, q: float) -> dict[str, dict[Monomial, float]]:
    a, b, a_s, b_s = LETTERS["a"], LETTERS["b"], LETTERS["A"], LETTERS["B"]
    if action.side == "left":
        if action.gen == "e":
            return {"a": {b_s: 1.0}, "b": {a_s: -1.0 / q}}
        return {"A": {b: -q}, "B": {a: 1.0}}
    if action.gen == "e":
        return {"A": {b_s: 1.0}, "b": {a: -1.0 / q}}
    return {"a": {b: -q}, "B": {a_s: 1.0}}


def _word_monomial(word: str) -> Monomial:
    # valid for contiguous pieces of a canonical word
    return Monomial(word.count("a") - word.count("A"), word.count("b"), word.count("B"))


def weight(mono: Monomial, side: str) -> int:
    return mono.grade if side == "left" else mono.right_grade


@lru_cache(maxsize=1 << 15)
def _act_monomial(action: GeneratorAction, mono: Monomial, q: float) -> AlgebraElement:
    if action.gen in ("k", "k_inv"):
        sign = 1 if action.gen == "k" else -1
        return AlgebraElement({mono: q ** (sign * weight(mono, action.side) / 2.0)}, q)

    weights = _LEFT_WEIGHT if action.side == "left" else _RIGHT_WEIGHT
    table = _generator_table(action, q)
    word = mono.word()
    total = sum(weights[ch] for ch in word)
    result = AlgebraElement.zero(q)
    w_pre = 0
    for i, letter in enumerate(word):
        w_letter = weights[letter]
        if letter in table:
            w_suf = total - w_pre - w_letter
            factor = q ** ((w_suf - w_pre) / 2.0)
            prefix = AlgebraElement({_word_monomial(word[:i]): 1.0}, q)
            suffix = AlgebraElement({_word_monomial(word[i + 1:]): 1.0}, q)
            middle = AlgebraElement(table[letter], q)
            result = result + (prefix * middle * suffix).scale(factor)
        w_pre += w_letter
    return result


def act(action: GeneratorAction | str, x: AlgebraElement) -> AlgebraElement:
    """Apply a generator action to x."""
    if isinstance(action, str):
        action = GeneratorAction.parse(action)
    acc: dict[Monomial, complex] = defaultdict(complex)
    for mono, c in x.terms.items():
        for out, g in _act_monomial(action, mono, x.q).terms.items():
            acc[out] += c * g
    return AlgebraElement(acc, x.q)
