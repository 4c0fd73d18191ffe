"""
Normal-ordered elements of the coordinate algebra of quantum SU(2).

An element is a finite linear combination of basis monomials

    xi(k, l, m) = a^k b^l (b*)^m          for k >= 0
    xi(k, l, m) = b^l (b*)^m (a*)^{-k}    for k < 0

with complex coefficients. Products are rewritten into this basis with the
relations ba = q ab, b*a = q ab*, bb* = b*b, a*a = 1 - q^2 bb*, aa* = 1 - bb*.

Internally a product is computed in the "X B" ordering, X_k = a^k (k >= 0) or
(a*)^{-k} (k < 0) written to the left of B_{lm} = b^l (b*)^m. Moving B across
X_k costs q^{-k(l+m)}, and X_p X_s with opposite signs contracts into a
polynomial in c = bb*.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from numbers import Number
from typing import Iterable, Iterator, Mapping, NamedTuple

import numpy as np

from qsu2.errors import ParameterError, QParamsMismatchError

PRUNE_TOL = 1e-12


@dataclass(frozen=True)
class QParams:
    """Deformation parameter q and vertical parameter t, both in (0, 1]."""
    q: float
    t: float

    def __post_init__(self):
        if not (0.0 < self.q <= 1.0):
            raise ParameterError(f"q must lie in (0, 1], got {self.q!r}")
        if not (0.0 < self.t <= 1.0):
            raise ParameterError(f"t must lie in (0, 1], got {self.t!r}")


def check_q(q: float) -> float:
    q = float(q)
    if not (0.0 < q <= 1.0):
        raise ParameterError(f"q must lie in (0, 1], got {q!r}")
    return q


class Monomial(NamedTuple):
    """Basis monomial xi(k, l, m)."""
    k: int
    l: int  # noqa: E741
    m: int

    @property
    def degree(self) -> int:
        return abs(self.k) + self.l + self.m

    @property
    def grade(self) -> int:
        """Degree for the left circle action: a, b count +1; a*, b* count -1."""
        return self.k + self.l - self.m

    @property
    def right_grade(self) -> int:
        """Degree for the right circle action: a, b* count +1; a*, b count -1."""
        return self.k - self.l + self.m

    def word(self) -> str:
        """Generator word in canonical order; 'A' is a*, 'B' is b*."""
        if self.k >= 0:
            return "a" * self.k + "b" * self.l + "B" * self.m
        return "b" * self.l + "B" * self.m + "A" * (-self.k)

    def adjoint(self) -> Monomial:
        return Monomial(-self.k, self.m, self.l)


ONE = Monomial(0, 0, 0)
LETTERS = {"a": Monomial(1, 0, 0), "b": Monomial(0, 1, 0), "B": Monomial(0, 0, 1), "A": Monomial(-1, 0, 0)}


# ---------------------------------------------------------------------------
# Monomial products (memoized)
# ---------------------------------------------------------------------------

def _poly_one_minus(alphas: Iterable[float]) -> tuple[float, ...]:
    """Coefficients (in c) of prod_i (1 - alpha_i c)."""
    coeffs = [1.0]
    for alpha in alphas:
        nxt = coeffs + [0.0]
        for j, value in enumerate(coeffs):
            nxt[j + 1] -= alpha * value
        coeffs = nxt
    return tuple(coeffs)


@lru_cache(maxsize=4096)
def _contract(k1: int, k2: int, q: float) -> tuple[tuple[int, float], ...]:
    """X_{k1} X_{k2} = sum_j gamma_j X_{k1+k2} c^j, returned as ((j, gamma_j), ...)."""
    if (k1 >= 0 and k2 >= 0) or (k1 <= 0 and k2 <= 0):
        return ((0, 1.0),)
    q2 = q * q
    if k1 > 0:
        p, s = k1, -k2
        if p >= s:
            # a^{p-s} prod_{i<s} (1 - q^{-2i} c)
            poly = _poly_one_minus(q2 ** (-i) for i in range(s))
            return tuple((j, g) for j, g in enumerate(poly))
        # prod_{i<p}(1 - q^{-2i} c) (a*)^{s-p}, then c^j (a*)^r = q^{-2rj} (a*)^r c^j
        poly = _poly_one_minus(q2 ** (-i) for i in range(p))
        r = s - p
        return tuple((j, g * q2 ** (-r * j)) for j, g in enumerate(poly))
    s, p = -k1, k2
    if s >= p:
        # (a*)^{s-p} prod_{1<=i<=p} (1 - q^{2i} c)
        poly = _poly_one_minus(q2 ** i for i in range(1, p + 1))
        return tuple((j, g) for j, g in enumerate(poly))
    # prod_{1<=i<=s}(1 - q^{2i} c) a^{p-s}, then c^j a^r = q^{2rj} a^r c^j
    poly = _poly_one_minus(q2 ** i for i in range(1, s + 1))
    r = p - s
    return tuple((j, g * q2 ** (r * j)) for j, g in enumerate(poly))


def _xb_factor(mono: Monomial, q: float) -> float:
    """xi(k,l,m) = factor * X_k B_{lm}."""
    if mono.k < 0:
        return q ** (mono.k * (mono.l + mono.m))
    return 1.0


@lru_cache(maxsize=1 << 18)
def monomial_product(m1: Monomial, m2: Monomial, q: float) -> tuple[tuple[Monomial, float], ...]:
    """Normal form of xi(m1) xi(m2); coefficients are real."""
    scale = _xb_factor(m1, q) * _xb_factor(m2, q) * q ** (m2.k * (m1.l + m1.m))
    k = m1.k + m2.k
    big_l = m1.l + m2.l
    big_m = m1.m + m2.m
    out = []
    for j, gamma in _contract(m1.k, m2.k, q):
        mono = Monomial(k, big_l + j, big_m + j)
        out.append((mono, scale * gamma / _xb_factor(mono, q)))
    return tuple(out)


# ---------------------------------------------------------------------------
# AlgebraElement
# ---------------------------------------------------------------------------

class AlgebraElement:
    """Immutable finite combination of basis monomials over a fixed q."""

    __slots__ = ("q", "terms")

    def __init__(self, terms: Mapping[Monomial, complex], q: float, prune_tol: float = PRUNE_TOL):
        self.q = float(q)
        kept = {}
        for mono, coeff in terms.items():
            coeff = complex(coeff)
            if abs(coeff) >= prune_tol:
                kept[Monomial(*mono)] = coeff
        self.terms: dict[Monomial, complex] = dict(sorted(kept.items()))

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, q: float) -> AlgebraElement:
        return cls({}, q)

    @classmethod
    def one(cls, q: float) -> AlgebraElement:
        return cls({ONE: 1.0}, q)

    @classmethod
    def scalar(cls, value: complex, q: float) -> AlgebraElement:
        return cls({ONE: value}, q)

    @classmethod
    def monomial(cls, k: int, l: int, m: int, q: float, coeff: complex = 1.0) -> AlgebraElement:  # noqa: E741
        if l < 0 or m < 0:
            raise ParameterError(f"monomial exponents l, m must be >= 0, got ({k}, {l}, {m})")
        return cls({Monomial(k, l, m): coeff}, q)

    # -- container protocol -----------------------------------------------

    def __iter__(self) -> Iterator[tuple[Monomial, complex]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coeff(self, k: int, l: int, m: int) -> complex:  # noqa: E741
        return self.terms.get(Monomial(k, l, m), 0j)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> AlgebraElement:
        if isinstance(other, AlgebraElement):
            if other.q != self.q:
                raise QParamsMismatchError(self.q, other.q)
            return other
        if isinstance(other, Number):
            return AlgebraElement.scalar(complex(other), self.q)
        return NotImplemented

    def __add__(self, other) -> AlgebraElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = defaultdict(complex, self.terms)
        for mono, coeff in other.terms.items():
            acc[mono] += coeff
        return AlgebraElement(acc, self.q)

    __radd__ = __add__

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement({mono: -c for mono, c in self.terms.items()}, self.q)

    def __sub__(self, other) -> AlgebraElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> AlgebraElement:
        return (-self) + other

    def scale(self, value: complex) -> AlgebraElement:
        return AlgebraElement({mono: value * c for mono, c in self.terms.items()}, self.q)

    def __mul__(self, other) -> AlgebraElement:
        if isinstance(other, Number):
            return self.scale(complex(other))
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if other.q != self.q:
            raise QParamsMismatchError(self.q, other.q)
        acc: dict[Monomial, complex] = defaultdict(complex)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c12 = c1 * c2
                for mono, g in monomial_product(m1, m2, self.q):
                    acc[mono] += c12 * g
        return AlgebraElement(acc, self.q)

    def __rmul__(self, other) -> AlgebraElement:
        if isinstance(other, Number):
            return self.scale(complex(other))
        return NotImplemented

    def __truediv__(self, other) -> AlgebraElement:
        if isinstance(other, Number):
            return self.scale(1.0 / complex(other))
        return NotImplemented

    def __pow__(self, n: int) -> AlgebraElement:
        if not isinstance(n, int) or n < 0:
            raise ParameterError(f"power must be a nonnegative integer, got {n!r}")
        result = AlgebraElement.one(self.q)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def adjoint(self) -> AlgebraElement:
        """Antilinear involution; xi(k,l,m)* = xi(-k,m,l) in canonical form."""
        return AlgebraElement({mono.adjoint(): c.conjugate() for mono, c in self.terms.items()}, self.q)

    # -- comparisons and measures -----------------------------------------

    def max_abs(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def distance(self, other: AlgebraElement) -> float:
        """Largest coefficient difference, relative to the larger operand once it exceeds 1."""
        diff = (self - other).max_abs()
        return diff / max(1.0, self.max_abs(), other.max_abs())

    def allclose(self, other, tol: float = 1e-9) -> bool:
        other = self._coerce(other)
        return self.distance(other) < tol

    def is_zero(self, tol: float = 1e-9) -> bool:
        return self.max_abs() < tol

    @property
    def degree(self) -> int:
        return max((mono.degree for mono in self.terms), default=0)

    def grades(self) -> set[int]:
        return {mono.grade for mono in self.terms}

    def is_selfadjoint(self, tol: float = 1e-12) -> bool:
        return self.distance(self.adjoint()) < tol

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "terms": [
                {"k": mono.k, "l": mono.l, "m": mono.m, "re": c.real, "im": c.imag}
                for mono, c in self.terms.items()
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> AlgebraElement:
        terms = {
            Monomial(int(t["k"]), int(t["l"]), int(t["m"])): complex(t["re"], t.get("im", 0.0))
            for t in data["terms"]
        }
        return cls(terms, float(data["q"]))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.terms.items():
            label = "1" if mono == ONE else f"xi{mono.k},{mono.l},{mono.m}"
            parts.append(f"({_fmt_complex(c)})*{label}")
        return " + ".join(parts)


def _fmt_complex(c: complex) -> str:
    if abs(c.imag) < 1e-15:
        return f"{c.real:.12g}"
    return f"{c.real:.12g}{c.imag:+.12g}i"


class Generators(NamedTuple):
    a: AlgebraElement
    b: AlgebraElement
    a_star: AlgebraElement
    b_star: AlgebraElement


def generators(q: float) -> Generators:
    q = check_q(q)
    return Generators(
        AlgebraElement({LETTERS["a"]: 1.0}, q),
        AlgebraElement({LETTERS["b"]: 1.0}, q),
        AlgebraElement({LETTERS["A"]: 1.0}, q),
        AlgebraElement({LETTERS["B"]: 1.0}, q),
    )


def from_word(word: str, q: float) -> AlgebraElement:
    """Product of generator letters ('a', 'b', 'A' = a*, 'B' = b*)."""
    result = AlgebraElement.one(q)
    for letter in word:
        result = result * AlgebraElement({LETTERS[letter]: 1.0}, q)
    return result


def random_element(rng: np.random.Generator, q: float, max_degree: int = 3, n_terms: int = 3,
                   grade: int | None = None) -> AlgebraElement:
    """Random combination of monomials of bounded degree, optionally of one grade."""
    terms: dict[Monomial, complex] = {}
    attempts = 0
    while len(terms) < n_terms and attempts < 1000:
        attempts += 1
        k = int(rng.integers(-max_degree, max_degree + 1))
        rest = max_degree - abs(k)
        l = int(rng.integers(0, rest + 1))  # noqa: E741
        m = int(rng.integers(0, rest - l + 1))
        mono = Monomial(k, l, m)
        if grade is not None and mono.grade != grade:
            continue
        terms[mono] = complex(rng.normal(), rng.normal())
    return AlgebraElement(terms, q)


# ---------------------------------------------------------------------------
# TensorElement
# ---------------------------------------------------------------------------

class TensorElement:
    """Finite combination of x ⊗ y with both legs basis monomials."""

    __slots__ = ("q", "terms")

    def __init__(self, terms: Mapping[tuple[Monomial, Monomial], complex], q: float,
                 prune_tol: float = PRUNE_TOL):
        self.q = float(q)
        self.terms: dict[tuple[Monomial, Monomial], complex] = dict(sorted(
            (pair, complex(c)) for pair, c in terms.items() if abs(c) >= prune_tol
        ))

    @classmethod
    def simple(cls, x: AlgebraElement, y: AlgebraElement) -> TensorElement:
        acc = {}
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                acc[(m1, m2)] = c1 * c2
        return cls(acc, x.q)

    def __add__(self, other: TensorElement) -> TensorElement:
        if other.q != self.q:
            raise QParamsMismatchError(self.q, other.q)
        acc = defaultdict(complex, self.terms)
        for pair, c in other.terms.items():
            acc[pair] += c
        return TensorElement(acc, self.q)

    def __sub__(self, other: TensorElement) -> TensorElement:
        return self + other.scale(-1.0)

    def scale(self, value: complex) -> TensorElement:
        return TensorElement({pair: value * c for pair, c in self.terms.items()}, self.q)

    def __mul__(self, other):
        if isinstance(other, Number):
            return self.scale(complex(other))
        if not isinstance(other, TensorElement):
            return NotImplemented
        if other.q != self.q:
            raise QParamsMismatchError(self.q, other.q)
        acc: dict[tuple[Monomial, Monomial], complex] = defaultdict(complex)
        q = self.q
        for (x1, y1), c1 in self.terms.items():
            for (x2, y2), c2 in other.terms.items():
                c12 = c1 * c2
                left = monomial_product(x1, x2, q)
                right = monomial_product(y1, y2, q)
                for mx, gx in left:
                    for my, gy in right:
                        acc[(mx, my)] += c12 * gx * gy
        return TensorElement(acc, q)

    def apply_left(self, functional) -> AlgebraElement:
        """(phi ⊗ id): sum phi(x) y."""
        acc: dict[Monomial, complex] = defaultdict(complex)
        for (x, y), c in self.terms.items():
            value = functional(x)
            if value:
                acc[y] += c * value
        return AlgebraElement(acc, self.q)

    def apply_right(self, functional) -> AlgebraElement:
        """(id ⊗ phi): sum x phi(y)."""
        acc: dict[Monomial, complex] = defaultdict(complex)
        for (x, y), c in self.terms.items():
            value = functional(y)
            if value:
                acc[x] += c * value
        return AlgebraElement(acc, self.q)

    def right_legs(self) -> dict[Monomial, AlgebraElement]:
        """Group by left leg: {x: sum of c y}."""
        groups: dict[Monomial, dict[Monomial, complex]] = defaultdict(dict)
        for (x, y), c in self.terms.items():
            groups[x][y] = groups[x].get(y, 0j) + c
        return {x: AlgebraElement(ys, self.q) for x, ys in groups.items()}

    def distance(self, other: TensorElement) -> float:
        diff = (self - other).terms.values()
        scale = max([1.0] + [abs(c) for c in self.terms.values()] + [abs(c) for c in other.terms.values()])
        return max((abs(c) for c in diff), default=0.0) / scale

    def __len__(self) -> int:
        return len(self.terms)
