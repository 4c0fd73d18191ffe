"""Grading by the left circle action and the analytic norm built on it."""
from __future__ import annotations

import math
from collections import defaultdict
from typing import Callable

from qsu2.algebra.element import AlgebraElement, Monomial, QParams


def grade(x: AlgebraElement) -> dict[int, AlgebraElement]:
    """Split x into homogeneous components; key n collects monomials with k+l-m = n."""
    parts: dict[int, dict[Monomial, complex]] = defaultdict(dict)
    for mono, c in x.terms.items():
        parts[mono.grade][mono] = c
    return {n: AlgebraElement(terms, x.q) for n, terms in sorted(parts.items())}


def project_grade(x: AlgebraElement, n: int) -> AlgebraElement:
    """Spectral projection onto grade n."""
    return AlgebraElement({mono: c for mono, c in x.terms.items() if mono.grade == n}, x.q)


def project_right_grade(x: AlgebraElement, r: int) -> AlgebraElement:
    return AlgebraElement({mono: c for mono, c in x.terms.items() if mono.right_grade == r}, x.q)


def scale_by_grade(x: AlgebraElement, fn: Callable[[int], float]) -> AlgebraElement:
    """Multiply the grade-n component by fn(n)."""
    return AlgebraElement({mono: fn(mono.grade) * c for mono, c in x.terms.items()}, x.q)


def scale_by_right_grade(x: AlgebraElement, fn: Callable[[int], float]) -> AlgebraElement:
    return AlgebraElement({mono: fn(mono.right_grade) * c for mono, c in x.terms.items()}, x.q)


def grade_scale(x: AlgebraElement, s: float) -> AlgebraElement:
    """Multiply the grade-n component by s^{n/2}."""
    return scale_by_grade(x, lambda n: s ** (n / 2.0))


def band_grades(x: AlgebraElement) -> int:
    """Smallest K with x in the band of grades |n| <= K."""
    return max((abs(n) for n in x.grades()), default=0)


def analytic_norm_tq(x: AlgebraElement, p: QParams, norm: Callable[[AlgebraElement], float]) -> float:
    """max(|s_t(x)| + |s_q(x)|, |s_{1/t}(x)| + |s_{1/q}(x)|) with s_z = grade_scale(., z)."""
    forward = norm(grade_scale(x, p.t)) + norm(grade_scale(x, p.q))
    backward = norm(grade_scale(x, 1.0 / p.t)) + norm(grade_scale(x, 1.0 / p.q))
    return max(forward, backward)


def band_norm_bound(x: AlgebraElement, p: QParams, norm: Callable[[AlgebraElement], float]) -> float:
    """sum_{|m|<=M} (t^{m/2} + q^{m/2}) |x|, the crude upper bound for band elements."""
    big_m = band_grades(x)
    weight = sum(math.pow(p.t, m / 2.0) + math.pow(p.q, m / 2.0) for m in range(-big_m, big_m + 1))
    return weight * norm(x)
