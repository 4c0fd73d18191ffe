"""
States chi_N^M, the Berezin transform and fuzzy spectral subspaces.

    xi_N^M   = (M+1)^{-1/2} sum_{r=N}^{N+M} <r+1>^{1/2} a^r
    chi_N^M(x) = h(xi* x xi)
    beta_N^M(x) = (id ⊗ chi_N^M) Delta(x)

chi is evaluated by the Haar sandwich; ``chi_band`` recomputes it through the
operators P_m and the states h_r on the Podles sphere as an independent route.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy import linalg

from qsu2.algebra.element import AlgebraElement, Monomial, QParams, check_q, generators
from qsu2.algebra.grading import project_grade, project_right_grade
from qsu2.algebra.haar import haar
from qsu2.algebra.hopf import counit, counit_monomial, coproduct
from qsu2.algebra.qnumbers import qint
from qsu2.config import RepNormConfig, get_config
from qsu2.corep import u
from qsu2.dirac import delta_derivative, seminorm_L, vertical
from qsu2.errors import ParameterError, UnsupportedError
from qsu2.repnorm import cstar_norm, evaluate_su2
from qsu2.schur import BoundReport, homogeneous_samples

logger = logging.getLogger(__name__)

RANK_TOL = 1e-8


# ---------------------------------------------------------------------------
# States
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StateSpec:
    """haar | counit | chi(N, M) | podles(r) | su2(alpha, beta)."""
    tag: str
    params: tuple = ()

    def __post_init__(self):
        if self.tag not in ("haar", "counit", "chi", "podles", "su2"):
            raise ParameterError(f"unknown state {self.tag!r}")
        if self.tag in ("chi", "podles") and any(int(v) < 0 for v in self.params):
            raise ParameterError(f"state parameters must be nonnegative: {self.params}")

    def label(self) -> str:
        if not self.params:
            return self.tag
        return ":".join([self.tag] + [str(v) for v in self.params])


def parse_state(text: str) -> StateSpec:
    """'haar', 'counit', 'chi:N:M', 'podles:r' or 'su2:ar,ai,br,bi'."""
    parts = text.strip().lower().split(":")
    tag = parts[0]
    try:
        if tag in ("haar", "counit") and len(parts) == 1:
            return StateSpec(tag)
        if tag == "chi" and len(parts) == 3:
            return StateSpec("chi", (int(parts[1]), int(parts[2])))
        if tag == "podles" and len(parts) == 2:
            return StateSpec("podles", (int(parts[1]),))
        if tag == "su2" and len(parts) == 2:
            ar, ai, br, bi = (float(v) for v in parts[1].split(","))
            return StateSpec("su2", (complex(ar, ai), complex(br, bi)))
    except ValueError as exc:
        raise ParameterError(f"bad state descriptor {text!r}: {exc}") from exc
    raise ParameterError(f"bad state descriptor {text!r}; expected haar, counit, chi:N:M, podles:r or su2:ar,ai,br,bi")


@lru_cache(maxsize=256)
def xi_element(big_n: int, big_m: int, q: float) -> AlgebraElement:
    terms = {Monomial(r, 0, 0): math.sqrt(qint(r + 1, q) / (big_m + 1)) for r in range(big_n, big_n + big_m + 1)}
    return AlgebraElement(terms, q)


@lru_cache(maxsize=1 << 16)
def _chi_monomial(mono: Monomial, big_n: int, big_m: int, q: float) -> complex:
    xi = xi_element(big_n, big_m, q)
    return haar(xi.adjoint() * AlgebraElement({mono: 1.0}, q) * xi)


def chi_direct(big_n: int, big_m: int, x: AlgebraElement) -> complex:
    """chi_N^M(x) = h(xi* x xi)."""
    return sum((c * _chi_monomial(mono, big_n, big_m, x.q) for mono, c in x.terms.items()), 0j)


def h_r(r: int, x: AlgebraElement) -> complex:
    """<r+1> h((a*)^r x a^r)."""
    a, _, a_star, _ = generators(x.q)
    return qint(r + 1, x.q) * haar((a_star ** r) * x * (a ** r))


def p_operator(m: int, x: AlgebraElement) -> AlgebraElement:
    """P_0 = P_0^L; P_m(x) = (a*)^m P_m^L(x) + P_{-m}^L(x) a^m for m > 0."""
    if m == 0:
        return project_grade(x, 0)
    a, _, a_star, _ = generators(x.q)
    return (a_star ** m) * project_grade(x, m) + project_grade(x, -m) * (a ** m)


def chi_band(big_n: int, big_m: int, x: AlgebraElement) -> complex:
    """chi_N^M through the band decomposition sum_r sum_m sqrt(<m+r+1>/<r+1>) h_r(P_m(x)) / (M+1)."""
    q = x.q
    total = 0j
    for r in range(big_n, big_n + big_m + 1):
        for m in range(big_n + big_m - r + 1):
            weight = math.sqrt(qint(m + r + 1, q) / qint(r + 1, q))
            total += weight * h_r(r, p_operator(m, x))
    return total / (big_m + 1)


def phi_rs(r: int, s: int, x: AlgebraElement) -> complex:
    """h((a*)^s x a^r)."""
    a, _, a_star, _ = generators(x.q)
    return haar((a_star ** s) * x * (a ** r))


def phi_rs_predicted_nonzero(r: int, s: int, n: int, i: int, j: int) -> bool:
    return n - 2 * j == r - s and i == j and j <= s


def chi_closed_form(big_n: int, big_m: int, k: int, n: int, q: float) -> float:
    """chi_N^M((a*)^{k+n} a^n) = (M+1)^{-1} sum_{i=N}^{N+M-k} sqrt(<i+1><i+k+1>) / <i+k+n+1>."""
    total = math.fsum(
        math.sqrt(qint(i + 1, q) * qint(i + k + 1, q)) / qint(i + k + n + 1, q)
        for i in range(big_n, big_n + big_m - k + 1)
    )
    return total / (big_m + 1)


def evaluate_state(state: StateSpec, x: AlgebraElement) -> complex:
    if state.tag == "haar":
        return haar(x)
    if state.tag == "counit":
        return counit(x)
    if state.tag == "chi":
        return chi_direct(state.params[0], state.params[1], x)
    if state.tag == "podles":
        return h_r(state.params[0], x)
    if x.q != 1.0:
        raise UnsupportedError("point evaluations on SU(2) need q = 1")
    return evaluate_su2(x, state.params)


def state_functional(state: StateSpec, q: float):
    """Monomial-level functional for slicing tensors."""
    if state.tag == "counit":
        return counit_monomial
    if state.tag == "chi":
        big_n, big_m = state.params
        return lambda mono: _chi_monomial(mono, big_n, big_m, q)
    return lambda mono: evaluate_state(state, AlgebraElement({mono: 1.0}, q))


# ---------------------------------------------------------------------------
# Berezin transform
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1 << 14)
def _berezin_monomial(mono: Monomial, big_n: int, big_m: int, q: float) -> AlgebraElement:
    tensor = coproduct(AlgebraElement({mono: 1.0}, q))
    return tensor.apply_right(lambda y: _chi_monomial(y, big_n, big_m, q))


def berezin(big_n: int, big_m: int, x: AlgebraElement) -> AlgebraElement:
    """beta_N^M(x) = (id ⊗ chi_N^M) Delta(x)."""
    if big_n < 0 or big_m < 0:
        raise ParameterError(f"N and M must be >= 0, got {big_n}, {big_m}")
    result = AlgebraElement.zero(x.q)
    for mono, c in x.terms.items():
        result = result + _berezin_monomial(mono, big_n, big_m, x.q).scale(c)
    return result


# ---------------------------------------------------------------------------
# Fuzzy subspaces
# ---------------------------------------------------------------------------

@dataclass
class FuzzyBandBasis:
    """Monomial basis of a fuzzy subspace with grade labels."""
    big_n: int
    big_k: int
    q: float
    elements: list[AlgebraElement] = field(default_factory=list)
    grades: list[int] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.elements)

    @cached_property
    def gram(self) -> np.ndarray:
        size = self.dimension
        gram = np.zeros((size, size), dtype=complex)
        adjoints = [f.adjoint() for f in self.elements]
        for i in range(size):
            for j in range(i, size):
                value = 0j if self.grades[i] != self.grades[j] else haar(adjoints[i] * self.elements[j])
                gram[i, j] = value
                gram[j, i] = np.conj(value)
        return gram

    def min_gram_eigenvalue(self) -> float:
        if not self.dimension:
            return 0.0
        return float(np.min(np.linalg.eigvalsh(self.gram)))

    def to_dict(self) -> dict:
        return {
            "N": self.big_n,
            "K": self.big_k,
            "q": self.q,
            "dimension": self.dimension,
            "elements": [{"grade": g, "element": f.to_dict()} for f, g in zip(self.elements, self.grades)],
        }


def _positive_list(big_n: int, m: int) -> list[Monomial]:
    monos = []
    for i in range(big_n + 1):
        for j in range(big_n + 1 - i):
            monos.append(Monomial(j + m, i, i + j))
            monos.append(Monomial(-j, i + j + m, i))
    for k in range(1, m):
        for i in range(big_n + 1):
            monos.append(Monomial(k, i + m - k, i))
    return monos


def _zero_list(big_n: int) -> list[Monomial]:
    monos = []
    for j in range(1, big_n + 1):
        for i in range(big_n - j + 1):
            monos.append(Monomial(j, i, i + j))
            monos.append(Monomial(-j, i + j, i))
    monos.extend(Monomial(0, i, i) for i in range(big_n + 1))
    return monos


def fuzzy_monomials(big_n: int, m: int) -> list[Monomial]:
    if m > 0:
        return _positive_list(big_n, m)
    if m == 0:
        return _zero_list(big_n)
    return [mono.adjoint() for mono in _positive_list(big_n, -m)]


def fuzzy_basis(big_n: int, m: int, q: float) -> FuzzyBandBasis:
    """Basis of Fuzz_N(A^m); dimension (N+|m|+1)(N+1)."""
    if big_n < 0:
        raise ParameterError(f"N must be >= 0, got {big_n}")
    q = check_q(q)
    monos = fuzzy_monomials(big_n, m)
    return FuzzyBandBasis(big_n, abs(m), q, [AlgebraElement({mono: 1.0}, q) for mono in monos], [m] * len(monos))


def _concat(big_n: int, big_k: int, q: float, parts: Iterable[FuzzyBandBasis]) -> FuzzyBandBasis:
    band = FuzzyBandBasis(big_n, big_k, q)
    for part in parts:
        band.elements.extend(part.elements)
        band.grades.extend(part.grades)
    return band


def fuzzy_band(big_n: int, big_k: int, q: float) -> FuzzyBandBasis:
    """Fuzz_N(B^K) = sum over |m| <= K of Fuzz_N(A^m)."""
    if big_k < 0:
        raise ParameterError(f"K must be >= 0, got {big_k}")
    return _concat(big_n, big_k, q, (fuzzy_basis(big_n, m, q) for m in range(-big_k, big_k + 1)))


def berezin_target(big_n: int, big_m: int, q: float) -> FuzzyBandBasis:
    """Sum over |m| <= M of Fuzz_{N+M-|m|}(A^m), the image of beta_N^M."""
    return _concat(big_n + big_m, big_m, q,
                   (fuzzy_basis(big_n + big_m - abs(m), m, q) for m in range(-big_m, big_m + 1)))


def fuzzy_sphere(big_n: int, q: float) -> list[AlgebraElement]:
    """(bb*)^i (ab*)^j and (bb*)^i (ba*)^j for i + j <= N."""
    a, b, a_star, b_star = generators(q)
    c = b * b_star
    out = []
    for i in range(big_n + 1):
        for j in range(big_n + 1 - i):
            out.append((c ** i) * ((a * b_star) ** j))
            if j:
                out.append((c ** i) * ((b * a_star) ** j))
    return out


def coefficient_rank(elements: Sequence[AlgebraElement], tol: float = RANK_TOL) -> int:
    """Rank of the normalized coefficient vectors."""
    rows = [f for f in elements if not f.is_zero(1e-14)]
    if not rows:
        return 0
    monos = sorted({mono for f in rows for mono in f.terms})
    index = {mono: k for k, mono in enumerate(monos)}
    matrix = np.zeros((len(rows), len(monos)), dtype=complex)
    for r, f in enumerate(rows):
        for mono, c in f.terms.items():
            matrix[r, index[mono]] = c
        matrix[r] /= np.linalg.norm(matrix[r])
    return int(np.linalg.matrix_rank(matrix, tol=tol))


def fuzzy_sphere_check(big_n: int, q: float) -> dict:
    """The generator-product description spans the same space as fuzzy_basis(N, 0)."""
    sphere = fuzzy_sphere(big_n, q)
    basis = fuzzy_basis(big_n, 0, q).elements
    return {
        "N": big_n,
        "sphere_rank": coefficient_rank(sphere),
        "basis_dimension": len(basis),
        "joint_rank": coefficient_rank(sphere + basis),
    }


def project_onto(basis: FuzzyBandBasis, x: AlgebraElement) -> AlgebraElement:
    """L^2-orthogonal projection of x onto span(basis) through a Gram solve."""
    if not basis.dimension:
        return AlgebraElement.zero(x.q)
    rhs = np.array([haar(f.adjoint() * x) for f in basis.elements], dtype=complex)
    coeffs = linalg.solve(basis.gram, rhs, assume_a="her")
    result = AlgebraElement.zero(x.q)
    for f, c in zip(basis.elements, coeffs):
        result = result + f.scale(complex(c))
    return result


def projection_residual(basis: FuzzyBandBasis, x: AlgebraElement) -> float:
    """Coefficient distance between x and its projection; zero iff x lies in the span."""
    return project_onto(basis, x).distance(x)


def extended_berezin(big_n: int, big_m: int, x: AlgebraElement) -> AlgebraElement:
    """beta_N^M after projecting x onto the image of beta_N^M."""
    return berezin(big_n, big_m, project_onto(berezin_target(big_n, big_m, x.q), x))


# ---------------------------------------------------------------------------
# Structure checks
# ---------------------------------------------------------------------------

def image_level_cap(big_n: int, big_m: int, m: int) -> int:
    return 2 * (big_n + big_m) - abs(m) + 2


def grade_slice(m: int, level_cap: int, q: float) -> list[tuple[int, int, int, AlgebraElement]]:
    """Matrix coefficients u^n_{ij} of grade m = 2j - n with n <= level_cap."""
    out = []
    for n in range(abs(m), level_cap + 1):
        if (n + m) % 2:
            continue
        j = (n + m) // 2
        for i in range(n + 1):
            out.append((n, i, j, u(n, i, j, q)))
    return out


@dataclass
class ImageReport:
    big_n: int
    big_m: int
    m: int
    rank: int
    expected_rank: int
    containment_residual: float
    spanning: int

    @property
    def passed(self) -> bool:
        return self.rank == self.expected_rank and self.containment_residual < 1e-8

    def to_dict(self) -> dict:
        return {
            "N": self.big_n, "M": self.big_m, "m": self.m, "rank": self.rank,
            "expected_rank": self.expected_rank, "containment_residual": self.containment_residual,
            "spanning": self.spanning, "passed": self.passed,
        }


def berezin_image_check(big_n: int, big_m: int, m: int, q: float) -> ImageReport:
    """Rank of beta_N^M on the grade-m slice against (N+M+1)(N+M+1-|m|), plus span containment."""
    if abs(m) > big_m:
        raise ParameterError(f"need |m| <= M, got m={m}, M={big_m}")
    target = fuzzy_basis(big_n + big_m - abs(m), m, q)
    images = []
    worst = 0.0
    for _n, _i, _j, coeff in grade_slice(m, image_level_cap(big_n, big_m, m), q):
        image = berezin(big_n, big_m, coeff)
        if image.max_abs() <= RANK_TOL * max(coeff.max_abs(), 1.0):
            continue
        images.append(image)
        worst = max(worst, projection_residual(target, image))
    report = ImageReport(big_n, big_m, m, coefficient_rank(images),
                         (big_n + big_m + 1) * (big_n + big_m + 1 - abs(m)), worst, len(images))
    if not report.passed:
        logger.warning("berezin image check failed: %s", report.to_dict())
    return report


def coinvariance_check(big_n: int, big_k: int, q: float) -> dict:
    """Right legs of Delta(x) stay in Fuzz_N(B^K) for every basis element x."""
    band = fuzzy_band(big_n, big_k, q)
    by_grade = {m: fuzzy_basis(big_n, m, q) for m in range(-big_k, big_k + 1)}
    worst = 0.0
    for f in band.elements:
        for leg in coproduct(f).right_legs().values():
            for m, part in _grade_parts(leg).items():
                if abs(m) > big_k:
                    worst = max(worst, part.max_abs())
                    continue
                worst = max(worst, projection_residual(by_grade[m], part))
    return {"N": big_n, "K": big_k, "q": q, "checked": band.dimension, "residual": worst, "passed": worst < 1e-8}


def _grade_parts(x: AlgebraElement) -> dict[int, AlgebraElement]:
    return {m: project_grade(x, m) for m in sorted(x.grades())}


def berezin_right_grade_residual(big_n: int, big_m: int, x: AlgebraElement) -> float:
    """beta commutes with the right grading projections."""
    worst = 0.0
    for r in {mono.right_grade for mono in x.terms}:
        worst = max(worst, berezin(big_n, big_m, project_right_grade(x, r)).distance(
            project_right_grade(berezin(big_n, big_m, x), r)))
    return worst


def equivariance_residual(big_n: int, big_m: int, x: AlgebraElement, t: float) -> float:
    """delta(beta(x)) against beta applied entrywise to delta(x), and the same for the vertical derivative."""
    q = x.q
    beta = lambda y: berezin(big_n, big_m, y)  # noqa: E731
    right = delta_derivative(beta(x), q).distance(delta_derivative(x, q).map(beta))
    params = QParams(q, t)
    vert = vertical(beta(x), params).distance(vertical(x, params).map(beta))
    return max(right, vert)


def berezin_contraction_check(big_n: int, big_m: int, q: float, samples: int = 30,
                              cfg: Optional[RepNormConfig] = None, seed: int = 0) -> BoundReport:
    """|beta(x)| <= |x| and L_{q,q}(beta(x)) <= L_{q,q}(x) on band elements of grade |n| <= M.

    Both sides go through the oracle, so rows are compared to its convergence tolerance.
    """
    cfg = cfg or get_config().repnorm
    p = QParams(q, q)
    report = BoundReport("berezin_contraction", tolerance=max(1e-7, cfg.cutoff_tol))
    for index, n, x in homogeneous_samples(samples, q, big_m, seed):
        image = berezin(big_n, big_m, x)
        report.add(cstar_norm(image, cfg, seed), cstar_norm(x, cfg, seed), sample=index, grade=n, kind="norm")
        report.add(seminorm_L(image, p, cfg, seed), seminorm_L(x, p, cfg, seed),
                   sample=index, grade=n, kind="seminorm")
    return report


@dataclass
class ConvergenceRow:
    monomial: str
    n: int
    chi: float
    counit: float

    @property
    def gap(self) -> float:
        return abs(self.chi - self.counit)

    def to_dict(self) -> dict:
        return {"monomial": self.monomial, "N": self.n, "chi": self.chi, "counit": self.counit, "gap": self.gap}


def convergence_table(monomials: Sequence[Monomial], sizes: Sequence[int], q: float) -> list[ConvergenceRow]:
    """|chi_N^N(x) - eps(x)| along N for fixed monomials."""
    rows = []
    for mono in monomials:
        x = AlgebraElement({Monomial(*mono): 1.0}, q)
        for size in sizes:
            rows.append(ConvergenceRow(f"xi{mono[0]},{mono[1]},{mono[2]}", size,
                                       chi_direct(size, size, x).real, counit(x).real))
    return rows


def is_nonincreasing(values: Sequence[float], tol: float = 1e-12) -> bool:
    return all(b <= a + tol for a, b in zip(values, values[1:]))


def state_positivity(state: StateSpec, samples: Sequence[AlgebraElement]) -> float:
    """Smallest real part of state(x* x) over samples."""
    return min((evaluate_state(state, x.adjoint() * x).real for x in samples), default=0.0)


def chi_cross_check(big_n: int, big_m: int, x: AlgebraElement) -> float:
    return abs(chi_direct(big_n, big_m, x) - chi_band(big_n, big_m, x))


def check_caps(big_n: int, big_m: int, max_nm: Optional[int] = None):
    cap = get_config().berezin.max_nm if max_nm is None else max_nm
    if big_n + big_m > cap:
        raise ParameterError(f"N + M = {big_n + big_m} exceeds the configured cap {cap}")
