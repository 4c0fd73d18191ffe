"""
Schur multipliers on the left grading, band smoothing and the bound constants.

A multiplier phi: Z -> C acts on polynomials by scaling the grade-n component
by phi(n). On a 2x2 operator the entry (i, j) is first shifted to its operator
grade (see ``ENTRY_GRADE_SHIFT``).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
from scipy import special

from qsu2.algebra.element import AlgebraElement, QParams, generators, random_element
from qsu2.algebra.grading import analytic_norm_tq, band_norm_bound, project_grade, scale_by_grade
from qsu2.algebra.qnumbers import mu, qnum
from qsu2.config import RepNormConfig
from qsu2.corep import u_matrix
from qsu2.dirac import ENTRY_GRADE_SHIFT, GradedOperator2, derivative_podles, seminorm_L, vertical
from qsu2.errors import ParameterError
from qsu2.repnorm import cstar_norm

logger = logging.getLogger(__name__)

Target = Union[AlgebraElement, GradedOperator2]


@dataclass(frozen=True)
class MultiplierSpec:
    """phi_t (tag 'phi', param t), gamma_M ('gamma', M) or delta_n ('delta', n)."""
    tag: str
    param: float

    def __post_init__(self):
        if self.tag not in ("phi", "gamma", "delta"):
            raise ParameterError(f"unknown multiplier {self.tag!r}")
        if self.tag == "phi" and not 0 < self.param <= 1:
            raise ParameterError(f"phi_t needs t in (0, 1], got {self.param!r}")
        if self.tag == "gamma" and (self.param < 0 or self.param != int(self.param)):
            raise ParameterError(f"gamma_M needs an integer M >= 0, got {self.param!r}")

    @classmethod
    def phi(cls, t: float) -> MultiplierSpec:
        return cls("phi", t)

    @classmethod
    def gamma(cls, big_m: int) -> MultiplierSpec:
        return cls("gamma", big_m)

    @classmethod
    def delta(cls, n: int) -> MultiplierSpec:
        return cls("delta", n)

    def value(self, n: int) -> float:
        """Entry at grade difference n = i - j."""
        if self.tag == "phi":
            return 0.0 if n == 0 else 1.0 / qnum(n / 2.0, self.param)
        if self.tag == "gamma":
            big_m = int(self.param)
            return (big_m + 1 - abs(n)) / (big_m + 1) if abs(n) <= big_m else 0.0
        return 1.0 if n == int(self.param) else 0.0


def apply_multiplier(spec: MultiplierSpec, target: Target) -> Target:
    if isinstance(target, AlgebraElement):
        return scale_by_grade(target, spec.value)
    rows = []
    for i in range(2):
        row = []
        for j in range(2):
            shift = ENTRY_GRADE_SHIFT[i][j]
            row.append(scale_by_grade(target.entries[i][j], lambda g, s=shift: spec.value(g + s)))
        rows.append(tuple(row))
    return GradedOperator2(rows)


def E_M(x: Target, big_m: int) -> Target:  # noqa: N802
    """Band smoothing sum_{|m|<=M} (M+1-|m|)/(M+1) P_m."""
    return apply_multiplier(MultiplierSpec.gamma(big_m), x)


def spectral_projection(x: Target, n: int) -> Target:
    return apply_multiplier(MultiplierSpec.delta(n), x)


def band_part(x: AlgebraElement, big_m: int) -> AlgebraElement:
    """Sum of the grade components with |n| <= M."""
    return scale_by_grade(x, lambda n: 1.0 if abs(n) <= big_m else 0.0)


# ---------------------------------------------------------------------------
# Vertical anti-derivative
# ---------------------------------------------------------------------------

_GAMMA = ((1.0, 1.0), (-1.0, -1.0))  # diag(1, -1) acting from the left


def integrate_vertical(op: GradedOperator2, t: float) -> GradedOperator2:
    """M(phi_t)(gamma T) with gamma = diag(1, -1)."""
    signed = GradedOperator2(tuple(
        tuple(op.entries[i][j].scale(_GAMMA[i][j]) for j in range(2)) for i in range(2)
    ))
    return apply_multiplier(MultiplierSpec.phi(t), signed)


def antiderivative_V(x: AlgebraElement, p: QParams) -> AlgebraElement:  # noqa: N802
    """Integral of the vertical derivative of x; equals x - P_0(x)."""
    return integrate_vertical(vertical(x, p), p.t)[0, 0]


def antiderivative_residual(x: AlgebraElement, p: QParams) -> float:
    return antiderivative_V(x, p).distance(x - project_grade(x, 0))


# ---------------------------------------------------------------------------
# Bound constants
# ---------------------------------------------------------------------------

def zeta_tail(big_m: int) -> float:
    """sum_{k > M} 1/k^2 as the Hurwitz zeta value zeta(2, M + 1)."""
    return float(special.zeta(2.0, big_m + 1))


def epsilon_null(delta: float, big_m: int) -> float:
    """2^{1/2} (d^{1/2} + d^{-1/2}) (M/(M+1)^2 + sum_{k>M} 1/k^2)^{1/2}."""
    if not 0 < delta <= 1:
        raise ParameterError(f"delta must lie in (0, 1], got {delta!r}")
    if big_m < 0:
        raise ParameterError(f"M must be >= 0, got {big_m}")
    inner = big_m / (big_m + 1) ** 2 + zeta_tail(big_m)
    return math.sqrt(2.0) * (math.sqrt(delta) + 1.0 / math.sqrt(delta)) * math.sqrt(inner)


def cb_bound_phi(t: float) -> float:
    return math.pi * (math.sqrt(t) + 1.0 / math.sqrt(t)) / math.sqrt(3.0)


CB_BOUND_GAMMA = 1.0


def first_m_below(delta: float, threshold: float, limit: int = 1_000_000) -> Optional[int]:
    """Smallest M with epsilon_null(delta, M) < threshold, by bisection on the decreasing tail."""
    if epsilon_null(delta, limit) >= threshold:
        return None
    lo, hi = 0, limit
    while lo < hi:
        mid = (lo + hi) // 2
        if epsilon_null(delta, mid) < threshold:
            hi = mid
        else:
            lo = mid + 1
    return lo


# ---------------------------------------------------------------------------
# Sampled bound checks
# ---------------------------------------------------------------------------

@dataclass
class BoundReport:
    """Sampled inequality lhs <= rhs, compared with a relative and absolute ``tolerance``."""
    name: str
    rows: list[dict] = field(default_factory=list)
    tolerance: float = 1e-7

    def add(self, lhs: float, rhs: float, **labels):
        ok = lhs <= rhs * (1.0 + self.tolerance) + self.tolerance
        self.rows.append({**labels, "lhs": lhs, "rhs": rhs, "ok": ok})
        if not ok:
            logger.warning("%s violated: %.6g > %.6g %s", self.name, lhs, rhs, labels)

    @property
    def violations(self) -> int:
        return sum(1 for row in self.rows if not row["ok"])

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return {"name": self.name, "checked": len(self.rows), "violations": self.violations, "rows": self.rows}


def band_approximation_check(delta: float, big_ms: list[int], samples: int, p: QParams,
                             cfg: Optional[RepNormConfig] = None, seed: int = 0,
                             max_degree: int = 3) -> list[BoundReport]:
    """|x - E_M x| <= eps(delta, M) L(x), |y| <= cb(phi_t) L(y) for y = x - P_0 x,
    and |[m/2]_t| |P_m x| <= L(x)."""
    if delta > min(p.t, p.q):
        raise ParameterError(f"delta {delta} must not exceed t and q")
    rng = np.random.default_rng(seed)
    band = BoundReport("band_approximation")
    vertical_radius = BoundReport("vertical_radius")
    homogeneous = BoundReport("homogeneous_grade")
    for index in range(samples):
        x = random_element(rng, p.q, max_degree=max_degree, n_terms=4)
        x = x + x.adjoint()
        lip = seminorm_L(x, p, cfg, seed)
        for big_m in big_ms:
            band.add(cstar_norm(x - E_M(x, big_m), cfg, seed), epsilon_null(delta, big_m) * lip,
                     sample=index, M=big_m)
        y = x - project_grade(x, 0)
        if not y.is_zero(1e-12):
            vertical_radius.add(cstar_norm(y, cfg, seed), cb_bound_phi(p.t) * seminorm_L(y, p, cfg, seed),
                                sample=index)
        m = int(rng.integers(1, max_degree + 1))
        z = project_grade(random_element(rng, p.q, max_degree=max_degree, n_terms=3, grade=m), m)
        if not z.is_zero(1e-12):
            homogeneous.add(abs(qnum(m / 2.0, p.t)) * cstar_norm(z, cfg, seed), seminorm_L(z, p, cfg, seed),
                            sample=index, grade=m)
    return [band, vertical_radius, homogeneous]


def band_contraction_check(big_m: int, samples: int, p: QParams, cfg: Optional[RepNormConfig] = None,
                           seed: int = 0) -> BoundReport:
    """L(E_M x) <= L(x) and |E_M x| <= |x| on random elements."""
    rng = np.random.default_rng(seed)
    report = BoundReport("band_contraction")
    for index in range(samples):
        x = random_element(rng, p.q, max_degree=3, n_terms=4)
        smoothed = E_M(x, big_m)
        report.add(seminorm_L(smoothed, p, cfg, seed), seminorm_L(x, p, cfg, seed), sample=index, kind="seminorm")
        report.add(cstar_norm(smoothed, cfg, seed), cstar_norm(x, cfg, seed), sample=index, kind="norm")
    return report


def fundamental_unitary_bounds(p: QParams, cfg: Optional[RepNormConfig] = None, seed: int = 0) -> BoundReport:
    """|u_ij|_{t,q} <= q^{-1/2} + t^{-1/2} and L(u_ij) <= [1/2]_t + q^{-1/2}."""
    report = BoundReport("fundamental_unitary")
    norm_bound = 1.0 / math.sqrt(p.q) + 1.0 / math.sqrt(p.t)
    lip_bound = mu(p.t) + 1.0 / math.sqrt(p.q)
    for i, row in enumerate(u_matrix(p.q)):
        for j, entry in enumerate(row):
            analytic = analytic_norm_tq(entry, p, lambda y: cstar_norm(y, cfg, seed))
            report.add(analytic, norm_bound, i=i, j=j, kind="analytic_norm")
            report.add(seminorm_L(entry, p, cfg, seed), lip_bound, i=i, j=j, kind="seminorm")
    return report


def shift_bound_check(x: AlgebraElement, p: QParams, cfg: Optional[RepNormConfig] = None,
                      seed: int = 0) -> dict:
    """L_q^0 of the grade-0 shift of x against (t^{1/2} + t^{-1/2} + 1) L(x).

    x must be homogeneous of grade m; the shift is (a*)^m x for m >= 0 and x a^{-m} otherwise.
    """
    grades = x.grades()
    if len(grades) != 1:
        raise ParameterError("shift_bound_check needs a homogeneous element")
    (m,) = grades
    a, _, a_star, _ = generators(x.q)
    shifted = (a_star ** m) * x if m >= 0 else x * (a ** (-m))
    podles = derivative_podles(shifted, x.q)
    lhs = 0.0 if podles.is_zero(1e-14) else cstar_norm(podles, cfg, seed)
    rhs = (math.sqrt(p.t) + 1.0 / math.sqrt(p.t) + 1.0) * seminorm_L(x, p, cfg, seed)
    return {"grade": m, "lhs": lhs, "rhs": rhs, "ok": lhs <= rhs * (1.0 + 1e-7) + 1e-7}


def homogeneous_samples(samples: int, q: float, big_m: int, seed: int = 0, max_degree: int = 3):
    """Yield (index, grade, x) for nonzero random x of a single grade |n| <= M."""
    rng = np.random.default_rng(seed)
    for index in range(samples):
        n = int(rng.integers(-big_m, big_m + 1))
        x = project_grade(random_element(rng, q, max_degree=max_degree, n_terms=3, grade=n), n)
        if not x.is_zero(1e-12):
            yield index, n, x


def shift_bound_report(big_m: int, samples: int, p: QParams, cfg: Optional[RepNormConfig] = None,
                       seed: int = 0) -> BoundReport:
    report = BoundReport("grade_shift")
    for index, n, x in homogeneous_samples(samples, p.q, big_m, seed):
        row = shift_bound_check(x, p, cfg, seed)
        report.add(row["lhs"], row["rhs"], sample=index, grade=n)
    return report


def band_norm_check(big_m: int, samples: int, p: QParams, cfg: Optional[RepNormConfig] = None,
                    seed: int = 0) -> BoundReport:
    """|x|_{t,q} <= sum_{|m|<=M} (t^{m/2} + q^{m/2}) |x| on elements of the band |n| <= M."""
    rng = np.random.default_rng(seed)
    report = BoundReport("band_norm")

    def norm(y: AlgebraElement) -> float:
        return cstar_norm(y, cfg, seed)

    for index in range(samples):
        x = band_part(random_element(rng, p.q, max_degree=3, n_terms=4), big_m)
        if x.is_zero(1e-12):
            continue
        report.add(analytic_norm_tq(x, p, norm), band_norm_bound(x, p, norm), sample=index)
    return report
