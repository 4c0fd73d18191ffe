"""
Twisted derivations, the 2x2 derivative and the Dirac block spectra.

    d1 = q^{1/2} d_e        d2 = q^{-1/2} d_f        d3_t = [n/2]_t on grade n

    d_{t,q}(x) = [[ d3_t(x), -d2(x) ],
                  [ -d1(x), -d3_t(x) ]]

The right-handed derivative delta uses the right actions and the right
grading with t = q. Seminorms are operator norms of these 2x2 matrices,
taken through the rep-norm oracle.
"""
from __future__ import annotations

import logging
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from numbers import Number
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import optimize

from qsu2.algebra.actions import E_LEFT, E_RIGHT, F_LEFT, F_RIGHT, K_LEFT, K_RIGHT, act
from qsu2.algebra.element import AlgebraElement, Monomial, QParams
from qsu2.algebra.grading import grade_scale, scale_by_grade, scale_by_right_grade
from qsu2.algebra.qnumbers import qint, qnum
from qsu2.config import RepNormConfig
from qsu2.corep import u_matrix
from qsu2.errors import ParameterError, QParamsMismatchError, UnsupportedError
from qsu2.repnorm import NormEstimate, norm_estimate, sample_su2, su2_from_unit_cube, su2_values

logger = logging.getLogger(__name__)

# Operator grade of entry (i, j) = element grade + shift
ENTRY_GRADE_SHIFT = ((0, -2), (2, 0))


# ---------------------------------------------------------------------------
# 2x2 matrices over the algebra
# ---------------------------------------------------------------------------

class GradedOperator2:
    """2x2 matrix over the algebra acting on L^2 ⊕ L^2 by left multiplication."""

    __slots__ = ("entries", "q")

    def __init__(self, entries: Sequence[Sequence[AlgebraElement]]):
        rows = tuple(tuple(row) for row in entries)
        if len(rows) != 2 or any(len(row) != 2 for row in rows):
            raise ParameterError("GradedOperator2 needs a 2x2 array of entries")
        q = rows[0][0].q
        for row in rows:
            for entry in row:
                if entry.q != q:
                    raise QParamsMismatchError(q, entry.q)
        self.entries = rows
        self.q = q

    @classmethod
    def zero(cls, q: float) -> GradedOperator2:
        z = AlgebraElement.zero(q)
        return cls(((z, z), (z, z)))

    @classmethod
    def diagonal(cls, x: AlgebraElement, y: AlgebraElement) -> GradedOperator2:
        z = AlgebraElement.zero(x.q)
        return cls(((x, z), (z, y)))

    def map(self, fn: Callable[[AlgebraElement], AlgebraElement]) -> GradedOperator2:
        return GradedOperator2(tuple(tuple(fn(e) for e in row) for row in self.entries))

    def __getitem__(self, index: tuple[int, int]) -> AlgebraElement:
        i, j = index
        return self.entries[i][j]

    def __add__(self, other: GradedOperator2) -> GradedOperator2:
        return GradedOperator2(tuple(
            tuple(self.entries[i][j] + other.entries[i][j] for j in range(2)) for i in range(2)
        ))

    def __sub__(self, other: GradedOperator2) -> GradedOperator2:
        return self + (-other)

    def __neg__(self) -> GradedOperator2:
        return self.map(lambda e: -e)

    def scale(self, value: complex) -> GradedOperator2:
        return self.map(lambda e: e.scale(value))

    def __matmul__(self, other: GradedOperator2) -> GradedOperator2:
        x, y = self.entries, other.entries
        return GradedOperator2(tuple(
            tuple(x[i][0] * y[0][j] + x[i][1] * y[1][j] for j in range(2)) for i in range(2)
        ))

    def __mul__(self, other):
        if isinstance(other, Number):
            return self.scale(complex(other))
        if isinstance(other, AlgebraElement):
            return self.map(lambda e: e * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Number):
            return self.scale(complex(other))
        if isinstance(other, AlgebraElement):
            return self.map(lambda e: other * e)
        return NotImplemented

    def adjoint(self) -> GradedOperator2:
        """Entrywise adjoint, transposed."""
        e = self.entries
        return GradedOperator2(((e[0][0].adjoint(), e[1][0].adjoint()), (e[0][1].adjoint(), e[1][1].adjoint())))

    def apply(self, vector: tuple[AlgebraElement, AlgebraElement]) -> tuple[AlgebraElement, AlgebraElement]:
        e = self.entries
        return (e[0][0] * vector[0] + e[0][1] * vector[1], e[1][0] * vector[0] + e[1][1] * vector[1])

    def distance(self, other: GradedOperator2) -> float:
        return max(self.entries[i][j].distance(other.entries[i][j]) for i in range(2) for j in range(2))

    def is_zero(self, tol: float = 1e-9) -> bool:
        return all(entry.is_zero(tol) for row in self.entries for entry in row)

    def to_dict(self) -> dict:
        return {"entries": [[entry.to_dict() for entry in row] for row in self.entries]}

    def __repr__(self) -> str:
        return f"GradedOperator2({self.entries!r})"


# ---------------------------------------------------------------------------
# Derivations
# ---------------------------------------------------------------------------

def _check(x: AlgebraElement, p: QParams):
    if x.q != p.q:
        raise QParamsMismatchError(p.q, x.q)


def partial_one(x: AlgebraElement, p: QParams) -> AlgebraElement:
    _check(x, p)
    return act(E_LEFT, x).scale(math.sqrt(p.q))


def partial_two(x: AlgebraElement, p: QParams) -> AlgebraElement:
    _check(x, p)
    return act(F_LEFT, x).scale(1.0 / math.sqrt(p.q))


def partial_three(x: AlgebraElement, p: QParams) -> AlgebraElement:
    _check(x, p)
    return scale_by_grade(x, lambda n: qnum(n / 2.0, p.t))


def horizontal(x: AlgebraElement, p: QParams) -> GradedOperator2:
    z = AlgebraElement.zero(x.q)
    return GradedOperator2(((z, -partial_two(x, p)), (-partial_one(x, p), z)))


def vertical(x: AlgebraElement, p: QParams) -> GradedOperator2:
    d3 = partial_three(x, p)
    return GradedOperator2.diagonal(d3, -d3)


def derivative(x: AlgebraElement, p: QParams) -> GradedOperator2:
    """d_{t,q}(x) = vertical part + horizontal part."""
    return vertical(x, p) + horizontal(x, p)


def derivative_podles(x: AlgebraElement, q: float) -> GradedOperator2:
    """Horizontal derivative of a grade-0 element, built from the bare actions."""
    if any(g != 0 for g in x.grades()):
        raise ParameterError("the Podles seminorm is defined on grade-0 elements only")
    z = AlgebraElement.zero(q)
    return GradedOperator2((
        (z, act(F_LEFT, x).scale(-1.0 / math.sqrt(q))),
        (act(E_LEFT, x).scale(-math.sqrt(q)), z),
    ))


def delta_derivative(x: AlgebraElement, q: float) -> GradedOperator2:
    """delta(x) = [[delta3(x), -delta2(x)], [-delta1(x), -delta3(x)]] with t = q."""
    d1 = act(E_RIGHT, x).scale(math.sqrt(q))
    d2 = act(F_RIGHT, x).scale(1.0 / math.sqrt(q))
    d3 = scale_by_right_grade(x, lambda r: qnum(r / 2.0, q))
    return GradedOperator2(((d3, -d2), (-d1, -d3)))


def u_operator(q: float) -> GradedOperator2:
    return GradedOperator2(u_matrix(q))


def conjugation_residual(x: AlgebraElement) -> float:
    """u d_{q,q}(x) u* against delta(x)."""
    q = x.q
    u_op = u_operator(q)
    lhs = u_op @ derivative(x, QParams(q, q)) @ u_op.adjoint()
    return lhs.distance(delta_derivative(x, q))


def adjoint_residual(x: AlgebraElement, p: QParams) -> float:
    """d(x*) against -d(x)*."""
    return derivative(x.adjoint(), p).distance(-derivative(x, p).adjoint())


def delta_adjoint_residual(x: AlgebraElement) -> float:
    """delta(x*) against -delta(x)*."""
    return delta_derivative(x.adjoint(), x.q).distance(-delta_derivative(x, x.q).adjoint())


def twisted_leibniz_residual(x: AlgebraElement, y: AlgebraElement, p: QParams) -> float:
    """d(xy) against d_H(x) k_q(y) + k_q^{-1}(x) d_H(y) + d_V(x) k_t(y) + k_t^{-1}(x) d_V(y)."""
    lhs = derivative(x * y, p)
    rhs = (horizontal(x, p) * grade_scale(y, p.q) + grade_scale(x, 1.0 / p.q) * horizontal(y, p)
           + vertical(x, p) * grade_scale(y, p.t) + grade_scale(x, 1.0 / p.t) * vertical(y, p))
    return lhs.distance(rhs)


# ---------------------------------------------------------------------------
# Seminorms
# ---------------------------------------------------------------------------

def seminorm_estimate(x: AlgebraElement, p: QParams, cfg: Optional[RepNormConfig] = None,
                      seed: int = 0) -> NormEstimate:
    d = derivative(x, p)
    if d.is_zero(1e-14):
        return NormEstimate(value=0.0, residual=0.0, method="exact", converged=True)
    return norm_estimate(d, cfg, seed)


def seminorm_L(x: AlgebraElement, p: QParams, cfg: Optional[RepNormConfig] = None, seed: int = 0) -> float:
    """L_{t,q}(x) = |d_{t,q}(x)|."""
    return seminorm_estimate(x, p, cfg, seed).value


def seminorm_podles(x: AlgebraElement, q: float, cfg: Optional[RepNormConfig] = None, seed: int = 0) -> float:
    d = derivative_podles(x, q)
    if d.is_zero(1e-14):
        return 0.0
    return norm_estimate(d, cfg, seed).value


# ---------------------------------------------------------------------------
# Dirac blocks
# ---------------------------------------------------------------------------

@dataclass
class DiracBlock:
    n: int
    i: int
    j: int
    matrix: np.ndarray

    @property
    def eigenvalues(self) -> list[float]:
        return sorted(float(v) for v in np.linalg.eigvalsh(self.matrix))

    def vertical_part(self) -> np.ndarray:
        return np.diag(np.diag(self.matrix))

    def horizontal_part(self) -> np.ndarray:
        return self.matrix - self.vertical_part()

    def anticommutator_residual(self) -> float:
        v, h = self.vertical_part(), self.horizontal_part()
        return float(np.max(np.abs(v @ h + h @ v)))


def block_entries(n: int, j: int, p: QParams) -> tuple[float, float]:
    """(a, c) for V^n_{ij}: a = t^{(1-n')/2}[(n'-1)/2]_t with n' = 2j-n, c = q^{1-j} sqrt(<n-j+1><j>)."""
    n_prime = 2 * j - n
    a = p.t ** ((1 - n_prime) / 2.0) * qnum((n_prime - 1) / 2.0, p.t)
    c = p.q ** (1 - j) * math.sqrt(qint(n - j + 1, p.q) * qint(j, p.q))
    return a, c


def dirac_block(n: int, i: int, j: int, p: QParams) -> DiracBlock:
    if n < 0 or not 0 <= i <= n or not 0 <= j <= n + 1:
        raise ParameterError(f"no Dirac block with labels ({n}, {i}, {j})")
    if j == 0:
        a, _ = block_entries(n, 0, p)
        return DiracBlock(n, i, j, np.array([[a]]))
    if j == n + 1:
        a, _ = block_entries(n, n + 1, p)
        return DiracBlock(n, i, j, np.array([[-a]]))
    a, c = block_entries(n, j, p)
    return DiracBlock(n, i, j, np.array([[a, -c], [-c, -a]]))


def dirac_blocks(n_max: int, p: QParams) -> list[DiracBlock]:
    if n_max < 0:
        raise ParameterError(f"n_max must be >= 0, got {n_max}")
    return [dirac_block(n, i, j, p) for n in range(n_max + 1) for i in range(n + 1) for j in range(n + 2)]


@dataclass
class SpectrumResult:
    q: float
    t: float
    n_max: int
    rows: list[dict] = field(default_factory=list)
    multiplicities: dict[int, dict[float, int]] = field(default_factory=dict)

    @property
    def classical(self) -> bool:
        return self.q == 1.0 and self.t == 1.0

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "t": self.t,
            "n_max": self.n_max,
            "rows": self.rows,
            "multiplicities": {
                str(n): [{"eigenvalue": ev, "multiplicity": count} for ev, count in sorted(counts.items())]
                for n, counts in self.multiplicities.items()
            },
        }


def dirac_spectrum(n_max: int, p: QParams, digits: int = 12) -> SpectrumResult:
    """Block eigenvalues with per-level multiplicities; rows carry 2*lambda + 1 at t = q = 1."""
    result = SpectrumResult(p.q, p.t, n_max)
    per_level: dict[int, Counter] = defaultdict(Counter)
    for block in dirac_blocks(n_max, p):
        for ev in block.eigenvalues:
            ev = round(ev, digits)
            per_level[block.n][ev] += 1
            row = {"n": block.n, "i": block.i, "j": block.j, "eigenvalue": ev, "multiplicity": 1}
            if result.classical:
                row["two_lambda_plus_one"] = round(2 * ev + 1, digits)
            result.rows.append(row)
    result.multiplicities = {n: dict(counts) for n, counts in sorted(per_level.items())}
    return result


# ---------------------------------------------------------------------------
# Real structure
# ---------------------------------------------------------------------------

def real_structure_J(x: AlgebraElement) -> AlgebraElement:
    """J(x) = (d_k delta_k)(x*)."""
    return act(K_LEFT, act(K_RIGHT, x.adjoint()))


def _iyi(y: AlgebraElement, vector: tuple[AlgebraElement, AlgebraElement]) -> tuple[AlgebraElement, AlgebraElement]:
    return tuple(real_structure_J(y * real_structure_J(v)) for v in vector)


def _truncation_basis(degree: int, q: float) -> list[AlgebraElement]:
    basis = []
    for k in range(-degree, degree + 1):
        for l in range(degree - abs(k) + 1):  # noqa: E741
            for m in range(degree - abs(k) - l + 1):
                basis.append(AlgebraElement({Monomial(k, l, m): 1.0}, q))
    return basis


def first_order_check(x: AlgebraElement, y: AlgebraElement, p: QParams, cutoff: int = 6) -> float:
    """Largest residual of [IyI, d_H(x)] and [IyI, d_V(x)] on the polynomial truncation.

    Only basis vectors whose images stay inside degree ``cutoff`` are tested.
    """
    degree = cutoff - x.degree - y.degree
    if degree < 0:
        raise ParameterError(f"cutoff {cutoff} too small for degrees {x.degree} + {y.degree}")
    zero = AlgebraElement.zero(x.q)
    worst = 0.0
    for op in (horizontal(x, p), vertical(x, p)):
        for xi in _truncation_basis(degree, x.q):
            for vector in ((xi, zero), (zero, xi)):
                left = op.apply(_iyi(y, vector))
                right = _iyi(y, op.apply(vector))
                worst = max(worst, left[0].distance(right[0]), left[1].distance(right[1]))
    return worst


# ---------------------------------------------------------------------------
# Classical comparison
# ---------------------------------------------------------------------------

def _tangent_frame(points: np.ndarray) -> list[np.ndarray]:
    """Orthonormal tangent frame of S^3 at each row (left quaternion units)."""
    x0, x1, x2, x3 = points.T
    return [
        np.stack([-x1, x0, -x3, x2], axis=1),
        np.stack([-x2, x3, x0, -x1], axis=1),
        np.stack([-x3, -x2, x1, x0], axis=1),
    ]


def _real_values(f: AlgebraElement, points: np.ndarray) -> np.ndarray:
    alpha = points[:, 0] + 1j * points[:, 1]
    beta = points[:, 2] + 1j * points[:, 3]
    return su2_values(f, alpha, beta).real


def _gradient_norms(f: AlgebraElement, points: np.ndarray, step: float) -> np.ndarray:
    total = np.zeros(len(points))
    for direction in _tangent_frame(points):
        forward = points * math.cos(step) + direction * math.sin(step)
        backward = points * math.cos(step) - direction * math.sin(step)
        total += ((_real_values(f, forward) - _real_values(f, backward)) / (2.0 * step)) ** 2
    return np.sqrt(total)


def lipschitz_estimate(f: AlgebraElement, samples: int = 4096, seed: int = 0, step: float = 1e-5) -> float:
    """Lipschitz constant of a real function on SU(2) for the round metric of S^3.

    Sampled tangent-gradient norms, with a Nelder-Mead polish of the best sample.
    """
    if f.q != 1.0:
        raise UnsupportedError("lipschitz_estimate compares with the classical sphere and needs q = 1")
    if not f.is_selfadjoint(1e-9):
        raise ParameterError("lipschitz_estimate expects a real (selfadjoint) function")
    cube, alpha, beta = sample_su2(samples, seed)
    points = np.stack([alpha.real, alpha.imag, beta.real, beta.imag], axis=1)
    norms = _gradient_norms(f, points, step)
    best = int(np.argmax(norms))

    def objective(u: np.ndarray) -> float:
        a_pt, b_pt = su2_from_unit_cube(u)
        pt = np.stack([a_pt.real, a_pt.imag, b_pt.real, b_pt.imag], axis=1)
        return -float(_gradient_norms(f, pt, step)[0])

    polished = optimize.minimize(objective, cube[best], method="Nelder-Mead", options={"xatol": 1e-9, "fatol": 1e-12})
    return max(float(norms[best]), -float(polished.fun))
