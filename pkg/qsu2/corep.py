"""
Matrix coefficients u^n_{ij} of the irreducible corepresentations.

Level n is generated from levels n-1 and n-2 with the product rules between
the generators and the matrix coefficients; for a level N = n + 1:

    u^N_{00}  = a* u^n_{00}
    u^N_{i0}  = sqrt(<N>/<i>) b* u^n_{i-1,0}                              (i >= 1)
    u^N_{0j}  = -q sqrt(<N>/<j>) b u^n_{0,j-1}                            (j >= 1)
    u^N_{ij}  = (<N> a u^n_{i-1,j-1}
                 - q^{i+j} sqrt(<N-i><N-j>) u^{n-1}_{i-1,j-1}) / sqrt(<i><j>)

None of these divides by a power of q, so rounding stays bounded as q -> 0.
The remaining rules (the a* rule on every entry in particular) are exposed as
residuals for the corep suite. Each level is cached under "corep:{q!r}:{n}".
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

from qsu2.algebra.actions import act
from qsu2.algebra.element import AlgebraElement, TensorElement, check_q, generators
from qsu2.algebra.grading import project_grade
from qsu2.algebra.haar import haar
from qsu2.algebra.hopf import coproduct
from qsu2.algebra.qnumbers import qint
from qsu2.cache import LayeredStore, get_disk_cache
from qsu2.errors import IdentityError, ParameterError

logger = logging.getLogger(__name__)

Level = tuple[tuple[AlgebraElement, ...], ...]

_store: LayeredStore | None = None


def get_store() -> LayeredStore:
    global _store
    if _store is None:
        _store = LayeredStore(get_disk_cache())
    return _store


def reset_store(store: LayeredStore | None = None):
    """Swap the corepresentation store (tests use an in-memory one)."""
    global _store
    _store = store


@dataclass(frozen=True)
class MatrixCoeff:
    n: int
    i: int
    j: int
    expansion: AlgebraElement

    @property
    def grade(self) -> int:
        return 2 * self.j - self.n

    def to_dict(self) -> dict:
        return {"n": self.n, "i": self.i, "j": self.j, "expansion": self.expansion.to_dict()}


# ---------------------------------------------------------------------------
# Generation
# ---------------------------------------------------------------------------

def _encode(level: Level) -> dict:
    return {"rows": [[entry.to_dict()["terms"] for entry in row] for row in level]}


def _decode_for(q: float):
    def decode(raw: dict) -> Level:
        return tuple(
            tuple(AlgebraElement.from_dict({"q": q, "terms": terms}) for terms in row)
            for row in raw["rows"]
        )
    return decode


def _entry(level: Level, i: int, j: int, q: float) -> AlgebraElement:
    size = len(level)
    if 0 <= i < size and 0 <= j < size:
        return level[i][j]
    return AlgebraElement.zero(q)


def _build_level(big_n: int, q: float) -> Level:
    if big_n == 0:
        return ((AlgebraElement.one(q),),)
    a, b, a_s, b_s = generators(q)
    prev = corep_level(big_n - 1, q)
    prev2 = corep_level(big_n - 2, q) if big_n >= 2 else ()
    qn = qint(big_n, q)
    rows = []
    for i in range(big_n + 1):
        row = []
        for j in range(big_n + 1):
            if i == 0 and j == 0:
                value = a_s * prev[0][0]
            elif j == 0:
                value = (b_s * prev[i - 1][0]).scale(math.sqrt(qn / qint(i, q)))
            elif i == 0:
                value = (b * prev[0][j - 1]).scale(-q * math.sqrt(qn / qint(j, q)))
            else:
                lower = _entry(prev2, i - 1, j - 1, q) if prev2 else AlgebraElement.zero(q)
                weight = q ** (i + j) * math.sqrt(qint(big_n - i, q) * qint(big_n - j, q))
                value = ((a * prev[i - 1][j - 1]).scale(qn) - lower.scale(weight)).scale(
                    1.0 / math.sqrt(qint(i, q) * qint(j, q))
                )
            row.append(value)
        rows.append(tuple(row))
    level = tuple(rows)
    logger.debug("corep level %d at q=%r: unitarity residual %.3e", big_n, q, _level_unitarity(level, q))
    return level


def corep_level(n: int, q: float) -> Level:
    """All entries of u^n as an (n+1) x (n+1) tuple of rows."""
    q = check_q(q)
    if n < 0:
        raise ParameterError(f"corepresentation level must be >= 0, got {n}")
    return get_store().get_or_create(
        f"corep:{q!r}:{n}", lambda: _build_level(n, q), encode=_encode, decode=_decode_for(q)
    )


def matrix_coeff(n: int, i: int, j: int, q: float) -> MatrixCoeff:
    """u^n_{ij}; indices outside 0..n give the zero element."""
    if n < 0 or not (0 <= i <= n and 0 <= j <= n):
        return MatrixCoeff(n, i, j, AlgebraElement.zero(check_q(q)))
    return MatrixCoeff(n, i, j, corep_level(n, q)[i][j])


def u(n: int, i: int, j: int, q: float) -> AlgebraElement:
    return matrix_coeff(n, i, j, q).expansion


def u_matrix(q: float) -> tuple[tuple[AlgebraElement, AlgebraElement], tuple[AlgebraElement, AlgebraElement]]:
    """Fundamental unitary [[a*, -q b], [b*, a]]."""
    level = corep_level(1, q)
    return (level[0][0], level[0][1]), (level[1][0], level[1][1])


# ---------------------------------------------------------------------------
# Pairing with U_q(su(2))
# ---------------------------------------------------------------------------

def pairing(gen: str, n: int, i: int, j: int, q: float) -> float:
    """<gen, u^n_{ij}> for gen in {e, f, k}."""
    if not (0 <= i <= n and 0 <= j <= n):
        return 0.0
    if gen == "k":
        return q ** (j - n / 2.0) if i == j else 0.0
    if gen == "e":
        if i != j - 1:
            return 0.0
        return q ** ((1 - n) / 2.0) * math.sqrt(qint(n - j + 1, q) * qint(j, q))
    if gen == "f":
        if i != j + 1:
            return 0.0
        return q ** ((1 - n) / 2.0) * math.sqrt(qint(n - j, q) * qint(j + 1, q))
    raise ParameterError(f"pairing generator must be e, f or k; got {gen!r}")


def pairing_action_residual(gen: str, n: int, i: int, j: int, q: float) -> float:
    """|d_gen(u^n_{ij}) - sum_k u^n_{ik} <gen, u^n_{kj}>|, with the left action of gen."""
    lhs = act(gen, u(n, i, j, q))
    rhs = AlgebraElement.zero(q)
    for k in range(n + 1):
        value = pairing(gen, n, k, j, q)
        if value:
            rhs = rhs + u(n, i, k, q).scale(value)
    return lhs.distance(rhs)


# ---------------------------------------------------------------------------
# Inner products and identities
# ---------------------------------------------------------------------------

def l2_inner(x: AlgebraElement, y: AlgebraElement) -> complex:
    """<x, y> = h(x* y)."""
    return haar(x.adjoint() * y)


def expected_norm_squared(n: int, i: int, q: float) -> float:
    return q ** (2 * (n - i)) / qint(n + 1, q)


def adjoint_formula_residual(n: int, i: int, j: int, q: float) -> float:
    """(u^n_{ij})* against (-q)^{j-i} u^n_{n-i,n-j}."""
    lhs = u(n, i, j, q).adjoint()
    rhs = u(n, n - i, n - j, q).scale((-q) ** (j - i))
    return lhs.distance(rhs)


def adjoint_formula_check(n: int, i: int, j: int, q: float, tol: float = 1e-9) -> bool:
    return adjoint_formula_residual(n, i, j, q) < tol


def _level_unitarity(level: Level, q: float) -> float:
    size = len(level)
    worst = 0.0
    for i in range(size):
        for j in range(size):
            rows = AlgebraElement.zero(q)
            cols = AlgebraElement.zero(q)
            for k in range(size):
                rows = rows + level[i][k] * level[j][k].adjoint()
                cols = cols + level[k][i].adjoint() * level[k][j]
            target = AlgebraElement.one(q) if i == j else AlgebraElement.zero(q)
            worst = max(worst, rows.distance(target), cols.distance(target))
    return worst


def unitarity_residual(n: int, q: float) -> float:
    """Largest deviation of u^n u^n* and u^n* u^n from the identity."""
    return _level_unitarity(corep_level(n, q), q)


def coproduct_residual(n: int, i: int, j: int, q: float) -> float:
    """Delta(u^n_{ij}) against sum_k u^n_{ik} ⊗ u^n_{kj}."""
    rhs = TensorElement({}, q)
    for k in range(n + 1):
        rhs = rhs + TensorElement.simple(u(n, i, k, q), u(n, k, j, q))
    return coproduct(u(n, i, j, q)).distance(rhs)


def product_rule_residual(gen: str, n: int, i: int, j: int, q: float) -> float:
    """Residual of the product rule for gen in {a, a_star, b, b_star} on u^n_{ij}."""
    a, b, a_s, b_s = generators(q)
    qn1 = qint(n + 1, q)

    def c(level: int, r: int, s: int) -> AlgebraElement:
        return u(level, r, s, q)

    def root(x: int, y: int) -> float:
        return math.sqrt(max(qint(x, q), 0.0) * max(qint(y, q), 0.0))

    if gen == "a_star":
        lhs = a_s * c(n, i, j)
        rhs = c(n + 1, i, j).scale(q ** (i + j) * root(n - i + 1, n - j + 1)) + c(n - 1, i - 1, j - 1).scale(root(i, j))
    elif gen == "a":
        lhs = a * c(n, i, j)
        rhs = c(n + 1, i + 1, j + 1).scale(root(i + 1, j + 1)) + c(n - 1, i, j).scale(q ** (i + j + 2) * root(n - i, n - j))
    elif gen == "b_star":
        lhs = b_s * c(n, i, j)
        rhs = c(n + 1, i + 1, j).scale(q**j * root(i + 1, n - j + 1)) - c(n - 1, i, j - 1).scale(q ** (i + 1) * root(n - i, j))
    elif gen == "b":
        lhs = b * c(n, i, j)
        rhs = c(n - 1, i - 1, j).scale(q**j * root(n - j, i)) - c(n + 1, i, j + 1).scale(q ** (i - 1) * root(j + 1, n - i + 1))
    else:
        raise ParameterError(f"product rule generator must be a, a_star, b or b_star; got {gen!r}")
    return lhs.distance(rhs.scale(1.0 / qn1))


# ---------------------------------------------------------------------------
# Spectral subspaces
# ---------------------------------------------------------------------------

def _frame(m: int, q: float) -> Sequence[AlgebraElement]:
    size = abs(m)
    column = 0 if m >= 0 else size
    return [u(size, i, column, q) for i in range(size + 1)]


def reconstruct_spectral(x: AlgebraElement, m: int, tol: float = 1e-9) -> AlgebraElement:
    """sum_i v_i* P_0(v_i x) with v_i = u^{|m|}_{i0} (m >= 0) or u^{|m|}_{i,|m|} (m < 0).

    The sum equals the grade-m projection of x; an IdentityError is raised otherwise.
    """
    total = AlgebraElement.zero(x.q)
    for v in _frame(m, x.q):
        total = total + v.adjoint() * project_grade(v * x, 0)
    residual = total.distance(project_grade(x, m))
    if residual >= tol:
        raise IdentityError(f"spectral reconstruction at grade {m}", residual)
    return total
