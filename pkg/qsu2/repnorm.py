"""
C*-norm oracle.

For q < 1 elements act on the Fock space l^2(N) of the representations

    a e_n = sqrt(1 - q^{2n+2}) e_{n+1},    b e_n = e^{i theta} q^n e_n,

truncated to e_0..e_cutoff. The truncated matrix is the exact compression
P pi(x) P, so estimates never exceed the true norm and grow with the cutoff.
The one-dimensional characters a -> e^{i phi}, b -> 0 are always included.

For q = 1 elements are functions on SU(2); the norm is a sup over a scrambled
Sobol sample of the 3-sphere followed by a Nelder-Mead polish of the best point.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np
from scipy import optimize
from scipy.stats import qmc

from qsu2.algebra.element import AlgebraElement
from qsu2.config import RepNormConfig, get_config
from qsu2.errors import OracleError, ParameterError, UnsupportedError

logger = logging.getLogger(__name__)

Entries = Sequence[Sequence[AlgebraElement]]
Operand = Union[AlgebraElement, Entries]


@dataclass(frozen=True)
class RepPoint:
    theta: float
    cutoff: int

    def __post_init__(self):
        if self.cutoff < 1:
            raise ParameterError(f"cutoff must be >= 1, got {self.cutoff}")


@dataclass
class RepMatrix:
    matrix: np.ndarray
    theta: float
    cutoff: int

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def norm(self) -> float:
        return float(np.linalg.norm(self.matrix, 2))


@dataclass
class NormEstimate:
    """Lower-bound estimate of a C*-norm with its convergence diagnostics."""
    value: float
    residual: Optional[float]
    method: str
    converged: bool
    cutoff: Optional[int] = None
    samples: Optional[int] = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "lower_bound": True,
            "residual": self.residual,
            "method": self.method,
            "converged": self.converged,
            "cutoff": self.cutoff,
            "samples": self.samples,
            "notes": self.notes,
        }


# ---------------------------------------------------------------------------
# Operands
# ---------------------------------------------------------------------------

def _entries(op: Operand) -> Optional[Entries]:
    if isinstance(op, AlgebraElement):
        return None
    entries = getattr(op, "entries", op)
    if len(entries) != 2 or any(len(row) != 2 for row in entries):
        raise ParameterError("matrix operands must be 2x2")
    return entries


def operand_q(op: Operand) -> float:
    entries = _entries(op)
    return op.q if entries is None else entries[0][0].q


# ---------------------------------------------------------------------------
# Fock representations
# ---------------------------------------------------------------------------

def _log_shift_weights(q: float, size: int) -> np.ndarray:
    """L[j] = sum_{i=1}^{j} log sqrt(1 - q^{2i}) for j = 0..size-1."""
    i = np.arange(1, size)
    return np.concatenate(([0.0], np.cumsum(0.5 * np.log1p(-np.power(q, 2 * i)))))


def fock_matrix(x: AlgebraElement, theta: float, cutoff: int) -> np.ndarray:
    """Compressed Fock matrix of x on e_0..e_cutoff."""
    q = x.q
    if q >= 1.0:
        raise UnsupportedError("Fock representations need q < 1; use evaluate_su2 at q = 1")
    size = cutoff + 1
    logs = _log_shift_weights(q, size)
    n = np.arange(size)
    out = np.zeros((size, size), dtype=complex)
    for (k, l, m), coeff in x.terms.items():  # noqa: E741
        if abs(k) >= size:
            continue
        phase = np.exp(1j * theta * (l - m))
        if k >= 0:
            cols = n[: size - k]
            rows = cols + k
            diag_at = cols
            shift = logs[rows] - logs[cols]
        else:
            cols = n[-k:]
            rows = cols + k
            diag_at = rows
            shift = logs[cols] - logs[rows]
        out[rows, cols] += coeff * phase * np.power(q, diag_at * (l + m)) * np.exp(shift)
    return out


def operand_matrix(op: Operand, theta: float, cutoff: int) -> np.ndarray:
    entries = _entries(op)
    if entries is None:
        return fock_matrix(op, theta, cutoff)
    return np.block([[fock_matrix(entry, theta, cutoff) for entry in row] for row in entries])


def represent(x: Operand, p: RepPoint) -> RepMatrix:
    """Matrix of x (or of a 2x2 matrix over the algebra) at one Fock point."""
    return RepMatrix(operand_matrix(x, p.theta, p.cutoff), p.theta, p.cutoff)


def character_values(x: AlgebraElement, phis: np.ndarray) -> np.ndarray:
    """x under the characters a -> e^{i phi}, b -> 0."""
    values = np.zeros(len(phis), dtype=complex)
    for (k, l, m), coeff in x.terms.items():  # noqa: E741
        if l == 0 and m == 0:
            values += coeff * np.exp(1j * k * phis)
    return values


def _character_norm(op: Operand, phis: np.ndarray) -> float:
    entries = _entries(op)
    if entries is None:
        return float(np.max(np.abs(character_values(op, phis))))
    stack = np.empty((len(phis), 2, 2), dtype=complex)
    for r in range(2):
        for s in range(2):
            stack[:, r, s] = character_values(entries[r][s], phis)
    return float(np.max(np.linalg.norm(stack, ord=2, axis=(1, 2))))


# ---------------------------------------------------------------------------
# q = 1: functions on SU(2)
# ---------------------------------------------------------------------------

def su2_values(x: AlgebraElement, alpha: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """x as a function of g = ((alpha, -conj beta), (beta, conj alpha)): a -> conj alpha, b -> conj beta."""
    if x.q != 1.0:
        raise UnsupportedError("evaluate_su2 requires q = 1")
    alpha = np.asarray(alpha, dtype=complex)
    beta = np.asarray(beta, dtype=complex)
    values = np.zeros(alpha.shape, dtype=complex)
    a_val, a_star_val = np.conj(alpha), alpha
    b_val, b_star_val = np.conj(beta), beta
    for (k, l, m), coeff in x.terms.items():  # noqa: E741
        x_part = a_val**k if k >= 0 else a_star_val ** (-k)
        values += coeff * x_part * b_val**l * b_star_val**m
    return values


def evaluate_su2(x: AlgebraElement, point: tuple[complex, complex]) -> complex:
    alpha, beta = point
    if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1.0) > 1e-9:
        raise ParameterError("SU(2) point needs |alpha|^2 + |beta|^2 = 1")
    return complex(su2_values(x, np.array([alpha]), np.array([beta]))[0])


def su2_operand_values(op: Operand, alpha: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """Values of op at each sample: shape (n,) for elements, (n, 2, 2) for matrices."""
    entries = _entries(op)
    if entries is None:
        return su2_values(op, alpha, beta)
    stack = np.empty((len(alpha), 2, 2), dtype=complex)
    for r in range(2):
        for s in range(2):
            stack[:, r, s] = su2_values(entries[r][s], alpha, beta)
    return stack


def su2_from_unit_cube(u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Haar-distributed SU(2) points: |beta|^2 = u1, independent uniform phases."""
    u = np.clip(np.atleast_2d(u), 0.0, 1.0)
    radius = np.sqrt(u[:, 0])
    alpha = np.sqrt(1.0 - u[:, 0]) * np.exp(2j * np.pi * u[:, 1])
    beta = radius * np.exp(2j * np.pi * u[:, 2])
    return alpha, beta


def sample_su2(count: int, seed: int = 0) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Scrambled Sobol points (rounded up to a power of two) on SU(2)."""
    m = max(1, math.ceil(math.log2(max(count, 2))))
    cube = qmc.Sobol(d=3, scramble=True, seed=seed).random_base2(m)
    alpha, beta = su2_from_unit_cube(cube)
    return cube, alpha, beta


def _abs_values(op: Operand, alpha: np.ndarray, beta: np.ndarray) -> np.ndarray:
    values = su2_operand_values(op, alpha, beta)
    if values.ndim == 1:
        return np.abs(values)
    return np.linalg.norm(values, ord=2, axis=(1, 2))


def _su2_norm(op: Operand, cfg: RepNormConfig, seed: int) -> NormEstimate:
    cube, alpha, beta = sample_su2(cfg.su2_samples, seed)
    values = _abs_values(op, alpha, beta)
    best = int(np.argmax(values))
    sampled = float(values[best])

    def objective(u: np.ndarray) -> float:
        a_pt, b_pt = su2_from_unit_cube(u)
        return -float(_abs_values(op, a_pt, b_pt)[0])

    polished = optimize.minimize(objective, cube[best], method="Nelder-Mead",
                                 options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 2000})
    value = max(sampled, -float(polished.fun))
    return NormEstimate(value=value, residual=value - sampled, method="su2-sample",
                        converged=bool(polished.success), samples=len(values))


# ---------------------------------------------------------------------------
# Norm estimates
# ---------------------------------------------------------------------------

def _grid_max(op: Operand, thetas: np.ndarray, cutoff: int, workers: int) -> float:
    def at(theta: float) -> float:
        return float(np.linalg.norm(operand_matrix(op, theta, cutoff), 2))

    if workers <= 1:
        values = [at(theta) for theta in thetas]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(at, thetas))
    return max(values)


def theta_grid(points: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(points) / points


def norm_estimate(op: Operand, cfg: Optional[RepNormConfig] = None, seed: int = 0) -> NormEstimate:
    """Sup over the theta-grid and characters, with adaptive cutoff doubling."""
    cfg = cfg or get_config().repnorm
    q = operand_q(op)
    if q == 1.0:
        return _su2_norm(op, cfg, seed)

    thetas = theta_grid(cfg.theta_points)
    characters = _character_norm(op, thetas)
    cutoff = cfg.cutoff_start
    previous: Optional[float] = None
    while True:
        value = max(_grid_max(op, thetas, cutoff, cfg.workers), characters)
        if not math.isfinite(value):
            raise OracleError("norm", f"non-finite estimate at cutoff {cutoff}")
        residual = None if previous is None else abs(value - previous)
        logger.debug("norm estimate %.12g at cutoff %d", value, cutoff, extra={"cutoff": cutoff})
        if residual is not None and residual <= cfg.cutoff_tol * max(1.0, value):
            return NormEstimate(value=value, residual=residual, method="fock", converged=True, cutoff=cutoff)
        if cutoff * 2 > cfg.cutoff_max:
            note = f"cutoff budget {cfg.cutoff_max} exhausted"
            logger.warning("norm oracle did not converge: %s (residual %s)", note, residual)
            return NormEstimate(value=value, residual=residual, method="fock", converged=False,
                                cutoff=cutoff, notes=[note])
        previous = value
        cutoff *= 2


def cstar_norm(op: Operand, cfg: Optional[RepNormConfig] = None, seed: int = 0) -> float:
    return norm_estimate(op, cfg, seed).value


# ---------------------------------------------------------------------------
# Power iteration
# ---------------------------------------------------------------------------

def top_singular_pair(matrix: np.ndarray, v0: Optional[np.ndarray] = None, max_iter: int = 200,
                      tol: float = 1e-10, seed: int = 0) -> tuple[float, np.ndarray, np.ndarray]:
    """Largest singular value with left/right vectors, by power iteration on M^H M.

    ``v0`` warm-starts the iteration (the optimizer reuses the previous vector).
    """
    cols = matrix.shape[1]
    if v0 is None or not np.any(v0):
        rng = np.random.default_rng(seed)
        v0 = rng.normal(size=cols) + 1j * rng.normal(size=cols)
    v = v0 / np.linalg.norm(v0)
    sigma = 0.0
    for _ in range(max_iter):
        w = matrix @ v
        sigma_new = float(np.linalg.norm(w))
        if sigma_new == 0.0:
            return 0.0, np.zeros(matrix.shape[0], dtype=complex), v
        v_new = matrix.conj().T @ w
        v_new /= np.linalg.norm(v_new)
        v = v_new
        if abs(sigma_new - sigma) <= tol * sigma_new:
            sigma = sigma_new
            break
        sigma = sigma_new
    w = matrix @ v
    sigma = float(np.linalg.norm(w))
    u_vec = w / sigma if sigma else w
    return sigma, u_vec, v
