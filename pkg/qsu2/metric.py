"""
Monge-Kantorovich distances between states on finite bands.

d(mu, nu) = sup |mu(x) - nu(x)| over selfadjoint x in span(F) with L(x) <= 1.

The search runs in a real basis of selfadjoint directions of F (scalars
quotiented out). On that basis the seminorm is modelled linearly: each
direction contributes its derivative matrices on a fixed theta grid and Fock
truncation (or on a fixed SU(2) sample at q = 1), and L(v) is the largest
spectral norm of the combined stack. Ratio ascent |c.v| / L(v) uses the top
singular pair of the norm-attaining matrix as subgradient. The reported value
is |c.v| divided by the full oracle seminorm of the maximizer. The oracle
under-estimates norms, so the value is an estimate of the distance and may
sit above it; it is not a certified bound.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from qsu2.algebra.element import ONE, AlgebraElement, QParams, from_word
from qsu2.algebra.hopf import counit
from qsu2.algebra.qnumbers import qint
from qsu2.berezin import (
    FuzzyBandBasis,
    StateSpec,
    berezin,
    chi_direct,
    fuzzy_band,
    fuzzy_basis,
    p_operator,
    state_functional,
)
from qsu2.config import Config, get_config
from qsu2.dirac import derivative, derivative_podles, seminorm_estimate, seminorm_L, seminorm_podles
from qsu2.errors import ParameterError
from qsu2.repnorm import (
    character_values,
    cstar_norm,
    operand_matrix,
    sample_su2,
    su2_operand_values,
    theta_grid,
    top_singular_pair,
)
from qsu2.schur import BoundReport, cb_bound_phi, epsilon_null, homogeneous_samples

logger = logging.getLogger(__name__)

SEMINORMS = ("tq", "podles")


# ---------------------------------------------------------------------------
# Results
# ---------------------------------------------------------------------------

@dataclass
class DistanceResult:
    """Optimizer output; ``value`` is the distance estimate after rescaling by the full norm oracle."""
    mu: str
    nu: str
    value: float
    model_value: float = 0.0
    random_search: float = 0.0
    maximizer: Optional[AlgebraElement] = None
    maximizer_seminorm: float = 0.0
    restarts: int = 0
    iterations: int = 0
    directions: int = 0
    states_agree: bool = False
    seminorm_degenerate: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def dominates(self) -> bool:
        return self.model_value >= self.random_search * (1.0 - 1e-9)

    def to_dict(self) -> dict:
        return {
            "mu": self.mu,
            "nu": self.nu,
            "value": self.value,
            "model_value": self.model_value,
            "random_search": self.random_search,
            "gap": self.model_value - self.random_search,
            "dominates": self.dominates,
            "maximizer": self.maximizer.to_dict() if self.maximizer is not None else None,
            "maximizer_seminorm": self.maximizer_seminorm,
            "restarts": self.restarts,
            "iterations": self.iterations,
            "directions": self.directions,
            "states_agree": self.states_agree,
            "seminorm_degenerate": self.seminorm_degenerate,
            "notes": self.notes,
        }


# ---------------------------------------------------------------------------
# Search space
# ---------------------------------------------------------------------------

def selfadjoint_directions(basis: FuzzyBandBasis, tol: float = 1e-10) -> list[AlgebraElement]:
    """Orthonormal real basis of span{f + f*, i(f - f*)} with the constant term removed."""
    q = basis.q
    raw = []
    for f in basis.elements:
        f_star = f.adjoint()
        raw.append(f + f_star)
        raw.append((f - f_star).scale(1j))
    monos = sorted({mono for g in raw for mono in g.terms if mono != ONE})
    if not monos:
        return []
    index = {mono: k for k, mono in enumerate(monos)}
    rows = np.zeros((len(raw), 2 * len(monos)))
    for r, g in enumerate(raw):
        for mono, c in g.terms.items():
            if mono == ONE:
                continue
            rows[r, index[mono]] = c.real
            rows[r, len(monos) + index[mono]] = c.imag
    _, sing, vt = np.linalg.svd(rows, full_matrices=False)
    rank = int(np.sum(sing > tol * max(sing[0], 1.0)))
    out = []
    for k in range(rank):
        terms = {mono: complex(vt[k, i], vt[k, len(monos) + i]) for mono, i in index.items()}
        out.append(AlgebraElement(terms, q))
    return out


def _operator_for(seminorm: str, p: QParams) -> Callable:
    if seminorm == "tq":
        return lambda x: derivative(x, p)
    if seminorm == "podles":
        return lambda x: derivative_podles(x, p.q)
    raise ParameterError(f"seminorm must be one of {SEMINORMS}, got {seminorm!r}")


def full_seminorm(x: AlgebraElement, p: QParams, seminorm: str, config: Config, seed: int) -> float:
    if seminorm == "tq":
        return seminorm_L(x, p, config.repnorm, seed)
    return seminorm_podles(x, p.q, config.repnorm, seed)


class LinearNormModel:
    """v -> max over sample points of |sum_k v_k D_k(point)|_2."""

    def __init__(self, blocks: list[np.ndarray]):
        # each block: (directions, points, rows, cols)
        self.blocks = [b for b in blocks if b.size]

    @classmethod
    def build(cls, directions: Sequence[AlgebraElement], p: QParams, seminorm: str, config: Config,
              seed: int = 0) -> LinearNormModel:
        operator = _operator_for(seminorm, p)
        ops = [operator(d) for d in directions]
        cfg = config.metric
        if p.q == 1.0:
            _, alpha, beta = sample_su2(cfg.su2_points, seed)
            return cls([np.stack([su2_operand_values(op.entries, alpha, beta) for op in ops])])
        thetas = theta_grid(cfg.theta_points)
        fock = np.stack([
            np.stack([operand_matrix(op.entries, theta, cfg.cutoff) for theta in thetas]) for op in ops
        ])
        chars = np.stack([_character_stack(op.entries, thetas) for op in ops])
        return cls([fock, chars])

    @property
    def dimension(self) -> int:
        return self.blocks[0].shape[0] if self.blocks else 0

    def combine(self, v: np.ndarray, block: np.ndarray) -> np.ndarray:
        return np.tensordot(v, block, axes=1)

    def value(self, v: np.ndarray) -> float:
        return max(float(np.max(np.linalg.norm(self.combine(v, b), ord=2, axis=(1, 2)))) for b in self.blocks)

    def values(self, batch: np.ndarray) -> np.ndarray:
        """Model values for rows of ``batch``."""
        best = np.zeros(len(batch))
        for b in self.blocks:
            stacked = np.tensordot(batch, b, axes=1)
            best = np.maximum(best, np.max(np.linalg.norm(stacked, ord=2, axis=(2, 3)), axis=1))
        return best

    def value_and_subgradient(self, v: np.ndarray, warm: Optional[np.ndarray] = None,
                              seed: int = 0) -> tuple[float, np.ndarray, np.ndarray]:
        best_value, best_block, best_point = -1.0, 0, 0
        for index, b in enumerate(self.blocks):
            norms = np.linalg.norm(self.combine(v, b), ord=2, axis=(1, 2))
            point = int(np.argmax(norms))
            if norms[point] > best_value:
                best_value, best_block, best_point = float(norms[point]), index, point
        block = self.blocks[best_block]
        matrix = self.combine(v, block)[best_point]
        if warm is not None and warm.shape[0] != matrix.shape[1]:
            warm = None
        sigma, left, right = top_singular_pair(matrix, v0=warm, seed=seed)
        grad = np.einsum("i,kij,j->k", left.conj(), block[:, best_point], right).real
        return sigma, grad, right


def _character_stack(entries, thetas: np.ndarray) -> np.ndarray:
    stack = np.empty((len(thetas), 2, 2), dtype=complex)
    for r in range(2):
        for s in range(2):
            stack[:, r, s] = character_values(entries[r][s], thetas)
    return stack


def _functional_values(state: StateSpec, directions: Sequence[AlgebraElement], q: float) -> np.ndarray:
    functional = state_functional(state, q)
    return np.array([sum((c * functional(mono) for mono, c in d.terms.items()), 0j).real for d in directions])


# ---------------------------------------------------------------------------
# Optimizer
# ---------------------------------------------------------------------------

def _ratio(c: np.ndarray, model: LinearNormModel, v: np.ndarray) -> float:
    value = model.value(v)
    return abs(float(c @ v)) / value if value > 0 else 0.0


def random_search(c: np.ndarray, model: LinearNormModel, count: int, seed: int,
                  chunk_bytes: int = 1 << 25) -> tuple[float, Optional[np.ndarray]]:
    """Best ratio over ``count`` Gaussian directions, evaluated in batches."""
    if count <= 0 or not model.dimension:
        return 0.0, None
    rng = np.random.default_rng([seed, 0x5eed])
    per_direction = sum(b.shape[1] * b.shape[2] * b.shape[3] * 16 for b in model.blocks)
    chunk = max(1, chunk_bytes // max(per_direction, 1))
    best, best_v = 0.0, None
    done = 0
    while done < count:
        size = min(chunk, count - done)
        batch = rng.normal(size=(size, model.dimension))
        norms = model.values(batch)
        ratios = np.where(norms > 0, np.abs(batch @ c) / np.where(norms > 0, norms, 1.0), 0.0)
        k = int(np.argmax(ratios))
        if ratios[k] > best:
            best, best_v = float(ratios[k]), batch[k].copy()
        done += size
    return best, best_v


def _ascend(c: np.ndarray, model: LinearNormModel, start: np.ndarray, iterations: int,
            seed: int) -> tuple[float, np.ndarray, int]:
    """Projected ratio ascent with step 1/k and iterate averaging; returns the best iterate."""
    v = start / np.linalg.norm(start)
    average = np.zeros_like(v)
    best, best_v = _ratio(c, model, v), v.copy()
    warm = None
    stall = 0
    for k in range(1, iterations + 1):
        value, grad, warm = model.value_and_subgradient(v, warm, seed)
        if value <= 0:
            break
        dot = float(c @ v)
        sign = 1.0 if dot >= 0 else -1.0
        ratio = sign * dot / value
        step = (sign * c - ratio * grad) / value
        step_norm = np.linalg.norm(step)
        if step_norm < 1e-14:
            break
        v = v + (0.5 / k) * step / step_norm
        v /= np.linalg.norm(v)
        average += (v - average) / k
        improved = False
        for candidate in (v, average):
            r = _ratio(c, model, candidate)
            if r > best * (1.0 + 1e-12):
                best, best_v, improved = r, candidate.copy(), True
        stall = 0 if improved else stall + 1
        if stall >= 50:
            return best, best_v, k
    return best, best_v, iterations


def mk_distance(mu: StateSpec, nu: StateSpec, basis: FuzzyBandBasis, p: QParams,
                config: Optional[Config] = None, seed: Optional[int] = None,
                seminorm: str = "tq") -> DistanceResult:
    """Estimate of the Monge-Kantorovich distance of mu and nu restricted to span(basis)."""
    config = config or get_config()
    cfg = config.metric
    seed = cfg.seed if seed is None else seed
    if p.q != basis.q:
        raise ParameterError(f"basis built at q={basis.q}, parameters at q={p.q}")
    result = DistanceResult(mu=mu.label(), nu=nu.label(), value=0.0)
    directions = selfadjoint_directions(basis)
    result.directions = len(directions)
    if not directions:
        result.states_agree = True
        result.notes.append("band contains only scalars")
        return result

    c = _functional_values(mu, directions, p.q) - _functional_values(nu, directions, p.q)
    if np.max(np.abs(c)) < 1e-12:
        result.states_agree = True
        result.notes.append("states agree on the band")
        return result

    model = LinearNormModel.build(directions, p, seminorm, config, seed)
    lip = np.array([model.value(np.eye(len(directions))[k]) for k in range(len(directions))])
    if np.any((lip < 1e-12) & (np.abs(c) > 1e-12)):
        result.seminorm_degenerate = True
        result.notes.append("seminorm vanishes on a direction separating the states")
        return result

    searched, searched_v = random_search(c, model, cfg.random_directions, seed)
    result.random_search = searched

    starts = [c.copy()]
    if searched_v is not None:
        starts.append(searched_v)
    for r in range(len(starts), cfg.restarts):
        starts.append(np.random.default_rng([seed, r]).normal(size=len(directions)))

    def run(index: int) -> tuple[float, np.ndarray, int]:
        return _ascend(c, model, starts[index], cfg.iterations, seed + index)

    if cfg.workers <= 1:
        outcomes = [run(i) for i in range(len(starts))]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            outcomes = list(pool.map(run, range(len(starts))))
    best_index = max(range(len(outcomes)), key=lambda i: (outcomes[i][0], -i))
    model_value, v, _ = outcomes[best_index]
    result.model_value = model_value
    result.restarts = len(starts)
    result.iterations = sum(o[2] for o in outcomes)

    x = AlgebraElement.zero(p.q)
    for weight, d in zip(v, directions):
        x = x + d.scale(float(weight))
    full = full_seminorm(x, p, seminorm, config, seed)
    if full <= 0:
        result.seminorm_degenerate = True
        result.notes.append("full seminorm vanished at the maximizer")
        return result
    x = x.scale(1.0 / full)
    result.maximizer = x
    result.maximizer_seminorm = full_seminorm(x, p, seminorm, config, seed)
    result.value = abs(float(c @ v)) / full
    if result.value > result.model_value * (1.0 + 1e-9):
        result.notes.append("full oracle below the optimizer model; oracle points do not contain the model points")
    if not result.dominates:
        logger.warning("optimizer %.6g below random search %.6g for %s vs %s",
                       result.model_value, result.random_search, result.mu, result.nu)
    logger.info("mk distance %s vs %s: %.6g (model %.6g, search %.6g)",
                result.mu, result.nu, result.value, result.model_value, result.random_search)
    return result


# ---------------------------------------------------------------------------
# Intermediate functional and bound formulas
# ---------------------------------------------------------------------------

def psi_functional(big_n: int, big_m: int, x: AlgebraElement) -> complex:
    """(M+1)^{-1} sum_r sum_m sqrt(<m+r+1>/<r+1>) eps(P_m(x))."""
    q = x.q
    total = 0j
    for r in range(big_n, big_n + big_m + 1):
        for m in range(big_n + big_m - r + 1):
            total += math.sqrt(qint(m + r + 1, q) / qint(r + 1, q)) * counit(p_operator(m, x))
    return total / (big_m + 1)


@dataclass(frozen=True)
class BoundFormula:
    big_k: int
    delta: float
    big_n: int
    big_m: int

    def __post_init__(self):
        if not 0 < self.delta <= 1:
            raise ParameterError(f"delta must lie in (0, 1], got {self.delta!r}")
        if self.big_m < self.big_k:
            raise ParameterError(f"need M >= K, got M={self.big_m}, K={self.big_k}")

    @property
    def root_sum(self) -> float:
        return math.sqrt(self.delta) + 1.0 / math.sqrt(self.delta)

    @property
    def constant(self) -> float:
        return (2 * self.big_k + 1) * math.sqrt(1 + self.big_k) * (self.root_sum + 1.0)

    @property
    def epsilon(self) -> float:
        return (2 * self.big_k + 1) * (1.0 / (self.big_n + 1) + 1.0 / (self.big_m + 1)) * self.root_sum

    def to_dict(self) -> dict:
        return {"K": self.big_k, "delta": self.delta, "N": self.big_n, "M": self.big_m,
                "C": self.constant, "epsilon": self.epsilon}


def mulspe_bound(big_k: int, delta: float, big_n: int, big_m: int, podles_distances: Sequence[float]) -> float:
    """C(K, delta) sup_r d_q^0(h_r, eps) + eps_{N,M}."""
    formula = BoundFormula(big_k, delta, big_n, big_m)
    return formula.constant * max(podles_distances, default=0.0) + formula.epsilon


def podles_distances(big_n: int, big_m: int, p: QParams, fuzzy: int, config: Optional[Config] = None,
                     seed: Optional[int] = None) -> list[DistanceResult]:
    """d_q^0(h_r, eps) for N <= r <= N+M on the grade-0 fuzzy subspace of size ``fuzzy``."""
    sphere = fuzzy_basis(fuzzy, 0, p.q)
    return [
        mk_distance(StateSpec("podles", (r,)), StateSpec("counit"), sphere, p, config, seed, seminorm="podles")
        for r in range(big_n, big_n + big_m + 1)
    ]


def bound_consistency(big_k: int, big_n: int, big_m: int, p: QParams, fuzzy: int,
                      config: Optional[Config] = None, seed: Optional[int] = None) -> dict:
    """mk_distance(chi_N^M, eps | B^K) next to the bound built from Podles distance estimates."""
    delta = min(p.t, p.q)
    band = fuzzy_band(fuzzy, big_k, p.q)
    lhs = mk_distance(StateSpec("chi", (big_n, big_m)), StateSpec("counit"), band, p, config, seed)
    podles = podles_distances(big_n, big_m, p, fuzzy, config, seed)
    rhs = mulspe_bound(big_k, delta, big_n, big_m, [d.value for d in podles])
    report = {
        "K": big_k, "N": big_n, "M": big_m, "t": p.t, "q": p.q, "delta": delta,
        "distance": lhs.value,
        "podles": [d.value for d in podles],
        "bound": rhs,
        "formula": BoundFormula(big_k, delta, big_n, big_m).to_dict(),
        "consistent": lhs.value <= rhs,
    }
    if not report["consistent"]:
        # the right side uses Podles distance estimates
        report["note"] = "bound uses Podles distance estimates; gap attributed to the optimizer"
        logger.warning("bound consistency gap: %.6g > %.6g", lhs.value, rhs)
    return report


def psi_bound_check(big_n: int, big_m: int, samples: int, p: QParams, config: Optional[Config] = None,
                    seed: int = 0) -> BoundReport:
    """|psi(x) - eps(x)| <= (1/(N+1) + 1/(M+1)) (t^{1/2} + t^{-1/2}) L(x) on homogeneous x."""
    config = config or get_config()
    report = BoundReport("psi_counit")
    factor = (1.0 / (big_n + 1) + 1.0 / (big_m + 1)) * (math.sqrt(p.t) + 1.0 / math.sqrt(p.t))
    for index, n, x in homogeneous_samples(samples, p.q, big_m, seed):
        lhs = abs(psi_functional(big_n, big_m, x) - counit(x))
        report.add(lhs, factor * seminorm_L(x, p, config.repnorm, seed), sample=index, grade=n)
    return report


def chi_psi_check(big_n: int, big_m: int, samples: int, p: QParams, podles_sup: float,
                  config: Optional[Config] = None, seed: int = 0) -> BoundReport:
    """|chi(x) - psi(x)| <= (1 + |n|/(N+1))^{1/2} (t^{1/2} + t^{-1/2} + 1) sup_r d_q^0(h_r, eps) L(x).

    ``podles_sup`` is itself an estimate, so rows here are diagnostics.
    """
    config = config or get_config()
    report = BoundReport("chi_psi")
    for index, n, x in homogeneous_samples(samples, p.q, big_m, seed):
        lhs = abs(chi_direct(big_n, big_m, x) - psi_functional(big_n, big_m, x))
        factor = math.sqrt(1 + abs(n) / (big_n + 1)) * (math.sqrt(p.t) + 1.0 / math.sqrt(p.t) + 1.0)
        report.add(lhs, factor * podles_sup * seminorm_L(x, p, config.repnorm, seed), sample=index, grade=n)
    return report


# ---------------------------------------------------------------------------
# Reports and sweeps
# ---------------------------------------------------------------------------

def berezin_error_report(big_n: int, big_m: int, x: AlgebraElement, p: QParams, fuzzy: int = 1,
                         config: Optional[Config] = None, seed: Optional[int] = None) -> dict:
    """|beta(x) - x| next to d(chi_N^M, eps) L(x); both sides are estimates."""
    config = config or get_config()
    seed_value = config.metric.seed if seed is None else seed
    error = cstar_norm(berezin(big_n, big_m, x) - x, config.repnorm, seed_value)
    band = fuzzy_band(fuzzy, max(big_m, 0), p.q)
    distance = mk_distance(StateSpec("chi", (big_n, big_m)), StateSpec("counit"), band, p, config, seed_value)
    lip = seminorm_L(x, p, config.repnorm, seed_value)
    return {
        "N": big_n, "M": big_m,
        "error": error,
        "distance": distance.value,
        "seminorm": lip,
        "product": distance.value * lip,
    }


def _state_pool(big_n: int, big_m: int) -> list[StateSpec]:
    pool = [StateSpec("counit"), StateSpec("haar")]
    pool += [StateSpec("chi", (n, m)) for n in range(big_n + 1) for m in range(big_m + 1)]
    pool += [StateSpec("podles", (r,)) for r in range(big_n + big_m + 1)]
    return pool


def diameter_report(p: QParams, band: FuzzyBandBasis, config: Optional[Config] = None,
                    seed: Optional[int] = None, pool_n: int = 1, pool_m: int = 1) -> dict:
    """Pairwise maximum of mk_distance over a small pool of states, next to the structural bound."""
    config = config or get_config()
    pool = _state_pool(pool_n, pool_m)
    best, best_pair = 0.0, None
    for i, mu in enumerate(pool):
        for nu in pool[i + 1:]:
            value = mk_distance(mu, nu, band, p, config, seed).value
            if value > best:
                best, best_pair = value, (mu.label(), nu.label())
    sphere = fuzzy_basis(band.big_n, 0, p.q)
    sphere_pool = [s for s in pool if s.tag in ("counit", "haar", "podles")]
    podles_diam = 0.0
    for i, mu in enumerate(sphere_pool):
        for nu in sphere_pool[i + 1:]:
            podles_diam = max(podles_diam, mk_distance(mu, nu, sphere, p, config, seed,
                                                       seminorm="podles").value)
    vertical_term = 2.0 * cb_bound_phi(p.t)
    notes = [
        "diameter entry is the largest distance estimate over the listed state pool",
        "podles_diameter estimates an ingredient of the upper bound",
    ]
    delta = min(p.t, p.q)
    notes.append(
        f"restricting to B^{band.big_k}: d(mu, nu) <= 2 eps(delta, M) + d(mu|B^M, nu|B^M) with "
        f"eps({delta:g}, {band.big_k}) = {epsilon_null(delta, band.big_k):.6g}"
    )
    return {
        "t": p.t, "q": p.q,
        "diameter_estimate": best,
        "pair": best_pair,
        "vertical_term": vertical_term,
        "podles_diameter": podles_diam,
        "structural_bound": vertical_term + podles_diam,
        "notes": notes,
    }


@dataclass
class SweepTable:
    rows: list[dict] = field(default_factory=list)
    moduli: dict[str, float] = field(default_factory=dict)

    columns = ("t", "q", "N", "M", "K", "observable", "value", "converged", "random_search")

    def to_dict(self) -> dict:
        return {"columns": list(self.columns), "rows": self.rows, "moduli": self.moduli}


def _moduli(rows: list[dict]) -> dict[str, float]:
    """Largest |dvalue / dstep| between grid neighbours, per observable and axis."""
    moduli: dict[str, float] = {}
    by_obs: dict[str, dict[tuple[float, float], float]] = {}
    for row in rows:
        by_obs.setdefault(row["observable"], {})[(row["t"], row["q"])] = row["value"]
    for obs, grid in by_obs.items():
        ts = sorted({t for t, _ in grid})
        qs = sorted({q for _, q in grid})
        worst_t = worst_q = 0.0
        for q in qs:
            for t0, t1 in zip(ts, ts[1:]):
                if (t0, q) in grid and (t1, q) in grid:
                    worst_t = max(worst_t, abs(grid[(t1, q)] - grid[(t0, q)]) / (t1 - t0))
        for t in ts:
            for q0, q1 in zip(qs, qs[1:]):
                if (t, q0) in grid and (t, q1) in grid:
                    worst_q = max(worst_q, abs(grid[(t, q1)] - grid[(t, q0)]) / (q1 - q0))
        moduli[f"{obs}:dt"] = worst_t
        moduli[f"{obs}:dq"] = worst_q
    return moduli


def continuity_sweep(grid: Sequence[tuple[float, float]], words: Sequence[str] = ("b",),
                     distance: Optional[tuple[int, int, int]] = None, config: Optional[Config] = None,
                     seed: Optional[int] = None) -> SweepTable:
    """L_{t,q} of fixed words and, optionally, d(chi_N^M, eps | fuzzy band of size N, K) over a (t, q) grid.

    ``distance`` is (N, M, K); the band is fuzzy_band(N, K).
    """
    config = config or get_config()
    seed_value = config.metric.seed if seed is None else seed
    table = SweepTable()
    for t, q in grid:
        p = QParams(q, t)
        for word in words:
            x = from_word(word, q) if word != "1" else AlgebraElement.one(q)
            estimate = seminorm_estimate(x, p, config.repnorm, seed_value)
            table.rows.append({"t": t, "q": q, "N": None, "M": None, "K": None,
                               "observable": f"L({word})", "value": estimate.value,
                               "converged": estimate.converged, "random_search": None})
        if distance is not None:
            big_n, big_m, big_k = distance
            band = fuzzy_band(big_n, big_k, q)
            result = mk_distance(StateSpec("chi", (big_n, big_m)), StateSpec("counit"), band, p, config, seed_value)
            table.rows.append({"t": t, "q": q, "N": big_n, "M": big_m, "K": big_k,
                               "observable": f"d(chi{big_n}{big_m},eps)", "value": result.value,
                               "converged": result.dominates, "random_search": result.random_search})
    table.moduli = _moduli(table.rows)
    return table


def convergence_distances(sizes: Sequence[int], big_k: int, p: QParams, fuzzy: int,
                          config: Optional[Config] = None, seed: Optional[int] = None) -> list[DistanceResult]:
    """d(chi_N^N, eps) on a fixed band fuzzy_band(fuzzy, K) for each N in sizes."""
    band = fuzzy_band(fuzzy, big_k, p.q)
    return [mk_distance(StateSpec("chi", (n, n)), StateSpec("counit"), band, p, config, seed) for n in sizes]


__all__ = [
    "BoundFormula",
    "DistanceResult",
    "LinearNormModel",
    "SweepTable",
    "berezin_error_report",
    "bound_consistency",
    "chi_psi_check",
    "continuity_sweep",
    "convergence_distances",
    "diameter_report",
    "mk_distance",
    "mulspe_bound",
    "podles_distances",
    "psi_bound_check",
    "psi_functional",
    "random_search",
    "selfadjoint_directions",
]
