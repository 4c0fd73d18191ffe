"""
Identity suites for ``qsu2 check``.

Each suite is a Validator whose checks take a SuiteContext. Exact identities
are compared against ``tolerance``; sampled analytic bounds report pass/fail
through BoundReport.
"""
import itertools
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, List, Optional

import numpy as np

from qsu2.algebra.element import AlgebraElement, Monomial, QParams, generators, random_element
from qsu2.algebra.grading import project_grade
from qsu2.algebra.haar import haar, twisted_trace_residual
from qsu2.algebra.hopf import antipode_axiom, coassociativity_residual, coproduct, counit, counit_monomial
from qsu2.algebra.qnumbers import qint
from qsu2.berezin import (
    berezin,
    berezin_contraction_check,
    berezin_image_check,
    chi_closed_form,
    chi_cross_check,
    chi_direct,
    coinvariance_check,
    equivariance_residual,
    fuzzy_basis,
    phi_rs,
    phi_rs_predicted_nonzero,
)
from qsu2.config import Config, get_config
from qsu2.corep import (
    adjoint_formula_residual,
    coproduct_residual,
    expected_norm_squared,
    l2_inner,
    pairing_action_residual,
    product_rule_residual,
    reconstruct_spectral,
    u,
    unitarity_residual,
)
from qsu2.dirac import (
    adjoint_residual,
    block_entries,
    conjugation_residual,
    delta_adjoint_residual,
    derivative,
    dirac_blocks,
    first_order_check,
    twisted_leibniz_residual,
)
from qsu2.errors import ParameterError
from qsu2.metric import chi_psi_check, podles_distances, psi_bound_check
from qsu2.schur import (
    antiderivative_residual,
    band_approximation_check,
    band_contraction_check,
    band_norm_check,
    cb_bound_phi,
    epsilon_null,
    fundamental_unitary_bounds,
    shift_bound_report,
    spectral_projection,
)
from qsu2.validation.engine import ValidationResult, Validator

logger = logging.getLogger(__name__)


@dataclass
class SuiteContext:
    """Parameters shared by all suites"""
    q: float = 0.5
    t: float = 0.5
    max_degree: int = 3
    tolerance: float = 1e-9
    samples: int = 5
    seed: int = 0
    config: Config = field(default_factory=get_config)

    @property
    def params(self) -> QParams:
        return QParams(self.q, self.t)

    @cached_property
    def monomials(self) -> List[AlgebraElement]:
        out = []
        d = self.max_degree
        for k in range(-d, d + 1):
            for l in range(d - abs(k) + 1):  # noqa: E741
                for m in range(d - abs(k) - l + 1):
                    out.append(AlgebraElement({Monomial(k, l, m): 1.0}, self.q))
        return out

    def rng(self, salt: int = 0) -> np.random.Generator:
        return np.random.default_rng([self.seed, salt])

    def random_elements(self, count: int, salt: int = 0) -> List[AlgebraElement]:
        if self.max_degree < 1:
            return []
        rng = self.rng(salt)
        return [random_element(rng, self.q, max_degree=self.max_degree, n_terms=3) for _ in range(count)]

    def pairs(self, count: int, salt: int = 0) -> List[tuple]:
        xs = self.random_elements(2 * count, salt)
        return list(zip(xs[::2], xs[1::2]))


def _worst(values) -> float:
    return max(values, default=0.0)


# ---------------------------------------------------------------------------
# relations
# ---------------------------------------------------------------------------

def _relation_residual(ctx: SuiteContext) -> float:
    if ctx.max_degree < 1:
        return 0.0
    q = ctx.q
    a, b, a_s, b_s = generators(q)
    one = AlgebraElement.one(q)
    zero = AlgebraElement.zero(q)
    checks = [
        (b * a - (a * b).scale(q), zero),
        (b_s * a - (a * b_s).scale(q), zero),
        (b * b_s - b_s * b, zero),
        (a_s * a + (b * b_s).scale(q * q), one),
        (a * a_s + b * b_s, one),
    ]
    return _worst(lhs.distance(rhs) for lhs, rhs in checks)


def _associativity_residual(ctx: SuiteContext) -> float:
    xs = ctx.random_elements(3 * ctx.samples, salt=1)
    return _worst(((x * y) * z).distance(x * (y * z)) for x, y, z in zip(xs[::3], xs[1::3], xs[2::3]))


def _adjoint_residual(ctx: SuiteContext) -> float:
    worst = _worst(x.adjoint().adjoint().distance(x) for x in ctx.monomials)
    for x, y in ctx.pairs(ctx.samples, salt=2):
        worst = max(worst, (x * y).adjoint().distance(y.adjoint() * x.adjoint()))
    return worst


def relations_suite(ctx: SuiteContext) -> ValidationResult:
    v = Validator("relations", ctx.tolerance)
    v.add_check("defining_relations", _relation_residual, "defining relations violated")
    v.add_check("associativity", _associativity_residual, "product is not associative")
    v.add_check("adjoint", _adjoint_residual, "adjoint is not an antimultiplicative involution")
    return v.validate(ctx)


# ---------------------------------------------------------------------------
# hopf
# ---------------------------------------------------------------------------

def _counit_axiom(ctx: SuiteContext) -> float:
    worst = 0.0
    for x in ctx.monomials:
        tensor = coproduct(x)
        worst = max(worst, tensor.apply_left(counit_monomial).distance(x),
                    tensor.apply_right(counit_monomial).distance(x))
    return worst


def _antipode(ctx: SuiteContext) -> float:
    return _worst(antipode_axiom(x).distance(AlgebraElement.scalar(counit(x), ctx.q)) for x in ctx.monomials)


def _coassociativity(ctx: SuiteContext) -> float:
    return _worst(coassociativity_residual(x) for x in ctx.monomials)


def _multiplicative(ctx: SuiteContext) -> float:
    worst = 0.0
    for x, y in ctx.pairs(ctx.samples, salt=3):
        worst = max(worst, coproduct(x * y).distance(coproduct(x) * coproduct(y)))
    return worst


def hopf_suite(ctx: SuiteContext) -> ValidationResult:
    v = Validator("hopf", ctx.tolerance)
    v.add_check("counit", _counit_axiom, "counit axiom fails")
    v.add_check("coassociativity", _coassociativity, "coproduct is not coassociative")
    v.add_check("antipode", _antipode, "antipode axiom fails")
    v.add_check("coproduct_multiplicative", _multiplicative, "coproduct is not multiplicative")
    return v.validate(ctx)


# ---------------------------------------------------------------------------
# haar
# ---------------------------------------------------------------------------

def _twisted_trace(ctx: SuiteContext) -> float:
    return _worst(twisted_trace_residual(x, y) for x, y in ctx.pairs(ctx.samples, salt=4))


def _haar_moments(ctx: SuiteContext) -> float:
    q = ctx.q
    worst = 0.0
    for m in range(min(6, ctx.max_degree) + 1):
        _, b, _, b_s = generators(q)
        worst = max(worst, abs(haar((b ** m) * (b_s ** m)) - 1.0 / qint(m + 1, q)))
    return worst


def _haar_invariance(ctx: SuiteContext) -> float:
    worst = 0.0
    for x in ctx.monomials:
        tensor = coproduct(x)
        value = AlgebraElement.scalar(haar(x), ctx.q)
        left = tensor.apply_left(lambda mono: haar(AlgebraElement({mono: 1.0}, ctx.q)))
        right = tensor.apply_right(lambda mono: haar(AlgebraElement({mono: 1.0}, ctx.q)))
        worst = max(worst, left.distance(value), right.distance(value))
    return worst


def _coefficient_norms(ctx: SuiteContext) -> float:
    worst = 0.0
    for n in range(min(5, ctx.max_degree) + 1):
        for i in range(n + 1):
            for j in range(n + 1):
                value = l2_inner(u(n, i, j, ctx.q), u(n, i, j, ctx.q)).real
                worst = max(worst, abs(value - expected_norm_squared(n, i, ctx.q)))
    return worst


def haar_suite(ctx: SuiteContext) -> ValidationResult:
    v = Validator("haar", ctx.tolerance)
    v.add_check("twisted_trace", _twisted_trace, "h(xy) != h(nu(y) x)")
    v.add_check("moments", _haar_moments, "h(b^m b*^m) != 1/<m+1>")
    v.add_check("invariance", _haar_invariance, "Haar state is not bi-invariant")
    v.add_check("coefficient_norms", _coefficient_norms, "matrix coefficient norms off")
    return v.validate(ctx)


# ---------------------------------------------------------------------------
# pairing / corepresentations
# ---------------------------------------------------------------------------

def _levels(ctx: SuiteContext, cap: int = 6) -> range:
    return range(min(cap, ctx.max_degree) + 1)


def _unitarity(ctx: SuiteContext) -> float:
    return _worst(unitarity_residual(n, ctx.q) for n in _levels(ctx))


def _adjoint_formula(ctx: SuiteContext) -> float:
    return _worst(adjoint_formula_residual(n, i, j, ctx.q)
                  for n in _levels(ctx) for i in range(n + 1) for j in range(n + 1))


def _coefficient_coproduct(ctx: SuiteContext) -> float:
    return _worst(coproduct_residual(n, i, j, ctx.q)
                  for n in _levels(ctx, 4) for i in range(n + 1) for j in range(n + 1))


def _pairing_actions(ctx: SuiteContext) -> float:
    return _worst(pairing_action_residual(gen, n, i, j, ctx.q)
                  for gen in ("e", "f", "k") for n in _levels(ctx, 4)
                  for i in range(n + 1) for j in range(n + 1))


def _product_rules(ctx: SuiteContext) -> float:
    return _worst(product_rule_residual(gen, n, i, j, ctx.q)
                  for gen in ("a", "a_star", "b", "b_star") for n in _levels(ctx, 4)
                  for i in range(n + 1) for j in range(n + 1))


def _spectral_reconstruction(ctx: SuiteContext) -> float:
    worst = 0.0
    for x in ctx.random_elements(ctx.samples, salt=5):
        for m in range(-2, 3):
            worst = max(worst, reconstruct_spectral(x, m).distance(project_grade(x, m)))
    return worst


def pairing_suite(ctx: SuiteContext) -> ValidationResult:
    v = Validator("pairing", ctx.tolerance)
    v.add_check("unitarity", _unitarity, "u^n is not unitary")
    v.add_check("adjoint_formula", _adjoint_formula, "(u^n_ij)* != (-q)^{j-i} u^n_{n-i,n-j}")
    v.add_check("coproduct", _coefficient_coproduct, "Delta(u_ij) != sum_k u_ik ⊗ u_kj")
    v.add_check("pairing", _pairing_actions, "left actions disagree with the pairing")
    v.add_check("product_rules", _product_rules, "generator product rules fail")
    v.add_check("spectral_reconstruction", _spectral_reconstruction, "grade reconstruction fails")
    return v.validate(ctx)


# ---------------------------------------------------------------------------
# derV: Dirac operators and vertical calculus
# ---------------------------------------------------------------------------

def _conjugation(ctx: SuiteContext) -> float:
    return _worst(conjugation_residual(x) for x in ctx.monomials if x.degree <= 4)


def _fundamental_theorem(ctx: SuiteContext) -> float:
    return _worst(antiderivative_residual(x, ctx.params) for x in ctx.random_elements(ctx.samples, salt=6))


def _derivative_adjoint(ctx: SuiteContext) -> float:
    return _worst(adjoint_residual(x, ctx.params) for x in ctx.monomials)


def _delta_adjoint(ctx: SuiteContext) -> float:
    return _worst(delta_adjoint_residual(x) for x in ctx.monomials)


def _leibniz(ctx: SuiteContext) -> float:
    return _worst(twisted_leibniz_residual(x, y, ctx.params) for x, y in ctx.pairs(ctx.samples, salt=7))


def _diagonal_antisymmetry(ctx: SuiteContext) -> float:
    worst = 0.0
    for x in ctx.monomials:
        d = derivative(x, ctx.params)
        worst = max(worst, d[1, 1].distance(-d[0, 0]))
    return worst


def _block_spectra(ctx: SuiteContext) -> float:
    worst = 0.0
    for block in dirac_blocks(max(ctx.max_degree, 0), ctx.params):
        worst = max(worst, block.anticommutator_residual())
        if block.matrix.shape == (2, 2):
            a, c = block_entries(block.n, block.j, ctx.params)
            radius = math.hypot(a, c)
            worst = max(worst, abs(block.eigenvalues[0] + radius), abs(block.eigenvalues[1] - radius))
    return worst


def derv_suite(ctx: SuiteContext) -> ValidationResult:
    v = Validator("derV", ctx.tolerance)
    v.add_check("conjugation", _conjugation, "u d(x) u* != delta(x)")
    v.add_check("fundamental_theorem", _fundamental_theorem, "vertical antiderivative != 1 - P_0")
    v.add_check("derivative_adjoint", _derivative_adjoint, "d(x*) != -d(x)*")
    v.add_check("delta_adjoint", _delta_adjoint, "delta(x*) != -delta(x)*")
    v.add_check("twisted_leibniz", _leibniz, "twisted Leibniz rule fails")
    v.add_check("diagonal_antisymmetry", _diagonal_antisymmetry, "lower diagonal entry != -upper")
    v.add_check("block_spectra", _block_spectra, "Dirac block eigenvalues off the closed form")
    return v.validate(ctx)


# ---------------------------------------------------------------------------
# firstorder
# ---------------------------------------------------------------------------

def _first_order(ctx: SuiteContext) -> float:
    if ctx.max_degree < 1:
        return 0.0
    gens = generators(ctx.q)
    cutoff = max(2, min(ctx.max_degree, 4))
    return _worst(first_order_check(x, y, ctx.params, cutoff=cutoff)
                  for x, y in itertools.product(gens, repeat=2))


def firstorder_suite(ctx: SuiteContext) -> ValidationResult:
    v = Validator("firstorder", ctx.tolerance)
    v.add_check("first_order", _first_order, "[IyI, d(x)] does not vanish")
    return v.validate(ctx)


# ---------------------------------------------------------------------------
# schur
# ---------------------------------------------------------------------------

def _epsilon_at_zero(ctx: SuiteContext) -> float:
    delta = min(ctx.q, ctx.t)
    return abs(epsilon_null(delta, 0) - cb_bound_phi(delta))


def _band_bounds(ctx: SuiteContext) -> bool:
    if ctx.max_degree < 1:
        return True
    reports = band_approximation_check(min(ctx.q, ctx.t), [1, 3], ctx.samples, ctx.params,
                                       ctx.config.repnorm, ctx.seed, max_degree=min(ctx.max_degree, 3))
    return all(r.passed for r in reports)


def _contraction(ctx: SuiteContext) -> bool:
    if ctx.max_degree < 1:
        return True
    return band_contraction_check(1, ctx.samples, ctx.params, ctx.config.repnorm, ctx.seed).passed


def _fundamental_unitary(ctx: SuiteContext) -> bool:
    return fundamental_unitary_bounds(ctx.params, ctx.config.repnorm, ctx.seed).passed


def _grade_shift(ctx: SuiteContext) -> bool:
    if ctx.max_degree < 1:
        return True
    return shift_bound_report(2, ctx.samples, ctx.params, ctx.config.repnorm, ctx.seed).passed


def _band_norm(ctx: SuiteContext) -> bool:
    if ctx.max_degree < 1:
        return True
    return band_norm_check(2, ctx.samples, ctx.params, ctx.config.repnorm, ctx.seed).passed


def _multiplier_idempotence(ctx: SuiteContext) -> float:
    worst = 0.0
    for x in ctx.random_elements(ctx.samples, salt=8):
        for n in range(-2, 3):
            once = spectral_projection(x, n)
            worst = max(worst, spectral_projection(once, n).distance(once))
    return worst


def schur_suite(ctx: SuiteContext) -> ValidationResult:
    v = Validator("schur", ctx.tolerance)
    v.add_check("epsilon_at_zero", _epsilon_at_zero, "eps(delta, 0) != pi (d^1/2 + d^-1/2)/sqrt 3",
                tolerance=1e-12)
    v.add_check("spectral_projection", _multiplier_idempotence, "delta_n multiplier is not idempotent")
    v.add_check("band_bounds", _band_bounds, "sampled band approximation bounds violated")
    v.add_check("band_contraction", _contraction, "E_M is not a seminorm contraction", severity="warning")
    v.add_check("fundamental_unitary", _fundamental_unitary, "u_ij exceed their norm or seminorm bounds")
    v.add_check("band_norm", _band_norm, "|x|_{t,q} above the band norm bound")
    v.add_check("grade_shift", _grade_shift, "shifted Podles seminorm above its bound", severity="warning")
    return v.validate(ctx)


# ---------------------------------------------------------------------------
# berezin
# ---------------------------------------------------------------------------

def _chi_routes(ctx: SuiteContext) -> float:
    worst = 0.0
    for x in ctx.random_elements(ctx.samples, salt=9):
        for big_n, big_m in ((0, 0), (1, 1), (0, 2)):
            worst = max(worst, chi_cross_check(big_n, big_m, x))
    return worst


def _chi_known_values(ctx: SuiteContext) -> float:
    a, _, a_s, _ = generators(ctx.q)
    worst = abs(chi_direct(0, 0, a_s * a) - 1.0 / (1.0 + ctx.q ** 2))
    worst = max(worst, abs(chi_direct(1, 2, AlgebraElement.one(ctx.q)) - 1.0))
    for k, n in ((0, 0), (0, 1), (1, 0), (1, 1)):
        x = (a_s ** (k + n)) * (a ** n)
        worst = max(worst, abs(chi_direct(1, 1, x) - chi_closed_form(1, 1, k, n, ctx.q)))
    return worst


def _kills_outer_grades(ctx: SuiteContext) -> float:
    worst = 0.0
    for x in ctx.random_elements(ctx.samples, salt=10):
        outer = x - project_grade(x, 0) - project_grade(x, 1) - project_grade(x, -1)
        worst = max(worst, berezin(0, 1, outer).max_abs())
    return worst


def _berezin_star(ctx: SuiteContext) -> float:
    return _worst(berezin(1, 1, x.adjoint()).distance(berezin(1, 1, x).adjoint())
                  for x in ctx.random_elements(ctx.samples, salt=11))


def _fuzzy_dimensions(ctx: SuiteContext) -> bool:
    return all(fuzzy_basis(n, m, ctx.q).dimension == (n + abs(m) + 1) * (n + 1)
               for n in range(3) for m in range(-2, 3))


def _image_ranks(ctx: SuiteContext) -> bool:
    return all(berezin_image_check(n, m_cap, m, ctx.q).passed
               for n, m_cap, m in ((0, 1, 1), (0, 1, -1), (1, 1, 0)))


def _coinvariance(ctx: SuiteContext) -> bool:
    return coinvariance_check(1, 1, ctx.q)["passed"]


def _equivariance(ctx: SuiteContext) -> float:
    return _worst(equivariance_residual(1, 1, x, ctx.t) for x in ctx.random_elements(ctx.samples, salt=12))


def _phi_support(ctx: SuiteContext) -> bool:
    for n in range(min(ctx.max_degree, 3) + 1):
        for i in range(n + 1):
            for j in range(n + 1):
                x = u(n, i, j, ctx.q)
                for r in range(3):
                    for s in range(3):
                        value = phi_rs(r, s, x)
                        if value.real < -1e-12 or abs(value.imag) > 1e-12:
                            return False
                        if (abs(value) > 1e-12) != phi_rs_predicted_nonzero(r, s, n, i, j):
                            return False
    return True


def _berezin_contraction(ctx: SuiteContext) -> bool:
    if ctx.max_degree < 1:
        return True
    return berezin_contraction_check(1, 1, ctx.q, ctx.samples, ctx.config.repnorm, ctx.seed).passed


def _psi_counit(ctx: SuiteContext) -> bool:
    if ctx.max_degree < 1:
        return True
    return psi_bound_check(1, 1, ctx.samples, ctx.params, ctx.config, ctx.seed).passed


def _chi_psi(ctx: SuiteContext) -> bool:
    if ctx.max_degree < 1:
        return True
    podles_sup = max(d.value for d in podles_distances(1, 1, ctx.params, 1, ctx.config, ctx.seed))
    return chi_psi_check(1, 1, ctx.samples, ctx.params, podles_sup, ctx.config, ctx.seed).passed


def berezin_suite(ctx: SuiteContext) -> ValidationResult:
    v = Validator("berezin", ctx.tolerance)
    v.add_check("chi_routes", _chi_routes, "Haar sandwich and band decomposition disagree")
    v.add_check("chi_values", _chi_known_values, "chi misses its closed-form values")
    v.add_check("kills_outer_grades", _kills_outer_grades, "beta_N^M keeps grades |m| > M")
    v.add_check("star_preserving", _berezin_star, "beta(x*) != beta(x)*")
    v.add_check("fuzzy_dimensions", _fuzzy_dimensions, "fuzzy subspace dimensions off")
    v.add_check("image_ranks", _image_ranks, "Berezin image is not the fuzzy subspace")
    v.add_check("coinvariance", _coinvariance, "fuzzy band is not coinvariant")
    v.add_check("equivariance", _equivariance, "beta does not commute with the derivations")
    v.add_check("phi_support", _phi_support, "phi_rs sign or support pattern off")
    v.add_check("contraction", _berezin_contraction, "beta is not a norm and L_{q,q} contraction",
                severity="warning")
    v.add_check("psi_counit", _psi_counit, "|psi(x) - eps(x)| above its bound")
    v.add_check("chi_psi", _chi_psi, "|chi(x) - psi(x)| above the Podles bound", severity="warning")
    return v.validate(ctx)


SUITES: Dict[str, Callable[[SuiteContext], ValidationResult]] = {
    "relations": relations_suite,
    "hopf": hopf_suite,
    "haar": haar_suite,
    "pairing": pairing_suite,
    "derV": derv_suite,
    "firstorder": firstorder_suite,
    "schur": schur_suite,
    "berezin": berezin_suite,
}


def run_suites(names: Optional[List[str]], ctx: SuiteContext) -> List[ValidationResult]:
    """Run the named suites (all when ``names`` is empty) in registry order."""
    selected = list(SUITES) if not names else names
    unknown = [n for n in selected if n not in SUITES]
    if unknown:
        raise ParameterError(f"unknown suite(s) {unknown}; choose from {list(SUITES)}")
    results = []
    for name in selected:
        logger.info("running suite %s", name, extra={"suite": name, "q": ctx.q, "t": ctx.t})
        results.append(SUITES[name](ctx))
    return results
