"""The verification battery: one function per identity family.

Each suite receives a ``SuiteContext`` and records its checks in a
``Checks`` ledger. Whether a suite may fail the run is decided by the
``report_only`` flag in ``SUITES``, never inside the suite.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Dict, List, Tuple

import numpy as np

from app.core.delta_series import DeltaSeries, exp_series, named_series, series_arith, series_to_matrix
from app.core.delta_umbral import (
    DEFAULT_Y_SAMPLES,
    all_routes,
    alternating_unit_values,
    basic_sequence,
    binomial_check,
    classical_falling,
    egf_eigen_check,
    eigen_collapse,
    evaluation_check,
    expansion_matrix,
    first_expansion,
    monomial_basic,
    normal_basic_general,
    recognize_delta,
    routes_agree,
    sheffer_sequence,
    translate_expansion_check,
)
from app.core.exact_core import ONE, ZERO, Poly
from app.core.expansion import (
    expand_in_Q,
    indicator,
    operator_from_coefficients,
    psi_exponential_indicator_check,
    reconstruct,
)
from app.core.integration import (
    jackson_partial_sums,
    left_inverse_check,
    psi_integral,
    q_integral,
    q_integral_operator,
    r_integral,
    right_inverse_check,
)
from app.core.operator_algebra import (
    classical_bridge_check,
    commutant_report,
    d_zero_series_check,
    dilation_product_check,
    ghw_exponential_check,
    ghw_leibniz_check,
    heisenberg_check,
    jackson_factorization_check,
    leibniz_product_check,
    number_operator_check,
    pincherle_series_check,
    proportional_sequence,
    psi_derivatives_commute,
)
from app.core.OperatorProvider import make_named
from app.core.psi_sequence import PsiSequence, RationalFunction, make_preset
from app.core.special_functions import (
    exp_addition_check,
    hyperbolic_component,
    limit_deformation_check,
    pythagorean_defect,
    sieve_partition_check,
)
from app.core.star_product import (
    StarPoly,
    exp_law_check,
    exp_realization_check,
    poisson_build,
    poisson_normalizer_check,
    poisson_operator_check,
    poisson_recurrence_check,
    psi_pincherle_derivation,
    star_composition_check,
    star_leibniz_check,
    star_power_derivative_check,
    star_power_product_check,
)
from app.helpers.errors import IdentityFailure
from app.utils.helpers import fmt_scalar, random_delta_series, random_operator, random_poly, random_scalar

logger = logging.getLogger(__name__)

DELTA_NAMES = ("d_psi", "d_psi_plus_square", "forward-difference")
DEFAULT_Q = Fraction(1, 2)


@dataclass
class SuiteContext:
    psi: PsiSequence
    rng: np.random.Generator
    trials: int
    shift_samples: List[Fraction]

    @property
    def cap(self) -> int:
        return self.psi.cap

    @property
    def q(self) -> Fraction:
        return self.psi.q if self.psi.q is not None else DEFAULT_Q


@dataclass
class Checks:
    entries: List[Tuple[str, bool]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def check(self, label: str, ok: bool) -> bool:
        self.entries.append((label, bool(ok)))
        if not ok:
            logger.warning("check failed: %s", label)
        return ok

    def note(self, text: str) -> None:
        self.notes.append(text)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.entries)

    def details(self) -> List[str]:
        return [f"{label}: {'PASS' if ok else 'FAIL'}" for label, ok in self.entries] + self.notes


def _basic_sequences(ctx: SuiteContext, M: int) -> Dict[str, object]:
    return {name: basic_sequence(named_series(name, ctx.psi), M) for name in DELTA_NAMES}


def ghw_suite(ctx: SuiteContext, c: Checks) -> None:
    psi = ctx.psi
    c.check("[d_psi, x_hat_psi] = id", heisenberg_check(psi))
    c.check("x_hat_psi d_psi = x D = N", number_operator_check(psi))
    pairs = [(n, m) for n in range(5) for m in range(5) if 2 * (n + m) <= ctx.cap]
    c.check(f"normal ordering of d_psi^n x_hat_psi^m ({len(pairs)} pairs)", all(ghw_leibniz_check(psi, n, m) for n, m in pairs))
    K = min(6, ctx.cap // 2)
    c.check(f"exponential commutation at K={K}", ghw_exponential_check(psi, Fraction(1, 2), Fraction(-2, 3), K))


def leibniz_suite(ctx: SuiteContext, c: Checks) -> None:
    psi, cap = ctx.psi, ctx.cap
    ok = True
    for _ in range(ctx.trials):
        f = random_poly(ctx.rng, int(ctx.rng.integers(0, cap // 2 + 1)), cap)
        g = random_poly(ctx.rng, int(ctx.rng.integers(0, cap // 2 + 1)), cap)
        ok = ok and leibniz_product_check(psi, f, g)
    c.check(f"product rule through n_hat_psi d_0 ({ctx.trials} random pairs)", ok)
    c.check(f"d_q = ((1 - qQ)/(1 - q)) d_0 at q={ctx.q}", jackson_factorization_check(ctx.q, cap))
    c.check("d_0 as a series in D", all(d_zero_series_check(m, cap) for m in range(cap + 1)))
    c.check("dilations compose multiplicatively", dilation_product_check(ctx.q, Fraction(1, 3), cap))


def binomial_suite(ctx: SuiteContext, c: Checks) -> None:
    psi = ctx.psi
    M = min(10, ctx.cap)
    for name, basic in _basic_sequences(ctx, M).items():
        c.check(f"{name}: binomial identity for y in {len(DEFAULT_Y_SAMPLES)} samples", all(binomial_check(basic, y) for y in DEFAULT_Y_SAMPLES))
        c.check(f"{name}: [E^y p_n](0) = p_n(y)", all(evaluation_check(basic, y) for y in DEFAULT_Y_SAMPLES))
        c.check(f"{name}: E^y = Σ p_k(y)/k_psi! Q^k", all(translate_expansion_check(basic, y) for y in DEFAULT_Y_SAMPLES[:2]))
        Q = basic.generator_matrix()
        general = normal_basic_general(Q, psi, M)
        c.check(f"{name}: triangular solve matches", general.same_polys(basic))
        c.check(f"{name}: binomial identity through E^y(Q)", binomial_check(general, DEFAULT_Y_SAMPLES[2], Q))
    M = min(12, ctx.cap)
    for name in DELTA_NAMES:
        c.check(f"{name}: four routes agree on p_0..p_{M}", routes_agree(all_routes(named_series(name, psi), M)))


def note21_suite(ctx: SuiteContext, c: Checks) -> None:
    values = alternating_unit_values(ctx.psi, min(8, ctx.cap))
    even = [(n, v) for n, v in values if n % 2 == 0]
    c.check("(1 +psi (-1))^n = 0 for even n", all(v == 0 for _, v in even))
    c.note("values: " + ", ".join(f"n={n}: {fmt_scalar(v)}" for n, v in values))


def poisson_suite(ctx: SuiteContext, c: Checks) -> None:
    M = min(5, ctx.cap // 2)
    for lam in (ONE, Fraction(1, 2)):
        model = poisson_build(ctx.psi, lam, M, ctx.cap - M)
        c.check(f"lambda={lam}: difference system on degrees <= {model.guard_degree}", poisson_recurrence_check(model))
        c.check(f"lambda={lam}: Σ p_m = N = 1 on degrees <= {model.normalizer_guard}", poisson_normalizer_check(model))
        c.check(f"lambda={lam}: operator solution reproduces p_m", poisson_operator_check(model))


def integration_suite(ctx: SuiteContext, c: Checks) -> None:
    psi, cap, q = ctx.psi, ctx.cap, ctx.q
    d_psi = make_named("d_psi", psi).matrix
    c.check("d_psi ∘ ∫psi = id", right_inverse_check(d_psi, lambda p: psi_integral(psi, p), cap))
    c.check("∫psi ∘ d_psi = id on p(0) = 0", left_inverse_check(d_psi, lambda p: psi_integral(psi, p), cap))
    d_q = make_named("d_q", q=q, cap=cap).matrix
    c.check(f"d_q ∘ ∫q = id at q={q}", right_inverse_check(d_q, lambda p: q_integral(q, p), cap))
    operator = q_integral_operator(q, cap)
    c.check("∫q closed form = (1-q) x (1 - qQ)^-1", all(
        operator.apply(Poly.monomial(n, cap)) == q_integral(q, Poly.monomial(n, cap)) for n in range(cap)
    ))
    r = psi.r if psi.r is not None else RationalFunction.jackson(q)
    d_r = make_named("d_R", q=q, r=r, cap=cap).matrix
    c.check("d_R ∘ ∫R = id", right_inverse_check(d_r, lambda p: r_integral(r, q, p), cap))
    if 0 < q < 1:
        p = Poly.monomial(min(3, cap - 1), cap)
        closed = q_integral(q, p)
        gaps = [abs(s[p.degree() + 1] - closed[p.degree() + 1]) for s in jackson_partial_sums(q, p, 8)]
        c.check("Jackson partial sums approach the closed form", all(a > b for a, b in zip(gaps, gaps[1:])))


def expansion_suite(ctx: SuiteContext, c: Checks) -> None:
    psi, cap = ctx.psi, ctx.cap
    M = min(10, cap - 2)
    lam = min(6, M)
    for name in ("d_psi", "d_psi_plus_square", "forward-difference"):
        Q = series_to_matrix(named_series(name, psi))
        basic = normal_basic_general(Q, psi, M)
        reconstructed = reexpanded = indicated = True
        for _ in range(ctx.trials):
            T = random_operator(ctx.rng, cap, raise_by=2)
            expansion = expand_in_Q(T, Q, psi, M, basic=basic)
            reconstructed = reconstructed and expansion.verified
            again = expand_in_Q(reconstruct(expansion), Q, psi, M, basic=basic)
            reexpanded = reexpanded and again.same_coefficients(expansion)
            try:
                indicator(expansion, lam)
            except IdentityFailure:
                indicated = False
        c.check(f"Q={name}: {ctx.trials} random T reconstruct on degrees <= {M}", reconstructed)
        c.check(f"Q={name}: re-expansion gives the same coefficients", reexpanded)
        c.check(f"Q={name}: indicator equals the conjugation up to lambda^{lam}", indicated)
    q_polys = [random_poly(ctx.rng, 1, cap) for _ in range(3)]
    T = operator_from_coefficients(q_polys, make_named("d_psi", psi).matrix)
    c.check("expPsi-conjugation of Σ q_n(x) d_psi^n", psi_exponential_indicator_check(T, psi, lam, q_polys))
    a = random_delta_series(ctx.rng, psi, 4)
    basic = basic_sequence(named_series("d_psi_plus_square", psi), cap)
    shift_invariant = series_to_matrix(series_arith(a, basic.generator, "compose"))
    first = first_expansion(shift_invariant, basic, ctx.shift_samples)
    c.check("first expansion theorem recovers Σ a_n Q^n", expansion_matrix(first).agrees_with(shift_invariant, cap))


def pincherle_suite(ctx: SuiteContext, c: Checks) -> None:
    psi = ctx.psi
    for _ in range(min(ctx.trials, 5)):
        coeffs = [random_scalar(ctx.rng) for _ in range(6)]
        c.check(f"Pincherle derivative of {[fmt_scalar(v) for v in coeffs]}", pincherle_series_check(psi, coeffs))
    derived = psi_pincherle_derivation([ONE, ONE, Fraction(1, 2), Fraction(1, 6)], psi)
    c.check("d/dx_hat_psi of Σ c_n x_hat_psi^n", derived == [ONE, ONE, Fraction(1, 2)])


def egf_suite(ctx: SuiteContext, c: Checks) -> None:
    lam = min(8, ctx.cap)
    for name, basic in _basic_sequences(ctx, lam).items():
        c.check(f"{name}: Q Φ = λ Φ up to lambda^{lam}", egf_eigen_check(basic.generator, basic, lam))
    collapsed = eigen_collapse(monomial_basic(ctx.psi, ctx.cap))
    c.check("monomial basic sequence collapses to expPsi", collapsed is not None and collapsed.same_sequence(ctx.psi))


def sheffer_suite(ctx: SuiteContext, c: Checks) -> None:
    psi = ctx.psi
    M = min(8, ctx.cap)
    invertible = (("1 + d_psi", DeltaSeries(psi, (ONE, ONE))), ("E^(1/2)", exp_series(psi, Fraction(1, 2))))
    for name, basic in _basic_sequences(ctx, M).items():
        for label, S in invertible:
            try:
                sheffer_sequence(basic, S)
                ok = True
            except IdentityFailure:
                ok = False
            c.check(f"{name}: Sheffer identity with S = {label}", ok)


def bridge_suite(ctx: SuiteContext, c: Checks) -> None:
    cap = ctx.cap
    K = min(5, cap)
    c.check(f"D <-> Δ bridge series at K={K}", classical_bridge_check(K, cap))
    if ctx.psi.label == "classical":
        M = min(10, cap)
        basic = basic_sequence(named_series("forward-difference", ctx.psi), M)
        c.check("forward difference gives the falling factorials", all(
            p == classical_falling(n, cap) for n, p in enumerate(basic.polys)
        ))
        c.check("binomial coefficients are the textbook ones", all(
            ctx.psi.binomial(n, k) == Fraction(comb(n, k)) for n in range(cap + 1) for k in range(n + 1)
        ))
    else:
        c.note(f"classical reduction skipped for {ctx.psi.label}")


def classifier_suite(ctx: SuiteContext, c: Checks) -> None:
    psi, cap = ctx.psi, ctx.cap
    d = make_named("d_classical", cap=cap).matrix
    x = make_named("x_hat", cap=cap).matrix
    d_x_d = d @ x @ d
    result = recognize_delta(d_x_d)
    c.check("D x D is a series with n_psi = n^2", result.is_series and result.preset == "dxd")
    skew = d_x_d.scale(Fraction(1, 2)) - d.power(3).scale(Fraction(1, 3))
    result = recognize_delta(skew)
    c.check("½ D x D - ⅓ D^3 is rejected", not result.is_series and result.failure_witness is not None)
    c.note(f"witness {result.failure_witness}: predicted {fmt_scalar(result.predicted)}, actual {fmt_scalar(result.actual)}")
    d_q = make_named("d_q", q=Fraction(1, 3), cap=cap).matrix
    c.check("d_q at q=1/3 is recognized as q-jackson", recognize_delta(d_q).preset == "q-jackson(q=1/3)")
    if psi.n_psi[1] != 1:
        c.note("roundtrip skipped: 1_psi != 1 rescales the recognized sequence")
        return
    roundtrip = True
    for _ in range(ctx.trials):
        Q = random_delta_series(ctx.rng, psi, min(5, cap))
        recognized = recognize_delta(series_to_matrix(Q))
        roundtrip = roundtrip and recognized.is_series and recognized.series() == Q
    c.check(f"recognize ∘ realize = id on {ctx.trials} random delta series", roundtrip)


def star_suite(ctx: SuiteContext, c: Checks) -> None:
    psi, cap = ctx.psi, ctx.cap
    half = cap // 2
    c.check("d_psi x^(n*psi) = n x^((n-1)*psi)", star_power_derivative_check(psi))
    c.check("x^(n*psi) *psi x^(k*psi)", all(star_power_product_check(psi, n, k) for n in range(half + 1) for k in range(half + 1)))
    c.check("expPsi[αx] = exp{α x_hat_psi} 1", all(exp_realization_check(psi, a, cap) for a in (ONE, Fraction(-1, 2))))
    c.check("exponential law for *psi", exp_law_check(psi, ONE, Fraction(-1, 3), half))
    ok = True
    for _ in range(min(ctx.trials, 5)):
        f = random_poly(ctx.rng, int(ctx.rng.integers(0, half + 1)), cap)
        g = StarPoly(random_poly(ctx.rng, int(ctx.rng.integers(0, half + 1)), cap), "star_basis", psi)
        ok = ok and star_leibniz_check(psi, f, g)
        ok = ok and star_composition_check(psi, f, g.plain)
    c.check("Leibniz rule and composition for *psi", ok)
    derived = psi_pincherle_derivation([ZERO, ZERO, ONE], psi)
    c.check("[d_psi, x_hat_psi^2] = 2 x_hat_psi", derived == [ZERO, Fraction(2)])


def special_suite(ctx: SuiteContext, c: Checks) -> None:
    psi, cap = ctx.psi, ctx.cap
    c.check("hyperbolic components of order 2 and 3 partition expPsi", all(sieve_partition_check(psi, m, cap) for m in (2, 3)))
    cosh = hyperbolic_component(psi, 2, 0, cap)
    c.check("h_0 of order 2 keeps the even coefficients", all(v == 0 for v in cosh.coeffs[1::2]))
    c.check("expPsi(x +psi y) = expPsi(x) expPsi(y)", exp_addition_check(psi, min(8, cap)))
    defect = pythagorean_defect(psi, min(8, cap))
    c.note("cos^2 + sin^2 - 1: " + ", ".join(fmt_scalar(v) for v in defect))
    report = limit_deformation_check([Fraction(1, 10), Fraction(1, 2), Fraction(9, 10), Fraction(99, 100)], 5)
    c.check("1/k_q! moves from 1 toward 1/k! as q grows", report.toward_exp and report.toward_geometric)


def commutant_suite(ctx: SuiteContext, c: Checks) -> None:
    psi, cap = ctx.psi, ctx.cap
    phi = proportional_sequence(psi, 2)
    c.check("d_psi commutes with d_(2 psi)", psi_derivatives_commute(psi, phi))
    others = [make_preset("classical", cap=cap), make_preset("dxd", cap=cap), make_preset("q-jackson", q=Fraction(1, 2), cap=cap)]
    for row in commutant_report([psi] + others):
        if row["commute"] and not row["equal"]:
            c.note(f"{row['psi']} and {row['phi']} commute without being equal")


@dataclass(frozen=True)
class Suite:
    name: str
    run: Callable[[SuiteContext, Checks], None]
    report_only: bool = False
    # randomized suites never run fewer trials than this
    min_trials: int = 1


SUITES: Dict[str, Suite] = {
    suite.name: suite
    for suite in (
        Suite("ghw", ghw_suite),
        Suite("leibniz", leibniz_suite),
        Suite("binomial", binomial_suite),
        Suite("note21", note21_suite, report_only=True),
        Suite("poisson", poisson_suite),
        Suite("integration", integration_suite),
        Suite("expansion-roundtrip", expansion_suite, min_trials=50),
        Suite("pincherle", pincherle_suite),
        Suite("egf", egf_suite),
        Suite("sheffer", sheffer_suite),
        Suite("bridge", bridge_suite),
        Suite("classifier", classifier_suite, min_trials=20),
        Suite("star", star_suite),
        Suite("special", special_suite),
        Suite("commutant", commutant_suite, report_only=True),
    )
}
