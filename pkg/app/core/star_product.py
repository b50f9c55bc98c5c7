"""The noncommutative ψ-product f *ψ g = f(x̂ψ) g and the Poisson ψ-process."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import List, Sequence, Tuple

from app.core.exact_core import (
    ZERO,
    OpMatrix,
    Poly,
    apply_polynomial_of,
    as_scalar,
    op_commutator,
    polynomial_in,
)
from app.core.OperatorProvider import make_named
from app.core.psi_sequence import PsiSequence
from app.helpers.errors import (
    GuardBandExceeded,
    IdentityFailure,
    IndexOutOfCap,
    MissingParameter,
    TruncationLoss,
)

logger = logging.getLogger(__name__)

INTERPRETATIONS = ("x_basis", "star_basis")


def star_factor(psi: PsiSequence, n: int) -> Fraction:
    """n!/nψ!, the coefficient of x^n in x^(n*ψ)."""
    return Fraction(factorial(n)) * psi.psi_vals[n]


@dataclass(frozen=True)
class StarPoly:
    """A polynomial read either in powers x^n or in *ψ-powers x^(n*ψ)."""

    plain: Poly
    interpretation: str
    psi: PsiSequence

    def __post_init__(self):
        if self.interpretation not in INTERPRETATIONS:
            raise MissingParameter(f"unknown interpretation {self.interpretation!r}")

    def to_x_basis(self) -> "StarPoly":
        if self.interpretation == "x_basis":
            return self
        coeffs = tuple(c * star_factor(self.psi, n) for n, c in enumerate(self.plain.coeffs))
        return StarPoly(Poly(coeffs, self.plain.cap), "x_basis", self.psi)

    def to_star_basis(self) -> "StarPoly":
        if self.interpretation == "star_basis":
            return self
        coeffs = tuple(c / star_factor(self.psi, n) for n, c in enumerate(self.plain.coeffs))
        return StarPoly(Poly(coeffs, self.plain.cap), "star_basis", self.psi)

    def as_poly(self) -> Poly:
        return self.to_x_basis().plain


def _x_hat(psi: PsiSequence) -> OpMatrix:
    return make_named("x_hat_psi", psi).matrix


def star(f: Poly, g: Poly, psi: PsiSequence) -> Poly:
    """f *ψ g = f(x̂ψ) g."""
    if f.degree() + g.degree() > psi.cap:
        raise TruncationLoss(
            f"deg f + deg g = {f.degree() + g.degree()} exceeds cap {psi.cap}",
            degree=f.degree() + g.degree(),
        )
    return apply_polynomial_of(_x_hat(psi), f.coeffs[: f.degree() + 1], g)


def star_power(psi: PsiSequence, n: int) -> StarPoly:
    """x^(n*ψ) = (n!/nψ!) x^n."""
    if not 0 <= n <= psi.cap:
        raise IndexOutOfCap(f"star power {n} outside 0..{psi.cap}")
    return StarPoly(Poly.monomial(n, psi.cap, star_factor(psi, n)), "x_basis", psi)


def star_power_derivative_check(psi: PsiSequence) -> bool:
    """∂ψ x^(n*ψ) == n x^((n-1)*ψ) for 1 <= n <= cap."""
    d_psi = make_named("d_psi", psi).matrix
    return all(
        d_psi.apply(star_power(psi, n).as_poly()) == star_power(psi, n - 1).as_poly().scale(n)
        for n in range(1, psi.cap + 1)
    )


def star_power_product_check(psi: PsiSequence, n: int, k: int) -> bool:
    """x^(n*ψ) *ψ x^(k*ψ) == (n!/nψ!) x^((n+k)*ψ)."""
    lhs = star(star_power(psi, n).as_poly(), star_power(psi, k).as_poly(), psi)
    return lhs == star_power(psi, n + k).as_poly().scale(star_factor(psi, n))


def exp_x_hat_one(psi: PsiSequence, alpha, order: int) -> Poly:
    """exp{α x̂ψ} 1 with the exponential cut at ``order``."""
    alpha = as_scalar(alpha)
    coeffs = [alpha**i / factorial(i) for i in range(order + 1)]
    return apply_polynomial_of(_x_hat(psi), coeffs, Poly.one(psi.cap))


def exp_psi_poly(psi: PsiSequence, alpha, order: int) -> Poly:
    """expψ[αx] = Σ_{k<=order} α^k x^k / kψ!."""
    alpha = as_scalar(alpha)
    return Poly(tuple(alpha**k * psi.psi_vals[k] for k in range(order + 1)), psi.cap)


def exp_realization_check(psi: PsiSequence, alpha, order: int) -> bool:
    """expψ[αx] == exp{α x̂ψ} 1."""
    return exp_psi_poly(psi, alpha, order) == exp_x_hat_one(psi, alpha, order)


def exp_law_check(psi: PsiSequence, alpha, beta, order: int) -> bool:
    """exp[αx] *ψ (exp{β x̂ψ} 1) == exp{(α+β) x̂ψ} 1 on degrees <= order."""
    if 2 * order > psi.cap:
        raise GuardBandExceeded(f"2 * order = {2 * order} exceeds cap {psi.cap}", requested=order, allowed=psi.cap // 2)
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    exp_alpha = Poly(tuple(alpha**i / factorial(i) for i in range(order + 1)), psi.cap)
    lhs = star(exp_alpha, exp_x_hat_one(psi, beta, order), psi)
    return lhs.agrees_on(exp_x_hat_one(psi, alpha + beta, order), order)


def star_leibniz_check(
    psi: PsiSequence,
    f: Poly,
    g_star: StarPoly,
    alpha=1,
    beta=Fraction(1, 2),
) -> bool:
    """∂ψ(f *ψ g) == (Df) *ψ g + f *ψ (∂ψ g), together with the exponential law."""
    g = g_star.as_poly()
    d_psi = make_named("d_psi", psi).matrix
    lhs = d_psi.apply(star(f, g, psi))
    rhs = star(f.derivative(), g, psi) + star(f, d_psi.apply(g), psi)
    return lhs == rhs and exp_law_check(psi, alpha, beta, psi.cap // 2)


def star_composition_check(psi: PsiSequence, f: Poly, g: Poly) -> bool:
    """f(x̂ψ) g(x̂ψ) 1 == f *ψ g̃ with g̃ = g(x̂ψ) 1."""
    x_hat = _x_hat(psi)
    g_tilde = apply_polynomial_of(x_hat, g.coeffs[: g.degree() + 1], Poly.one(psi.cap))
    product = polynomial_in(x_hat, f.coeffs[: f.degree() + 1]) @ polynomial_in(x_hat, g.coeffs[: g.degree() + 1])
    return product.apply(Poly.one(psi.cap)) == star(f, g_tilde, psi)


def psi_pincherle_derivation(series_in_xhat: Sequence, psi: PsiSequence) -> List[Fraction]:
    """Σ c_n x̂ψ^n -> Σ n c_n x̂ψ^(n-1), checked against [∂ψ, f(x̂ψ)].

    Also checks [∂̂ψ f(x̂ψ)] 1 == ∂ψ f(x̂ψ) 1.
    """
    coeffs = [as_scalar(c) for c in series_in_xhat]
    order = len(coeffs) - 1
    if order > psi.cap - 1:
        raise GuardBandExceeded(f"series order {order} exceeds cap - 1 = {psi.cap - 1}", requested=order, allowed=psi.cap - 1)
    derived = [n * coeffs[n] for n in range(1, order + 1)] or [ZERO]

    x_hat = _x_hat(psi)
    d_psi = make_named("d_psi", psi).matrix
    f_matrix = polynomial_in(x_hat, coeffs)
    comm = op_commutator(d_psi, f_matrix)
    expected = polynomial_in(x_hat, derived)
    if not comm.agrees_with(expected):
        raise IdentityFailure("[∂ψ, f(x̂ψ)] differs from the formal derivative")
    one = Poly.one(psi.cap)
    if expected.apply(one) != d_psi.apply(f_matrix.apply(one)):
        raise IdentityFailure("[∂̂ψ f] 1 differs from ∂ψ f(x)")
    return derived


@dataclass(frozen=True)
class PoissonModel:
    psi: PsiSequence
    lam: Fraction
    components: Tuple[Poly, ...]
    normalizer: Poly
    series_order: int

    @property
    def guard_degree(self) -> int:
        """Degrees on which each component satisfies the difference system."""
        return self.series_order - 1

    @property
    def normalizer_guard(self) -> int:
        """Degrees on which the truncated normalizer equals 1."""
        return min(len(self.components) - 1, self.series_order)


def poisson_build(psi: PsiSequence, lam, M: int, series_order: int) -> PoissonModel:
    """p_m = ((λx)^m/m!) *ψ expψ[-λx] for m <= M, and N = exp[λx] *ψ expψ[-λx]."""
    lam = as_scalar(lam)
    cap = psi.cap
    if M + series_order > cap:
        raise GuardBandExceeded(
            f"M + series_order = {M + series_order} exceeds cap {cap}",
            requested=M + series_order,
            allowed=cap,
        )
    base = exp_psi_poly(psi, -lam, series_order)
    components = tuple(
        star(Poly.monomial(m, cap, lam**m / factorial(m)), base, psi) for m in range(M + 1)
    )
    exp_lam = Poly(tuple(lam**i / factorial(i) for i in range(cap - series_order + 1)), cap)
    normalizer = star(exp_lam, base, psi)
    logger.debug("poisson model lambda=%s M=%d series order=%d", lam, M, series_order)
    return PoissonModel(psi, lam, components, normalizer, series_order)


def poisson_recurrence_check(model: PoissonModel) -> bool:
    """∂ψ p_m + λ p_m == λ p_(m-1) (and ∂ψ p_0 == -λ p_0) on the guard band."""
    d_psi = make_named("d_psi", model.psi).matrix
    lam = model.lam
    guard = model.guard_degree
    for m, p in enumerate(model.components):
        lhs = d_psi.apply(p) + p.scale(lam)
        rhs = model.components[m - 1].scale(lam) if m > 0 else Poly.zero(p.cap)
        if not lhs.agrees_on(rhs, guard):
            logger.debug("poisson recurrence fails at m=%d", m)
            return False
    return True


def poisson_normalizer_check(model: PoissonModel) -> bool:
    """Σ p_m agrees with N(λ,x) and with 1 on the normalizer guard band."""
    total = Poly.zero(model.psi.cap)
    for p in model.components:
        total = total + p
    guard = model.normalizer_guard
    one = Poly.one(model.psi.cap)
    return total.agrees_on(model.normalizer, guard) and total.agrees_on(one, guard)


def poisson_operator_solution(model: PoissonModel, m: int) -> Poly:
    """p_m(x̂ψ) 1 with p_m(x̂ψ) = ((λx̂ψ)^m/m!) exp{-λx̂ψ}."""
    psi = model.psi
    lam = model.lam
    order = model.series_order
    exp_part = [(-lam) ** i / factorial(i) for i in range(order + 1)]
    coeffs = [ZERO] * m + [c * lam**m / factorial(m) for c in exp_part]
    return apply_polynomial_of(_x_hat(psi), coeffs, Poly.one(psi.cap))


def poisson_operator_check(model: PoissonModel) -> bool:
    """The operator-level solution applied to 1 reproduces every component."""
    return all(poisson_operator_solution(model, m) == p for m, p in enumerate(model.components))

