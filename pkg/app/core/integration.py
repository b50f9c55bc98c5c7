"""Right inverses of ∂ψ, ∂q and ∂R on the truncated space."""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import List

from app.core.exact_core import ONE, ZERO, OpMatrix, Poly, as_scalar
from app.core.OperatorProvider import make_named
from app.core.psi_sequence import PsiSequence, RationalFunction
from app.helpers.errors import BadSample, CapExceeded, RootOfUnity, ZeroDenominator

logger = logging.getLogger(__name__)


def _raise_degree(p: Poly, weight) -> Poly:
    """x^n -> weight(n) x^(n+1)."""
    if p.degree() > p.cap - 1:
        raise CapExceeded(f"integrating degree {p.degree()} leaves cap {p.cap}")
    coeffs = [ZERO] * (p.cap + 1)
    for n in range(p.degree() + 1):
        if p[n] != 0:
            coeffs[n + 1] = p[n] * weight(n)
    return Poly(tuple(coeffs), p.cap)


def psi_integral(psi: PsiSequence, p: Poly) -> Poly:
    """x^n -> x^(n+1)/(n+1)ψ."""
    return _raise_degree(p, lambda n: ONE / psi.n_psi[n + 1])


def _jackson_weight(q: Fraction, n: int) -> Fraction:
    if q ** (n + 1) == 1:
        raise RootOfUnity(f"q^{n + 1} = 1 for q = {q}")
    return (ONE - q) / (ONE - q ** (n + 1))


def q_integral(q, p: Poly) -> Poly:
    """x^n -> (1-q)/(1-q^(n+1)) x^(n+1), the closed form of the Jackson sum."""
    q = as_scalar(q)
    return _raise_degree(p, lambda n: _jackson_weight(q, n))


def q_integral_operator(q, cap: int = 16) -> OpMatrix:
    """(1-q) x̂ (1 - qQ̂)^(-1) as a matrix, built from the dilation operator."""
    q = as_scalar(q)
    dilation = make_named("dilation", q=q, cap=cap).matrix
    denominators = (OpMatrix.identity(cap) - dilation.scale(q)).entries.diagonal()
    if any(d == 0 for d in denominators):
        raise RootOfUnity(f"1 - q^(n+1) vanishes for q = {q}")
    inverse = OpMatrix.diagonal([ONE / d for d in denominators])
    x_hat = make_named("x_hat", cap=cap).matrix
    return (x_hat @ inverse).scale(ONE - q)


def jackson_partial_sums(q, p: Poly, terms: int) -> List[Poly]:
    """Partial sums of (1-q) x Σ_k p(q^k x) q^k for k < 1..terms, |q| < 1."""
    q = as_scalar(q)
    if not abs(q) < 1:
        raise BadSample(f"the Jackson sum needs |q| < 1, got {q}")
    if p.degree() > p.cap - 1:
        raise CapExceeded(f"integrating degree {p.degree()} leaves cap {p.cap}")
    sums = []
    acc = Poly.zero(p.cap)
    for k in range(terms):
        acc = acc + p.dilate(q**k).scale(q**k)
        sums.append(acc.times_x().scale(ONE - q))
    return sums


def r_integral(r: RationalFunction, q, p: Poly) -> Poly:
    """x^n -> x^(n+1)/R(q^(n+1))."""
    q = as_scalar(q)

    def weight(n: int) -> Fraction:
        value = r(q ** (n + 1))
        if value == 0:
            raise ZeroDenominator(f"R(q^{n + 1}) = 0")
        return ONE / value

    return _raise_degree(p, weight)


def right_inverse_check(derivative: OpMatrix, integral, cap: int) -> bool:
    """∂ ∘ ∫ == id on every monomial of degree <= cap - 1."""
    return all(
        derivative.apply(integral(Poly.monomial(n, cap))) == Poly.monomial(n, cap) for n in range(cap)
    )


def left_inverse_check(derivative: OpMatrix, integral, cap: int) -> bool:
    """∫ ∘ ∂ == id on the polynomials with p(0) = 0."""
    return all(
        integral(derivative.apply(Poly.monomial(n, cap))) == Poly.monomial(n, cap)
        for n in range(1, cap + 1)
    )
