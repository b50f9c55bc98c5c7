"""Operator identities of the ψ-calculus checked on the truncated space.

Every check compares exact matrices on a declared degree range (the guard
band) and returns a boolean; guard violations raise instead of returning
False.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, List, Optional, Sequence

from app.core.delta_series import DeltaSeries, exp_series, series_arith, series_to_matrix
from app.core.exact_core import ONE, OpMatrix, Poly, apply_checked, as_scalar, op_commutator, op_compose
from app.core.OperatorProvider import make_named
from app.core.psi_sequence import PsiSequence, make_preset
from app.helpers.errors import (
    BadSample,
    CapExceeded,
    CapMismatch,
    GuardBandExceeded,
    IdentityFailure,
    TruncationLoss,
)

logger = logging.getLogger(__name__)


def _psi_at(psi: PsiSequence, cap: int) -> PsiSequence:
    return psi if psi.cap == cap else psi.with_cap(cap)


def pincherle(T: OpMatrix, psi: PsiSequence) -> OpMatrix:
    """[T, x̂ψ]."""
    if psi.cap != T.cap:
        raise CapMismatch(f"operator cap {T.cap} differs from psi cap {psi.cap}")
    return op_commutator(T, make_named("x_hat_psi", psi, cap=T.cap).matrix)


def shift_invariant_by_coefficients(T: OpMatrix, psi: PsiSequence) -> bool:
    """[T, ∂ψ] == 0 and T does not raise degree."""
    d_psi = make_named("d_psi", _psi_at(psi, T.cap), cap=T.cap).matrix
    comm = op_commutator(T, d_psi)
    return comm.is_zero_on(comm.valid_degree) and T.shift <= 0


def is_shift_invariant(T: OpMatrix, psi: PsiSequence, samples: Sequence) -> bool:
    """Sampled test [T, E^α(∂ψ)] == 0 for every α in ``samples``.

    The verdict must match the coefficient-level criterion; a disagreement
    raises IdentityFailure.
    """
    samples = [as_scalar(a) for a in samples]
    if not samples:
        raise BadSample("shift-invariance needs at least one alpha sample")
    if psi.cap != T.cap:
        raise CapMismatch(f"operator cap {T.cap} differs from psi cap {psi.cap}")
    sampled = True
    for alpha in samples:
        comm = op_commutator(T, series_to_matrix(exp_series(psi, alpha)))
        if not comm.is_zero_on(comm.valid_degree):
            sampled = False
            break
    by_coeffs = shift_invariant_by_coefficients(T, psi)
    if sampled != by_coeffs:
        raise IdentityFailure(
            f"shift-invariance verdicts disagree (sampled={sampled}, coefficients={by_coeffs}) "
            f"for alphas {', '.join(str(a) for a in samples)}"
        )
    return sampled


def ghw_leibniz_check(psi: PsiSequence, n: int, m: int) -> bool:
    """∂ψ^n x̂ψ^m == Σ_k C(n,k) C(m,k) k! x̂ψ^(m-k) ∂ψ^(n-k)."""
    cap = psi.cap
    if 2 * (n + m) > cap:
        raise GuardBandExceeded(f"n + m = {n + m} exceeds cap/2 = {cap // 2}", requested=n + m, allowed=cap // 2)
    d = make_named("d_psi", psi).matrix
    x = make_named("x_hat_psi", psi).matrix
    lhs = op_compose(d.power(n), x.power(m))
    rhs = OpMatrix.zero(cap)
    for k in range(min(n, m) + 1):
        term = op_compose(x.power(m - k), d.power(n - k))
        rhs = rhs + term.scale(comb(n, k) * comb(m, k) * factorial(k))
    return lhs.agrees_with(rhs, cap - m)


def ghw_exponential_check(psi: PsiSequence, t, a, order: int) -> bool:
    """exp{t∂ψ} exp{a x̂ψ} == exp{at} exp{a x̂ψ} exp{t∂ψ}.

    Each exponential is cut at ``order`` in its own variable: terms a^i t^j
    with i, j <= order are kept on both sides, and the comparison runs on
    degrees <= cap - order.
    """
    cap = psi.cap
    if 2 * order > cap:
        raise GuardBandExceeded(f"2K = {2 * order} exceeds cap {cap}", requested=order, allowed=cap // 2)
    t, a = as_scalar(t), as_scalar(a)
    d = make_named("d_psi", psi).matrix
    x = make_named("x_hat_psi", psi).matrix
    d_pow = [d.power(j) for j in range(order + 1)]
    x_pow = [x.power(i) for i in range(order + 1)]

    lhs = OpMatrix.zero(cap)
    for i in range(order + 1):
        for j in range(order + 1):
            c = a**i * t**j / (factorial(i) * factorial(j))
            lhs = lhs + op_compose(d_pow[j], x_pow[i]).scale(c)

    rhs = OpMatrix.zero(cap)
    for l in range(order + 1):
        for i in range(order + 1 - l):
            for j in range(order + 1 - l):
                c = (a * t) ** l * a**i * t**j / (factorial(l) * factorial(i) * factorial(j))
                rhs = rhs + op_compose(x_pow[i], d_pow[j]).scale(c)
    return lhs.agrees_with(rhs, cap - order)


def q_difference_quotient(q, f: Poly) -> Poly:
    """(f(x) - f(qx)) / ((1 - q) x), the literal Jackson derivative."""
    q = as_scalar(q)
    return (f - f.dilate(q)).divided_difference().scale(ONE / (ONE - q))


def jackson_factorization_check(q, cap: int = 16) -> bool:
    """∂q == ((1 - qQ̂)/(1 - q)) ∂0 as matrices."""
    q = as_scalar(q)
    dilation = make_named("dilation", q=q, cap=cap).matrix
    factor = (OpMatrix.identity(cap) - dilation.scale(q)).scale(ONE / (ONE - q))
    rhs = op_compose(factor, make_named("d_zero", cap=cap).matrix)
    return make_named("d_q", q=q, cap=cap).matrix.agrees_with(rhs, cap)


def leibniz_product_check(psi: PsiSequence, f: Poly, g: Poly) -> bool:
    """Product rules for ∂ψ = n̂ψ∂0, and for ∂q when ψ is a Jackson preset."""
    if f.degree() + g.degree() > psi.cap:
        raise TruncationLoss(
            f"deg f + deg g = {f.degree() + g.degree()} exceeds cap {psi.cap}",
            degree=f.degree() + g.degree(),
        )
    fg = f * g
    d_psi = make_named("d_psi", psi).matrix
    n_hat = make_named("n_hat_psi", psi).matrix
    d_zero = make_named("d_zero", cap=psi.cap).matrix

    inner = d_zero.apply(f) * g + d_zero.apply(g).scale(f(0))
    ok = d_psi.apply(fg) == apply_checked(n_hat, inner)

    if psi.label == "q-jackson":
        q = psi.q
        d_q = make_named("d_q", q=q, cap=psi.cap).matrix
        lhs = d_q.apply(fg)
        rhs = d_q.apply(f) * g + f.dilate(q) * d_q.apply(g)
        ok = ok and lhs == rhs and lhs == q_difference_quotient(q, fg)
    return ok


def d_zero_series_check(m: int, cap: int = 16) -> bool:
    """Σ_{n=1..m} (-1)^(n+1) x^(n-1)/n! D^n applied to x^m gives ∂0 x^m."""
    if m > cap:
        raise CapExceeded(f"degree {m} exceeds cap {cap}")
    p = Poly.monomial(m, cap)
    acc = Poly.zero(cap)
    derivative = p
    for n in range(1, m + 1):
        derivative = derivative.derivative()
        term = Poly.monomial(n - 1, cap, Fraction((-1) ** (n + 1), factorial(n))) * derivative
        acc = acc + term
    expected = Poly.monomial(m - 1, cap) if m > 0 else Poly.zero(cap)
    return acc == expected


def bridge_d(k: int) -> int:
    """d_k = (-1)^(k-1) (k-1)!, the coefficients of D in powers of Δ."""
    return (-1) ** (k - 1) * factorial(k - 1)


def bridge_delta(n: int, cap: int = 16) -> Fraction:
    """δ_n = [Δ x^n] at x = 0."""
    classical = make_preset("classical", cap=cap)
    forward = series_to_matrix(exp_series(classical, 1)) - OpMatrix.identity(cap)
    return forward.apply(Poly.monomial(n, cap))(0)


def classical_bridge_check(order: int, cap: int = 16) -> bool:
    """D = Σ d_k/k! Δ^k and Δ = Σ δ_n/n! D^n, compared on degrees <= order."""
    if order > cap:
        raise GuardBandExceeded(f"K = {order} exceeds cap {cap}", requested=order, allowed=cap)
    classical = make_preset("classical", cap=cap)
    forward = series_to_matrix(exp_series(classical, 1)) - OpMatrix.identity(cap)
    d = make_named("d_classical", cap=cap).matrix

    d_from_forward = OpMatrix.zero(cap)
    forward_from_d = OpMatrix.zero(cap)
    for k in range(1, order + 1):
        d_from_forward = d_from_forward + forward.power(k).scale(Fraction(bridge_d(k), factorial(k)))
        delta_k = bridge_delta(k, cap)
        if delta_k != 1:
            logger.warning("delta_%d = %s, expected 1", k, delta_k)
            return False
        forward_from_d = forward_from_d + d.power(k).scale(Fraction(delta_k) / factorial(k))
    return d.agrees_with(d_from_forward, order) and forward.agrees_with(forward_from_d, order)


def number_operator_check(psi: PsiSequence) -> bool:
    """x̂ψ∂ψ == x̂D == N̂, where N̂ x^n = n x^n."""
    cap = psi.cap
    lhs = op_compose(make_named("x_hat_psi", psi).matrix, make_named("d_psi", psi).matrix)
    classical = op_compose(make_named("x_hat", cap=cap).matrix, make_named("d_classical", cap=cap).matrix)
    number = OpMatrix.diagonal(range(cap + 1))
    return lhs.agrees_with(classical, cap) and lhs.agrees_with(number, cap)


def heisenberg_check(psi: PsiSequence) -> bool:
    """[∂ψ, x̂ψ] == id on degrees <= cap - 1."""
    comm = op_commutator(make_named("d_psi", psi).matrix, make_named("x_hat_psi", psi).matrix)
    return comm.agrees_with(OpMatrix.identity(psi.cap), psi.cap - 1)


def psi_derivatives_commute(psi: PsiSequence, phi: PsiSequence) -> bool:
    """[∂ψ, ∂φ] == 0 on the truncated space."""
    cap = min(psi.cap, phi.cap)
    comm = op_commutator(
        make_named("d_psi", _psi_at(psi, cap), cap=cap).matrix,
        make_named("d_psi", _psi_at(phi, cap), cap=cap).matrix,
    )
    return comm.is_zero_on(cap)


def commutant_report(sequences: Iterable[PsiSequence]) -> List[dict]:
    """Pairwise [∂ψ, ∂φ] verdicts, flagging commuting pairs of distinct sequences."""
    sequences = list(sequences)
    rows = []
    for i, psi in enumerate(sequences):
        for phi in sequences[i:]:
            commute = psi_derivatives_commute(psi, phi)
            equal = psi.same_sequence(phi)
            if commute and not equal:
                logger.info("%s and %s commute without being equal", psi.label, phi.label)
            rows.append({"psi": psi.label, "phi": phi.label, "commute": commute, "equal": equal})
    return rows


def proportional_sequence(psi: PsiSequence, factor) -> PsiSequence:
    """φ with nφ = factor · nψ."""
    factor = as_scalar(factor)
    if factor == 0:
        raise BadSample("proportionality factor must be nonzero")
    return PsiSequence.from_n_psi(
        [factor * v for v in psi.n_psi], label=f"{factor}*{psi.label}"
    )


def dilation_product_check(q, r, cap: int = 16) -> bool:
    """dilation(q) ∘ dilation(r) == dilation(qr)."""
    q, r = as_scalar(q), as_scalar(r)
    lhs = op_compose(make_named("dilation", q=q, cap=cap).matrix, make_named("dilation", q=r, cap=cap).matrix)
    return lhs.agrees_with(make_named("dilation", q=q * r, cap=cap).matrix, cap)


def pincherle_series_check(psi: PsiSequence, coeffs: Sequence, order: Optional[int] = None) -> bool:
    """pincherle of Σ c_k ∂ψ^k equals the matrix of its formal derivative."""
    series = DeltaSeries.from_coeffs(psi, coeffs, order)
    T = series_to_matrix(series)
    lhs = pincherle(T, psi)
    rhs = series_to_matrix(series_arith(series, kind="formal_derivative"))
    return lhs.agrees_with(rhs, psi.cap - 1)

