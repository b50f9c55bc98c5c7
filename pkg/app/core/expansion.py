"""Unique expansion of a linear operator in powers of a degree-lowering Q.

T = Σ q_n(X) Q^n where X is multiplication by x (``x_hat`` mode) or the
dual operator x̂_Q (``x_hat_Q`` mode). The coefficients come from a
triangular recursion over the scaled basic sequence b_n = p_n/nψ! of Q.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from app.core.delta_umbral import (
    BasicSequence,
    check_degree_lowering,
    eigen_series,
    monomial_basic,
    normal_basic_general,
    x_hat_Q,
)
from app.core.exact_core import (
    BiSeries,
    OpMatrix,
    Poly,
    apply_checked,
    apply_polynomial_of,
    coordinates,
)
from app.core.OperatorProvider import make_named
from app.core.psi_sequence import PsiSequence
from app.helpers.errors import (
    BasisMismatch,
    CapExceeded,
    GuardBandExceeded,
    IdentityFailure,
    MissingParameter,
    TruncationLoss,
)

logger = logging.getLogger(__name__)

BASIS_MODES = ("x_hat", "x_hat_Q")


@dataclass(frozen=True, eq=False)
class OpExpansion:
    q_polys: Tuple[Poly, ...]
    base_Q: OpMatrix
    basis_mode: str
    order: int
    basic: BasicSequence = field(repr=False)
    operator: OpMatrix = field(repr=False)
    verified: bool = False

    @property
    def psi(self) -> PsiSequence:
        return self.basic.psi

    def same_coefficients(self, other: "OpExpansion") -> bool:
        return len(self.q_polys) == len(other.q_polys) and all(
            a == b for a, b in zip(self.q_polys, other.q_polys)
        )


def _times(q: Poly, v: Poly) -> Poly:
    try:
        return q * v
    except TruncationLoss as e:
        raise CapExceeded(f"coefficient product leaves the truncated space: {e}") from e


def _raising_powers(XQ: OpMatrix) -> List[Poly]:
    """X_Q^i 1 for i = 0..cap; the i-th has degree i."""
    powers = [Poly.one(XQ.cap)]
    for _ in range(XQ.cap):
        powers.append(apply_checked(XQ, powers[-1]))
    return powers


def _apply_coefficient(mode: str, q: Poly, v: Poly, XQ: Optional[OpMatrix]) -> Poly:
    """q(X) v."""
    if mode == "x_hat":
        return _times(q, v)
    return apply_polynomial_of(XQ, q.coeffs[: q.degree() + 1], v)


def expand_in_Q(
    T: OpMatrix,
    Q: OpMatrix,
    psi: PsiSequence,
    M: int,
    basis_mode: str = "x_hat",
    basic: Optional[BasicSequence] = None,
) -> OpExpansion:
    check_degree_lowering(Q)
    cap = Q.cap
    if M > cap:
        raise CapExceeded(f"M = {M} exceeds cap {cap}")
    if basis_mode not in BASIS_MODES:
        raise MissingParameter(f"unknown basis mode {basis_mode!r}; choose one of {', '.join(BASIS_MODES)}")
    if basic is None:
        if basis_mode == "x_hat_Q":
            raise MissingParameter("x_hat_Q mode needs the basic sequence of Q")
        basic = normal_basic_general(Q, psi, M)
    elif basic.M < M:
        raise BasisMismatch(f"basic sequence stops at {basic.M} < M = {M}")

    XQ = x_hat_Q(Q, basic) if basis_mode == "x_hat_Q" else None
    powers = _raising_powers(XQ) if XQ is not None else None
    b = [basic.scaled(n) for n in range(M + 1)]

    q_polys: List[Poly] = []
    for m in range(M + 1):
        r = apply_checked(T, b[m])
        for n in range(m):
            r = r - _apply_coefficient(basis_mode, q_polys[n], b[m - n], XQ)
        if basis_mode == "x_hat":
            q_polys.append(r)
        else:
            q_polys.append(Poly(tuple(coordinates(r, powers)), cap))

    expansion = OpExpansion(tuple(q_polys), Q, basis_mode, M, basic, T)
    verified = reconstruct(expansion).agrees_with(T, M)
    if not verified:
        logger.warning("reconstruction of the %s expansion differs from T on degrees <= %d", basis_mode, M)
    return OpExpansion(tuple(q_polys), Q, basis_mode, M, basic, T, verified)


def reconstruct(expansion: OpExpansion) -> OpMatrix:
    """Σ q_n(X) Q^n on degrees <= order; higher columns are zero."""
    Q = expansion.base_Q
    cap = Q.cap
    XQ = x_hat_Q(Q, expansion.basic) if expansion.basis_mode == "x_hat_Q" else None
    columns = []
    for j in range(cap + 1):
        col = Poly.zero(cap)
        if j <= expansion.order:
            v = Poly.monomial(j, cap)
            for q in expansion.q_polys:
                if v.is_zero():
                    break
                if not q.is_zero():
                    col = col + _apply_coefficient(expansion.basis_mode, q, v, XQ)
                v = Q.apply(v)
        columns.append(col)
    return OpMatrix.from_columns(columns, valid_degree=expansion.order)


def indicator(expansion: OpExpansion, lambda_cap: int) -> BiSeries:
    """P(x;λ) = Σ q_n(x) λ^n, cross-checked as Φ^(-1) (TΦ) in x_hat mode."""
    if lambda_cap > expansion.order:
        raise GuardBandExceeded(
            f"lambda order {lambda_cap} exceeds expansion order {expansion.order}",
            requested=lambda_cap,
            allowed=expansion.order,
        )
    cap = expansion.base_Q.cap
    P = BiSeries.from_terms(expansion.q_polys, lambda_cap, cap)
    if expansion.basis_mode != "x_hat":
        logger.debug("conjugation identity is not applicable in %s mode", expansion.basis_mode)
        return P
    phi = eigen_series(expansion.basic, lambda_cap)
    conjugated = phi.apply(expansion.operator).divide(phi)
    if not conjugated.equals(P):
        raise IdentityFailure("indicator differs from the conjugation of T by the eigen-series")
    return P


def psi_exponential_indicator_check(
    T: OpMatrix,
    psi: PsiSequence,
    lambda_cap: int,
    q_polys: Optional[List[Poly]] = None,
) -> bool:
    """[expψ{λx}]^(-1) T expψ{λx} == Σ q_n(x) λ^n for T = Σ q_n(x̂) ∂ψ^n."""
    basic = monomial_basic(psi, lambda_cap)
    d_psi = make_named("d_psi", psi).matrix
    try:
        expansion = expand_in_Q(T, d_psi, psi, lambda_cap, basic=basic)
        P = indicator(expansion, lambda_cap)
    except IdentityFailure as e:
        logger.warning("psi-exponential indicator check failed: %s", e)
        return False
    if not expansion.verified:
        return False
    if q_polys is not None:
        expected = BiSeries.from_terms(q_polys, lambda_cap, psi.cap)
        return P.equals(expected)
    return True


def operator_from_coefficients(q_polys: List[Poly], Q: OpMatrix) -> OpMatrix:
    """Σ q_n(x̂) Q^n as a full matrix."""
    cap = Q.cap
    result = OpMatrix.zero(cap)
    power = OpMatrix.identity(cap)
    for q in q_polys:
        if not q.is_zero():
            result = result + (OpMatrix.multiplication(q) @ power)
        power = Q @ power
    return result
