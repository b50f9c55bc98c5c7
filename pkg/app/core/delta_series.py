"""Formal series in ∂ψ (the shift-invariant algebra) and their matrix realization.

A ``DeltaSeries`` stores c_0..c_K for Σ c_k ∂ψ^k. Coefficients past K are
read as zero, which is exact on the truncated space as soon as K >= cap
because ∂ψ^k vanishes there for k > cap.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from app.core.exact_core import ONE, ZERO, OpMatrix, Poly, as_scalar
from app.core.psi_sequence import PsiSequence
from app.helpers.errors import (
    MissingParameter,
    NotComposable,
    NotInvertible,
    PsiMismatch,
)

logger = logging.getLogger(__name__)

SERIES_KINDS = ("add", "mul", "reciprocal", "power", "formal_derivative", "compose", "comp_inverse")

NAMED_SERIES = ("d_psi", "d_psi_plus_square", "forward-difference", "identity-series")


@dataclass(frozen=True, eq=False)
class DeltaSeries:
    psi: PsiSequence
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(as_scalar(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs if coeffs else (ZERO,))

    @classmethod
    def from_coeffs(cls, psi: PsiSequence, coeffs: Sequence, order: Optional[int] = None) -> "DeltaSeries":
        coeffs = [as_scalar(c) for c in coeffs]
        if order is not None:
            coeffs = (coeffs + [ZERO] * (order + 1))[: order + 1]
        return cls(psi, tuple(coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def is_delta(self) -> bool:
        """c_0 == 0 and c_1 != 0."""
        return self.coeff(0) == 0 and self.coeff(1) != 0

    def trimmed(self) -> Tuple[Fraction, ...]:
        coeffs = list(self.coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        return tuple(coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DeltaSeries):
            return NotImplemented
        return self.psi.same_sequence(other.psi) and self.trimmed() == other.trimmed()

    def __hash__(self):
        return hash((self.psi.n_psi, self.trimmed()))

    def __add__(self, other: "DeltaSeries") -> "DeltaSeries":
        return series_arith(self, other, "add")

    def __mul__(self, other: "DeltaSeries") -> "DeltaSeries":
        return series_arith(self, other, "mul")

    def __repr__(self) -> str:
        return f"DeltaSeries({[str(c) for c in self.trimmed()]}, psi={self.psi.label})"


def _same_psi(a: DeltaSeries, b: DeltaSeries) -> None:
    if not a.psi.same_sequence(b.psi):
        raise PsiMismatch(f"series over different psi sequences ({a.psi.label} vs {b.psi.label})")


def _mul(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> list:
    out = [ZERO] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x == 0:
            continue
        for j, y in enumerate(b[: order + 1 - i]):
            out[i + j] += x * y
    return out


def _reciprocal(a: Sequence[Fraction], order: int) -> list:
    head = a[0] if a else ZERO
    if head == 0:
        raise NotInvertible("constant term is zero")
    out = [ONE / head]
    for n in range(1, order + 1):
        acc = sum((a[k] * out[n - k] for k in range(1, min(n, len(a) - 1) + 1)), ZERO)
        out.append(-acc / head)
    return out


def _compose(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> list:
    """a(b) by Horner; b must have zero constant term."""
    out = [ZERO] * (order + 1)
    for c in reversed(list(a[: order + 1])):
        out = _mul(out, b, order)
        out[0] += c
    return out


def _pad(a: DeltaSeries, order: int) -> list:
    return [a.coeff(k) for k in range(order + 1)]


def series_arith(
    a: DeltaSeries,
    b=None,
    kind: str = "add",
    order: Optional[int] = None,
) -> DeltaSeries:
    """Truncated power-series algebra in the symbol ∂ψ.

    ``b`` is a DeltaSeries for add/mul/compose, an integer exponent for
    ``power`` and ignored by the unary kinds. ``order`` defaults to the
    natural order of the result, and to the psi cap for the kinds that
    produce infinite series.
    """
    cap = a.psi.cap
    if kind in ("add", "mul", "compose"):
        if not isinstance(b, DeltaSeries):
            raise MissingParameter(f"{kind} needs a second series")
        _same_psi(a, b)

    if kind == "add":
        order = max(a.order, b.order) if order is None else order
        return DeltaSeries(a.psi, tuple(x + y for x, y in zip(_pad(a, order), _pad(b, order))))
    if kind == "mul":
        order = min(a.order + b.order, cap) if order is None else order
        return DeltaSeries(a.psi, tuple(_mul(_pad(a, order), _pad(b, order), order)))
    if kind == "reciprocal":
        order = cap if order is None else order
        return DeltaSeries(a.psi, tuple(_reciprocal(_pad(a, order), order)))
    if kind == "power":
        n = int(b)
        order = cap if order is None else order
        base = _pad(a, order)
        if n < 0:
            base = _reciprocal(base, order)
            n = -n
        out = [ONE] + [ZERO] * order
        for _ in range(n):
            out = _mul(out, base, order)
        return DeltaSeries(a.psi, tuple(out))
    if kind == "formal_derivative":
        order = max(a.order - 1, 0) if order is None else order
        return DeltaSeries(a.psi, tuple(k * a.coeff(k) for k in range(1, order + 2)))
    if kind == "compose":
        if b.coeff(0) != 0:
            raise NotComposable("inner series must have zero constant term")
        order = cap if order is None else order
        return DeltaSeries(a.psi, tuple(_compose(_pad(a, order), _pad(b, order), order)))
    if kind == "comp_inverse":
        if a.coeff(0) != 0:
            raise NotComposable("series with nonzero constant term has no compositional inverse")
        if a.coeff(1) == 0:
            raise NotInvertible("linear coefficient is zero")
        order = cap if order is None else order
        target = _pad(a, order)
        g = [ZERO, ONE / target[1]] + [ZERO] * (order - 1)
        for n in range(2, order + 1):
            # coefficient n of a(g) with g_n still zero, then solve for g_n
            residue = _compose(target, g, n)[n]
            g[n] = -residue / target[1]
        return DeltaSeries(a.psi, tuple(g[: order + 1]))
    raise MissingParameter(f"unknown series operation {kind!r}; choose one of {', '.join(SERIES_KINDS)}")


def quotient_by_d_psi(Q: DeltaSeries) -> DeltaSeries:
    """S with Q = ∂ψ S."""
    return DeltaSeries(Q.psi, Q.coeffs[1:] or (ZERO,))


def exp_series(psi: PsiSequence, y) -> DeltaSeries:
    """E^y(∂ψ) = Σ y^k ∂ψ^k / kψ!."""
    y = as_scalar(y)
    return DeltaSeries(psi, tuple(y**k / psi.factorial(k) for k in range(psi.cap + 1)))


def series_to_matrix(Q: DeltaSeries, cap: Optional[int] = None) -> OpMatrix:
    """Σ c_k ∂ψ^k as an operator matrix, column by column.

    ∂ψ^k x^n = nψ(n-1)ψ...(n-k+1)ψ x^(n-k).
    """
    cap = Q.psi.cap if cap is None else cap
    psi = Q.psi if cap == Q.psi.cap else Q.psi.with_cap(cap)
    columns = []
    for n in range(cap + 1):
        coeffs = [ZERO] * (cap + 1)
        for k in range(min(n, Q.order) + 1):
            if Q.coeffs[k] != 0:
                coeffs[n - k] = Q.coeffs[k] * psi.falling(n, k)
        columns.append(Poly(tuple(coeffs), cap))
    return OpMatrix.from_columns(columns)


def named_series(name: str, psi: PsiSequence) -> DeltaSeries:
    logger.debug("named series %s for %s", name, psi.label)
    if name == "d_psi":
        return DeltaSeries(psi, (ZERO, ONE))
    if name == "d_psi_plus_square":
        return DeltaSeries(psi, (ZERO, ONE, ONE))
    if name == "forward-difference":
        # Δψ = E^1(∂ψ) - id
        return DeltaSeries(psi, (ZERO,) + exp_series(psi, 1).coeffs[1:])
    if name == "identity-series":
        return DeltaSeries(psi, (ONE,))
    raise MissingParameter(f"unknown named series {name!r}; choose one of {', '.join(NAMED_SERIES)}")
