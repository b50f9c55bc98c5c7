"""ψ-exponential, ψ-hyperbolic and ψ-trigonometric coefficient streams.

The m-th order hyperbolic components are the mod-m sieves of expψ. The
standard average (1/m) Σ_k ω^(-kj) expψ{ω^k α} over the m-th roots of
unity ω keeps exactly the coefficients whose index is j mod m, since
Σ_k ω^(k(n-j)) is m when n ≡ j and 0 otherwise; no complex numbers are
needed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import List, Sequence, Tuple

import numpy as np

from app.core.exact_core import ONE, ZERO, as_scalar
from app.core.psi_sequence import PsiSequence, make_preset
from app.helpers.errors import BadResidue, BadSample, IndexOutOfCap, MissingParameter

logger = logging.getLogger(__name__)

TRIG_KINDS = ("cos", "sin", "cosh", "sinh")


@dataclass(frozen=True)
class PsiSeries:
    psi: PsiSequence
    coeffs: Tuple[Fraction, ...]
    kind: str

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "PsiSeries") -> "PsiSeries":
        order = min(self.order, other.order)
        return PsiSeries(self.psi, tuple(a + b for a, b in zip(self.coeffs[: order + 1], other.coeffs)), "custom")

    def __mul__(self, other: "PsiSeries") -> "PsiSeries":
        order = min(self.order, other.order)
        out = [ZERO] * (order + 1)
        for i in range(order + 1):
            for j in range(order + 1 - i):
                out[i + j] += self.coeffs[i] * other.coeffs[j]
        return PsiSeries(self.psi, tuple(out), "custom")


def _check_order(psi: PsiSequence, order: int) -> None:
    if not 0 <= order <= psi.cap:
        raise IndexOutOfCap(f"series order {order} outside 0..{psi.cap}")


def exp_psi(psi: PsiSequence, order: int) -> PsiSeries:
    """Coefficients 1/kψ!."""
    _check_order(psi, order)
    return PsiSeries(psi, tuple(psi.psi_vals[: order + 1]), "exp_psi")


def hyperbolic_component(psi: PsiSequence, m: int, j: int, order: int) -> PsiSeries:
    """h_j of order m: the coefficients of expψ at indices ≡ j (mod m)."""
    if m < 2 or not 0 <= j < m:
        raise BadResidue(f"need m >= 2 and 0 <= j < m, got m={m}, j={j}")
    base = exp_psi(psi, order).coeffs
    coeffs = tuple(c if k % m == j else ZERO for k, c in enumerate(base))
    return PsiSeries(psi, coeffs, f"h_{j}({m})")


def trig_psi(psi: PsiSequence, kind: str, order: int) -> PsiSeries:
    """cosψ, sinψ and their hyperbolic versions as signed parity sieves of expψ."""
    if kind not in TRIG_KINDS:
        raise MissingParameter(f"unknown kind {kind!r}; choose one of {', '.join(TRIG_KINDS)}")
    base = exp_psi(psi, order).coeffs
    parity = 0 if kind in ("cos", "cosh") else 1
    alternating = kind in ("cos", "sin")
    coeffs = []
    for k, c in enumerate(base):
        if k % 2 != parity:
            coeffs.append(ZERO)
        elif alternating and (k // 2) % 2 == 1:
            coeffs.append(-c)
        else:
            coeffs.append(c)
    return PsiSeries(psi, tuple(coeffs), f"{kind}_psi")


def sieve_partition_check(psi: PsiSequence, m: int, order: int) -> bool:
    """Σ_j h_j(m) == expψ."""
    total = [ZERO] * (order + 1)
    for j in range(m):
        for k, c in enumerate(hyperbolic_component(psi, m, j, order).coeffs):
            total[k] += c
    return tuple(total) == exp_psi(psi, order).coeffs


def pythagorean_defect(psi: PsiSequence, order: int) -> List[Fraction]:
    """Coefficients of cosψ² + sinψ² - 1, truncated at ``order``."""
    cos = trig_psi(psi, "cos", order)
    sin = trig_psi(psi, "sin", order)
    total = list((cos * cos + sin * sin).coeffs)
    total[0] -= ONE
    return total


@dataclass(frozen=True)
class LimitReport:
    samples: Tuple[Fraction, ...]
    # rows[k][i] = 1/k_q! at samples[i]
    rows: Tuple[Tuple[Fraction, ...], ...]
    toward_exp: bool
    toward_geometric: bool


def limit_deformation_check(q_samples: Sequence, order: int) -> LimitReport:
    """1/k_q! moves toward 1/k! as q -> 1 and toward 1 as q -> 0 along the samples."""
    samples = sorted(as_scalar(q) for q in q_samples)
    for q in samples:
        if not 0 < q < 1:
            raise BadSample(f"q = {q} is not in (0, 1)")
    inverse_factorials = [make_preset("q-jackson", q=q, cap=max(order, 1)).psi_vals for q in samples]
    rows = []
    toward_exp = True
    toward_geometric = True
    for k in range(order + 1):
        values = tuple(table[k] for table in inverse_factorials)
        rows.append(values)
        to_exp = [abs(v - Fraction(1, factorial(k))) for v in values]
        to_one = [abs(v - ONE) for v in values]
        # samples ascend in q: distance to 1/k! must shrink, distance to 1 must grow
        toward_exp &= all(a >= b for a, b in zip(to_exp, to_exp[1:]))
        toward_geometric &= all(a <= b for a, b in zip(to_one, to_one[1:]))
    if not (toward_exp and toward_geometric):
        logger.warning("limit deformation is not monotone along samples %s", [str(q) for q in samples])
    return LimitReport(tuple(samples), tuple(rows), toward_exp, toward_geometric)


def exp_addition_tables(psi: PsiSequence, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Coefficient tables [i, j] of x^i y^j for Σ (x +ψ y)^n/nψ! and expψ(x)·expψ(y)."""
    _check_order(psi, order)
    lhs = np.full((order + 1, order + 1), ZERO, dtype=object)
    for n in range(order + 1):
        for k in range(n + 1):
            lhs[k, n - k] += psi.binomial(n, k) * psi.psi_vals[n]
    e = np.array(psi.psi_vals[: order + 1], dtype=object)
    rhs = np.outer(e, e)
    mask = np.add.outer(np.arange(order + 1), np.arange(order + 1)) > order
    rhs[mask] = ZERO
    return lhs, rhs


def exp_addition_check(psi: PsiSequence, order: int) -> bool:
    """expψ(x +ψ y) == expψ(x) expψ(y) on total degree <= order."""
    lhs, rhs = exp_addition_tables(psi, order)
    return bool(np.all(lhs == rhs))
