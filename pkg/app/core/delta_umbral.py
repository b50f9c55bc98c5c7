"""Delta operators, their basic polynomial sequences and the umbral identities.

Basic sequences are produced by four independent constructions for a delta
series Q(∂ψ), or by a triangular solve for an arbitrary degree-lowering Q.
Every produced sequence is verified against its defining conditions before
it is returned.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from app.core.delta_series import (
    DeltaSeries,
    exp_series,
    quotient_by_d_psi,
    series_arith,
    series_to_matrix,
)
from app.core.exact_core import (
    ONE,
    ZERO,
    BiSeries,
    OpMatrix,
    Poly,
    apply_checked,
    as_scalar,
    coordinates,
    polynomial_in,
)
from app.core.operator_algebra import is_shift_invariant
from app.core.OperatorProvider import make_named
from app.core.psi_sequence import PsiSequence, identify_preset
from app.helpers.errors import (
    BasisMismatch,
    CapExceeded,
    IdentityFailure,
    IndexOutOfCap,
    MissingParameter,
    NotDegreeLowering,
    NotDeltaOperator,
    NotInvertible,
    NotShiftInvariant,
    ZeroSubdiagonal,
)

logger = logging.getLogger(__name__)

ROUTES = ("rodrigues", "lagrange1", "lagrange2", "lagrange3")

DEFAULT_Y_SAMPLES = (Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(2), Fraction(-3, 4))

Generator = Union[DeltaSeries, OpMatrix]


@dataclass(frozen=True)
class RecognitionResult:
    is_series: bool
    b_table: Tuple[Tuple[Fraction, ...], ...]
    scale: Fraction
    psi: Optional[PsiSequence] = None
    q_coeffs: Optional[Tuple[Fraction, ...]] = None
    failure_witness: Optional[Tuple[int, int]] = None
    predicted: Optional[Fraction] = None
    actual: Optional[Fraction] = None
    preset: Optional[str] = None

    def series(self) -> DeltaSeries:
        """Σ scale·q_k ∂ψ^k, which reproduces the recognized matrix."""
        if not self.is_series:
            raise NotDeltaOperator("operator is not a series in any psi-derivative")
        return DeltaSeries(self.psi, tuple(self.scale * c for c in self.q_coeffs))


@dataclass(frozen=True, eq=False)
class BasicSequence:
    psi: PsiSequence
    polys: Tuple[Poly, ...]
    source: str
    generator: Optional[Generator] = field(default=None, repr=False)

    @property
    def M(self) -> int:
        return len(self.polys) - 1

    @property
    def cap(self) -> int:
        return self.psi.cap

    def scaled(self, n: int) -> Poly:
        """b_n = p_n / nψ!, so that Q b_n = b_(n-1)."""
        return self.polys[n].scale(self.psi.psi_vals[n])

    def generator_matrix(self) -> OpMatrix:
        if isinstance(self.generator, DeltaSeries):
            return series_to_matrix(self.generator)
        if self.generator is None:
            raise BasisMismatch("basic sequence has no recorded generator")
        return self.generator

    def same_polys(self, other: "BasicSequence") -> bool:
        return len(self.polys) == len(other.polys) and all(a == b for a, b in zip(self.polys, other.polys))


@dataclass(frozen=True)
class ShefferPair:
    basic: BasicSequence
    inv_op: DeltaSeries
    sheffer: Tuple[Poly, ...]


def check_degree_lowering(Q: OpMatrix) -> None:
    """Q x^0 = 0 and deg Q x^n == n - 1 for 1 <= n <= cap."""
    cap = Q.cap
    for j in range(cap + 1):
        for i in range(j, cap + 1):
            if Q.entries[i, j] != 0:
                raise NotDegreeLowering(f"Q x^{j} has a term of degree {i} >= {j}")
    for j in range(1, cap + 1):
        if Q.entries[j - 1, j] == 0:
            raise ZeroSubdiagonal(f"Q x^{j} has degree < {j - 1}")


def recognize_delta(Q: OpMatrix) -> RecognitionResult:
    """Decide whether Q is a series in some ∂ψ.

    With Q x^n = Σ_k b_(n,k) x^(n-k) and Q rescaled so that b_(1,1) = 1, the
    candidate is nψ = b_(n,1); Q is a series in that ∂ψ exactly when
    b_(n,k) = (n k)ψ b_(k,k) for all 2 <= k <= n.
    """
    check_degree_lowering(Q)
    cap = Q.cap
    table = tuple(tuple(Q.entries[n - k, n] for k in range(1, n + 1)) for n in range(cap + 1))
    scale = table[1][0]
    b = [[c / scale for c in row] for row in table]

    psi = PsiSequence.from_n_psi([ZERO] + [b[n][0] for n in range(1, cap + 1)])
    for n in range(2, cap + 1):
        for k in range(2, n + 1):
            predicted = psi.binomial(n, k) * b[k][k - 1]
            actual = b[n][k - 1]
            if predicted != actual:
                logger.debug("binomial condition fails at (%d, %d): %s != %s", n, k, predicted, actual)
                return RecognitionResult(
                    is_series=False,
                    b_table=table,
                    scale=scale,
                    failure_witness=(n, k),
                    predicted=predicted * scale,
                    actual=actual * scale,
                )
    q_coeffs = (ZERO,) + tuple(b[k][k - 1] / psi.factorial(k) for k in range(1, cap + 1))
    preset = identify_preset(psi)
    return RecognitionResult(
        is_series=True,
        b_table=table,
        scale=scale,
        psi=psi,
        q_coeffs=q_coeffs,
        preset=preset,
    )


def verify_basic(basic: BasicSequence, Q: Optional[OpMatrix] = None) -> None:
    """p_0 = 1, p_n(0) = 0, deg p_n = n and Q p_n = nψ p_(n-1); raises IdentityFailure."""
    psi = basic.psi
    Q = basic.generator_matrix() if Q is None else Q
    polys = basic.polys
    if polys[0] != Poly.one(psi.cap):
        raise IdentityFailure(f"{basic.source}: p_0 != 1")
    for n in range(1, len(polys)):
        p = polys[n]
        if p(0) != 0:
            raise IdentityFailure(f"{basic.source}: p_{n}(0) = {p(0)}")
        if p.degree() != n:
            raise IdentityFailure(f"{basic.source}: deg p_{n} = {p.degree()}")
        if Q.apply(p) != polys[n - 1].scale(psi.n_psi[n]):
            raise IdentityFailure(f"{basic.source}: Q p_{n} != {n}_psi p_{n - 1}")


def _route_polys(Q: DeltaSeries, M: int, route: str) -> List[Poly]:
    psi = Q.psi
    cap = psi.cap
    S = quotient_by_d_psi(Q)
    Q_prime = series_arith(Q, kind="formal_derivative", order=cap)
    x_hat = make_named("x_hat_psi", psi).matrix

    polys = [Poly.one(cap)]
    if route == "rodrigues":
        inv_prime = series_to_matrix(series_arith(Q_prime, kind="reciprocal"))
        for n in range(1, M + 1):
            step = apply_checked(x_hat, inv_prime.apply(polys[-1]))
            polys.append(step.scale(psi.n_psi[n] / n))
        return polys

    for n in range(1, M + 1):
        s_neg = series_arith(S, -n, "power")
        if route == "lagrange1":
            factor = series_arith(Q_prime, series_arith(S, -(n + 1), "power"), "mul", order=cap)
            polys.append(series_to_matrix(factor).apply(Poly.monomial(n, cap)))
        elif route == "lagrange2":
            derivative = series_arith(s_neg, kind="formal_derivative", order=cap)
            first = series_to_matrix(s_neg).apply(Poly.monomial(n, cap))
            second = series_to_matrix(derivative).apply(Poly.monomial(n - 1, cap)).scale(psi.n_psi[n] / n)
            polys.append(first - second)
        elif route == "lagrange3":
            inner = series_to_matrix(s_neg).apply(Poly.monomial(n - 1, cap))
            polys.append(apply_checked(x_hat, inner).scale(psi.n_psi[n] / n))
        else:
            raise MissingParameter(f"unknown route {route!r}; choose one of {', '.join(ROUTES)}")
    return polys


def basic_sequence(Q: DeltaSeries, M: int, route: str = "rodrigues") -> BasicSequence:
    """The ∂ψ-basic sequence p_0..p_M of the delta series Q along one route."""
    if not Q.is_delta():
        raise NotDeltaOperator("a delta series needs c_0 = 0 and c_1 != 0")
    if route not in ROUTES:
        raise MissingParameter(f"unknown route {route!r}; choose one of {', '.join(ROUTES)}")
    if M > Q.psi.cap:
        raise CapExceeded(f"M = {M} exceeds cap {Q.psi.cap}")
    logger.debug("basic sequence of %r via %s up to %d", Q, route, M)
    basic = BasicSequence(Q.psi, tuple(_route_polys(Q, M, route)), route, Q)
    verify_basic(basic)
    return basic


def all_routes(Q: DeltaSeries, M: int) -> dict:
    return {route: basic_sequence(Q, M, route) for route in ROUTES}


def routes_agree(sequences: dict) -> bool:
    first, *rest = sequences.values()
    return all(first.same_polys(other) for other in rest)


def normal_basic_general(Q: OpMatrix, psi: PsiSequence, M: int) -> BasicSequence:
    """Solve Q p_n = nψ p_(n-1), p_0 = 1, p_n(0) = 0 by back-substitution."""
    check_degree_lowering(Q)
    cap = Q.cap
    if M > cap:
        raise CapExceeded(f"M = {M} exceeds cap {cap}")
    psi = psi if psi.cap == cap else psi.with_cap(cap)
    images = [Q.column(i) for i in range(1, cap + 1)]
    polys = [Poly.one(cap)]
    for n in range(1, M + 1):
        target = polys[-1].scale(psi.n_psi[n])
        coords = coordinates(target, images[:n])
        polys.append(Poly((ZERO,) + tuple(coords), cap))
    basic = BasicSequence(psi, tuple(polys), "general_Q_solve", Q)
    verify_basic(basic, Q)
    return basic


def _require_generated_by(Q: OpMatrix, basic: BasicSequence) -> None:
    try:
        verify_basic(basic, Q)
    except IdentityFailure as e:
        raise BasisMismatch(f"basic sequence is not generated by Q: {e}") from e


def x_hat_Q(Q: OpMatrix, basic: BasicSequence) -> OpMatrix:
    """The dual operator p_n -> ((n+1)/(n+1)ψ) p_(n+1); needs p_0..p_cap."""
    cap = Q.cap
    if basic.M != cap:
        raise BasisMismatch(f"x_hat_Q needs p_0..p_{cap}, got p_0..p_{basic.M}")
    _require_generated_by(Q, basic)
    psi = basic.psi
    raised = [
        basic.polys[n + 1].scale(Fraction(n + 1) / psi.n_psi[n + 1]) for n in range(cap)
    ]
    columns = []
    for j in range(cap):
        coords = coordinates(Poly.monomial(j, cap), basic.polys)
        col = Poly.zero(cap)
        for n, c in enumerate(coords[:cap]):
            if c != 0:
                col = col + raised[n].scale(c)
        columns.append(col)
    columns.append(Poly.zero(cap))
    return OpMatrix.from_columns(columns, valid_degree=cap - 1, shift=1)


def translate(psi: PsiSequence, y, target: Union[int, Poly]) -> Poly:
    """E^y(∂ψ) applied to ``target``; an integer n stands for x^n."""
    y = as_scalar(y)
    cap = psi.cap
    if isinstance(target, int):
        if target > cap:
            raise IndexOutOfCap(f"degree {target} exceeds cap {cap}")
        n = target
        return Poly(tuple(psi.binomial(n, k) * y ** (n - k) for k in range(n + 1)), cap)
    return series_to_matrix(exp_series(psi, y)).apply(target)


def translate_general_Q(Q: OpMatrix, basic: BasicSequence, y) -> OpMatrix:
    """E^y(Q) = Σ_k p_k(y)/kψ! Q^k, exact on degrees <= M."""
    y = as_scalar(y)
    _require_generated_by(Q, basic)
    coeffs = [basic.polys[k](y) * basic.psi.psi_vals[k] for k in range(basic.M + 1)]
    E = polynomial_in(Q, coeffs)
    return OpMatrix(E.entries, min(E.valid_degree, basic.M), E.shift)


def binomial_check(basic: BasicSequence, y, Q: Optional[OpMatrix] = None) -> bool:
    """E^y p_n(x) == Σ_k (n k)ψ p_k(x) p_(n-k)(y) for every n <= M.

    E^y is E^y(∂ψ) by default and E^y(Q) when a general Q is given.
    """
    y = as_scalar(y)
    psi = basic.psi
    if Q is None:
        E = series_to_matrix(exp_series(psi, y))
    else:
        E = translate_general_Q(Q, basic, y)
    for n, p in enumerate(basic.polys):
        rhs = Poly.zero(psi.cap)
        for k in range(n + 1):
            rhs = rhs + basic.polys[k].scale(psi.binomial(n, k) * basic.polys[n - k](y))
        if E.apply(p) != rhs:
            logger.debug("binomial identity fails at n=%d, y=%s", n, y)
            return False
    return True


def evaluation_check(basic: BasicSequence, y) -> bool:
    """[E^y(∂ψ) p_n](0) == p_n(y)."""
    y = as_scalar(y)
    E = series_to_matrix(exp_series(basic.psi, y))
    return all(E.apply(p)(0) == p(y) for p in basic.polys)


def translate_expansion_check(basic: BasicSequence, y) -> bool:
    """E^y(∂ψ) == Σ_k p_k(y)/kψ! Q^k on degrees <= M."""
    y = as_scalar(y)
    psi = basic.psi
    Q = basic.generator_matrix()
    rhs = polynomial_in(Q, [basic.polys[k](y) * psi.psi_vals[k] for k in range(basic.M + 1)])
    return series_to_matrix(exp_series(psi, y)).agrees_with(rhs, basic.M)


def sheffer_sequence(
    basic: BasicSequence,
    S: DeltaSeries,
    y_samples: Sequence = DEFAULT_Y_SAMPLES[:3],
) -> ShefferPair:
    """s_n = S^(-1) p_n, checked against s_n(x +ψ y) = Σ (n k)ψ s_k(x) p_(n-k)(y)."""
    if S.coeff(0) == 0:
        raise NotInvertible("S needs a nonzero constant term")
    psi = basic.psi
    inverse = series_arith(S, kind="reciprocal")
    inv_matrix = series_to_matrix(inverse)
    sheffer = tuple(inv_matrix.apply(p) for p in basic.polys)
    for y in y_samples:
        y = as_scalar(y)
        E = series_to_matrix(exp_series(psi, y))
        for n, s in enumerate(sheffer):
            rhs = Poly.zero(psi.cap)
            for k in range(n + 1):
                rhs = rhs + sheffer[k].scale(psi.binomial(n, k) * basic.polys[n - k](y))
            if E.apply(s) != rhs:
                raise IdentityFailure(f"Sheffer binomial identity fails at n={n}, y={y}")
    return ShefferPair(basic, inverse, sheffer)


@dataclass(frozen=True)
class FirstExpansion:
    """T = Σ a_n Q^n, Q being the generator of ``basic``."""

    basic: BasicSequence
    coeffs: Tuple[Fraction, ...]

    @property
    def Q(self) -> Optional[Generator]:
        return self.basic.generator

    def coeff(self, n: int) -> Fraction:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else ZERO


def first_expansion(T: OpMatrix, basic: BasicSequence, samples: Sequence = (1, Fraction(-1, 2), 3)) -> FirstExpansion:
    """a_n = [T p_n](0)/nψ!, so that T = Σ a_n Q^n."""
    psi = basic.psi
    if not is_shift_invariant(T, psi, samples):
        raise NotShiftInvariant("T does not commute with the generalized translations")
    coeffs = [T.apply(p)(0) * psi.psi_vals[n] for n, p in enumerate(basic.polys)]
    return FirstExpansion(basic, tuple(coeffs))


def expansion_matrix(expansion: FirstExpansion) -> OpMatrix:
    """Σ a_n Q^n as a matrix, valid on degrees <= M."""
    basic = expansion.basic
    if isinstance(basic.generator, DeltaSeries):
        a = DeltaSeries(basic.psi, expansion.coeffs)
        matrix = series_to_matrix(series_arith(a, basic.generator, "compose"))
    else:
        matrix = polynomial_in(basic.generator_matrix(), expansion.coeffs)
    return OpMatrix(matrix.entries, min(matrix.valid_degree, basic.M), matrix.shift)


def eigen_series(basic: BasicSequence, lambda_cap: int) -> BiSeries:
    """Φ(x;λ) = Σ_n λ^n p_n(x)/nψ!."""
    if lambda_cap > basic.M:
        raise CapExceeded(f"lambda order {lambda_cap} exceeds M = {basic.M}")
    return BiSeries(tuple(basic.scaled(n) for n in range(lambda_cap + 1)))


def egf_eigen_check(Q: Generator, basic: BasicSequence, lambda_cap: int) -> bool:
    """Q Φ == λ Φ up to λ-order ``lambda_cap``."""
    matrix = series_to_matrix(Q) if isinstance(Q, DeltaSeries) else Q
    phi = eigen_series(basic, lambda_cap)
    return phi.apply(matrix).equals(phi.times_lambda())


def is_monomial_basic(basic: BasicSequence) -> bool:
    """p_n == c_n x^n for every n."""
    return all(p.degree() == n and all(p[i] == 0 for i in range(n)) for n, p in enumerate(basic.polys))


def eigen_collapse(basic: BasicSequence) -> Optional[PsiSequence]:
    """The φ with Φ = expφ{λx} when the basic sequence is monomial, else None."""
    if not is_monomial_basic(basic):
        return None
    psi = basic.psi
    lead = [p[n] for n, p in enumerate(basic.polys)]
    n_phi = [ZERO] + [psi.n_psi[n] * lead[n - 1] / lead[n] for n in range(1, len(lead))]
    return PsiSequence.from_n_psi(n_phi, label="collapsed")


def alternating_unit_values(psi: PsiSequence, max_n: int) -> List[Tuple[int, Fraction]]:
    """(1 +ψ (-1))^n = Σ_k (n k)ψ (-1)^(n-k) for 1 <= n <= max_n."""
    if max_n > psi.cap:
        raise IndexOutOfCap(f"n = {max_n} exceeds cap {psi.cap}")
    return [(n, translate(psi, -1, n)(1)) for n in range(1, max_n + 1)]


def even_powers_vanish(psi: PsiSequence, max_n: int) -> bool:
    return all(v == 0 for n, v in alternating_unit_values(psi, max_n) if n % 2 == 0)


def classical_falling(n: int, cap: int) -> Poly:
    """x(x-1)...(x-n+1), the independent oracle for the forward difference."""
    p = Poly.one(cap)
    for i in range(n):
        p = p * Poly((Fraction(-i), ONE), cap)
    return p


def monomial_basic(psi: PsiSequence, M: int) -> BasicSequence:
    """p_n = x^n, the basic sequence of ∂ψ itself."""
    if M > psi.cap:
        raise CapExceeded(f"M = {M} exceeds cap {psi.cap}")
    polys = tuple(Poly.monomial(n, psi.cap) for n in range(M + 1))
    basic = BasicSequence(psi, polys, "monomial", DeltaSeries(psi, (ZERO, ONE)))
    verify_basic(basic)
    return basic
