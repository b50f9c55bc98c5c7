"""Exact substrate: rational scalars, truncated polynomials, operator matrices
and bivariate truncated series.

Scalars are ``fractions.Fraction`` values. Every polynomial lives in the space
of polynomials of degree <= cap; an operator on that space is stored as its
action on the monomial basis (column j is the image of x^j).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from app.helpers.errors import (
    BasisMismatch,
    CapExceeded,
    CapMismatch,
    SingularSystem,
    TruncationLoss,
)

logger = logging.getLogger(__name__)

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def as_scalar(value) -> Fraction:
    """Coerce ints, Fractions and "num/den" strings to a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating point values are not exact scalars")
    return Fraction(value)


def _check_caps(*caps: int) -> int:
    if len(set(caps)) != 1:
        raise CapMismatch(f"caps differ: {sorted(set(caps))}")
    return caps[0]


@dataclass(frozen=True)
class Poly:
    """Dense polynomial truncated at degree ``cap`` (inclusive)."""

    coeffs: Tuple[Fraction, ...]
    cap: int

    def __post_init__(self):
        if self.cap < 0:
            raise ValueError("cap must be non-negative")
        coeffs = [as_scalar(c) for c in self.coeffs]
        if len(coeffs) > self.cap + 1:
            dropped = [n for n, c in enumerate(coeffs) if n > self.cap and c != 0]
            if dropped:
                raise TruncationLoss(
                    f"degree {max(dropped)} does not fit cap {self.cap}", degree=max(dropped)
                )
            coeffs = coeffs[: self.cap + 1]
        coeffs += [ZERO] * (self.cap + 1 - len(coeffs))
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def zero(cls, cap: int) -> "Poly":
        return cls((), cap)

    @classmethod
    def one(cls, cap: int) -> "Poly":
        return cls((ONE,), cap)

    @classmethod
    def monomial(cls, n: int, cap: int, coeff=ONE) -> "Poly":
        if n > cap:
            raise TruncationLoss(f"x^{n} does not fit cap {cap}", degree=n)
        return cls((ZERO,) * n + (as_scalar(coeff),), cap)

    @classmethod
    def x(cls, cap: int) -> "Poly":
        return cls.monomial(1, cap)

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n] if 0 <= n <= self.cap else ZERO

    def degree(self) -> int:
        for n in range(self.cap, -1, -1):
            if self.coeffs[n] != 0:
                return n
        return -1

    def is_zero(self) -> bool:
        return self.degree() < 0

    def __call__(self, value) -> Fraction:
        value = as_scalar(value)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __add__(self, other: "Poly") -> "Poly":
        _check_caps(self.cap, other.cap)
        return Poly(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.cap)

    def __sub__(self, other: "Poly") -> "Poly":
        _check_caps(self.cap, other.cap)
        return Poly(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.cap)

    def __neg__(self) -> "Poly":
        return self.scale(-1)

    def scale(self, c) -> "Poly":
        c = as_scalar(c)
        return Poly(tuple(c * a for a in self.coeffs), self.cap)

    def mul_truncated(self, other: "Poly") -> Tuple["Poly", bool]:
        """Product truncated at cap, with a flag telling whether nonzero terms were dropped."""
        _check_caps(self.cap, other.cap)
        out = [ZERO] * (2 * self.cap + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b != 0:
                    out[i + j] += a * b
        lost = any(c != 0 for c in out[self.cap + 1 :])
        return Poly(tuple(out[: self.cap + 1]), self.cap), lost

    def __mul__(self, other: "Poly") -> "Poly":
        product, lost = self.mul_truncated(other)
        if lost:
            raise TruncationLoss(
                f"product of degrees {self.degree()} and {other.degree()} exceeds cap {self.cap}",
                degree=self.degree() + other.degree(),
            )
        return product

    def times_x(self) -> "Poly":
        if self.degree() >= self.cap:
            raise TruncationLoss(f"x * p exceeds cap {self.cap}", degree=self.degree() + 1)
        return Poly((ZERO,) + self.coeffs[:-1], self.cap)

    def divided_difference(self) -> "Poly":
        """(p(x) - p(0)) / x, i.e. x^n -> x^(n-1)."""
        return Poly(self.coeffs[1:], self.cap)

    def derivative(self) -> "Poly":
        return Poly(tuple(n * self.coeffs[n] for n in range(1, self.cap + 1)), self.cap)

    def dilate(self, q) -> "Poly":
        """p(q x)."""
        q = as_scalar(q)
        return Poly(tuple(c * q**n for n, c in enumerate(self.coeffs)), self.cap)

    def truncate(self, degree: int) -> "Poly":
        return Poly(tuple(c if n <= degree else ZERO for n, c in enumerate(self.coeffs)), self.cap)

    def with_cap(self, cap: int) -> "Poly":
        return Poly(self.coeffs, cap)

    def agrees_on(self, other: "Poly", degree: int) -> bool:
        _check_caps(self.cap, other.cap)
        return all(self[n] == other[n] for n in range(min(degree, self.cap) + 1))

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)}, cap={self.cap})"


def format_poly(p: Poly, var: str = "x") -> str:
    terms = []
    for n, c in enumerate(p.coeffs):
        if c == 0:
            continue
        if n == 0:
            terms.append(str(c))
        else:
            mono = var if n == 1 else f"{var}^{n}"
            terms.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def poly_arith(a: Poly, b, kind: str) -> Poly:
    """add / sub / mul / scale; for ``scale`` the second argument is a scalar."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "scale":
        return a.scale(b)
    raise ValueError(f"unknown polynomial operation {kind!r}")


def _fraction_array(rows) -> np.ndarray:
    arr = np.array([[as_scalar(v) for v in row] for row in rows], dtype=object)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class OpMatrix:
    """Linear operator on the truncated space.

    ``entries[i, j]`` is the coefficient of x^i in T x^j. ``valid_degree`` is the
    largest input degree on which the truncated matrix equals the operator on
    all of P; ``shift`` bounds the degree change, deg(T p) <= deg(p) + shift.
    """

    entries: np.ndarray
    valid_degree: int
    shift: int

    @property
    def cap(self) -> int:
        return self.entries.shape[0] - 1

    @classmethod
    def from_columns(
        cls, columns: Sequence[Poly], valid_degree: int | None = None, shift: int | None = None
    ) -> "OpMatrix":
        cap = _check_caps(*(c.cap for c in columns))
        if len(columns) != cap + 1:
            raise CapMismatch(f"expected {cap + 1} columns, got {len(columns)}")
        rows = [[columns[j][i] for j in range(cap + 1)] for i in range(cap + 1)]
        if shift is None:
            shift = _column_shift(columns)
        return cls(_fraction_array(rows), cap if valid_degree is None else valid_degree, shift)

    @classmethod
    def from_entries(cls, entries, valid_degree: int | None = None, shift: int | None = None) -> "OpMatrix":
        arr = _fraction_array(entries)
        cap = arr.shape[0] - 1
        if arr.shape != (cap + 1, cap + 1):
            raise CapMismatch(f"operator matrix must be square, got {arr.shape}")
        if shift is None:
            shift = _column_shift([Poly(tuple(arr[:, j]), cap) for j in range(cap + 1)])
        return cls(arr, cap if valid_degree is None else valid_degree, shift)

    @classmethod
    def identity(cls, cap: int) -> "OpMatrix":
        return cls.from_entries(
            [[ONE if i == j else ZERO for j in range(cap + 1)] for i in range(cap + 1)], shift=0
        )

    @classmethod
    def zero(cls, cap: int) -> "OpMatrix":
        return cls.from_entries([[ZERO] * (cap + 1) for _ in range(cap + 1)], shift=-(cap + 1))

    @classmethod
    def diagonal(cls, values: Sequence, shift_by: int = 0, valid_degree: int | None = None) -> "OpMatrix":
        """x^n -> values[n] x^(n + shift_by); images leaving [0, cap] are dropped."""
        cap = len(values) - 1
        rows = [[ZERO] * (cap + 1) for _ in range(cap + 1)]
        for n, v in enumerate(values):
            if 0 <= n + shift_by <= cap:
                rows[n + shift_by][n] = as_scalar(v)
        return cls.from_entries(rows, valid_degree=valid_degree, shift=shift_by)

    @classmethod
    def multiplication(cls, p: Poly) -> "OpMatrix":
        """Multiplication by p, i.e. p(x̂)."""
        cap = p.cap
        deg = max(p.degree(), 0)
        columns = []
        for j in range(cap + 1):
            col = [ZERO] * (cap + 1)
            for i, c in enumerate(p.coeffs):
                if c != 0 and i + j <= cap:
                    col[i + j] = c
            columns.append(Poly(tuple(col), cap))
        return cls.from_columns(columns, valid_degree=cap - deg, shift=deg if not p.is_zero() else -(cap + 1))

    def column(self, j: int) -> Poly:
        return Poly(tuple(self.entries[:, j]), self.cap)

    @property
    def columns(self) -> Tuple[Poly, ...]:
        return tuple(self.column(j) for j in range(self.cap + 1))

    def apply(self, p: Poly) -> Poly:
        return op_apply(self, p)

    def __matmul__(self, other: "OpMatrix") -> "OpMatrix":
        return op_compose(self, other)

    def __add__(self, other: "OpMatrix") -> "OpMatrix":
        _check_caps(self.cap, other.cap)
        return OpMatrix(
            _fraction_array(self.entries + other.entries),
            min(self.valid_degree, other.valid_degree),
            max(self.shift, other.shift),
        )

    def __sub__(self, other: "OpMatrix") -> "OpMatrix":
        return self + other.scale(-1)

    def __neg__(self) -> "OpMatrix":
        return self.scale(-1)

    def scale(self, c) -> "OpMatrix":
        c = as_scalar(c)
        if c == 0:
            return OpMatrix.zero(self.cap)
        return OpMatrix(_fraction_array(self.entries * c), self.valid_degree, self.shift)

    def power(self, n: int) -> "OpMatrix":
        result = OpMatrix.identity(self.cap)
        for _ in range(n):
            result = op_compose(self, result)
        return result

    def agrees_with(self, other: "OpMatrix", degree: int | None = None) -> bool:
        """Column-wise equality on input degrees <= degree (default: shared validity)."""
        _check_caps(self.cap, other.cap)
        if degree is None:
            degree = min(self.valid_degree, other.valid_degree)
        degree = min(degree, self.cap)
        if degree < 0:
            return True
        return bool(np.all(self.entries[:, : degree + 1] == other.entries[:, : degree + 1]))

    def is_zero_on(self, degree: int | None = None) -> bool:
        return self.agrees_with(OpMatrix.zero(self.cap), self.valid_degree if degree is None else degree)

    def restrict(self, degree: int) -> "OpMatrix":
        """Keep the columns of input degree <= degree, zero the rest."""
        rows = [[self.entries[i, j] if j <= degree else ZERO for j in range(self.cap + 1)] for i in range(self.cap + 1)]
        return OpMatrix(_fraction_array(rows), min(self.valid_degree, self.cap), self.shift)

    def __repr__(self) -> str:
        return f"OpMatrix(cap={self.cap}, valid_degree={self.valid_degree}, shift={self.shift})"


def _column_shift(columns: Sequence[Poly]) -> int:
    shifts = [c.degree() - j for j, c in enumerate(columns) if not c.is_zero()]
    return max(shifts) if shifts else -len(columns)


def op_apply(T: OpMatrix, p: Poly) -> Poly:
    """Linear combination of the columns of T weighted by the coefficients of p."""
    _check_caps(T.cap, p.cap)
    vec = np.array(p.coeffs, dtype=object)
    return Poly(tuple(T.entries.dot(vec)), T.cap)


def apply_checked(T: OpMatrix, p: Poly) -> Poly:
    """op_apply that refuses inputs beyond the operator's validity degree."""
    if p.degree() > T.valid_degree:
        raise CapExceeded(
            f"input of degree {p.degree()} exceeds validity degree {T.valid_degree}"
        )
    return op_apply(T, p)


def op_compose(A: OpMatrix, B: OpMatrix) -> OpMatrix:
    """A∘B. Exact on inputs p with deg p <= B.valid and deg(Bp) <= A.valid."""
    cap = _check_caps(A.cap, B.cap)
    valid = min(B.valid_degree, A.valid_degree - B.shift, cap)
    shift = max(A.shift + B.shift, -(cap + 1))
    return OpMatrix(_fraction_array(A.entries.dot(B.entries)), valid, shift)


def op_commutator(A: OpMatrix, B: OpMatrix) -> OpMatrix:
    """[A, B] = A∘B - B∘A."""
    return op_compose(A, B) - op_compose(B, A)


def polynomial_in(op: OpMatrix, coeffs: Sequence) -> OpMatrix:
    """Σ c_i op^i as a matrix (Horner)."""
    cap = op.cap
    result = OpMatrix.zero(cap)
    for c in reversed(list(coeffs)):
        result = op_compose(op, result) + OpMatrix.identity(cap).scale(c)
    return result


def apply_polynomial_of(op: OpMatrix, coeffs: Sequence, v: Poly) -> Poly:
    """Σ c_i op^i v, refusing any step that would leave the validity range."""
    acc = Poly.zero(v.cap)
    power = v
    for i, c in enumerate(coeffs):
        if i > 0:
            power = apply_checked(op, power)
        c = as_scalar(c)
        if c != 0:
            acc = acc + power.scale(c)
    return acc


def coordinates(p: Poly, basis: Sequence[Poly]) -> List[Fraction]:
    """Coefficients c with p = Σ c_n basis[n], for a basis with deg basis[n] == n."""
    remainder = p
    coords = [ZERO] * len(basis)
    if p.degree() >= len(basis):
        raise BasisMismatch(f"degree {p.degree()} is outside the span of {len(basis)} basis elements")
    for n in range(len(basis) - 1, -1, -1):
        if basis[n].degree() != n:
            raise SingularSystem(f"basis element {n} has degree {basis[n].degree()}")
        c = remainder[n] / basis[n][n]
        coords[n] = c
        if c != 0:
            remainder = remainder - basis[n].scale(c)
    return coords


@dataclass(frozen=True)
class BiSeries:
    """Σ_n terms[n](x) λ^n truncated at λ-order ``lambda_cap``."""

    terms: Tuple[Poly, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise ValueError("a BiSeries needs at least the λ^0 term")
        _check_caps(*(t.cap for t in self.terms))

    @property
    def lambda_cap(self) -> int:
        return len(self.terms) - 1

    @property
    def cap(self) -> int:
        return self.terms[0].cap

    @classmethod
    def zero(cls, lambda_cap: int, cap: int) -> "BiSeries":
        return cls(tuple(Poly.zero(cap) for _ in range(lambda_cap + 1)))

    @classmethod
    def from_terms(cls, terms: Iterable[Poly], lambda_cap: int, cap: int) -> "BiSeries":
        terms = list(terms)[: lambda_cap + 1]
        terms += [Poly.zero(cap)] * (lambda_cap + 1 - len(terms))
        return cls(tuple(terms))

    def __add__(self, other: "BiSeries") -> "BiSeries":
        return BiSeries(tuple(a + b for a, b in zip(self.terms, other.terms)))

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        return BiSeries(tuple(a - b for a, b in zip(self.terms, other.terms)))

    def __mul__(self, other: "BiSeries") -> "BiSeries":
        order = min(self.lambda_cap, other.lambda_cap)
        out = []
        for n in range(order + 1):
            acc = Poly.zero(self.cap)
            for k in range(n + 1):
                acc = acc + self.terms[k] * other.terms[n - k]
            out.append(acc)
        return BiSeries(tuple(out))

    def times_lambda(self) -> "BiSeries":
        return BiSeries((Poly.zero(self.cap),) + self.terms[:-1])

    def apply(self, T: OpMatrix) -> "BiSeries":
        """Apply an x-operator coefficient-wise in λ."""
        return BiSeries(tuple(apply_checked(T, t) for t in self.terms))

    def divide(self, other: "BiSeries") -> "BiSeries":
        """self / other as λ-power series; other's λ^0 term must be a nonzero constant."""
        head = other.terms[0]
        if head.degree() != 0:
            raise SingularSystem("λ^0 term of the divisor must be a nonzero constant")
        inv = ONE / head[0]
        order = min(self.lambda_cap, other.lambda_cap)
        out: List[Poly] = []
        for n in range(order + 1):
            acc = self.terms[n]
            for k in range(n):
                acc = acc - out[k] * other.terms[n - k]
            out.append(acc.scale(inv))
        return BiSeries(tuple(out))

    def equals(self, other: "BiSeries") -> bool:
        return self.lambda_cap == other.lambda_cap and all(
            a == b for a, b in zip(self.terms, other.terms)
        )
