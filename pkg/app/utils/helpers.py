"""Wire codecs, payload parsers and seeded generators shared by the CLI and the API."""

import json
from fractions import Fraction
from typing import List, Optional, Sequence, Union

import numpy as np

from app.core.delta_series import NAMED_SERIES, DeltaSeries, named_series
from app.core.exact_core import ZERO, OpMatrix, Poly, op_compose
from app.core.OperatorProvider import KINDS, make_named
from app.core.psi_sequence import PsiSequence, RationalFunction, make_preset
from app.helpers.errors import CalculusError, InputError

# operators the CLI and the API accept by name, beyond the provider kinds
EXTRA_OPERATORS = ("number", "d_x_hat_d", "non-psi-series")


def fmt_scalar(value) -> str:
    """Rationals always travel as "num/den"."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_scalar(text) -> Fraction:
    if isinstance(text, bool) or isinstance(text, float):
        raise InputError(f"{text!r} is not an exact scalar")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"cannot parse scalar {text!r}") from e


def parse_scalars(values: Optional[Sequence]) -> Optional[List[Fraction]]:
    if values is None:
        return None
    return [parse_scalar(v) for v in values]


def poly_to_json(p: Poly) -> List[str]:
    return [fmt_scalar(c) for c in p.coeffs[: max(p.degree(), 0) + 1]]


def poly_from_json(values: Sequence, cap: int) -> Poly:
    coeffs = [parse_scalar(v) for v in values]
    if len(coeffs) > cap + 1:
        if any(c != 0 for c in coeffs[cap + 1 :]):
            raise InputError(f"polynomial of degree {len(coeffs) - 1} exceeds cap {cap}")
        coeffs = coeffs[: cap + 1]
    return Poly(tuple(coeffs) + (ZERO,) * (cap + 1 - len(coeffs)), cap)


def matrix_to_json(T: OpMatrix) -> List[List[str]]:
    """Column j is the coefficient list of T x^j."""
    return [poly_to_json(col) for col in T.columns]


def matrix_from_json(payload: Union[str, list, dict], cap: int) -> OpMatrix:
    """A list of columns; missing columns and entries are zero."""
    if isinstance(payload, str):
        try:
            payload = json.loads(payload)
        except json.JSONDecodeError as e:
            raise InputError(f"malformed matrix JSON: {e.msg}") from e
    if isinstance(payload, dict) and "b_table" in payload:
        return matrix_from_b_table(payload["b_table"], cap)
    if not isinstance(payload, list) or not all(isinstance(col, list) for col in payload):
        raise InputError("a matrix is a JSON list of columns, each a list of scalars")
    if len(payload) > cap + 1:
        raise InputError(f"{len(payload)} columns exceed cap + 1 = {cap + 1}")
    columns = [poly_from_json(col, cap) for col in payload]
    columns += [Poly.zero(cap)] * (cap + 1 - len(columns))
    return OpMatrix.from_columns(columns)


def matrix_from_b_table(rows: list, cap: int) -> OpMatrix:
    """Row n-1 lists b_(n,1)..b_(n,n) with Q x^n = Σ_k b_(n,k) x^(n-k)."""
    if not isinstance(rows, list) or len(rows) > cap:
        raise InputError(f"a b-table is a JSON list of at most cap = {cap} rows")
    columns = [Poly.zero(cap)]
    for n, row in enumerate(rows, start=1):
        if not isinstance(row, list) or len(row) > n:
            raise InputError(f"row {n} of the b-table needs at most {n} entries")
        coeffs = [ZERO] * (cap + 1)
        for k, value in enumerate(row, start=1):
            coeffs[n - k] = parse_scalar(value)
        columns.append(Poly(tuple(coeffs), cap))
    columns += [Poly.zero(cap)] * (cap + 1 - len(columns))
    return OpMatrix.from_columns(columns)


def parse_psi(
    label: str,
    q=None,
    cap: int = 16,
    n_psi: Optional[Sequence] = None,
    r_num: Optional[Sequence] = None,
    r_den: Optional[Sequence] = None,
) -> PsiSequence:
    r = None
    if r_num is not None:
        r = RationalFunction(tuple(parse_scalars(r_num)), tuple(parse_scalars(r_den or ["1"])))
    return make_preset(
        label,
        q=None if q is None else parse_scalar(q),
        cap=cap,
        r=r,
        n_psi=parse_scalars(n_psi),
    )


def parse_delta(spec: str, psi: PsiSequence) -> DeltaSeries:
    """A named series or a JSON list of ∂ψ-coefficients."""
    if spec in NAMED_SERIES:
        return named_series(spec, psi)
    try:
        coeffs = json.loads(spec)
    except json.JSONDecodeError as e:
        raise InputError(f"{spec!r} is neither a named series ({', '.join(NAMED_SERIES)}) nor JSON") from e
    if not isinstance(coeffs, list) or not coeffs:
        raise InputError("series coefficients must be a non-empty JSON list")
    if len(coeffs) > psi.cap + 1:
        raise InputError(f"{len(coeffs)} coefficients exceed cap + 1 = {psi.cap + 1}")
    return DeltaSeries(psi, tuple(parse_scalar(c) for c in coeffs))


def parse_operator(spec: str, psi: PsiSequence, q=None) -> OpMatrix:
    """A provider kind, one of the extra named operators, or a JSON matrix."""
    cap = psi.cap
    if spec in KINDS:
        return make_named(spec, psi=psi, q=psi.q if q is None else parse_scalar(q), r=psi.r, cap=cap).matrix
    if spec in EXTRA_OPERATORS:
        d = make_named("d_classical", cap=cap).matrix
        x = make_named("x_hat", cap=cap).matrix
        if spec == "number":
            return op_compose(x, d)
        d_x_d = op_compose(d, op_compose(x, d))
        if spec == "d_x_hat_d":
            return d_x_d
        # ½ D x̂ D - ⅓ D³, a degree-lowering operator in no ∂ψ
        return d_x_d.scale(Fraction(1, 2)) - d.power(3).scale(Fraction(1, 3))
    return matrix_from_json(spec, cap)


def describe_error(e: CalculusError) -> str:
    return f"{type(e).__name__}: {e}"


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_scalar(rng: np.random.Generator, bound: int = 5, max_den: int = 3) -> Fraction:
    return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, max_den + 1)))


def random_poly(rng: np.random.Generator, degree: int, cap: int) -> Poly:
    coeffs = [random_scalar(rng) for _ in range(degree + 1)]
    return Poly(tuple(coeffs) + (ZERO,) * (cap - degree), cap)


def random_delta_series(rng: np.random.Generator, psi: PsiSequence, order: int) -> DeltaSeries:
    """c_0 = 0 and a nonzero c_1."""
    c1 = ZERO
    while c1 == 0:
        c1 = random_scalar(rng)
    tail = [random_scalar(rng) for _ in range(order - 1)]
    return DeltaSeries(psi, (ZERO, c1, *tail))


def random_operator(rng: np.random.Generator, cap: int, raise_by: int = 2) -> OpMatrix:
    """A dense operator that raises degree by at most ``raise_by``."""
    entries = np.full((cap + 1, cap + 1), ZERO, dtype=object)
    for j in range(cap + 1):
        for i in range(min(j + raise_by, cap) + 1):
            entries[i, j] = random_scalar(rng)
    return OpMatrix.from_entries(entries)
