from fractions import Fraction

import pytest

from app.core.exact_core import Poly
from app.core.integration import (
    jackson_partial_sums,
    left_inverse_check,
    psi_integral,
    q_integral,
    q_integral_operator,
    r_integral,
    right_inverse_check,
)
from app.core.OperatorProvider import make_named
from app.core.psi_sequence import RationalFunction, make_preset
from app.helpers.errors import BadSample, CapExceeded, RootOfUnity

F = Fraction
CAP = 16


def test_psi_integral_inverts_d_psi(preset):
    d_psi = make_named("d_psi", preset).matrix
    assert right_inverse_check(d_psi, lambda p: psi_integral(preset, p), preset.cap)
    assert left_inverse_check(d_psi, lambda p: psi_integral(preset, p), preset.cap)


def test_classical_integral(classical):
    assert psi_integral(classical, Poly.monomial(2, classical.cap)) == Poly.monomial(3, classical.cap, F(1, 3))


@pytest.mark.parametrize("q", [F(1, 2), F(-1, 3), F(5, 2)])
def test_q_integral_on_degrees_up_to_fifteen(q):
    d_q = make_named("d_q", q=q, cap=CAP).matrix
    assert right_inverse_check(d_q, lambda p: q_integral(q, p), CAP)
    operator = q_integral_operator(q, CAP)
    assert all(
        operator.apply(Poly.monomial(n, CAP)) == q_integral(q, Poly.monomial(n, CAP)) for n in range(CAP)
    )


def test_q_integral_values():
    q = F(1, 2)
    assert q_integral(q, Poly.one(4)) == Poly.x(4)
    # x -> x^2 / 2_q
    assert q_integral(q, Poly.x(4)) == Poly.monomial(2, 4, F(2, 3))


def test_r_integral():
    q = F(1, 3)
    r = RationalFunction((2, 1), (1,))
    d_r = make_named("d_R", q=q, r=r, cap=CAP).matrix
    assert right_inverse_check(d_r, lambda p: r_integral(r, q, p), CAP)
    psi = make_preset("custom-R", q=q, cap=CAP, r=r)
    p = Poly((1, 2, 3), CAP)
    assert r_integral(r, q, p) == psi_integral(psi, p)


def test_jackson_partial_sums_converge():
    q = F(1, 2)
    p = Poly.monomial(3, 8)
    closed = q_integral(q, p)
    gaps = [abs(s[4] - closed[4]) for s in jackson_partial_sums(q, p, 10)]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < F(1, 10**10)


def test_integration_errors():
    with pytest.raises(RootOfUnity):
        q_integral(-1, Poly.x(4))
    with pytest.raises(RootOfUnity):
        q_integral_operator(-1, 4)
    with pytest.raises(BadSample):
        jackson_partial_sums(2, Poly.x(4), 3)
    with pytest.raises(CapExceeded):
        q_integral(F(1, 2), Poly.monomial(4, 4))
