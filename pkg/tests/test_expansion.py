from fractions import Fraction

import pytest

from app.core.delta_series import named_series, series_to_matrix
from app.core.delta_umbral import normal_basic_general
from app.core.exact_core import Poly
from app.core.expansion import (
    expand_in_Q,
    indicator,
    operator_from_coefficients,
    psi_exponential_indicator_check,
    reconstruct,
)
from app.core.OperatorProvider import make_named
from app.helpers.errors import MissingParameter, NotDegreeLowering
from app.utils.helpers import parse_operator, random_operator


def test_x_hat_in_powers_of_d(classical):
    D = make_named("d_psi", classical).matrix
    T = make_named("x_hat", cap=classical.cap).matrix
    expansion = expand_in_Q(T, D, classical, 4)
    assert expansion.verified
    assert expansion.q_polys[0] == Poly.x(classical.cap)
    assert all(q.is_zero() for q in expansion.q_polys[1:])


def test_number_operator_in_powers_of_d(classical):
    D = make_named("d_psi", classical).matrix
    expansion = expand_in_Q(parse_operator("number", classical), D, classical, 5)
    assert expansion.q_polys[0].is_zero()
    assert expansion.q_polys[1] == Poly.x(classical.cap)
    P = indicator(expansion, 3)
    assert P.terms[1] == Poly.x(classical.cap)
    assert P.terms[0].is_zero() and P.terms[2].is_zero()


@pytest.mark.parametrize("name", ["d_psi", "d_psi_plus_square", "forward-difference"])
def test_random_operators_reconstruct(jackson, rng, name):
    Q = series_to_matrix(named_series(name, jackson))
    M = jackson.cap - 2
    basic = normal_basic_general(Q, jackson, M)
    for _ in range(3):
        T = random_operator(rng, jackson.cap, raise_by=2)
        expansion = expand_in_Q(T, Q, jackson, M, basic=basic)
        assert expansion.verified
        again = expand_in_Q(reconstruct(expansion), Q, jackson, M, basic=basic)
        assert again.same_coefficients(expansion)
        indicator(expansion, 4)


def test_x_hat_q_mode(jackson):
    Q = make_named("d_psi", jackson).matrix
    basic = normal_basic_general(Q, jackson, jackson.cap)
    T = make_named("x_hat_psi", jackson).matrix
    expansion = expand_in_Q(T, Q, jackson, 4, basis_mode="x_hat_Q", basic=basic)
    assert expansion.verified
    assert expansion.q_polys[0] == Poly.x(jackson.cap)
    # the conjugation identity is only checked in x_hat mode
    assert indicator(expansion, 2).terms[0] == Poly.x(jackson.cap)


def test_expansion_arguments(jackson):
    Q = make_named("d_psi", jackson).matrix
    T = make_named("identity", cap=jackson.cap).matrix
    with pytest.raises(MissingParameter):
        expand_in_Q(T, Q, jackson, 3, basis_mode="x_hat_Q")
    with pytest.raises(MissingParameter):
        expand_in_Q(T, Q, jackson, 3, basis_mode="sideways")
    with pytest.raises(NotDegreeLowering):
        expand_in_Q(T, T, jackson, 3)


def test_psi_exponential_conjugation(classical, jackson):
    x = Poly.x(classical.cap)
    T = operator_from_coefficients([Poly.zero(classical.cap), x], make_named("d_psi", classical).matrix)
    assert T.agrees_with(parse_operator("number", classical), classical.cap)
    assert psi_exponential_indicator_check(T, classical, 3, [Poly.zero(classical.cap), x])

    half = Fraction(1, 2)
    q_polys = [Poly((1, half), jackson.cap), Poly.zero(jackson.cap), Poly((0, -1), jackson.cap)]
    T = operator_from_coefficients(q_polys, make_named("d_psi", jackson).matrix)
    assert psi_exponential_indicator_check(T, jackson, 3, q_polys)
