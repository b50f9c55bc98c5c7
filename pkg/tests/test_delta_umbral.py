from fractions import Fraction

import pytest

from app.core.delta_series import DeltaSeries, named_series, series_to_matrix
from app.core.delta_umbral import (
    ROUTES,
    all_routes,
    alternating_unit_values,
    basic_sequence,
    binomial_check,
    classical_falling,
    egf_eigen_check,
    eigen_collapse,
    evaluation_check,
    even_powers_vanish,
    expansion_matrix,
    first_expansion,
    monomial_basic,
    normal_basic_general,
    recognize_delta,
    routes_agree,
    sheffer_sequence,
    translate,
    translate_expansion_check,
    translate_general_Q,
    x_hat_Q,
)
from app.core.exact_core import OpMatrix, Poly, op_commutator
from app.core.OperatorProvider import make_named
from app.core.psi_sequence import make_preset
from app.helpers.errors import (
    BasisMismatch,
    CapExceeded,
    IndexOutOfCap,
    NotDegreeLowering,
    NotDeltaOperator,
    NotShiftInvariant,
    ZeroSubdiagonal,
)
from app.utils.helpers import parse_operator, random_delta_series

F = Fraction
CAP = 8


def test_forward_difference_gives_falling_factorials(classical):
    sequences = all_routes(named_series("forward-difference", classical), 6)
    assert routes_agree(sequences)
    polys = sequences["rodrigues"].polys
    assert polys[2] == Poly((0, -1, 1), classical.cap)
    assert polys[3] == Poly((0, 2, -3, 1), classical.cap)
    assert all(p == classical_falling(n, classical.cap) for n, p in enumerate(polys))


def test_d_plus_d_squared(classical):
    basic = basic_sequence(named_series("d_psi_plus_square", classical), 3)
    assert basic.polys[2] == Poly((0, -2, 1), classical.cap)


@pytest.mark.parametrize("route", ROUTES)
def test_every_route_agrees_under_deformation(jackson, route):
    Q = named_series("forward-difference", jackson)
    reference = normal_basic_general(series_to_matrix(Q), jackson, jackson.cap)
    assert basic_sequence(Q, jackson.cap, route).same_polys(reference)


def test_d_psi_generates_monomials(dxd):
    basic = basic_sequence(named_series("d_psi", dxd), 5)
    assert all(p == Poly.monomial(n, dxd.cap) for n, p in enumerate(basic.polys))


def test_rejected_generators(classical):
    with pytest.raises(NotDeltaOperator):
        basic_sequence(named_series("identity-series", classical), 3)
    with pytest.raises(CapExceeded):
        basic_sequence(named_series("d_psi", classical), classical.cap + 1)


def test_classifier_accepts_d_x_d():
    psi = make_preset("classical", cap=8)
    result = recognize_delta(parse_operator("d_x_hat_d", psi))
    assert result.is_series
    assert result.preset == "dxd"
    assert result.psi.n_psi == tuple(F(n * n) for n in range(9))


def test_classifier_rejects_non_psi_series_with_witness():
    psi = make_preset("classical", cap=8)
    result = recognize_delta(parse_operator("non-psi-series", psi))
    assert not result.is_series
    assert result.failure_witness == (4, 3)
    assert result.predicted == -32
    assert result.actual == -8
    with pytest.raises(NotDeltaOperator):
        result.series()


def test_classifier_recovers_jackson():
    d_q = make_named("d_q", q=F(1, 3), cap=8).matrix
    assert recognize_delta(d_q).preset == "q-jackson(q=1/3)"


def test_classifier_refuses_non_lowering_operators():
    cap = 6
    with pytest.raises(NotDegreeLowering):
        recognize_delta(make_named("x_hat", cap=cap).matrix)
    D = make_named("d_classical", cap=cap).matrix
    with pytest.raises(ZeroSubdiagonal):
        recognize_delta(D.power(2))


def test_recognize_realize_roundtrip(preset, rng):
    for _ in range(5):
        Q = random_delta_series(rng, preset, 5)
        result = recognize_delta(series_to_matrix(Q))
        assert result.is_series
        assert result.series() == Q


def test_binomial_identities(jackson):
    basic = basic_sequence(named_series("d_psi_plus_square", jackson), 6)
    for y in (1, F(-1, 2), 3):
        assert binomial_check(basic, y)
        assert evaluation_check(basic, y)
    assert translate_expansion_check(basic, F(2, 3))


def test_binomial_through_general_q(jackson):
    Q = series_to_matrix(named_series("forward-difference", jackson))
    basic = normal_basic_general(Q, jackson, 6)
    assert binomial_check(basic, F(1, 2), Q)
    E = translate_general_Q(Q, basic, 1)
    assert E.valid_degree == 6


def test_translate_monomials(classical):
    assert translate(classical, 2, 3) == Poly((8, 12, 6, 1), classical.cap)
    assert translate(classical, 2, Poly((1, 1), classical.cap)) == Poly((3, 1), classical.cap)
    with pytest.raises(IndexOutOfCap):
        translate(classical, 1, classical.cap + 1)


def test_alternating_unit_values(classical, jackson):
    assert all(v == 0 for _, v in alternating_unit_values(classical, 6))
    values = dict(alternating_unit_values(jackson, 4))
    # (1 +q (-1))^2 = 1 - 2_q + 1
    assert values[2] == 2 - F(3, 2)
    assert even_powers_vanish(classical, 6)
    assert not even_powers_vanish(jackson, 4)


def test_sheffer_sequence(jackson):
    basic = basic_sequence(named_series("d_psi", jackson), 5)
    pair = sheffer_sequence(basic, DeltaSeries(jackson, (1, 1)))
    # s_2 = (1 + d_psi)^(-1) x^2 = x^2 - 2_q x + 2_q 1_q
    assert pair.sheffer[2] == Poly((F(3, 2), F(-3, 2), 1), jackson.cap)


def test_eigen_series(jackson):
    for name in ("d_psi", "forward-difference"):
        basic = basic_sequence(named_series(name, jackson), 6)
        assert egf_eigen_check(basic.generator, basic, 6)


def test_eigen_collapse(classical):
    doubled = basic_sequence(DeltaSeries(classical, (0, 2)), 5)
    collapsed = eigen_collapse(doubled)
    assert collapsed.n_psi == tuple(F(2 * n) for n in range(6))
    assert eigen_collapse(basic_sequence(named_series("forward-difference", classical), 5)) is None


def test_first_expansion(jackson):
    basic = monomial_basic(jackson, jackson.cap)
    T = series_to_matrix(named_series("forward-difference", jackson))
    first = first_expansion(T, basic)
    assert first.Q is basic.generator
    assert first.coeff(0) == 0
    assert all(first.coeff(n) == 1 / jackson.factorial(n) for n in range(1, jackson.cap + 1))
    assert expansion_matrix(first).agrees_with(T, jackson.cap)

    # coefficients are taken in powers of the basic sequence's own Q
    forward = basic_sequence(named_series("forward-difference", jackson), jackson.cap)
    in_Q = first_expansion(T, forward)
    assert in_Q.coeffs == (0, 1) + (0,) * (jackson.cap - 1)
    assert expansion_matrix(in_Q).agrees_with(T, jackson.cap)
    with pytest.raises(NotShiftInvariant):
        first_expansion(make_named("x_hat", cap=jackson.cap).matrix, basic)


@pytest.mark.parametrize("label", ["classical", "q-jackson", "half-squares"])
def test_dual_of_skew_operator_is_canonical(label):
    if label == "half-squares":
        psi = make_preset("custom", cap=CAP, n_psi=[F(n * n, 2) for n in range(CAP + 1)])
    else:
        psi = make_preset(label, q=F(1, 2) if label == "q-jackson" else None, cap=CAP)
    # ½ D x D - ⅓ D^3 is degree lowering but no series in any d_psi
    Q = parse_operator("non-psi-series", psi)
    basic = normal_basic_general(Q, psi, CAP)
    XQ = x_hat_Q(Q, basic)
    assert op_commutator(Q, XQ).agrees_with(OpMatrix.identity(CAP), CAP - 1)
    assert not op_commutator(Q, XQ).agrees_with(OpMatrix.identity(CAP), CAP)


def test_dual_of_forward_difference(classical):
    Q = series_to_matrix(named_series("forward-difference", classical))
    XQ = x_hat_Q(Q, basic_sequence(named_series("forward-difference", classical), classical.cap))
    assert XQ.apply(Poly.x(classical.cap)) == Poly((0, -1, 1), classical.cap)


def test_x_hat_q_of_d_psi_is_x_hat_psi(jackson):
    Q = make_named("d_psi", jackson).matrix
    basic = normal_basic_general(Q, jackson, jackson.cap)
    assert x_hat_Q(Q, basic).agrees_with(make_named("x_hat_psi", jackson).matrix, jackson.cap - 1)
    with pytest.raises(BasisMismatch):
        x_hat_Q(Q, normal_basic_general(Q, jackson, 4))
