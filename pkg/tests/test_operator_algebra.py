from fractions import Fraction

import pytest

from app.core import operator_algebra
from app.core.delta_series import DeltaSeries, series_to_matrix
from app.core.exact_core import Poly
from app.core.operator_algebra import (
    classical_bridge_check,
    commutant_report,
    d_zero_series_check,
    dilation_product_check,
    ghw_exponential_check,
    ghw_leibniz_check,
    heisenberg_check,
    is_shift_invariant,
    jackson_factorization_check,
    leibniz_product_check,
    number_operator_check,
    pincherle,
    pincherle_series_check,
    proportional_sequence,
    psi_derivatives_commute,
    q_difference_quotient,
    shift_invariant_by_coefficients,
)
from app.core.OperatorProvider import make_named
from app.core.psi_sequence import make_preset
from app.helpers.errors import (
    BadSample,
    CapMismatch,
    GuardBandExceeded,
    IdentityFailure,
    MissingParameter,
    TruncationLoss,
)
from app.utils.helpers import random_poly

HALF = Fraction(1, 2)


def test_heisenberg_and_number_operator(preset):
    assert heisenberg_check(preset)
    assert number_operator_check(preset)


def test_normal_ordering(preset):
    assert ghw_leibniz_check(preset, 1, 2)
    assert ghw_leibniz_check(preset, 2, 2)
    with pytest.raises(GuardBandExceeded) as info:
        ghw_leibniz_check(preset, 2, 3)
    assert info.value.requested == 5


def test_exponential_commutation(jackson):
    assert ghw_exponential_check(jackson, HALF, Fraction(-2, 3), 3)
    with pytest.raises(GuardBandExceeded):
        ghw_exponential_check(jackson, 1, 1, 5)


def test_named_operators_act_on_monomials(jackson):
    x3 = Poly.monomial(3, jackson.cap)
    assert make_named("d_psi", jackson).apply(x3) == Poly.monomial(2, jackson.cap, Fraction(7, 4))
    assert make_named("n_hat_psi", jackson).apply(Poly.monomial(2, jackson.cap)) == Poly.monomial(
        2, jackson.cap, Fraction(7, 4)
    )
    assert make_named("dilation", q=HALF, cap=4).apply(Poly.monomial(2, 4)) == Poly.monomial(2, 4, Fraction(1, 4))
    with pytest.raises(MissingParameter):
        make_named("d_q", cap=4)
    with pytest.raises(MissingParameter):
        make_named("d_psi", cap=4)


def test_n_hat_top_column_depends_on_growth():
    custom = make_preset("custom", cap=3, n_psi=[0, 1, 2, 3])
    assert make_named("n_hat_psi", custom).matrix.valid_degree == 2
    assert make_named("n_hat_psi", make_preset("classical", cap=3)).matrix.valid_degree == 3


def test_jackson_derivative():
    q = HALF
    assert jackson_factorization_check(q, cap=6)
    assert q_difference_quotient(q, Poly.monomial(3, 6)) == Poly.monomial(2, 6, Fraction(7, 4))
    assert dilation_product_check(q, Fraction(1, 3), cap=6)


def test_leibniz_product_rules(preset, rng):
    for _ in range(5):
        f = random_poly(rng, 3, preset.cap)
        g = random_poly(rng, 3, preset.cap)
        assert leibniz_product_check(preset, f, g)
    with pytest.raises(TruncationLoss):
        leibniz_product_check(preset, Poly.monomial(5, preset.cap), Poly.monomial(4, preset.cap))


def test_d_zero_as_series_in_D():
    assert all(d_zero_series_check(m, cap=8) for m in range(9))


def test_classical_bridge():
    assert classical_bridge_check(5, cap=8)
    with pytest.raises(GuardBandExceeded):
        classical_bridge_check(9, cap=8)


def test_shift_invariance(jackson):
    T = series_to_matrix(DeltaSeries(jackson, (0, 1, 3, Fraction(-1, 2))))
    assert is_shift_invariant(T, jackson, [1, -HALF])
    assert shift_invariant_by_coefficients(T, jackson)
    x_hat = make_named("x_hat", cap=jackson.cap).matrix
    assert not is_shift_invariant(x_hat, jackson, [1])
    with pytest.raises(BadSample):
        is_shift_invariant(T, jackson, [])


def test_identity_shift_hides_non_invariance(jackson):
    # E^0 commutes with everything while the coefficient test still sees x_hat
    x_hat = make_named("x_hat", cap=jackson.cap).matrix
    with pytest.raises(IdentityFailure, match="verdicts disagree"):
        is_shift_invariant(x_hat, jackson, [0])


def test_disagreeing_verdicts_raise(jackson, monkeypatch):
    monkeypatch.setattr(operator_algebra, "shift_invariant_by_coefficients", lambda T, psi: True)
    x_hat = make_named("x_hat", cap=jackson.cap).matrix
    with pytest.raises(IdentityFailure):
        is_shift_invariant(x_hat, jackson, [1])
    T = series_to_matrix(DeltaSeries(jackson, (0, 1)))
    assert is_shift_invariant(T, jackson, [1])


def test_pincherle_of_a_series(preset):
    assert pincherle_series_check(preset, [1, 2, 0, -3, HALF])


def test_pincherle_of_d_psi_is_identity(jackson):
    d_psi = make_named("d_psi", jackson).matrix
    comm = pincherle(d_psi, jackson)
    assert comm.agrees_with(make_named("identity", cap=jackson.cap).matrix, jackson.cap - 1)
    with pytest.raises(CapMismatch):
        pincherle(d_psi, jackson.with_cap(6))


def test_commutant(classical, dxd):
    double = proportional_sequence(classical, 2)
    assert psi_derivatives_commute(classical, double)
    assert not psi_derivatives_commute(classical, dxd)
    rows = commutant_report([classical, double, dxd])
    flagged = [(r["psi"], r["phi"]) for r in rows if r["commute"] and not r["equal"]]
    assert flagged == [("classical", "2*classical")]
