from fractions import Fraction

import pytest

from app.core.exact_core import Poly
from app.core.star_product import (
    StarPoly,
    exp_law_check,
    exp_psi_poly,
    exp_realization_check,
    poisson_build,
    poisson_normalizer_check,
    poisson_operator_check,
    poisson_recurrence_check,
    psi_pincherle_derivation,
    star,
    star_composition_check,
    star_leibniz_check,
    star_power,
    star_power_derivative_check,
    star_power_product_check,
)
from app.helpers.errors import GuardBandExceeded, IndexOutOfCap, MissingParameter, TruncationLoss
from app.utils.helpers import random_poly

F = Fraction


def test_star_powers(preset):
    assert star_power_derivative_check(preset)
    assert all(star_power_product_check(preset, n, k) for n in range(5) for k in range(5))
    with pytest.raises(IndexOutOfCap):
        star_power(preset, preset.cap + 1)


def test_classical_star_is_ordinary_product(classical, rng):
    f = random_poly(rng, 3, classical.cap)
    g = random_poly(rng, 4, classical.cap)
    assert star(f, g, classical) == f * g
    with pytest.raises(TruncationLoss):
        star(Poly.monomial(5, classical.cap), Poly.monomial(4, classical.cap), classical)


def test_star_basis_conversion(jackson):
    p = Poly((1, 2, 3), jackson.cap)
    as_star = StarPoly(p, "x_basis", jackson).to_star_basis()
    assert as_star.interpretation == "star_basis"
    assert as_star.as_poly() == p
    with pytest.raises(MissingParameter):
        StarPoly(p, "y_basis", jackson)


def test_exponential_realization(preset):
    assert exp_realization_check(preset, F(-1, 2), 5)
    assert exp_law_check(preset, 1, F(-1, 3), 4)
    with pytest.raises(GuardBandExceeded):
        exp_law_check(preset, 1, 1, 5)


def test_leibniz_and_composition(preset, rng):
    for _ in range(3):
        f = random_poly(rng, 3, preset.cap)
        g = random_poly(rng, 3, preset.cap)
        assert star_leibniz_check(preset, f, StarPoly(g, "star_basis", preset))
        assert star_composition_check(preset, f, g)


def test_pincherle_derivation_in_x_hat(jackson):
    assert psi_pincherle_derivation([1, 1, F(1, 2), F(1, 6)], jackson) == [1, 1, F(1, 2)]
    with pytest.raises(GuardBandExceeded):
        psi_pincherle_derivation([1] * (jackson.cap + 1), jackson)


def test_classical_poisson_weights(classical):
    model = poisson_build(classical, 1, 3, 4)
    assert model.components[0] == Poly((1, -1, F(1, 2), F(-1, 6), F(1, 24)), classical.cap)
    assert model.components[1] == Poly((0, 1, -1, F(1, 2), F(-1, 6), F(1, 24)), classical.cap)
    assert poisson_recurrence_check(model)
    assert poisson_normalizer_check(model)
    assert poisson_operator_check(model)


@pytest.mark.parametrize("lam", [F(1), F(1, 2)])
def test_poisson_under_deformation(jackson, lam):
    model = poisson_build(jackson, lam, 3, jackson.cap - 3)
    assert model.components[0] == exp_psi_poly(jackson, -lam, jackson.cap - 3)
    assert poisson_recurrence_check(model)
    assert poisson_normalizer_check(model)
    assert poisson_operator_check(model)


def test_poisson_guard_band(classical):
    with pytest.raises(GuardBandExceeded) as info:
        poisson_build(classical, 1, 5, 4)
    assert info.value.allowed == classical.cap
