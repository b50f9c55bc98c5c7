from fractions import Fraction
from math import factorial

import pytest

from app.core.special_functions import (
    exp_addition_check,
    exp_addition_tables,
    exp_psi,
    hyperbolic_component,
    limit_deformation_check,
    pythagorean_defect,
    sieve_partition_check,
    trig_psi,
)
from app.helpers.errors import BadResidue, BadSample, IndexOutOfCap, MissingParameter

F = Fraction


def test_classical_exp_and_trig(classical):
    assert exp_psi(classical, 6).coeffs == tuple(F(1, factorial(k)) for k in range(7))
    assert trig_psi(classical, "sin", 5).coeffs == (0, 1, 0, F(-1, 6), 0, F(1, 120))
    assert trig_psi(classical, "cosh", 4).coeffs == (1, 0, F(1, 2), 0, F(1, 24))
    with pytest.raises(MissingParameter):
        trig_psi(classical, "tan", 4)
    with pytest.raises(IndexOutOfCap):
        exp_psi(classical, classical.cap + 1)


def test_sieve_partition(preset):
    assert all(sieve_partition_check(preset, m, preset.cap) for m in (2, 3, 4))
    h = hyperbolic_component(preset, 3, 1, 7)
    assert [k for k, c in enumerate(h.coeffs) if c != 0] == [1, 4, 7]
    with pytest.raises(BadResidue):
        hyperbolic_component(preset, 3, 3, 4)
    with pytest.raises(BadResidue):
        hyperbolic_component(preset, 1, 0, 4)


def test_pythagorean_defect(classical, jackson):
    assert all(c == 0 for c in pythagorean_defect(classical, 8))
    defect = pythagorean_defect(jackson, 4)
    assert defect[2] == F(-1, 3)


def test_limit_deformation():
    report = limit_deformation_check([F(3, 4), F(1, 4), F(1, 2)], 4)
    assert report.samples == (F(1, 4), F(1, 2), F(3, 4))
    assert report.toward_exp and report.toward_geometric
    # 1/2_q! = 1/(1 + q)
    assert report.rows[2] == (F(4, 5), F(2, 3), F(4, 7))
    with pytest.raises(BadSample):
        limit_deformation_check([F(1, 2), 1], 3)


def test_exponential_addition(preset):
    assert exp_addition_check(preset, 6)
    lhs, rhs = exp_addition_tables(preset, 3)
    assert lhs[1, 2] == preset.psi_vals[1] * preset.psi_vals[2]
    assert rhs[2, 2] == 0


def test_series_arithmetic(jackson):
    cos = trig_psi(jackson, "cos", 6)
    sin = trig_psi(jackson, "sin", 6)
    total = cos + sin
    assert total.coeffs[:2] == (1, 1)
    assert (cos * cos).coeffs[0] == 1
