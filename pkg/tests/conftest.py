from fractions import Fraction

import pytest
from hypothesis import strategies as st

from app.core.psi_sequence import make_preset
from app.utils.helpers import make_rng

CAP = 8

# exact scalars for the algebraic property tests
scalars = st.fractions(min_value=-10, max_value=10, max_denominator=12)


@pytest.fixture
def classical():
    return make_preset("classical", cap=CAP)


@pytest.fixture
def jackson():
    return make_preset("q-jackson", q=Fraction(1, 2), cap=CAP)


@pytest.fixture
def dxd():
    return make_preset("dxd", cap=CAP)


@pytest.fixture(params=["classical", "q-jackson", "ones", "dxd"])
def preset(request):
    return make_preset(request.param, q=Fraction(1, 2) if request.param == "q-jackson" else None, cap=CAP)


@pytest.fixture
def rng():
    return make_rng(7)
