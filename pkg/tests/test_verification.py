from fractions import Fraction

import pytest

from app.core.psi_sequence import make_preset
from app.helpers.errors import InputError
from app.models.suites import SUITES
from app.models.VerificationModel import VerificationModel

SAMPLES = [Fraction(1), Fraction(-1, 2)]


def test_manifest_order():
    assert list(SUITES)[:4] == ["ghw", "leibniz", "binomial", "note21"]
    assert list(SUITES)[-1] == "commutant"
    assert [n for n, s in SUITES.items() if s.report_only] == ["note21", "commutant"]


@pytest.mark.parametrize("psi", [make_preset("classical", cap=8), make_preset("q-jackson", q=Fraction(1, 2), cap=8)])
def test_cheap_suites_pass(psi):
    model = VerificationModel(psi, seed=3, trials=2, shift_samples=SAMPLES)
    report = model.run(["special", "bridge", "integration", "classifier"])
    # results follow the manifest, not the request
    assert [s.name for s in report.suites] == ["integration", "bridge", "classifier", "special"]
    assert report.ok, report.to_text()


def test_report_only_never_fails():
    psi = make_preset("q-jackson", q=Fraction(1, 2), cap=8)
    report = VerificationModel(psi, seed=0, trials=1, shift_samples=SAMPLES).run(["note21"])
    (suite,) = report.suites
    assert suite.status == "REPORT-ONLY" and suite.report_only
    assert report.ok


def test_unknown_suite():
    psi = make_preset("classical", cap=8)
    with pytest.raises(InputError):
        VerificationModel(psi, seed=0, trials=1, shift_samples=SAMPLES).run(["nope"])


@pytest.mark.parametrize("name", list(SUITES))
@pytest.mark.parametrize("psi", [make_preset("classical", cap=8), make_preset("q-jackson", q=Fraction(1, 2), cap=8)], ids=["classical", "jackson"])
def test_every_suite_passes_and_is_reproducible(psi, name):
    first = VerificationModel(psi, seed=11, trials=2, shift_samples=SAMPLES).run_suite(name)
    again = VerificationModel(psi, seed=11, trials=2, shift_samples=SAMPLES).run_suite(name)
    assert first.status in {"PASS", "REPORT-ONLY"}, first.details
    assert first.details == again.details


def test_randomized_suites_run_their_minimum_trials():
    assert SUITES["classifier"].min_trials == 20
    assert SUITES["expansion-roundtrip"].min_trials == 50
    psi = make_preset("classical", cap=8)
    report = VerificationModel(psi, seed=0, trials=1, shift_samples=SAMPLES).run(["classifier", "expansion-roundtrip"])
    expansion, classifier = report.suites
    assert any("20 random delta series" in d for d in classifier.details)
    assert any("50 random T" in d for d in expansion.details)
    assert any("Q=forward-difference" in d for d in expansion.details)
    assert report.ok, report.to_text()
