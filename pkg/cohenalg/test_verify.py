import pytest

from cohenalg.errors import PreconditionError
from cohenalg.result_schema import SuiteReport, validate_result
from cohenalg.verify import SUITE_NAMES, SUITES, run_suite


@pytest.mark.parametrize(
    "name,trials",
    [
        ("basis", None),
        ("torsion", None),
        ("pairing", None),
        ("equalizer", None),
        ("lemma2_10", 5),
        ("relations", 5),
        ("projection", 5),
        ("lift", 2),
        ("theta-inj", None),
    ],
)
def test_suite_passes(name, trials):
    (report,) = run_suite(name, seed=3, trials=trials)
    assert report.suite == name
    assert report.checks
    assert report.passed, [check.name for check in report.failures]


def test_reports_are_reproducible():
    first = run_suite("relations", seed=11, trials=4)[0]
    second = run_suite("relations", seed=11, trials=4)[0]
    assert first.model_dump() == second.model_dump()


def test_unknown_suite():
    with pytest.raises(PreconditionError, match="Unknown suite"):
        run_suite("nosuchsuite")


def test_registry():
    assert SUITE_NAMES[-1] == "all"
    assert set(SUITE_NAMES[:-1]) == set(SUITES)
    for required in ("lemma2_10", "shuffle", "lie", "pairing", "coalg", "theta-inj", "lift", "torsion"):
        assert required in SUITES


def test_report_bookkeeping():
    report = SuiteReport(suite="demo", seed=0)
    report.add("holds", True)
    report.add("fails", False, "counterexample")
    assert not report.passed
    assert [check.detail for check in report.failures] == ["counterexample"]
    restored = validate_result("suite_report", report.model_dump())
    assert restored == report
    with pytest.raises(ValueError, match="Unknown model"):
        validate_result("nothing", {})
