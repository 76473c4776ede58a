import pytest

from witt_charge.verify import SUITES, run_all, run_suite


def test_every_suite_passes():
    results = run_all()
    assert [r.name for r in results] == list(SUITES)
    for r in results:
        assert r.passed, (r.name, r.failures)
        assert r.checks > 0


def test_structure_suite_details():
    r = run_suite("structure", depth=2, z=0)
    assert r.passed
    assert r.details["classes"] == 128
    assert r.details["image"] == "Z/32 + (Z/2)^2"


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("no-such-suite")
