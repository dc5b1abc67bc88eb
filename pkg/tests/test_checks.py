import pytest

from uoplab import checks
from uoplab.rootdata import preset


def test_hecke_suite_subset():
    results = checks.hecke_suite(preset("gl2"), 1, only=("quadratic", "centre"))
    assert [r.name.split(": ")[1] for r in results] == [
        "quadratic relation", "dot-invariant thetas are central (l <= 4)"]
    assert all(r.passed for r in results)


def test_hecke_suite_rejects_unknown_key():
    with pytest.raises(ValueError):
        checks.hecke_suite(preset("gl2"), 1, only=("nope",))


def test_small_suites_pass_and_serialize():
    results = checks.coeffs_suite(1, 50) + checks.rootdata_suite(preset("sl2"), 1, 1)
    assert all(r.passed for r in results)
    doc = results[0].to_json()
    assert doc["passed"] is True and doc["name"].startswith("coeffs")
    assert results[0].line().startswith("PASS")


def test_run_check_turns_errors_into_failures():
    def boom():
        raise AssertionError("bad")

    r = checks.run_check("x", boom)
    assert not r.passed and "bad" in r.detail
    assert r.line().startswith("FAIL")
