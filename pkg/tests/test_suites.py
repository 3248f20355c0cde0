import pytest

from equigeom.suites import DEFAULT_TRIALS, FAIL, INCONCLUSIVE, PASS, run_suite


@pytest.mark.parametrize("name", sorted(DEFAULT_TRIALS))
def test_every_suite_passes_a_short_run(name):
    rep = run_suite(name, trials=10, seed=3)
    assert rep.status == PASS, rep.failures
    assert rep.checked >= 10


def test_suite_reports_are_reproducible():
    a = run_suite("carspe", trials=20, seed=11).to_json()
    b = run_suite("carspe", trials=20, seed=11).to_json()
    assert a == b and a["status"] == PASS


def test_zero_degree_bound_is_inconclusive():
    rep = run_suite("carerad", trials=20, seed=42, degree_bound=0)
    assert rep.status == INCONCLUSIVE
    assert rep.unknowns and not rep.failures
    assert all("field:" in u["reproducer"] for u in rep.unknowns)


def test_failures_carry_reproducers():
    rep = run_suite("duality", trials=2, seed=1)
    rep.fail("forced", "field: GF(2)\nvars: x\n", note=1)
    assert rep.status == FAIL
    assert rep.to_json()["failures"][0] == {"reason": "forced", "reproducer": "field: GF(2)\nvars: x\n", "note": 1}


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope")
