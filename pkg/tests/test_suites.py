import pytest

from zpartial.suites import SUITES, SuiteParams, run_suite

SMALL = {
    "thm-2-2": SuiteParams(max_order=8),
    "partial-extend": SuiteParams(max_order=8),
    "prop-2-5": SuiteParams(max_order=8, count=40),
    "characterizations": SuiteParams(max_order=8, count=40),
    "purity": SuiteParams(max_order=16),
    "ext": SuiteParams(),
    "hulls": SuiteParams(max_order=8),
    "pure-collapse": SuiteParams(max_order=8),
    "essential": SuiteParams(max_order=8),
    "fp-preenvelope": SuiteParams(max_order=8),
}


def test_every_suite_has_small_params():
    assert set(SMALL) == set(SUITES)


@pytest.mark.parametrize("name", sorted(SUITES))
@pytest.mark.parametrize("m", [4, 6])
def test_suite_passes_at_small_scale(name, m):
    rep = run_suite(name, m, SMALL[name])
    assert rep.passed, rep.to_json()
    doc = rep.to_json()
    assert doc["suite"] == name and doc["ring"] == str(m)


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope", 4)


def test_seed_changes_sample_but_not_verdict():
    a = run_suite("prop-2-5", 12, SuiteParams(max_order=8, count=30, seed=1)).to_json()
    b = run_suite("prop-2-5", 12, SuiteParams(max_order=8, count=30, seed=1)).to_json()
    c = run_suite("prop-2-5", 12, SuiteParams(max_order=8, count=30, seed=2)).to_json()
    assert a == b
    assert c["passed"] and a["params"]["seed"] != c["params"]["seed"]
