"""Tests for the randomized property-suite harness itself."""

import pytest

from orlicz import (
    Expectile,
    Failure,
    Power,
    QuantileStep,
    SuiteReport,
    find_convexity_witness,
    run_suite,
)
from orlicz.properties import DEFAULT_TRIALS, SUITES


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes_on_small_run(name):
    trials = {"axioms": 24, "convexity": 8, "gg-convexity": 8, "collapse": 16, "cxls": 16}[name]
    report = run_suite(name, trials=trials, seed=11)
    assert report.passed, report.summary() + "\n" + "\n".join(str(f) for f in report.failures)
    assert report.suite == name
    assert "passed" in report.summary()


def test_suites_are_deterministic():
    a = run_suite("axioms", trials=20, seed=5)
    b = run_suite("axioms", trials=20, seed=5)
    assert a == b
    c = run_suite("cxls", trials=12, seed=9)
    d = run_suite("cxls", trials=12, seed=9)
    assert c == d


def test_unknown_suite_rejected():
    with pytest.raises(KeyError):
        run_suite("no-such-suite")
    assert set(DEFAULT_TRIALS) == set(SUITES)


def test_failure_rendering():
    f = Failure(seed=3, trial=17, inputs="phi=power:2.0 X=(1.0, 2.0)", observed="1.0", expected="2.0")
    text = str(f)
    assert "trial 17" in text
    assert "power:2.0" in text
    assert "observed 1.0" in text
    r = SuiteReport("axioms", 5, (f,))
    assert not r.passed
    assert "FAILED (1 failures)" in r.summary()


def test_witness_search_rejects_convex_families():
    assert find_convexity_witness(Power(2.0)) is None
    assert find_convexity_witness(Expectile(0.8)) is None


def test_witness_search_finds_quantile_violation():
    w = find_convexity_witness(QuantileStep(0.3))
    assert w is not None
    assert w.violation > 0.0
    assert w.premium_mid > w.bound + 1e-9


def test_convexity_notes_carry_witnesses():
    report = run_suite("convexity", trials=6, seed=2)
    assert report.passed
    # every non-convex family contributes one recorded witness
    assert any("quantile:0.3" in n for n in report.notes)
    assert any("gm" in n for n in report.notes)


def test_collapse_note_pins_shift_witness():
    report = run_suite("collapse", trials=10, seed=4)
    assert report.passed
    assert any("shift witness" in n for n in report.notes)
