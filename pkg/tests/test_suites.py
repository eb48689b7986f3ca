import pytest

from ncg.suites import SUITES, SuiteConfig, run_suite

QUICK = SuiteConfig(bianchi_samples=5, other_samples=2)


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes(name):
    rep = run_suite(name, QUICK)
    assert rep.passed, [c.name for c in rep.failures]
    assert rep.checks


def test_levi_civita_registry():
    rep = run_suite("levi-civita", QUICK)
    assert rep.results["existence registry"] == {
        "m2/killing": "unique",
        "m2c2/killing": "unique",
        "k2/empty": "unique (vacuous)",
    }
    eq = rep.results["one-form tensor square vs bilinear forms"]
    assert eq["t2"]["tensor_equality"] is True
    assert eq["dual"]["tensor_equality"] is False


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")
