import os
from pathlib import Path

import pytest

import ldl

FIXTURES = Path(os.environ.get("LDL_FIXTURES", Path(__file__).resolve().parents[2] / "fixtures"))


def test_sequents():
    calc = ldl.load(FIXTURES / "bases" / "pair_disjoint.dsb")
    assert calc.kind == "free"
    assert calc.atoms == ["p", "q"]
    assert calc.entails("p, q |- F")
    assert calc.entails("|- T")
    assert not calc.entails("|- p")
    assert calc.derive("p & q |- F").startswith("(LConj")
    assert calc.derive("|- p") is None


def test_classify_and_flatten():
    calc = ldl.free_calculus("atom p q\naxiom p q\n")
    assert calc.classify("p & q") == "contradiction"
    assert calc.classify("p | q") == "satisfiable"
    assert calc.flatten("T & p") == "p"


def test_states():
    assert ldl.free_calculus("atom p q\naxiom p q\n").state_labels() == ["<T>", "<p>", "<q>"]
    free = ldl.free_calculus("atom p q\n")
    assert len(free.state_labels()) == 4
    assert free.state_leq(0, 3)
    assert free.states_jsonl().count("\n") == 4


def test_domains():
    m = (FIXTURES / "domains" / "m_poset.pos").read_text()
    assert ldl.is_l_domain(m)[0]
    ok, lines = ldl.roundtrip(m)
    assert ok and len(lines) == 5
    calc = ldl.domain_calculus(m)
    assert calc.entails("up_a, up_b |- up_c | up_d")
    bad = (FIXTURES / "invalid" / "non_l_domain.pos").read_text()
    assert not ldl.is_l_domain(bad)[0]
    with pytest.raises(ldl.NotAnLDomain):
        ldl.roundtrip(bad)


def test_errors():
    calc = ldl.free_calculus("atom p q\n")
    with pytest.raises(ldl.SyntaxError):
        calc.entails("|- p &")
    with pytest.raises(ldl.DisjointnessViolation):
        calc.entails("|- p | q")
    with pytest.raises(ldl.Error):
        ldl.free_calculus("atom p\naxiom q\n")


def test_suite_subset():
    report = ldl.run_suite(FIXTURES, criteria=[2, 4], max_poset_size=3)
    assert [c["status"] for c in report["criteria"]] == ["PASS", "PASS"]
    assert report["exit_code"] == 0
