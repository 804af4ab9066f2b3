
import pytest

from tfocalc.corpus import ENTRIES, entry, load, read, run_corpus, run_entry
from tfocalc.proof import print_sequent


def test_full_run_matches_expectations():
    report = run_corpus()
    assert report.ok, str(report)
    ids = {e.id for e in ENTRIES}
    assert ids == set(range(1, 18))
    checking = {e.id for e in ENTRIES if not e.must_fail}
    failing = {e.id for e in ENTRIES if e.must_fail}
    assert (len(checking), len(failing)) == (15, 2)


def test_iota_contradiction_checks():
    assert run_entry(entry(11)).passed


def test_russell_must_fail_on_stratification():
    r = run_entry(entry("russell-in-gsnf"))
    assert r.passed
    assert any("stratification" in err for f in r.files for err in f.errors)


def test_iota_retargeted_at_gsnf_fails_on_missing_rules():
    r = run_entry(entry("iota-in-gsnf"))
    assert r.passed and r.files[0].system == "GSNF"


def test_eigenvariable_entry():
    r = run_entry(entry(17))
    assert r.passed and "eigenvariable" in r.files[0].errors[0]


@pytest.mark.parametrize("e", ENTRIES, ids=lambda e: f"{e.id}-{e.name}")
def test_headers_document_notation(e):
    for f in e.files:
        text = read(f)
        assert text.startswith("#")
        declared = e.retarget and load(f)[0].system or e.system
        assert f"system {declared}" in text


# displayed end-sequents, in the fixtures' own notation
DISPLAYED = {
    "extav.prf": "=> forall x (forall y (x = y -> (P(x) <-> Q(y)))) -> tau x (P(x)) = tau y (Q(y))",
    "extav_rule_gci.prf": "G => D, tau x (P(x)) = tau y (Q(y))",
    "thm2_aintro.prf": "G => D",
    "exists_right_unrestricted.prf": "G => D, exists x (P(x))",
    "ha_to_forall.prf": "c = tau x (P(x)) => forall x (P(x) <-> R(x, c))",
    "forall_to_ha.prf": "forall x (P(x) <-> R(x, c)) => c = tau x (P(x))",
    "tau_left_from_ha.prf": "c = tau x (P(x)), G => D",
    "ext_via_t.prf": "forall x (P(x) <-> Q(x)) => tau x (P(x)) = tau x (Q(x))",
    "av_via_t.prf": "=> tau x (P(x)) = tau y (P(y))",
    "converse_ext.prf": "tau x (P(x)) = tau x (Q(x)) => forall x (P(x) <-> Q(x))",
    "iota_contradiction.prf": "=>",
    "ext_in_gsnf.prf": "G => D, { x | x in c } = { x | exists y (x in y & y in c) }",
    "extax_gtnf.prf": "=> forall x (forall y (forall z (z in x <-> z in y) -> x = y))",
    "gtnf_prime_case3.prf": "a = { x | x in c }, a = b => { x | x in c } = b",
    "ll_case1.prf": "b = tau x (P(x)), tau x (P(x)) = tau x (Q(x)) => b = tau x (Q(x))",
    "ll_case2.prf": "tau x (P(x)) = tau x (Q(x)), P(tau x (P(x))) => P(tau x (Q(x)))",
    "ll_case3.prf": "tau x (P(x)) = tau x (Q(x)), tau x (Q(x)) = tau x (S(x)) "
                    "=> tau x (P(x)) = tau x (S(x))",
}


@pytest.mark.parametrize("name, expected", sorted(DISPLAYED.items()))
def test_end_sequents(name, expected):
    _, tree = load(name)
    assert print_sequent(tree.conclusion) == expected


def test_runtime_budget():
    assert run_corpus().seconds < 10
