import pytest

from tfocalc.calculi import CATALOG, check_inference, check_proof, get_system, match_assumption
from tfocalc.corpus import load
from tfocalc.proof import Assumption, ProofTree, Sequent, nodes, parse_sequent as S
from tfocalc.rules import RuleError
from tfocalc.syntax import parse_formula as F

T, T2 = "tau x (P(x))", "tau x (Q(x))"
B = "{ x | x in c }"


def kind(system, conclusion, rule, premises=(), hints=()):
    try:
        check_inference(system, S(conclusion), rule, [S(p) for p in premises], hints)
    except RuleError as e:
        return e.kind
    return None


def test_catalog_is_complete():
    expected = {"GC", "GPC", "GCI", "GPCI", "GF", "GPF", "GFI", "GPFI", "GNF", "GPNF", "GNFI",
                "GPNFI", "GS", "GS'", "GT-FREE", "GT-CLASSICAL", "GT-CLASSICAL-UNSOUND", "GSNF",
                "GTNF", "GTNF'"}
    assert expected <= set(CATALOG)
    extra = set(CATALOG) - expected
    assert all(CATALOG[k].experimental for k in extra)


def test_gs_contents():
    gs = get_system("GS")
    assert {"Ext", "AV", "a=>"} <= set(gs.rules)
    assert gs.pure


def test_gnfi_uses_conditional_reflexivity():
    rules = set(get_system("GNFI").rules)
    assert {"Str", "RefN"} <= rules and "Ref" not in rules


def test_purity_flags():
    assert not get_system("GC").pure
    assert get_system("GPC").pure


def test_unicode_and_relation_suffix():
    assert get_system("GS′") is get_system("GS'")
    assert get_system("GT-CLASSICAL[=]").relation_R == "="
    assert get_system("GT-CLASSICAL[in]").relation_R == "in"
    with pytest.raises(KeyError):
        get_system("NOPE")


def test_universal_right_ok():
    assert kind("GPC", "=> forall x (P(x))", "=>forall", ["=> P(a)"]) is None


@pytest.mark.parametrize("system, conclusion, rule, premises, expected", [
    ("GPC", "a = b => forall x (x = b)", "=>forall", ["a = b => a = b"], "eigenvariable"),
    ("GPC", "exists x (P(x)), P(a) => G", "exists=>", ["P(a), P(a) => G"], "eigenvariable"),
    ("GSNF", "=> b = c", "=>eq", ["b in b => b in c", "b in c => b in b"], "eigenvariable"),
    ("GS'", f"=> {T} = tau y (Q(y))", "ExtAV", ["a = a, P(a) => Q(a)", "a = a, Q(a) => P(a)"],
     "eigenvariable"),
    ("GPC", "forall x (P(x)) => G", "forall=>", [f"P({T2}) => G"], "pure-instantiation"),
    ("GS", "=> exists x (P(x))", "=>exists", [f"=> P({T})"], "pure-instantiation"),
    ("GSNF", "a in { x | not (x in x) } => G", "Abs=>", ["not (a in a) => G"], "stratification"),
    ("GSNF", "=> a in { x | not (x in x) }", "=>Abs", ["=> not (a in a)"], "stratification"),
    ("GS", "=> P(b) & Q(b)", "2LL", ["=> a = b", "=> P(a) & Q(a)"], "atomic"),
    ("GTNF'", "=>", "3LL'", [f"=> a = {B}", "=> a = b", f"{B} = b =>"], "3LL'-two-complex"),
    ("GTNF", "=>", "3LL'", ["=> a = b", "=> a = c", "b in c =>"], "3LL'-identities"),
    ("GTNF'", f"=> {B} = a", "2LL''", [f"=> b = {B}", "=> b = a"], "2LL''-target"),
    ("GTNF", "=> b = c", "2LL'", ["=> a = b", "=> a = c"], "2LL'-target"),
    ("GS-1LL", f"{T} = {T2}, {T} in c =>", "1LL", [f"{T2} in c =>"], "1LL-restriction"),
    ("GS-REF'", "=> G", "Ref'", [f"{T} = {T} => G"], "Ref'-parameter"),
    ("GS", "=> G", "AV", [f"{T} = {T2} => G"], "AV-variants"),
    ("GPC", "=> G", "Ref", ["a = a => G"], "rule-not-in-system"),
    ("GPC", "=> G", "=>W", [], "premise-count"),
    ("GPC", "P(a) => P(b)", "AX", [], "schema"),
    ("GPC", "=> P(a) & Q(a)", "=>and", ["G => P(a)", "=> Q(a)"], "schema"),
    ("GT-CLASSICAL-UNSOUND", f"c = {T}, P(a) => R(a, c)", "tau=>",
     ["P(a) => R(a, c), P(a)", "R(a, c), P(a) => R(a, c)"], "schema"),
])
def test_side_conditions(system, conclusion, rule, premises, expected):
    assert kind(system, conclusion, rule, premises) == expected


@pytest.mark.parametrize("system, conclusion, rule, premises", [
    ("GC", "forall x (P(x)) => G", "forall=>", [f"P({T2}) => G"]),
    ("GSNF", f"a in {B} => G", "Abs=>", ["a in c => G"]),
    ("GTNF", "=>", "3LL'", [f"=> a = {B}", "=> a = b", f"{B} = b =>"]),
    ("GS-1LL", "a = b, P(a) =>", "1LL", ["P(b) =>"]),
    ("GS-REF'", "=> G", "Ref'", ["b = b => G"]),
    ("GS", "=> G", "AV", [f"{T} = tau y (P(y)) => G"]),
    ("GT-CLASSICAL", f"c = {T}, P(a) => R(a, c)", "tau=>",
     ["P(a) => R(a, c), P(a)", "R(a, c), P(a) => R(a, c)"]),
    ("GT-CLASSICAL-UNSOUND", f"c = {T}, P(a) => a = c", "tau=>",
     ["P(a) => a = c, P(a)", "a = c, P(a) => a = c"]),
    ("GNF", "P(a), G => D", "Str", ["E! a, G => D"]),
    ("GNFI", "E! a => G", "RefN", ["a = a => G"]),
    ("GPF", "E! a, forall x (P(x)) => G", "forall=>F", ["P(a) => G"]),
    ("GPC", "P(a) | Q(a) => P(a), Q(a)", "or=>", ["P(a) => P(a), Q(a)", "Q(a) => P(a), Q(a)"]),
    ("GPC", "P(a) => P(a)", "C=>", ["P(a), P(a) => P(a)"]),
    ("GTNF'", f"a = {B}, a = b => {B} = b", "E", [f"a = {B} => {B} = b, a = {B}",
                                                   f"b = {B}, a = {B} => {B} = b"]),
])
def test_valid_instances(system, conclusion, rule, premises):
    assert kind(system, conclusion, rule, premises) is None


def test_extav_node_as_displayed():
    script, tree = load("extav.prf")
    node = tree.children[0]
    assert node.rule == "ExtAV"
    check_inference("GS'", node.conclusion, "ExtAV", [c.conclusion for c in node.children])


def test_error_message_names_rule_and_condition():
    with pytest.raises(RuleError) as e:
        check_inference("GPC", S("a = b => forall x (x = b)"), "=>forall", [S("a = b => a = b")])
    assert "(=>forall)" in str(e.value) and "eigenvariable" in str(e.value)


def test_principal_hint_disambiguates():
    # both P(a) & P(a) occurrences are candidates; the hint names the principal formula
    assert kind("GPC", "P(a) & P(a), P(a) & P(a) => G", "and=>",
                ["P(a), P(a), P(a) & P(a) => G"], (("principal", "P(a) & P(a)"),)) is None


def test_checker_reports_all_errors_with_locations():
    script, tree = load("extax_gtnf.prf")
    errors = check_proof("GSNF", tree, script.assumptions)
    assert {e.kind for e in errors} >= {"rule-not-in-system"}
    assert {e.rule for e in errors} >= {"=>:", "3LL'", "Ref"}
    assert all(e.line is not None and e.path is not None for e in errors)
    assert len(errors) > 3


def test_entry_checks_in_its_own_system():
    script, tree = load("ha_to_forall.prf")
    assert check_proof("GT-CLASSICAL", tree) == []


def test_assumption_matching():
    a = Assumption(S("a = b, P(a), G => D, Q(b)"), frozenset({"a", "b"}))
    assert match_assumption(a, S("c = d, P(c), G => D, Q(d)")) == {"a": F("c = c").lhs,
                                                                   "b": F("d = d").lhs}
    assert match_assumption(a, S("c = d, P(d), G => D, Q(d)")) is None
    assert match_assumption(a, S("c = d, P(c), G, G => D, Q(d)")) is None


def test_leaf_must_match_declared_assumption():
    leaf = ProofTree(S("G => D"), "Hyp")
    errors = check_proof("GPC", leaf, [])
    assert [e.kind for e in errors] == ["assumption"]
    assert check_proof("GPC", leaf, [Assumption(S("G => D"))]) == []


# --- properties over corpus nodes -----------------------------------------------

EIGEN_RULES = {"=>forall", "exists=>", "=>forallF", "exists=>F", "Ext", "ExtAV", "a=>",
               "=>tau", "=>eq", "=>:"}


def _inner_nodes(tree):
    seen = set()
    for _, n in nodes(tree):
        if id(n) not in seen and n.rule not in ("Hyp", "Axiom"):
            seen.add(id(n))
            yield n


def _extend(seq: Sequent, phi) -> Sequent:
    return Sequent(seq.ante + (phi,), seq.succ)


def test_context_insensitivity(corpus_proof):
    entry, script, tree = corpus_proof
    extra = F("Z(z9)")
    for n in _inner_nodes(tree):
        # Cut splits its context between the premises, so the extra formula goes to one side
        prem = [_extend(c.conclusion, extra) if (n.rule != "Cut" or i == 0) else c.conclusion
                for i, c in enumerate(n.children)]
        check_inference(entry.system, _extend(n.conclusion, extra), n.rule, prem, n.hints)


def test_context_extension_can_break_eigenvariable_condition(corpus_proof):
    entry, script, tree = corpus_proof
    for n in _inner_nodes(tree):
        if n.rule not in EIGEN_RULES:
            continue
        new = set().union(*(c.conclusion.params() for c in n.children)) - n.conclusion.params()
        for p in sorted(new):
            extra = F(f"Z({p})")
            with pytest.raises(RuleError) as e:
                check_inference(entry.system, _extend(n.conclusion, extra), n.rule,
                                [_extend(c.conclusion, extra) for c in n.children], n.hints)
            assert e.value.kind in ("eigenvariable", "schema")


def test_weakening_admissible(corpus_proof):
    entry, script, tree = corpus_proof
    phi = F("Z(z9)")
    weakened = ProofTree(_extend(tree.conclusion, phi), "W=>", (tree,))
    assert check_proof(entry.system, weakened, script.assumptions) == []
