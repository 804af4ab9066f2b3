import pytest

from tfocalc.calculi import check_proof
from tfocalc.corpus import load
from tfocalc.cutelim import (
    CutElimError, CutMeasure, eliminate_cuts, reduce_one, subst_proof, trace,
)
from tfocalc.proof import count_rule, height, nodes, parse_script, script_to_tree
from tfocalc.binding import free_params as free_params_of
from tfocalc.syntax import Param


def tree(text):
    s = parse_script(text)
    return s.system, script_to_tree(s), s.assumptions


def assert_tree_measures_decrease(step):
    for s in step.substeps:
        if s.parent is not None:
            assert s.measure < step.substeps[s.parent].measure


def eliminate_and_check(system, p, assumptions=()):
    out = eliminate_cuts(system, p, assumptions)
    assert count_rule(out, "Cut") == 0
    assert out.conclusion.same(p.conclusion)
    assert check_proof(system, out, assumptions) == []
    return out


AND_CUT = """system GPC
proof and_cut
1. P(a), Q(a) => P(a) ; AX
2. P(a), Q(a) => Q(a) ; AX
3. P(a), Q(a) => P(a) & Q(a) ; =>and [1 2]
4. P(a), Q(a) => Q(a) ; AX
5. P(a), Q(a) => P(a) ; AX
6. P(a), Q(a) => Q(a) & P(a) ; =>and [4 5]
7. P(a) & Q(a) => Q(a) & P(a) ; and=> [6]
8. P(a), Q(a) => Q(a) & P(a) ; Cut [3 7]
"""

FORALL_CUT = """system GPC
proof forall_cut
1. P(a) => P(a) ; AX
2. forall y (P(y)) => P(a) ; forall=> [1]
3. forall y (P(y)) => forall x (P(x)) ; =>forall [2]
4. P(b) => P(b) ; AX
5. forall x (P(x)) => P(b) ; forall=> [4]
6. forall y (P(y)) => P(b) ; Cut [3 5]
"""

AXIOM_CUT = """system GPC
proof axiom_cut
1. P(a) => P(a) ; AX
2. P(a), Q(a) => Q(a) ; AX
3. P(a), Q(a) => P(a) ; AX
4. P(a), Q(a) => Q(a) & P(a) ; =>and [2 3]
5. P(a), Q(a) => Q(a) & P(a) ; Cut [1 4]
"""

WEAKENING_CUT = """system GPC
proof weak_cut
1. G => G ; AX
2. not G, G => ; not=> [1]
3. not G, G => P(a) ; =>W [2]
4. P(a), Q(a) => Q(a) ; AX
5. P(a), Q(a) => Q(a) ; AX
6. P(a), Q(a) => Q(a) & Q(a) ; =>and [4 5]
7. not G, G, Q(a) => Q(a) & Q(a) ; Cut [3 6]
"""

def test_cut_free_input_unchanged():
    _, p = load("extav.prf")
    assert eliminate_cuts("GS'", p) == p


def test_a_intro_derivation():
    script, p = load("thm2_aintro.prf")
    out = eliminate_and_check("GCI", p, script.assumptions)
    steps = trace("GCI", p, script.assumptions)
    assert len(steps) == 1
    for st in steps:
        assert_tree_measures_decrease(st)
    assert steps[-1].after.conclusion.same(p.conclusion)
    assert height(out) <= height(p)


def test_axiom_cut_is_one_step():
    system, p, _ = tree(AXIOM_CUT)
    steps = trace(system, p)
    assert len(steps) == 1 and len(steps[0].substeps) == 1
    assert steps[0].kind == "axiom"
    out = steps[0].after
    assert out == p.children[1]  # the right premise, context already fitting


def test_conjunction_cut_splits_into_smaller_cuts():
    system, p, _ = tree(AND_CUT)
    step = reduce_one(system, p)
    assert step.kind == "principal-both"
    assert step.measure == CutMeasure(1, 5)
    children = [s for s in step.substeps if s.parent == 0]
    assert children and all(s.measure.cut_formula_complexity == 0 for s in children)
    assert_tree_measures_decrease(step)
    eliminate_and_check(system, p)


def test_universal_cut_substitutes_eigenvariable():
    system, p, _ = tree(FORALL_CUT)
    step = reduce_one(system, p)
    assert step.kind == "principal-both"
    out = eliminate_and_check(system, p)
    assert out.conclusion.params() == {"b"}
    assert all("a" not in n.conclusion.params() for _, n in nodes(out))


def test_weakening_introduced_cut_formula():
    system, p, _ = tree(WEAKENING_CUT)
    step = reduce_one(system, p)
    assert step.kind == "weakening-introduced"
    eliminate_and_check(system, p)


def test_two_cut_proof_handles_topmost_first():
    text = """system GPC
proof two_cuts
1. P(a) => P(a) ; AX
2. P(a) => P(a), Q(a) ; =>W [1]
3. Q(a), P(a) => P(a) ; AX
4. P(a), P(a) => P(a), P(a) ; Cut [2 3]
5. P(a), G => P(a) ; AX
6. P(a), P(a), G => P(a), P(a) ; Cut [4 5]
"""
    system, p, _ = tree(text)
    steps = trace(system, p)
    assert len(steps) == 2
    # the first reduction targets the upper cut (line 4)
    first_cut = steps[0].substeps[0]
    assert first_cut.before.conclusion.same(p.children[0].conclusion)
    for s in steps:
        assert_tree_measures_decrease(s)
    assert count_rule(steps[-1].after, "Cut") == 0


def test_reduce_one_rejects_lower_cut():
    text = """system GPC
proof two_cuts
1. P(a) => P(a) ; AX
2. P(a) => P(a) ; Cut [1 1]
3. P(a) => P(a) ; Cut [2 1]
"""
    system, p, _ = tree(text)
    with pytest.raises(CutElimError, match="not a topmost cut"):
        reduce_one(system, p, ())
    assert reduce_one(system, p, (0,)).after.children[0].rule != "Cut"


def test_unsupported_system():
    script, p = load("ext_in_gsnf.prf")
    with pytest.raises(CutElimError, match="GSNF"):
        eliminate_cuts("GSNF", p, script.assumptions)


def test_invalid_input_rejected():
    system, p, _ = tree("system GPC\nproof bad\n1. P(a) => Q(a) ; AX\n")
    with pytest.raises(CutElimError):
        eliminate_cuts(system, p)


def test_iota_contradiction_needs_unsupported_system():
    script, p = load("iota_contradiction.prf")
    with pytest.raises(CutElimError):
        eliminate_cuts(script.system, p)


def test_contraction_on_cut_formula():
    text = """system GPC
proof contr
1. P(a) => P(a) ; AX
2. forall y (P(y)) => P(a) ; forall=> [1]
3. forall y (P(y)) => forall x (P(x)) ; =>forall [2]
4. P(b), P(c) => P(b) ; AX
5. P(b), P(c) => P(c) ; AX
6. P(b), P(c) => P(b) & P(c) ; =>and [4 5]
7. forall x (P(x)), P(c) => P(b) & P(c) ; forall=> [6]
8. forall x (P(x)), forall x (P(x)) => P(b) & P(c) ; forall=> [7]
9. forall x (P(x)) => P(b) & P(c) ; C=> [8]
10. forall y (P(y)) => P(b) & P(c) ; Cut [3 9]
"""
    system, p, _ = tree(text)
    step = reduce_one(system, p)
    assert_tree_measures_decrease(step)
    assert any(s.copies != (1, 1) for s in step.substeps)
    eliminate_and_check(system, p)


def test_eigenvariable_renaming_in_substitution():
    text = """system GPC
proof eig
1. P(a), Q(b) => P(a) ; AX
2. P(a), exists x (Q(x)) => P(a) ; exists=> [1]
"""
    system, p, _ = tree(text)
    out = subst_proof(p, "a", Param("b"))
    assert check_proof(system, out) == []
    assert out.conclusion.params() == {"b"}
    assert height(out) == height(p)


T1, T2 = "tau x (P(x))", "tau y (P(y))"


def test_cut_on_leibniz_conclusion_is_parametric_on_the_right():
    text = """system GS
proof ll_cut
1. a = b, P(a) => a = b ; AX
2. a = b, P(a) => P(a) ; AX
3. a = b, P(a) => P(b) ; 2LL [1 2]
4. P(b), G => P(b) ; AX
5. P(b), G => G ; AX
6. P(b), G => P(b) & G ; =>and [4 5]
7. a = b, P(a), G => P(b) & G ; Cut [3 6]
"""
    system, p, _ = tree(text)
    step = reduce_one(system, p)
    assert step.kind == "parametric-right"
    eliminate_and_check(system, p)


def test_cut_on_extensionality_conclusion():
    text = f"""system GS
proof ext_cut
1. P(a) => P(a) ; AX
2. => {T1} = {T2} ; Ext [1 1]
3. {T1} = {T2}, G => G ; AX
4. {T1} = {T2}, G => {T1} = {T2} ; AX
5. {T1} = {T2}, G => G & {T1} = {T2} ; =>and [3 4]
6. G => G & {T1} = {T2} ; Cut [2 5]
"""
    system, p, _ = tree(text)
    assert reduce_one(system, p).kind == "parametric-right"
    eliminate_and_check(system, p)


def test_cut_permutes_above_alphabetic_variant_rule():
    text = f"""system GS
proof av_cut
1. {T1} = {T2}, P(c) => P(c) ; AX
2. P(c) => P(c) ; AV [1]
3. P(c) => P(c) ; AX
4. P(c) => P(c) & P(c) ; =>and [3 3]
5. P(c) => P(c) & P(c) ; Cut [2 4]
"""
    system, p, _ = tree(text)
    step = reduce_one(system, p)
    assert step.kind == "parametric-left"
    out = eliminate_and_check(system, p)
    assert out.rule == "AV"


def test_extav_rule_derivation_with_open_premises():
    script, p = load("extav_rule_gci.prf")
    # the cut formula of the lower cut comes from an open assumption and
    # cannot be reduced away; that is reported, not hidden
    with pytest.raises(CutElimError, match="assumption"):
        eliminate_cuts("GCI", p, script.assumptions)


def test_leibniz_whose_premise_repeats_the_principal_formula():
    # with t1 = t2 = b every formula in sight is b = b; the cut formula on the
    # left is still principal for (2LL), not a copy of the identity premise
    system, p, _ = tree("""system GPCI
proof degenerate
1. b = b, b = b => b = b ; AX
2. b = b & b = b => b = b ; and=> [1]
3. b = b => b = b ; AX
4. b = b, b = b => b = b ; AX
5. b = b => b = b ; Ref [4]
6. b = b => b = b ; 2LL [3 5]
7. b = b & b = b => b = b ; Cut [2 6]
8. G, b = b => b = b ; AX
9. b = b => G -> b = b ; =>imp [8]
10. b = b & b = b => G -> b = b ; Cut [7 9]
""")
    eliminate_and_check(system, p)


def test_substitution_renames_a_shared_eigenvariable_once():
    _, p = load("forall_to_ha.prf")
    q = subst_proof(p, "c", Param("a"))
    assert check_proof("GT-CLASSICAL", q) == []
    eigen = [free_params_of(k.conclusion) - free_params_of(q.conclusion) for k in q.children]
    assert len(eigen[0]) == 1 and eigen[0] == eigen[1] and "a" not in eigen[0]
