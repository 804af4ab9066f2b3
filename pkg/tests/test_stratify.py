from hypothesis import given, strategies as st

from tfocalc.stratify import StratAssignment, Unstratifiable, constraints, is_stratified, stratify
from tfocalc.syntax import (
    BoundVar, Param, And, Or, Imp, Iff, Not, Eq, In, Exists, Forall, parse_formula as F,
)
from oracles import brute_force_stratifiable, satisfies

NAMES = ("x", "y", "z", "w")


def test_membership_forces_levels():
    r = stratify(F("x in y"))
    assert isinstance(r, StratAssignment) and r.levels == {"x": 0, "y": 1}


def test_self_membership_cycle():
    r = stratify(F("not (x in x)"))
    assert isinstance(r, Unstratifiable)
    assert r.cycle == (("x", "x", 1),)
    assert str(r) == "unstratifiable: cycle x-(+1)->x has offset sum +1"


def test_chain_with_identity_is_unstratifiable():
    phi = F("x in y & y in z & x = z")
    assert not is_stratified(phi)
    assert not brute_force_stratifiable(phi, span=3)
    r = stratify(phi)
    assert sum(d for _, _, d in r.cycle) != 0


def test_two_cycle():
    assert not is_stratified(F("x in y & y in x"))
    assert not brute_force_stratifiable(F("x in y & y in x"))


def test_identity_and_abstract_body():
    assert is_stratified(F("x = x"))
    assert is_stratified(F("x in a"))
    # the whole formula reduces to a in a
    assert not is_stratified(F("a in { x | x in a }"))


def test_canonical_minimum_zero_per_component():
    r = stratify(F("x in y & y in z & u = v"))
    assert r.levels == {"x": 0, "y": 1, "z": 2, "u": 0, "v": 0}
    assert str(stratify(F("x in y & y in z"))) == "stratified: x:0 y:1 z:2"


def test_abstract_term_levels():
    # { x | x in c } sits one level above x; membership in it puts a at x's level
    r = stratify(F("a in { x | x in c }"))
    assert r.ok
    assert r.levels["a"] == r.levels["x"] and r.levels["c"] == r.levels["x"] + 1


def test_other_predicates_warn():
    r = stratify(F("P(x) & x in y"))
    assert r.ok and any("P" in w for w in r.warnings)


def test_other_tfos_rejected_with_reason():
    r = stratify(F("tau x (x in y) in z"))
    assert not r.ok and "tau" in r.reason


@st.composite
def membership_formulas(draw, max_vars=4, max_atoms=4):
    names = NAMES[:draw(st.integers(1, max_vars))]
    atoms = draw(st.lists(st.tuples(st.sampled_from((In, Eq)), st.sampled_from(names),
                                    st.sampled_from(names)), min_size=1, max_size=max_atoms))
    bound = draw(st.sets(st.sampled_from(names)))
    term = lambda n: BoundVar(n) if n in bound else Param(n)  # noqa: E731
    phi = None
    for cls, a, b in atoms:
        atom = cls(term(a), term(b))
        if draw(st.booleans()):
            atom = Not(atom)
        if phi is None:
            phi = atom
        else:
            conn = draw(st.sampled_from((And, Or, Imp, Iff)))
            phi = conn(phi, atom) if draw(st.booleans()) else conn(atom, phi)
    for n in sorted(bound):
        phi = draw(st.sampled_from((Forall, Exists)))(n, phi)
    return phi


@given(membership_formulas())
def test_agrees_with_brute_force(phi):
    r = stratify(phi)
    assert r.ok == brute_force_stratifiable(phi)
    if r.ok:
        assert satisfies(r.levels, phi)
        assert min(r.levels.values()) == 0
    else:
        # the witness is a closed walk whose offsets do not cancel
        assert r.cycle[0][0] == r.cycle[-1][1]
        assert sum(d for _, _, d in r.cycle) != 0


@given(membership_formulas())
def test_negation_transparent(phi):
    assert is_stratified(Not(phi)) == is_stratified(phi)


@given(membership_formulas(), membership_formulas())
def test_conjunction_unions_constraints(phi, psi):
    assert sorted(constraints(And(phi, psi))[0]) == sorted(constraints(phi)[0] + constraints(psi)[0])


_RENAME = {"x": "p", "y": "q", "z": "r", "w": "s"}


def _rename(phi):
    match phi:
        case BoundVar(n) | Param(n):
            return type(phi)(_RENAME[n])
        case In(l, r) | Eq(l, r) | And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
            return type(phi)(_rename(l), _rename(r))
        case Not(s):
            return Not(_rename(s))
        case Forall(v, b) | Exists(v, b):
            return type(phi)(_RENAME[v], _rename(b))


@given(membership_formulas())
def test_renaming_invariance(phi):
    assert is_stratified(_rename(phi)) == is_stratified(phi)
