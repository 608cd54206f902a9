import pytest

from twistcat.actions import (ActionMorphism, TwistedAction, action_check,
                              action_morphism_check, rep_category_compose, untwisted_action_check)
from twistcat.algebra import cyclic, trivial_group
from twistcat.catgroup import catgroup_from_crossed, codiscrete_catgroup, discrete_catgroup
from twistcat.errors import InputError
from twistcat.etatwist import EtaMap, eta_invariance_check
from twistcat.fincat import Functor, codiscrete, codiscrete_on, group_category
from twistcat.fixtures import negation_crossed, rg1_action, schur_actions
from twistcat.veccat import LinearFunctor


def test_rg1_exhaustive():
    rep = action_check(rg1_action(), preconditions=True)
    assert rep.ok
    assert {r.mode for r in rep.laws} == {"exhaustive"}


def test_trivial_group_acts_identically():
    G = discrete_catgroup(trivial_group())
    V = codiscrete(3)
    a = TwistedAction(G, V, lambda x, v: v, lambda k, f: f)
    assert action_check(a, preconditions=True).ok


def test_untwisted_verdicts_agree():
    good = rg1_action()
    # negate the first coordinate of a morphism only: breaks functoriality
    bad = TwistedAction(good.group, good.target, good.rho_obj,
                        lambda k, f: ((-f[0]) % 3 if k[0] else f[0], f[1]), name="half")
    for a in (good, bad):
        assert action_check(a).ok == untwisted_action_check(a).ok
    assert not action_check(bad).ok


def test_object_law_failure_is_reported():
    a = rg1_action()
    bad = TwistedAction(a.group, a.target, lambda x, v: (1,) if x else v, a.rho_mor)
    assert not action_check(bad).ok


# ---------------------------------------------------------------- a small twisted action

def negating_twist():
    """(Z/2, Z/4, negation, trivial) acting trivially on B(Z/2), twisted by h -> -h along f = 1."""
    cm = negation_crossed(5, 4)
    G = catgroup_from_crossed(cm)
    V = group_category(cyclic(2))
    e = EtaMap(G, V, lambda k, f: ((-k[0]) % 4 if f else k[0], k[1]), "negate")
    return TwistedAction(G, V, lambda x, v: v, lambda k, f: f, e, "trivial")


def test_small_twisted_action_is_an_action():
    a = negating_twist()
    assert action_check(a, preconditions=True).ok
    assert eta_invariance_check(a.eta, a).ok


def test_identity_morphism_passes():
    for a in (rg1_action(), negating_twist()):
        assert action_morphism_check(ActionMorphism.identity(a)).ok


def test_broken_etacom_is_named():
    a = negating_twist()
    V = a.target
    F = Functor(V, V, lambda x: x, lambda f: 0, "collapse")
    rep = action_morphism_check(ActionMorphism(a, a, F))
    r = rep.law("etacom")
    assert not r.ok
    assert r.counterexample["args"] == {"k": [1, 0], "f": 1}
    assert rep.law("semimap-morphisms").ok and rep.law("F.preserves-composition").ok


def test_zero_functor_on_vector_categories():
    shear, _ = schur_actions(2)
    V = shear.target
    assert V.mor.dim == 2
    m = ActionMorphism(shear, shear, LinearFunctor.zero(V, V), "0")
    assert action_morphism_check(m).ok


# ---------------------------------------------------------------- composing morphisms

def scaling(a1, a2, c):
    F = Functor(a1.target, a2.target, lambda x: (c * x[0] % 3,),
                lambda f: ((c * f[0][0] % 3,), (c * f[1][0] % 3,)), f"x{c}")
    return ActionMorphism(a1, a2, F, f"x{c}")


def four_actions():
    a = rg1_action()
    G = a.group
    out = [a]
    for i in range(3):
        V = codiscrete_on([(x,) for x in range(3)], f"copy{i}")
        out.append(TwistedAction(G, V, a.rho_obj, a.rho_mor, name=f"neg{i}"))
    return out


def test_compose_with_identity():
    a1, a2, _, _ = four_actions()
    m = scaling(a1, a2, 2)
    assert rep_category_compose(m, ActionMorphism.identity(a1)) is m
    assert rep_category_compose(ActionMorphism.identity(a2), m) is m


def test_composite_passes_and_is_associative():
    a1, a2, a3, a4 = four_actions()
    m1, m2, m3 = scaling(a1, a2, 2), scaling(a2, a3, 2), scaling(a3, a4, 0)
    for m in (m1, m2, m3):
        assert action_morphism_check(m).ok
    m21 = rep_category_compose(m2, m1)
    assert action_morphism_check(m21).ok
    left = rep_category_compose(m3, m21)
    right = rep_category_compose(rep_category_compose(m3, m2), m1)
    V = a1.target
    for v in V.objects():
        assert left.F.obj(v) == right.F.obj(v)
    for f in V.morphisms():
        assert left.F.mor(f) == right.F.mor(f)
    # x2 twice is the identity on F_3
    assert all(m21.F.mor(f) == f for f in V.morphisms())


def test_chain_mismatch():
    a1, a2, a3, _ = four_actions()
    with pytest.raises(InputError):
        rep_category_compose(scaling(a1, a2, 1), scaling(a2, a3, 1))


def test_morphism_needs_common_group():
    a = rg1_action()
    other = TwistedAction(codiscrete_catgroup(cyclic(2)), a.target, a.rho_obj, a.rho_mor)
    with pytest.raises(InputError):
        ActionMorphism(a, other, Functor.identity(a.target))
