import itertools

import pytest

import frozen as fz
import oracles as o
from twistcat.algebra import (GroupAction, GroupHom, cyclic, group_check, hom_check, sign_of,
                              symmetric3)
from twistcat.catgroup import (CategoricalGroup, CrossedModule, catgroup_axioms_check,
                               catgroup_from_crossed, codiscrete_catgroup, crossed_from_catgroup,
                               discrete_catgroup, group_catgroup, peiffer_check, roundtrip_check)
from twistcat.errors import PreconditionError, RefusalError
from twistcat.fincat import RuleCategory
from twistcat.fixtures import affine_crossed


def sign_module():
    K, S3 = cyclic(2), symmetric3()
    return CrossedModule(K, S3, GroupAction.trivial(K, 6),
                         GroupHom(S3, K, [sign_of(S3.label(g)) for g in S3.elements()]))


# ---------------------------------------------------------------- Peiffer identities

def test_identity_module_passes():
    K = cyclic(2)
    cm = CrossedModule(K, K, GroupAction.trivial(K, 2), GroupHom(K, K, [0, 1]))
    rep = peiffer_check(cm)
    assert rep.ok
    assert rep.law("peiffer-1").cases == 4 and rep.law("peiffer-2").cases == 4


def test_sign_module_fails_peiffer_2():
    cm = sign_module()
    rep = peiffer_check(cm)
    assert rep.law("peiffer-1").ok
    r = rep.law("peiffer-2")
    assert r.violations == fz.PEIFFER2_SIGN_VIOLATIONS
    S3 = cm.H
    a = r.counterexample["args"]
    assert (S3.label(a["h"]), S3.label(a["h'"])) == fz.PEIFFER2_LEAST
    assert S3.label(r.counterexample["rhs"]) == fz.PEIFFER2_LEAST_RHS
    bad = {(S3.index(h), S3.index(k)) for h, k in o.peiffer2_violations_sign()}
    assert (a["h"], a["h'"]) == min(bad)


def test_trivial_module():
    cm = CrossedModule.trivial()
    assert peiffer_check(cm).ok
    cg = catgroup_from_crossed(cm)
    assert len(cg.objects()) == 1 and len(cg.morphisms()) == 1


def test_non_automorphism_is_a_precondition_error():
    G, H = cyclic(3), cyclic(3)
    shift = GroupAction(G, 3, [[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    with pytest.raises(PreconditionError):
        peiffer_check(CrossedModule(G, H, shift, GroupHom.trivial(H, G)))


# ---------------------------------------------------------------- affine example

@pytest.fixture(scope="module")
def affine():
    cm = affine_crossed(3, 1)
    return cm, catgroup_from_crossed(cm)


def pair(cm, h, g):
    """Affine coordinates (h in F_3, g in F_3^*) to morphism indices."""
    return (cm.H.index((h,)), cm.G.index(((g,),)))


def coords(cm, k):
    return (cm.H.label(k[0])[0], cm.G.label(k[1])[0][0])


def test_affine_sizes(affine):
    cm, cg = affine
    assert len(cg.objects()) == 2 and len(cg.morphisms()) == 6
    assert peiffer_check(cm).ok


def test_affine_product(affine):
    cm, cg = affine
    (x, y), want = fz.AFFINE_PRODUCT
    assert coords(cm, cg.mul(pair(cm, *x), pair(cm, *y))) == want
    # every product agrees with composing the affine maps
    for x, y in itertools.product(cg.morphisms(), repeat=2):
        assert coords(cm, cg.mul(x, y)) == o.affine_product(coords(cm, x), coords(cm, y))


def test_affine_composition(affine):
    cm, cg = affine
    assert coords(cm, cg.compose(pair(cm, 1, 2), pair(cm, 2, 2))) == (0, 2)
    assert cg.compose(pair(cm, 1, 2), pair(cm, 2, 1)) is None


def test_affine_axioms_exhaustive(affine):
    _, cg = affine
    rep = catgroup_axioms_check(cg)
    assert rep.ok
    assert {r.mode for r in rep.laws} == {"exhaustive"}
    # tau is trivial, so every morphism is an endomorphism: 2 objects x 3^2 composable pairs
    assert rep.law("exchange").cases == 18 ** 2


def test_corrupted_composition_breaks_exchange(affine):
    cm, cg = affine
    C = cg.cat
    one = cm.H.index((1,))

    def comp(g, f):
        h = C.compose(g, f)
        if h is not None and g[0] == one and f[0] == one:
            return (0, h[1])
        return h

    bad = RuleCategory("corrupted", C.src, C.tgt, C.ident, comp, objects=C.objects(),
                       morphisms=C.morphisms())
    cg2 = CategoricalGroup(bad, cg.omul, cg.oinv, cg.ounit, cg.mul, cg.inv, cg.unit, "bad")
    rep = catgroup_axioms_check(cg2)
    assert rep.law("exchange").violations > 0
    assert rep.law("exchange").counterexample is not None


# ---------------------------------------------------------------- back to crossed modules

def assert_isomorphic(cm, cm2, hmap, gmap):
    """hmap, gmap: index maps cm -> cm2, checked element-wise."""
    assert sorted(hmap) == list(range(cm2.H.order)) and sorted(gmap) == list(range(cm2.G.order))
    assert hom_check(GroupHom(cm.H, cm2.H, hmap)).ok
    assert hom_check(GroupHom(cm.G, cm2.G, gmap)).ok
    for h in cm.H.elements():
        assert gmap[cm.tau(h)] == cm2.tau(hmap[h])
        for g in cm.G.elements():
            assert hmap[cm.alpha(g, h)] == cm2.alpha(gmap[g], hmap[h])


def test_affine_roundtrip(affine):
    cm, cg = affine
    cm2 = crossed_from_catgroup(cg)
    kidx = {k: i for i, k in enumerate(cm2.embedding)}
    hmap = [kidx[(h, 0)] for h in cm.H.elements()]
    gmap = [cm2.G.index(g) for g in cm.G.elements()]
    assert_isomorphic(cm, cm2, hmap, gmap)
    rep = roundtrip_check(cg)
    assert rep.ok and rep.facts == {"|H|": 3, "|G|": 2}
    assert rep.law("preserves-composition").violations == 0


def test_one_object_z3():
    cm = crossed_from_catgroup(group_catgroup(cyclic(3)))
    assert cm.H.order == 3 and cm.G.order == 1
    assert group_check(cm.H).ok


def test_codiscrete_z2():
    cg = codiscrete_catgroup(cyclic(2))
    cm = crossed_from_catgroup(cg)
    assert cm.embedding == [(0, 0), (1, 0)]
    assert [cm.tau(h) for h in cm.H.elements()] == [0, 1]
    assert peiffer_check(cm).ok
    assert roundtrip_check(cg).ok


def test_discrete_has_only_identities():
    cg = discrete_catgroup(cyclic(3))
    assert all(cg.cat.ident(cg.s(k)) == k for k in cg.morphisms())
    assert catgroup_axioms_check(cg).ok
    assert crossed_from_catgroup(cg).H.order == 1


def test_non_catgroup_is_refused():
    S3 = symmetric3()
    # a non-abelian group as a one-object category breaks the exchange law
    cg = group_catgroup(S3)
    assert not catgroup_axioms_check(cg).ok
    with pytest.raises(RefusalError):
        crossed_from_catgroup(cg)


def test_json_roundtrip(affine):
    cm, cg = affine
    cm2 = CrossedModule.from_json(cm.to_json())
    assert peiffer_check(cm2).ok
    cg2 = CategoricalGroup.from_json(cg.to_json())
    assert catgroup_axioms_check(cg2).ok and roundtrip_check(cg2).ok
