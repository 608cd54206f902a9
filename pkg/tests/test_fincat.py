import itertools

import pytest

from twistcat.algebra import cyclic, symmetric3
from twistcat.errors import InputError, LawViolation
from twistcat.fincat import (Functor, NatTransform, RuleCategory, TableCategory,
                             category_axioms_check, codiscrete, codiscrete_on, discrete,
                             functor_check, group_category, nat_hcompose, nat_vcompose,
                             naturality_check, tabulate)
from twistcat.fixtures import rg1_action


def table_copy(C: TableCategory, comp=None, ident=None):
    return TableCategory(C.n, list(C._src), list(C._tgt), list(ident or C._id),
                         [list(r) for r in (comp or C.comp)])


# ---------------------------------------------------------------- category_axioms_check

def test_codiscrete_two():
    C = codiscrete(2)
    assert C.m == 4
    rep = category_axioms_check(C)
    assert rep.ok
    assert {r.mode for r in rep.laws} == {"exhaustive"}
    assert rep.law("associativity").cases == 2 ** 4      # a composable triple is a choice of 4 objects


def test_group_as_one_object_category():
    assert category_axioms_check(group_category(cyclic(3))).ok


def test_retargeted_composite_is_named():
    C = codiscrete(2)
    comp = [list(r) for r in C.comp]
    # (1,0) after (0,0) should be (1,0) = index 2; send it to the loop (1,1) = index 3
    comp[2][0] = 3
    rep = category_axioms_check(table_copy(C, comp))
    ce = rep.law("composite-endpoints").counterexample
    assert ce["args"] == {"g": 2, "f": 0}
    assert ce["lhs"] == [1, 1] and ce["rhs"] == [0, 1]


def test_definedness_violation_does_not_crash():
    C = discrete(2)
    comp = [list(r) for r in C.comp]
    comp[0][1] = 0        # composite on a non-composable pair
    rep = category_axioms_check(table_copy(C, comp))
    assert rep.law("definedness").violations == 1
    assert "non-composable" in rep.law("definedness").counterexample["note"]


def test_definedness_interchange_full_scan():
    for C in (codiscrete(3), discrete(3), group_category(symmetric3())):
        for g, f in itertools.product(range(C.m), repeat=2):
            assert (C.compose(g, f) is not None) == (C.tgt(f) == C.src(g))


def test_malformed_table():
    with pytest.raises(InputError, match="src"):
        TableCategory(1, [0, 1], [0, 0], [0], [[0, 1], [1, 0]])
    with pytest.raises(InputError, match="comp"):
        TableCategory(1, [0], [0], [0], [[0, 0]])


def test_rule_category_tabulates():
    C = codiscrete_on(["x", "y", "z"])
    T, objs, mors = tabulate(C)
    assert category_axioms_check(C).ok and category_axioms_check(T).ok
    assert len(objs) == 3 and len(mors) == 9
    assert TableCategory.from_json(T.to_json()).comp == T.comp


# ---------------------------------------------------------------- functors

def test_identity_functor():
    assert functor_check(Functor.identity(codiscrete(3))).ok


def test_rg1_functor():
    a = rg1_action()
    G, V = a.group, a.target
    P = RuleCategory("G x V", src=lambda x: (G.s(x[0]), V.src(x[1])),
                     tgt=lambda x: (G.t(x[0]), V.tgt(x[1])),
                     ident=lambda o: (G.one(o[0]), V.ident(o[1])),
                     compose=lambda y, x: (None if G.compose(y[0], x[0]) is None
                                           or V.compose(y[1], x[1]) is None
                                           else (G.compose(y[0], x[0]), V.compose(y[1], x[1]))),
                     objects=[(g, v) for g in G.objects() for v in V.objects()],
                     morphisms=[(k, f) for k in G.morphisms() for f in V.morphisms()])
    F = Functor(P, V, lambda o: a.rho_obj(*o), lambda x: a.rho_mor(*x), "rho")
    rep = functor_check(F)
    assert rep.ok
    assert rep.law("preserves-composition").cases == 4 * 2 * 9 * 3


def test_broken_identity_is_located():
    C = codiscrete(2)
    mm = list(range(4))
    mm[3] = 2            # the identity at object 1 goes to (1,0)
    F = Functor.from_tables(C, C, [0, 1], mm)
    rep = functor_check(F)
    assert rep.law("preserves-identity").counterexample["args"] == {"a": 1}


def test_functor_table_size_mismatch():
    with pytest.raises(InputError):
        Functor.from_tables(codiscrete(2), codiscrete(2), [0], [0, 1, 2, 3])


# ---------------------------------------------------------------- natural transformations

def object_functor(A, B, omap, name):
    """The unique functor between codiscrete categories with the given object map."""
    nb = B.n
    return Functor(A, B, lambda a: omap[a], lambda f: omap[A.tgt(f)] * nb + omap[A.src(f)], name)


def component(B, F, G):
    return lambda a: G.obj(a) * B.n + F.obj(a)


def test_vertical_composite_components():
    A, B = codiscrete(2), codiscrete(3)
    F1, F2, F3 = (object_functor(A, B, m, n) for m, n in (([0, 1], "F1"), ([2, 2], "F2"),
                                                         ([1, 0], "F3")))
    w1 = NatTransform(F1, F2, component(B, F1, F2))
    w2 = NatTransform(F2, F3, component(B, F2, F3))
    for w in (w1, w2):
        assert naturality_check(w).ok
    w = nat_vcompose(w2, w1)
    assert naturality_check(w).ok
    for a in A.objects():
        assert w(a) == B.compose(w2(a), w1(a)) == component(B, F1, F3)(a)


def test_vertical_with_identity():
    A, B = codiscrete(2), codiscrete(3)
    F1, F2 = object_functor(A, B, [0, 1], "F1"), object_functor(A, B, [2, 0], "F2")
    w2 = NatTransform(F1, F2, component(B, F1, F2))
    w = nat_vcompose(w2, NatTransform.identity(F1))
    assert all(w(a) == w2(a) for a in A.objects())


def test_vertical_non_composable_components():
    A, B = codiscrete(2), codiscrete(3)
    F1, F2 = object_functor(A, B, [0, 1], "F1"), object_functor(A, B, [2, 0], "F2")
    good = NatTransform(F1, F2, component(B, F1, F2))
    # components that claim to start at F2 but start at F1(a)
    bad = NatTransform(F2, F1, lambda a: F1.obj(a) * 3 + F1.obj(a))
    with pytest.raises(InputError):
        nat_vcompose(bad, good)


def test_vertical_non_parallel():
    A, B = codiscrete(2), codiscrete(3)
    F1, F2 = object_functor(A, B, [0, 1], "F1"), object_functor(A, B, [2, 0], "F2")
    w = NatTransform(F1, F2, component(B, F1, F2))
    with pytest.raises(InputError):
        nat_vcompose(w, w)
    with pytest.raises(InputError):
        NatTransform(F1, Functor.identity(A), lambda a: 0)


@pytest.mark.parametrize("n1", [2, 3])
def test_horizontal_forms_agree(n1):
    V1, V2, V3 = codiscrete(n1), codiscrete(3), codiscrete(2)
    F1 = object_functor(V1, V2, [i % 3 for i in range(n1)], "F1")
    F1p = object_functor(V1, V2, [(i + 1) % 3 for i in range(n1)], "F1'")
    F2 = object_functor(V2, V3, [0, 1, 1], "F2")
    F2p = object_functor(V2, V3, [1, 0, 0], "F2'")
    w1 = NatTransform(F1, F1p, component(V2, F1, F1p))
    w2 = NatTransform(F2, F2p, component(V3, F2, F2p))
    w = nat_hcompose(w2, w1)
    assert naturality_check(w).ok
    for v in V1.objects():
        a = V3.compose(F2p.mor(w1(v)), w2(F1.obj(v)))
        b = V3.compose(w2(F1p.obj(v)), F2.mor(w1(v)))
        assert w(v) == a == b


def test_horizontal_identities():
    A, B = codiscrete(2), codiscrete(3)
    F = object_functor(A, B, [0, 2], "F")
    G = object_functor(B, A, [0, 1, 1], "G")
    w = nat_hcompose(NatTransform.identity(G), NatTransform.identity(F))
    FG = F.then(G)
    assert all(w(a) == A.ident(FG.obj(a)) for a in A.objects())


def test_horizontal_chain_mismatch():
    A = codiscrete(2)
    w = NatTransform.identity(Functor.identity(A))
    u = NatTransform.identity(Functor.identity(codiscrete(3)))
    with pytest.raises(InputError):
        nat_hcompose(u, w)


def test_horizontal_forms_disagree_when_not_natural():
    S3 = symmetric3()
    B = group_category(S3)
    Id = Functor.identity(B)
    # a non-central element is not a natural endo-transformation of the identity
    w1 = NatTransform(Id, Id, lambda a: 1)
    w2 = NatTransform(Id, Id, lambda a: 2)
    assert not naturality_check(w1).ok
    assert S3.mul(1, 2) != S3.mul(2, 1)
    with pytest.raises(LawViolation):
        nat_hcompose(w2, w1)
