import itertools

import pytest

import frozen as fz
import oracles as o
from twistcat.actions import ActionMorphism, TwistedAction, action_check
from twistcat.algebra import FqSpace, LinearMap, cyclic, span_elements, trivial_group
from twistcat.catgroup import discrete_catgroup
from twistcat.errors import RefusalError
from twistcat.fixtures import (counterfeit_catvec_action, negation_catvec_action, schur_actions,
                               schur_morphism)
from twistcat.veccat import (LinearFunctor, QuotientCategory, catvec, catvec_rep_structure,
                             catvecspace_check, decompose_catvecspace, descent_law,
                             discrete_vector_category, irreducibility_check, kernel_category,
                             linear_action, linear_functor_check, linear_rep_check, schur_classify)
from twistcat.verify import run_laws

ID1 = ((1,),)


# ---------------------------------------------------------------- categorical vector spaces

def test_f2_catvec_passes_with_structure_composition():
    c = catvec(2, 1, 1, ID1)
    assert catvecspace_check(c).ok
    for g, f in itertools.product(c.morphisms(), repeat=2):
        assert c.compose(g, f) == o.catvec_compose(g, f, 1, ID1, 2)


def test_zero_space():
    c = catvec(2, 0, 0)
    assert c.objects() == [()] and c.morphisms() == [()]
    assert catvecspace_check(c).ok


def test_perturbed_composition_fails_additivity():
    def comp(g, f):
        return ((g[0] + f[0] + 1) % 2, f[1])

    c = catvec(2, 1, 1, ID1, comp=comp)
    rep = catvecspace_check(c)
    assert not rep.law("additivity").ok
    with pytest.raises(RefusalError):
        decompose_catvecspace(c)


def test_decomposition_inverse_f2():
    c = catvec(2, 1, 1, ID1)
    d = decompose_catvecspace(c)
    assert d.report.ok and d.W.dim == 1
    w, v = fz.CATVEC_F2_INVERSE_OF_10
    assert d.inverse_pair(((1,), (0,))) == ((w,), (v,))
    for f in c.morphisms():
        assert d.inverse(f) == o.catvec_inverse(f, 1, ID1, 2)
        assert d.identity_pair(c.s(f)) == d.to_pair(c.id(c.s(f)))


def test_trivial_w_gives_identities_only():
    c = catvec(3, 0, 2)
    d = decompose_catvecspace(c)
    assert d.W.dim == 0
    assert all(c.id(c.s(f)) == f for f in c.morphisms())
    assert len(c.morphisms()) == len(c.objects()) == 9


def test_zero_tau_composition_f3():
    c = catvec(3, 1, 1)
    d = decompose_catvecspace(c)
    for g, f in itertools.product(c.morphisms(), repeat=2):
        pg, pf = d.to_pair(g), d.to_pair(f)
        want = ((pg[0][0] + pf[0][0]) % 3,) if pg[1] == pf[1] else None
        got = d.compose_pairs(pg, pf)
        assert (got if got is None else got[0]) == want
        assert c.compose(g, f) == o.catvec_compose(g, f, 1, ((0,),), 3)
    # every morphism is a loop
    assert all(c.s(f) == c.t(f) for f in c.morphisms())


# ---------------------------------------------------------------- linear representations

def test_negation_is_linear():
    a = negation_catvec_action(3)
    assert action_check(a, preconditions=True).ok
    assert linear_rep_check(a).ok


def test_trivial_action_is_linear():
    G = discrete_catgroup(trivial_group())
    c = catvec(3, 1, 1, ID1)
    a = linear_action(G, c, {0: ID1}, {0: ((1, 0), (0, 1))}, name="trivial")
    assert action_check(a).ok and linear_rep_check(a).ok


def test_translation_fails_additivity():
    G = discrete_catgroup(cyclic(3))
    c = discrete_vector_category(FqSpace(3, 1))
    a = TwistedAction(G, c, lambda x, v: ((v[0] + x) % 3,), lambda k, f: ((f[0] + k) % 3,),
                      name="translate")
    assert action_check(a).ok
    rep = linear_rep_check(a)
    assert not rep.law("object-additive").ok and not rep.law("morphism-additive").ok


# ---------------------------------------------------------------- irreducibility

def as_sets(sub):
    P = sub.parent
    return (frozenset(span_elements(sub.obj_basis, P.q, P.obj.dim)),
            frozenset(span_elements(sub.mor_basis, P.q, P.mor.dim)))


def swap_action():
    """Z/2 (discrete) swapping the coordinates of the discrete category on F_2^2."""
    G = discrete_catgroup(cyclic(2))
    c = discrete_vector_category(FqSpace(2, 2))
    sw = {0: ((1, 0), (0, 1)), 1: ((0, 1), (1, 0))}
    return linear_action(G, c, sw, sw, name="swap"), list(sw.values())


def test_shear_is_irreducible():
    shear, _ = schur_actions(2)
    v = irreducibility_check(shear)
    assert v.irreducible and v.witness is None
    mats = [((1, h), (0, 1)) for h in range(2)]
    assert o.proper_invariant_pairs(2, 1, 1, ((0,),), [ID1], mats) == []
    assert v.candidates == len(o.invariant_pairs(2, 1, 1, ((0,),), [ID1], mats))


def test_invariant_line_is_found():
    a, mats = swap_action()
    v = irreducibility_check(a)
    assert not v.irreducible
    oracle = o.proper_invariant_pairs(2, 0, 2, ((), ()), mats, mats)
    assert sorted(map(as_sets, v.invariant), key=sorted) == sorted(oracle, key=sorted)
    line = frozenset({(0, 0), (1, 1)})
    assert as_sets(v.witness) == (line, line)


def test_trivial_subcategories_are_not_proper():
    # with no action at all, O and O_V are invariant; neither may be reported
    c = catvec(2, 1, 1)
    G = discrete_catgroup(trivial_group())
    a = linear_action(G, c, {0: ID1}, {0: ((1, 0), (0, 1))})
    v = irreducibility_check(a)
    reported = {tuple(s.dims) for s in v.invariant}
    assert (0, 0) not in reported
    assert all(as_sets(s) != (frozenset({(0,)}), frozenset({(0, 0), (1, 0)})) for s in v.invariant)


# ---------------------------------------------------------------- kernels

def test_kernels():
    shear, triv = schur_actions(2)
    V1, V2 = shear.target, triv.target
    assert kernel_category(LinearFunctor.identity(V1)).dims == (0, 0)
    assert kernel_category(LinearFunctor.zero(V1, V2)).dims == (V1.obj.dim, V1.mor.dim)
    proj = schur_morphism("quotient").F
    assert linear_functor_check(proj).ok
    L = kernel_category(proj)
    assert L.closure.ok
    assert set(L.morphisms()) == {(w, 0) for w in range(2)}
    assert L.objects() == [(0,)]


# ---------------------------------------------------------------- Schur

def oracle_branch(m):
    F = m.F
    V1, V2 = F.domain, F.codomain
    return o.schur_branch(V1.q, (V1.obj.dim, V2.obj.dim), (V1.mor.dim, V2.mor.dim),
                          F.obj_map.matrix, F.mor_map.matrix,
                          span_elements(V1.hom00, V1.q, V1.mor.dim))


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("kind", ["irred", "quotient", "zero"])
def test_schur_branches(kind, q):
    m = schur_morphism(kind, q)
    v = schur_classify(m)
    assert v.branch == fz.SCHUR_BRANCHES[kind] == oracle_branch(m)
    assert v.report.ok


def test_quotient_certificates():
    v = schur_classify(schur_morphism("quotient"))
    c = v.certificates
    assert c["quotient morphisms"] == 2
    assert c["morphisms"]["injective"] and c["morphisms"]["surjective"]
    assert v.kernel["is O_V"] and not v.kernel["is O"]


def test_quotient_descent():
    shear, _ = schur_actions(3)
    Q = QuotientCategory(shear.target)
    assert run_laws("q", [descent_law(Q)]).ok
    assert len(Q.morphisms()) == 3


def test_reducible_source_is_refused():
    a, _ = swap_action()
    with pytest.raises(RefusalError) as info:
        schur_classify(ActionMorphism(a, a, LinearFunctor.identity(a.target)))
    assert "reducible" in str(info.value)


# ---------------------------------------------------------------- representations on W x V

def test_negation_structure():
    a = negation_catvec_action(3)
    rho0, rep = catvec_rep_structure(a)
    assert rep.ok
    assert rho0[0].matrix == ID1 and rho0[1].matrix == ((2,),)
    assert rep.law("determination").cases == 4 * 9


def test_counterfeit_fails_target_dependence():
    rho0, rep = catvec_rep_structure(counterfeit_catvec_action(3))
    r = rep.law("depends-on-target")
    assert not r.ok
    k = tuple(r.counterexample["args"]["k"])
    assert k[0] != k[1]


def test_trivial_group_structure():
    G = discrete_catgroup(trivial_group())
    c = catvec(3, 1, 1, ID1)
    a = linear_action(G, c, {0: ID1}, {0: ((1, 0), (0, 1))})
    rho0, rep = catvec_rep_structure(a)
    assert rep.ok and rho0 == {0: LinearMap(FqSpace(3, 1), FqSpace(3, 1), ID1)}
