"""Crossed modules and the categorical groups (strict 2-groups) they present."""
from __future__ import annotations

from functools import cached_property
from itertools import product
from typing import Callable, Optional

from .algebra import (FiniteGroup, GroupAction, GroupHom, automorphism_check, group_check,
                      hom_check)
from .errors import InputError, PreconditionError, RefusalError
from .fincat import FinCategory, RuleCategory, TableCategory, category_laws, tabulate
from .verify import CheckReport, Law, VerificationPolicy, differ, run_laws


class CrossedModule:
    """(G, H, alpha, tau): alpha a G-action on H, tau: H -> G."""

    def __init__(self, G: FiniteGroup, H: FiniteGroup, alpha: GroupAction, tau: GroupHom,
                 embedding=None):
        if alpha.group is not G or alpha.size != H.order:
            raise InputError("alpha: must be an action of G on the elements of H")
        if tau.domain is not H or tau.codomain is not G:
            raise InputError("tau: must be a map H -> G")
        self.G, self.H, self.alpha, self.tau = G, H, alpha, tau
        self.embedding = embedding  # H index -> morphism label, when extracted from a catgroup

    def to_json(self) -> dict:
        return {"G": self.G.to_json(), "H": self.H.to_json(), "alpha": self.alpha.to_json(),
                "tau": self.tau.to_json()}

    @classmethod
    def from_json(cls, doc) -> "CrossedModule":
        if not isinstance(doc, dict):
            raise InputError("crossed module: expected a JSON object")
        for key in ("G", "H", "alpha", "tau"):
            if key not in doc:
                raise InputError(f"{key}: missing field")
        G = FiniteGroup.from_json(doc["G"], "G")
        H = FiniteGroup.from_json(doc["H"], "H")
        a, t = doc["alpha"], doc["tau"]
        if not isinstance(a, dict) or "perms" not in a:
            raise InputError("alpha.perms: missing field")
        if not isinstance(t, dict) or "map" not in t:
            raise InputError("tau.map: missing field")
        return cls(G, H, GroupAction(G, H.order, a["perms"]), GroupHom(H, G, t["map"]))

    @classmethod
    def trivial(cls) -> "CrossedModule":
        from .algebra import trivial_group
        G, H = trivial_group(), trivial_group()
        return cls(G, H, GroupAction.trivial(G, 1), GroupHom.trivial(H, G))


def peiffer_check(cm: CrossedModule, policy: Optional[VerificationPolicy] = None) -> CheckReport:
    """Both Peiffer identities; raises PreconditionError if the data is not a G-group hom."""
    G, H, a, tau = cm.G, cm.H, cm.alpha, cm.tau
    pre = CheckReport("crossed module preconditions", policy=policy)
    pre.merge(group_check(G, policy), "G.")
    pre.merge(group_check(H, policy), "H.")
    pre.merge(hom_check(tau, policy), "tau.")
    if not pre.ok:
        raise PreconditionError("G, H or tau is not a group / homomorphism", pre)
    auto = automorphism_check(a, H, policy)
    if not auto.ok:
        raise PreconditionError("alpha does not act by automorphisms of H",
                                CheckReport("alpha", auto.laws, policy))
    laws = [
        Law("peiffer-1", ("g", "h"),
            lambda g, h: differ(tau(a(g, h)), G.conj(g, tau(h))),
            space=lambda: product(range(G.order), range(H.order)), size=G.order * H.order,
            sample=lambda r: (r.randrange(G.order), r.randrange(H.order))),
        Law("peiffer-2", ("h", "h'"),
            lambda h, k: differ(a(tau(h), k), H.conj(h, k)),
            space=lambda: product(range(H.order), repeat=2), size=H.order ** 2,
            sample=lambda r: (r.randrange(H.order), r.randrange(H.order))),
    ]
    rep = run_laws("crossed module", laws, policy)
    return rep.merge(pre).merge(auto, "alpha.")


class CategoricalGroup:
    """A category whose objects and morphisms form groups (strict 2-group).

    The group operations act on the category's own labels.
    """

    def __init__(self, cat: FinCategory, obj_mul: Callable, obj_inv: Callable, obj_unit,
                 mor_mul: Callable, mor_inv: Callable, mor_unit, name: str = "G"):
        if not cat.enumerable:
            raise InputError("categorical groups must have enumerable carriers")
        self.cat = cat
        self.omul, self.oinv, self.ounit = obj_mul, obj_inv, obj_unit
        self.mul, self.inv, self.unit = mor_mul, mor_inv, mor_unit
        self.name = name

    # shorthands
    def s(self, k):
        return self.cat.src(k)

    def t(self, k):
        return self.cat.tgt(k)

    def one(self, a):
        return self.cat.ident(a)

    def compose(self, g, f):
        return self.cat.compose(g, f)

    def objects(self) -> list:
        objs = list(self.cat.objects())
        objs.remove(self.ounit)
        return [self.ounit] + objs

    def morphisms(self) -> list:
        mors = list(self.cat.morphisms())
        mors.remove(self.unit)
        return [self.unit] + mors

    @cached_property
    def obj_index(self) -> dict:
        return {a: i for i, a in enumerate(self.objects())}

    @cached_property
    def mor_index(self) -> dict:
        return {k: i for i, k in enumerate(self.morphisms())}

    def obj_group(self) -> FiniteGroup:
        objs, idx = self.objects(), self.obj_index
        return FiniteGroup([[idx[self.omul(a, b)] for b in objs] for a in objs], labels=objs,
                           name=f"Obj({self.name})")

    def mor_group(self) -> FiniteGroup:
        mors, idx = self.morphisms(), self.mor_index
        return FiniteGroup([[idx[self.mul(a, b)] for b in mors] for a in mors], labels=mors,
                           name=f"Mor({self.name})")

    def to_json(self) -> dict:
        table, _, _ = tabulate(self.cat, objs=self.objects(), mors=self.morphisms())
        doc = table.to_json()
        doc["obj_group"] = self.obj_group().to_json()
        doc["mor_group"] = self.mor_group().to_json()
        return doc

    @classmethod
    def from_json(cls, doc, name: str = "G") -> "CategoricalGroup":
        cat = TableCategory.from_json(doc, name)
        for key in ("obj_group", "mor_group"):
            if key not in doc:
                raise InputError(f"{name}.{key}: missing field")
        og = FiniteGroup.from_json(doc["obj_group"], f"{name}.obj_group")
        mg = FiniteGroup.from_json(doc["mor_group"], f"{name}.mor_group")
        if og.order != cat.n:
            raise InputError(f"{name}.obj_group: order {og.order} differs from objects = {cat.n}")
        if mg.order != cat.m:
            raise InputError(f"{name}.mor_group: order {mg.order} differs from morphisms = {cat.m}")
        return table_catgroup(cat, og, mg, name)


def table_catgroup(cat: TableCategory, og: FiniteGroup, mg: FiniteGroup, name="G"):
    def safe_inv(G):
        return lambda x: G.inverse[x] if G.inverse[x] >= 0 else x
    return CategoricalGroup(cat, og.mul, safe_inv(og), 0, mg.mul, safe_inv(mg), 0, name)


def catgroup_from_crossed(cm: CrossedModule, name: str = "") -> CategoricalGroup:
    """Objects G; morphisms (h, g): g -> tau(h) g; semidirect product on pairs."""
    G, H, a, tau = cm.G, cm.H, cm.alpha, cm.tau

    def compose(k2, k1):
        (h2, g2), (h1, g1) = k2, k1
        if g2 != G.mul(tau(h1), g1):
            return None
        return (H.mul(h2, h1), g1)

    def mul(k2, k1):
        (h2, g2), (h1, g1) = k2, k1
        return (H.mul(h2, a(g2, h1)), G.mul(g2, g1))

    def inv(k):
        h, g = k
        gi = G.inv(g)
        return (a(gi, H.inv(h)), gi)

    cat = RuleCategory(name or "H x| G", src=lambda k: k[1], tgt=lambda k: G.mul(tau(k[0]), k[1]),
                       ident=lambda g: (0, g), compose=compose, objects=list(G.elements()),
                       morphisms=[(h, g) for h in H.elements() for g in G.elements()])
    return CategoricalGroup(cat, G.mul, G.inv, 0, mul, inv, (0, 0), name or "G(cm)")


def catgroup_laws(cg: CategoricalGroup, prefix: str = "") -> list:
    C = cg.cat
    objs, mors = cg.objects(), cg.morphisms()
    e, one, s, t, m = cg.ounit, cg.one, cg.s, cg.t, cg.mul
    no, nm = len(objs), len(mors)

    def pairs2(r):
        return (r.choice(mors), r.choice(mors))

    def exchange(g2, g1, f2, f1):
        lhs = C.compose(m(g2, f2), m(g1, f1))
        gg, ff = C.compose(g2, g1), C.compose(f2, f1)
        if lhs is None:
            return "products of composable pairs are not composable"
        return differ(lhs, m(gg, ff))

    def via_product(h, f):
        b = t(f)
        hf = C.compose(h, f)
        ib = one(cg.oinv(b))
        return differ((hf, hf), (m(m(f, ib), h), m(m(h, ib), f)))

    def hkkh(h, k):
        hk = C.compose(h, k)
        return differ((m(h, k), m(k, h)), (hk, hk))

    ks = lambda: [k for k in mors if t(k) == e]
    hs = lambda: [h for h in mors if s(h) == e]
    npairs = lambda: C.chain_count(2)

    return [
        Law(prefix + "source-hom", ("k2", "k1"), lambda a, b: differ(s(m(a, b)), cg.omul(s(a), s(b))),
            space=lambda: product(mors, mors), size=nm * nm, sample=pairs2),
        Law(prefix + "target-hom", ("k2", "k1"), lambda a, b: differ(t(m(a, b)), cg.omul(t(a), t(b))),
            space=lambda: product(mors, mors), size=nm * nm, sample=pairs2),
        Law(prefix + "identity-hom", ("a", "b"), lambda a, b: differ(one(cg.omul(a, b)), m(one(a), one(b))),
            space=lambda: product(objs, objs), size=no * no,
            sample=lambda r: (r.choice(objs), r.choice(objs))),
        Law(prefix + "unit-morphism", (), lambda: differ(one(e), cg.unit), space=lambda: [()], size=1),
        Law(prefix + "exchange", ("g'", "g", "f'", "f"), exchange,
            space=lambda: (x + y for x in C.chains(2) for y in C.chains(2)),
            size=lambda: npairs() ** 2,
            sample=lambda r: C.sample_chain(2, r) + C.sample_chain(2, r)),
        Law(prefix + "composition-via-product", ("h", "f"), via_product,
            space=lambda: C.chains(2), size=npairs, sample=lambda r: C.sample_chain(2, r)),
        Law(prefix + "hkkh", ("h", "k"), hkkh,
            space=lambda: product(hs(), ks()), size=lambda: len(hs()) * len(ks()),
            sample=lambda r: (r.choice(hs()), r.choice(ks()))),
    ]


def catgroup_axioms_check(cg: CategoricalGroup, policy: Optional[VerificationPolicy] = None):
    rep = run_laws(f"categorical group {cg.name}",
                   category_laws(cg.cat, "category.") + catgroup_laws(cg), policy)
    rep.merge(group_check(cg.obj_group(), policy), "objects.")
    rep.merge(group_check(cg.mor_group(), policy), "morphisms.")
    return rep


def crossed_from_catgroup(cg: CategoricalGroup, policy: Optional[VerificationPolicy] = None,
                          verify: bool = True) -> CrossedModule:
    """H = ker s, alpha(g)h = 1_g h 1_{g^-1}, tau = t on H."""
    if verify:
        rep = catgroup_axioms_check(cg, policy)
        if not rep.ok:
            raise RefusalError("not a categorical group", rep)
    G = cg.obj_group()
    kernel = [k for k in cg.morphisms() if cg.s(k) == cg.ounit]
    kidx = {k: i for i, k in enumerate(kernel)}
    H = FiniteGroup([[kidx[cg.mul(a, b)] for b in kernel] for a in kernel], labels=kernel,
                    name=f"ker s({cg.name})")

    def conj(g, h):
        return kidx[cg.mul(cg.mul(cg.one(G.label(g)), kernel[h]), cg.one(cg.oinv(G.label(g))))]

    alpha = GroupAction.from_rule(G, H.order, conj)
    tau = GroupHom(H, G, [cg.obj_index[cg.t(k)] for k in kernel])
    return CrossedModule(G, H, alpha, tau, embedding=kernel)


def roundtrip_check(cg: CategoricalGroup, policy: Optional[VerificationPolicy] = None):
    """phi(k) = (k 1_{s(k)^-1}, s(k)) must be an isomorphism cg -> catgroup_from_crossed(crossed(cg))."""
    cm = crossed_from_catgroup(cg, policy, verify=False)
    cg2 = catgroup_from_crossed(cm)
    G, H = cm.G, cm.H
    kidx = {k: i for i, k in enumerate(cm.embedding)}
    objs, mors = cg.objects(), cg.morphisms()

    def obj(a):
        return G.index(a)

    def phi(k):
        a = cg.s(k)
        return (kidx[cg.mul(k, cg.one(cg.oinv(a)))], obj(a))

    images = [phi(k) for k in mors]
    bij = len(set(images)) == len(mors) == len(cg2.morphisms())
    C, D = cg.cat, cg2.cat
    no, nm = len(objs), len(mors)

    laws = [
        Law("bijective", (), lambda: None if bij else "phi is not a bijection",
            space=lambda: [()], size=1),
        Law("objects-bijective", (), lambda: differ(sorted(map(obj, objs)), list(range(G.order))),
            space=lambda: [()], size=1),
        Law("preserves-endpoints", ("k",),
            lambda k: differ((obj(cg.s(k)), obj(cg.t(k))), (cg2.s(phi(k)), cg2.t(phi(k)))),
            space=lambda: ((k,) for k in mors), size=nm),
        Law("preserves-identity", ("a",), lambda a: differ(phi(cg.one(a)), cg2.one(obj(a))),
            space=lambda: ((a,) for a in objs), size=no),
        Law("preserves-product", ("k2", "k1"), lambda a, b: differ(phi(cg.mul(a, b)), cg2.mul(phi(a), phi(b))),
            space=lambda: product(mors, mors), size=nm * nm,
            sample=lambda r: (r.choice(mors), r.choice(mors))),
        Law("preserves-composition", ("g", "f"),
            lambda g, f: differ(phi(C.compose(g, f)), D.compose(phi(g), phi(f))),
            space=lambda: C.chains(2), size=lambda: C.chain_count(2),
            sample=lambda r: C.sample_chain(2, r)),
        Law("reflects-composability", ("g", "f"),
            lambda g, f: differ(C.composable(g, f), D.composable(phi(g), phi(f))),
            space=lambda: product(mors, mors), size=nm * nm,
            sample=lambda r: (r.choice(mors), r.choice(mors))),
    ]
    rep = run_laws(f"roundtrip {cg.name}", laws, policy)
    rep.facts["|H|"] = H.order
    rep.facts["|G|"] = G.order
    return rep


# ---------------------------------------------------------------- standard examples

def group_catgroup(K: FiniteGroup) -> CategoricalGroup:
    """One object; morphisms K with composition = product (K must be abelian)."""
    cat = RuleCategory(f"B{K.name}", src=lambda k: 0, tgt=lambda k: 0, ident=lambda a: 0,
                       compose=K.mul, objects=[0], morphisms=list(K.elements()))
    return CategoricalGroup(cat, lambda a, b: 0, lambda a: 0, 0, K.mul, K.inv, 0, f"B{K.name}")


def codiscrete_catgroup(K: FiniteGroup) -> CategoricalGroup:
    """K_0: a single morphism (b, a): a -> b for each pair, componentwise product."""
    n = K.order
    cat = RuleCategory(f"{K.name}_0", src=lambda k: k[1], tgt=lambda k: k[0], ident=lambda a: (a, a),
                       compose=lambda g, f: (g[0], f[1]), objects=list(range(n)),
                       morphisms=[(b, a) for b in range(n) for a in range(n)])
    return CategoricalGroup(cat, K.mul, K.inv, 0,
                            lambda x, y: (K.mul(x[0], y[0]), K.mul(x[1], y[1])),
                            lambda x: (K.inv(x[0]), K.inv(x[1])), (0, 0), f"{K.name}_0")


def discrete_catgroup(K: FiniteGroup) -> CategoricalGroup:
    """K_d: identity morphisms only, labelled by the objects."""
    cat = RuleCategory(f"{K.name}_d", src=lambda k: k, tgt=lambda k: k, ident=lambda a: a,
                       compose=lambda g, f: f, objects=list(K.elements()),
                       morphisms=list(K.elements()))
    return CategoricalGroup(cat, K.mul, K.inv, 0, K.mul, K.inv, 0, f"{K.name}_d")
