"""Worked examples at desk scale, each packaged with the checks it must pass."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cache
from typing import Callable, Optional

from .actions import (ActionMorphism, TwistedAction, action_check, untwisted_action_check)
from .algebra import (CharacterFamily, FiniteGroup, FqSpace, GroupAction, GroupHom, LinearMap,
                      additive_group, character_family_check, compose_perm, cyclic,
                      general_linear, group_from_elements, hom_check, identity_matrix,
                      is_prime, mat_inverse, mat_mul, mat_vec, parse_group, sign_of, symmetric3)
from .catgroup import (CrossedModule, catgroup_axioms_check,
                       catgroup_from_crossed, codiscrete_catgroup, discrete_catgroup,
                       group_catgroup, peiffer_check, roundtrip_check)
from .doublecat import double_axioms_check, double_from_action, double_laws
from .errors import InputError, RefusalError
from .etatwist import (EtaMap, SemidirectCategory, action_eta, conjugation_eta,
                       eta_axioms_check, eta_invariance_check, eta_monoidal_check,
                       vector_category)
from .fincat import (CARRIER_LIMIT, Factor, RuleCategory, category_axioms_check, chain_factor,
                     codiscrete_on, group_category, list_factor, mor_factor, product_law,
                     tabulate)
from .veccat import (LinearFunctor, catvec, catvec_rep_structure, catvecspace_check,
                     decompose_catvecspace, discrete_vector_category, irreducibility_check,
                     linear_action, linear_rep_check, schur_classify)
from .verify import CheckReport, Law, VerificationPolicy, differ, run_laws


@dataclass
class FixtureBundle:
    """Named objects plus the checks they are declared to pass."""

    name: str
    summary: str
    objects: dict
    checks: list = field(default_factory=list)     # (label, policy -> CheckReport)
    facts: dict = field(default_factory=dict)

    def verify(self, policy: Optional[VerificationPolicy] = None) -> CheckReport:
        rep = CheckReport(f"fixture {self.name}", policy=policy)
        for label, run in self.checks:
            rep.merge(run(policy), label + ".")
        for k, v in self.facts.items():
            rep.facts[k] = v() if callable(v) else v
        return rep

    def export(self) -> dict:
        """JSON for every component that has a table-backed form."""
        out = {}
        for key, obj in self.objects.items():
            to_json = getattr(obj, "to_json", None)
            if to_json is None:
                continue
            try:
                out[key] = to_json()
            except InputError:
                continue
        return out


def single(subject: str, law: str, test: Callable[[], object], policy=None) -> CheckReport:
    """A one-case report; ``test`` returns None on success or a note / (lhs, rhs) pair."""
    return run_laws(subject, [Law(law, (), test, space=lambda: [()], size=1)], policy)


# ---------------------------------------------------------------- parameters

def _int(name, lo=None, hi=None):
    def parse(x):
        try:
            v = int(x)
        except (TypeError, ValueError):
            raise InputError(f"--param {name}: expected an integer, got {x!r}") from None
        if (lo is not None and v < lo) or (hi is not None and v > hi):
            raise InputError(f"--param {name}={v} is out of range [{lo}, {hi}]")
        return v
    return parse


def _prime(name, hi):
    def parse(x):
        v = _int(name, 2, hi)(x)
        if not is_prime(v):
            raise InputError(f"--param {name}={v} is not prime")
        return v
    return parse


def _choice(name, options):
    def parse(x):
        if x not in options:
            raise InputError(f"--param {name}={x!r}: choose one of {', '.join(options)}")
        return x
    return parse


def _group(name):
    def parse(x):
        return x if isinstance(x, FiniteGroup) else parse_group(str(x))
    return parse


# ---------------------------------------------------------------- cg1, affine

def build_cg1(K="Z2", variant="codiscrete"):
    cg = codiscrete_catgroup(K) if variant == "codiscrete" else discrete_catgroup(K)
    only_ids = all(cg.cat.ident(cg.s(k)) == k for k in cg.morphisms())
    return FixtureBundle(
        "cg1", f"{variant} categorical group on {K.name}", {"catgroup": cg},
        [("catgroup", lambda p: catgroup_axioms_check(cg, p)),
         ("roundtrip", lambda p: roundtrip_check(cg, p))],
        {"|Obj|": len(cg.objects()), "|Mor|": len(cg.morphisms()),
         "only identity morphisms": only_ids})


def affine_crossed(q: int, dim: int) -> CrossedModule:
    """(GL(V), V, inclusion, trivial): morphisms form the affine group of V = F_q^dim."""
    V = FqSpace(q, dim)
    G = general_linear(dim, q)
    H = additive_group(V)
    alpha = GroupAction.from_rule(G, H.order,
                                  lambda g, h: H.index(mat_vec(G.label(g), H.label(h), q)))
    return CrossedModule(G, H, alpha, GroupHom.trivial(H, G))


def build_affine(q=3, dim=1):
    cm = affine_crossed(q, dim)
    cg = catgroup_from_crossed(cm, f"Aff(F_{q}^{dim})")
    return FixtureBundle(
        "affine", f"affine group of F_{q}^{dim} as a categorical group",
        {"crossed": cm, "catgroup": cg},
        [("crossed", lambda p: peiffer_check(cm, p)),
         ("catgroup", lambda p: catgroup_axioms_check(cg, p)),
         ("roundtrip", lambda p: roundtrip_check(cg, p))],
        {"|Obj|": len(cg.objects()), "|Mor|": len(cg.morphisms())})


# ---------------------------------------------------------------- rg1

def rg1_action(q: int = 3, dim: int = 1) -> TwistedAction:
    """Z/2 acting on the codiscrete category on F_q^dim, the generator by negation."""
    K = cyclic(2)
    G = codiscrete_catgroup(K)
    V = FqSpace(q, dim)
    target = codiscrete_on(list(V.vectors()), f"codiscrete(F_{q}^{dim})")
    act = lambda a, v: V.neg(v) if a else v
    return TwistedAction(G, target, act, lambda k, f: (act(k[0], f[0]), act(k[1], f[1])),
                         name="negation")


def build_rg1(q=3, dim=1):
    a = rg1_action(q, dim)
    d = double_from_action(a, verify=False)

    def converse_violations():
        rep = run_laws("converse", [l for l in double_laws(d) if l.name == "h1-converse"])
        return rep.laws[0].violations

    return FixtureBundle(
        "rg1", "componentwise action on a codiscrete category and its double category",
        {"action": a, "double": d},
        [("action", lambda p: action_check(a, p, preconditions=True)),
         ("untwisted", lambda p: untwisted_action_check(a, p)),
         ("double", lambda p: double_axioms_check(d, p, converse=False))],
        {"boundary converse violations": converse_violations})


# ---------------------------------------------------------------- sd1

def cayley_isomorphism(A: FiniteGroup, B: FiniteGroup) -> Optional[dict]:
    """An isomorphism A -> B found by extending images of a generating set, or None."""
    if A.order != B.order:
        return None
    gens, span = [], {0}
    for g in A.elements():
        if g not in span:
            gens.append(g)
            span = _closure(A, gens)
    orders = {b: B.element_order(b) for b in B.elements()}

    def extend(images):
        m = {0: 0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for g, b in zip(gens, images):
                y, z = A.mul(x, g), B.mul(m[x], b)
                if y in m:
                    if m[y] != z:
                        return None
                else:
                    m[y] = z
                    frontier.append(y)
        if len(set(m.values())) != A.order:
            return None
        ok = all(m[A.mul(x, y)] == B.mul(m[x], m[y]) for x in A.elements() for y in A.elements())
        return m if ok else None

    def search(i, images):
        if i == len(gens):
            return extend(images)
        for b in B.elements():
            if orders[b] == A.element_order(gens[i]):
                found = search(i + 1, images + [b])
                if found:
                    return found
        return None

    return search(0, [])


def _closure(G: FiniteGroup, gens) -> set:
    seen, todo = {0}, [0]
    while todo:
        x = todo.pop()
        for g in gens:
            y = G.mul(x, g)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def category_group(cat) -> FiniteGroup:
    """The group of a one-object category whose morphisms are all invertible."""
    table, _, mors = tabulate(cat)
    e = table.ident(0)
    order = [e] + [i for i in range(table.m) if i != e]
    pos = {m: i for i, m in enumerate(order)}
    return FiniteGroup([[pos[table.compose(g, f)] for f in order] for g in order],
                       labels=[mors[i] for i in order], name=cat.name)


def build_sd1(n=3):
    G1, G2 = cyclic(n), cyclic(2)
    inversion = GroupAction.from_rule(G2, n, lambda b, a: (-a) % n if b else a)
    e = action_eta(G1, G2, inversion)
    P = SemidirectCategory(e, f"Z/{n} x| Z/2")
    S3 = symmetric3() if n == 3 else None

    def iso():
        if S3 is None:
            return "table comparison is only defined against S3 for n = 3"
        return None if cayley_isomorphism(category_group(P), S3) else "no isomorphism onto S3"

    facts = {"morphisms": lambda: len(P.morphisms())}
    if n == 3:
        facts["table isomorphic to S3"] = lambda: iso() is None
    checks = [("eta", lambda p: eta_axioms_check(e, p)),
              ("product", lambda p: category_axioms_check(P, p))]
    if n == 3:
        checks.append(("s3", lambda p: single("composition table", "isomorphic-to-S3", iso, p)))
    return FixtureBundle("sd1", "semidirect product of one-object categories of Z/n and Z/2",
                         {"eta": e, "product": P}, checks, facts)


# ---------------------------------------------------------------- sd2

def build_sd2(q=3):
    G, H = cyclic(2), cyclic(4)
    cm = CrossedModule(G, H, GroupAction.trivial(G, 4), GroupHom(H, G, [h % 2 for h in range(4)]))
    cg = catgroup_from_crossed(cm)
    Aut = general_linear(1, q)
    C = group_category(Aut)
    kernel = [h for h in H.elements() if cm.tau(h) == 0]
    # any homomorphism onto ker(tau); for q odd, F_q^* -> {0, 2} by the Legendre symbol
    mu = GroupHom(Aut, H, [0 if pow(Aut.label(i)[0][0], (q - 1) // 2, q) == 1 else kernel[-1]
                           for i in Aut.elements()]) if q > 2 else GroupHom.trivial(Aut, H)
    e = conjugation_eta(cg, cm, C, mu)
    P = SemidirectCategory(e, "G x|mu C(V)")

    def explicit(y, x):
        ((h2, _), f2), ((h1, g1), f1) = y, x
        m = mu(f1)
        want = ((H.mul(H.mul(H.mul(H.inv(m), h2), m), h1), g1), Aut.mul(f2, f1))
        return differ(P.compose(y, x), want)

    is_projection = lambda: all(e(k, f) == k for k in cg.morphisms() for f in C.morphisms())
    return FixtureBundle(
        "sd2", "conjugation twist through a homomorphism into ker(tau)",
        {"crossed": cm, "catgroup": cg, "eta": e, "product": P},
        [("crossed", lambda p: peiffer_check(cm, p)),
         ("catgroup", lambda p: catgroup_axioms_check(cg, p)),
         ("eta", lambda p: eta_axioms_check(e, p)),
         ("eta", lambda p: eta_monoidal_check(e, p)),
         ("product", lambda p: category_axioms_check(P, p)),
         ("product", lambda p: run_laws("explicit composition",
                                        [product_law("explicit-composition", ("y", "x"), explicit,
                                                     [chain_factor(P, 2)])], p))],
        {"eta equals projection": is_projection, "|ker tau|": len(kernel)})


# ---------------------------------------------------------------- vgg, oned

def s3_on_f2_squared():
    """S3 ≅ GL(2,2): a permutation moves the three nonzero vectors of F_2^2."""
    S3 = symmetric3()
    vecs = [(1, 0), (0, 1), (1, 1)]
    D = {g: tuple(zip(vecs[S3.label(g)[0]], vecs[S3.label(g)[1]])) for g in S3.elements()}
    return S3, D


def negation_on_f3():
    Z2 = cyclic(2)
    return Z2, {0: ((1,),), 1: ((2,),)}


VGG_REPS = {"s3-f2": (s3_on_f2_squared, 2, 2, "S3 on F_2^2"),
            "neg-f3": (negation_on_f3, 3, 1, "Z/2 on F_3 by negation")}


def build_vgg(rep="s3-f2"):
    make, q, dim, label = VGG_REPS[rep]
    K, D = make()
    V = FqSpace(q, dim)
    A = vector_category(V, "V")
    G0 = codiscrete_catgroup(K)
    e = EtaMap(A, G0.cat, lambda v, k: mat_vec(D[K.mul(k[1], K.inv(k[0]))], v, q), "eta_VGG")
    P = SemidirectCategory(e, f"V x| {K.name}_0")

    def explicit(y, x):
        (w, (g3, g2)), (v, (_, g1)) = y, x
        want = (V.add(mat_vec(D[K.mul(g1, K.inv(g2))], w, q), v), (g3, g1))
        return differ(P.compose(y, x), want)

    return FixtureBundle(
        "vgg", f"vector space twisted by a codiscrete categorical group ({label})",
        {"eta": e, "product": P},
        [("eta", lambda p: eta_axioms_check(e, p)),
         ("product", lambda p: category_axioms_check(P, p)),
         ("product", lambda p: run_laws("explicit composition",
                                        [product_law("explicit-composition", ("y", "x"), explicit,
                                                     [chain_factor(P, 2)])], p))],
        {"|Mor|": lambda: len(P.morphisms())})


def negation_crossed(q: int, n: int) -> CrossedModule:
    """(Z/2, Z/n, negation, trivial)."""
    G, H = cyclic(2), cyclic(n)
    return CrossedModule(G, H, GroupAction.from_rule(G, n, lambda g, h: (-h) % n if g else h),
                         GroupHom.trivial(H, G))


def build_oned(q=5, lambda0=2):
    n = 4
    if (q - 1) % n:
        raise InputError(f"q - 1 = {q - 1} is not divisible by |H| = {n}")
    if pow(lambda0, n, q) != 1:
        raise InputError(f"lambda0 = {lambda0} is not a {n}-th root of unity mod {q}")
    cm = negation_crossed(q, n)
    cg = catgroup_from_crossed(cm)
    V = FqSpace(q, 1)
    A = vector_category(V, "V")
    lam = [pow(lambda0, h, q) for h in range(n)]
    G = cm.G
    e = EtaMap(A, cg.cat, lambda v, k: V.scale(lam[cm.alpha(G.inv(k[1]), k[0])], v), "eta_0")
    P = SemidirectCategory(e, "V x|eta0 G")
    return FixtureBundle(
        "oned", "one-dimensional character twist", {"crossed": cm, "catgroup": cg, "eta": e,
                                                     "product": P},
        [("crossed", lambda p: peiffer_check(cm, p)),
         ("eta", lambda p: eta_axioms_check(e, p)),
         ("product", lambda p: category_axioms_check(P, p))],
        {"lambda0": lam})


# ---------------------------------------------------------------- endcat

def endo_category(q: int, dim: int) -> RuleCategory:
    """Objects F_q^dim; a morphism (f, u): u -> f(u) for every matrix f."""
    V = FqSpace(q, dim)
    mats = [tuple(tuple(e[i * dim:(i + 1) * dim]) for i in range(dim))
            for e in FqSpace(q, dim * dim).vectors()]

    def compose(g, f):
        return (mat_mul(g[0], f[0], q), f[1])

    return RuleCategory(f"End(F_{q}^{dim})", src=lambda f: f[1], tgt=lambda f: mat_vec(f[0], f[1], q),
                        ident=lambda u: (identity_matrix(dim), u), compose=compose,
                        objects=list(V.vectors()), morphisms=[(f, u) for f in mats for u in V.vectors()])


def build_endcat():
    S3, D = s3_on_f2_squared()
    A3_perms = [S3.label(g) for g in S3.elements() if sign_of(S3.label(g)) == 0]
    A3 = group_from_elements(A3_perms, compose_perm, "A3")
    alpha = GroupAction.from_rule(S3, 3, lambda g, h: A3.index(
        compose_perm(compose_perm(S3.label(g), A3.label(h)), S3.label(S3.inv(g)))))
    tau = GroupHom(A3, S3, [S3.index(A3.label(h)) for h in A3.elements()])
    cm = CrossedModule(S3, A3, alpha, tau)
    cg = catgroup_from_crossed(cm)
    Vend = endo_category(2, 2)
    q = 2
    Dinv = {g: mat_inverse(D[g], q) for g in D}
    T = lambda h: D[tau(h)]
    mm = lambda *ms: _chain_mul(ms, q)

    def rho_mor(k, f):
        (h, g), (m, u) = k, f
        return (mm(T(h), D[g], m, Dinv[g]), mat_vec(D[g], u, q))

    a = TwistedAction(cg, Vend, lambda g, u: mat_vec(D[g], u, q), rho_mor, name="D")
    GL = general_linear(2, 2)
    Dhom = GroupHom(S3, GL, [GL.index(D[g]) for g in S3.elements()])

    def proof_chain(k2, k1, f2, f1):
        (h2, g2), (h1, g1), (m2, _), (m1, _) = k2, k1, f2, f1
        steps = [
            mm(T(h2), D[g2], m2, Dinv[g2], T(h1), D[g1], m1, Dinv[g1]),
            mm(T(h2), D[g2], m2, Dinv[g2], D[cm.G.mul(tau(h1), g1)], m1, Dinv[g1]),
            mm(T(h2), D[cm.G.mul(tau(h1), g1)], m2, m1, Dinv[g1]),
            mm(T(cm.H.mul(h2, h1)), D[g1], m2, m1, Dinv[g1]),
        ]
        bad = next((i for i in range(1, len(steps)) if steps[i] != steps[0]), None)
        return None if bad is None else (f"step {bad}", steps[bad], steps[0])

    def product_chain(k2, k1, f):
        (h2, g2), (h1, g1), (m, _) = k2, k1, f
        G = cm.G
        lhs = mm(T(cm.H.mul(h2, alpha(g2, h1))), D[G.mul(g2, g1)], m, Dinv[G.mul(g2, g1)])
        rhs = mm(T(h2), D[g2], T(h1), D[g1], m, Dinv[g1], Dinv[g2])
        return differ(lhs, rhs)

    G_, H_ = cm.G, cm.H
    laws = [
        product_law("T-times-D", ("h", "g"),
                    lambda h, g: differ(mm(T(h), D[g]), D[G_.mul(tau(h), g)]),
                    [list_factor(H_.elements()), list_factor(G_.elements())]),
        product_law("peiffer-step", ("g2", "h1"),
                    lambda g, h: differ(tau(alpha(g, h)), G_.mul(G_.mul(g, tau(h)), G_.inv(g))),
                    [list_factor(G_.elements()), list_factor(H_.elements())]),
        product_law("composition-chain", ("k2", "k1", "f2", "f1"), proof_chain,
                    [chain_factor(cg.cat, 2), chain_factor(Vend, 2)]),
        product_law("product-chain", ("k2", "k1", "f"), product_chain,
                    [chain_factor(cg.cat, 2), mor_factor(Vend)]),
    ]
    return FixtureBundle(
        "endcat", "S3 acting on the endomorphism category of F_2^2 through GL(2,2)",
        {"crossed": cm, "catgroup": cg, "action": a},
        [("crossed", lambda p: peiffer_check(cm, p)),
         ("D", lambda p: hom_check(Dhom, p)),
         ("target", lambda p: category_axioms_check(Vend, p)),
         ("action", lambda p: action_check(a, p)),
         ("proof", lambda p: run_laws("endomorphism action computation", laws, p))],
        {"|Mor(G)|": len(cg.morphisms()), "|Mor(V)|": len(Vend.morphisms())})


def _chain_mul(ms, q):
    out = ms[0]
    for m in ms[1:]:
        out = mat_mul(out, m, q)
    return out


# ---------------------------------------------------------------- multitwist

@dataclass
class MultiTwistConfig:
    """G acts on the pointed set M (basepoint 0) and on H; V carries the representation S."""

    q: int
    G: FiniteGroup
    on_M: GroupAction
    H: FiniteGroup
    on_H: GroupAction
    lam: CharacterFamily
    V: FqSpace
    S: dict                        # group element -> matrix on V
    p0: int = 0
    psi_bound: int = 4096

    def validate(self, policy=None):
        if self.lam.q != self.q or self.V.q != self.q:
            raise InputError("characters, V and q disagree on the field")
        rep = character_family_check(self.lam, policy)
        if not rep.ok:
            raise InputError(f"character family fails {rep.failures()[0].law}")
        G, q = self.G, self.q
        for g in G.elements():
            for h in G.elements():
                if mat_mul(self.S[g], self.S[h], q) != self.S[G.mul(g, h)]:
                    raise InputError(f"S is not a representation at ({g}, {h})")
        if self.q ** (self.V.dim * self.on_M.size) > self.psi_bound:
            raise InputError(f"|Psi| = {self.q ** (self.V.dim * self.on_M.size)} exceeds "
                             f"the bound {self.psi_bound}")


def default_multitwist_config(q=5, lambda0=2, s=4) -> MultiTwistConfig:
    G = cyclic(2)
    on_M = GroupAction(G, 2, [[0, 1], [1, 0]])
    H = cyclic(4)
    on_H = GroupAction.from_rule(G, 4, lambda g, h: (-h) % 4 if g else h)
    if (q - 1) % H.exponent:
        raise InputError(f"exponent of H ({H.exponent}) does not divide q-1 = {q - 1}")
    if pow(lambda0, 4, q) != 1:
        raise InputError(f"lambda0 = {lambda0} is not a 4th root of unity mod {q}")
    if s * s % q != 1:
        raise InputError(f"S(generator) = {s} must square to 1 mod {q}")
    base = [pow(lambda0, h, q) for h in range(4)]
    lam = CharacterFamily.induced(q, H, G, on_M, on_H, base)
    V = FqSpace(q, 1)
    return MultiTwistConfig(q, G, on_M, H, on_H, lam, V, {0: ((1,),), 1: ((s % q,),)})


def build_multitwist(cfg: MultiTwistConfig, policy=None) -> FixtureBundle:
    cfg.validate(policy)
    q, G, H, V, S, lam = cfg.q, cfg.G, cfg.H, cfg.V, cfg.S, cfg.lam
    onM, onH, p0 = cfg.on_M, cfg.on_H, cfg.p0
    npts = onM.size
    # every rule below is pure on a carrier of at most a few thousand labels
    Sv = cache(lambda g, v: mat_vec(S[g], v, q))
    psis = [tuple(tuple(x[i * V.dim:(i + 1) * V.dim]) for i in range(npts))
            for x in FqSpace(q, V.dim * npts).vectors()]

    @cache
    def act_psi(g, psi):
        """(g·psi)(p) = S(g) psi(g^-1 p)"""
        gi = G.inv(g)
        return tuple(Sv(g, psi[onM(gi, p)]) for p in range(npts))

    # --- the representation of H x| G on Psi
    HG = [(h, g) for h in H.elements() for g in G.elements()]
    hg_mul = lambda x, y: (H.mul(x[0], onH(x[1], y[0])), G.mul(x[1], y[1]))

    def tilde_S(k, psi):
        h, g = k
        gi = G.inv(g)
        return tuple(V.scale(lam(p, h), Sv(g, psi[onM(gi, p)])) for p in range(npts))

    def poinc_chain(k2, k1, psi):
        (h2, g2), (h1, g1) = k2, k1
        g21 = G.mul(g2, g1)
        lines = [
            tilde_S(k2, tilde_S(k1, psi)),
            tuple(V.scale(lam(p, h2) * lam(onM(G.inv(g2), p), h1),
                          Sv(g2, Sv(g1, psi[onM(G.inv(g1), onM(G.inv(g2), p))]))) for p in range(npts)),
            tuple(V.scale(lam(p, h2) * lam(p, onH(g2, h1)), Sv(g21, psi[onM(G.inv(g21), p)]))
                  for p in range(npts)),
            tuple(V.scale(lam(p, H.mul(h2, onH(g2, h1))), Sv(g21, psi[onM(G.inv(g21), p)]))
                  for p in range(npts)),
            tilde_S(hg_mul(k2, k1), psi),
        ]
        bad = next((i for i in range(1, len(lines)) if lines[i] != lines[0]), None)
        return None if bad is None else (f"line {bad}", lines[bad], lines[0])

    # --- Psi_p0: identities by fiat plus (h, g, psi)
    lamp = lambda g, h: lam(onM(g, p0), h)

    @cache
    def p_src(f):
        return f[1] if f[0] == "id" else f[3][onM(f[2], p0)]

    @cache
    def p_tgt(f):
        if f[0] == "id":
            return f[1]
        _, h, g, psi = f
        return V.scale(lamp(g, h), psi[onM(g, p0)])

    @cache
    def p_compose(f2, f1):
        if f1[0] == "id":
            return f2
        if f2[0] == "id":
            return f1
        (_, h2, g2, _), (_, h1, g1, psi1) = f2, f1
        return ("mor", H.mul(onH(G.mul(g1, G.inv(g2)), h2), h1), g1, psi1)

    vecs = list(V.vectors())
    mors = [("id", w) for w in vecs] + [("mor", h, g, psi) for h in H.elements()
                                        for g in G.elements() for psi in psis]
    special = [psis[0], tuple(tuple([1] * V.dim) for _ in range(npts))]
    critical = [("id", w) for w in vecs] + [("mor", h, g, psi) for h in H.elements()
                                            for g in G.elements() for psi in special]

    def p_sample(r):
        if r.random() < 0.1:
            return ("id", r.choice(vecs))
        return ("mor", r.randrange(H.order), r.randrange(G.order), r.choice(psis))

    def p_sample_from(w, r):
        if r.random() < 0.1:
            return ("id", w)
        h, g = r.randrange(H.order), r.randrange(G.order)
        psi = list(r.choice(psis))
        psi[onM(g, p0)] = w
        return ("mor", h, g, tuple(psi))

    Psi0 = RuleCategory("Psi_p0", src=p_src, tgt=p_tgt, ident=lambda w: ("id", w), compose=p_compose,
                        objects=vecs, morphisms=mors if len(mors) <= CARRIER_LIMIT else None,
                        sample_object=lambda r: r.choice(vecs), sample_morphism=p_sample,
                        sample_from=p_sample_from, critical=critical)

    # --- eta_1 and Psi_1 = V x|eta1 Psi_p0
    Vcat = vector_category(V, "V")

    @cache
    def eta1(v, f):
        return v if f[0] == "id" else V.scale(lamp(f[2], f[1]), v)

    e1 = EtaMap(Vcat, Psi0, eta1, "eta_1")
    Psi1 = SemidirectCategory(e1, "Psi_1")

    def psi1_explicit(y, x):
        (v2, f2), (v1, f1) = y, x
        if f1[0] == "mor" and f2[0] == "mor":
            (_, h2, g2, _), (_, h1, g1, psi1) = f2, f1
            want = (V.add(V.scale(lamp(g1, h1), v2), v1),
                    ("mor", H.mul(onH(G.mul(g1, G.inv(g2)), h2), h1), g1, psi1))
        elif f1[0] == "id":
            want = (V.add(v2, v1), f2)
        else:
            want = (V.add(eta1(v2, f1), v1), f1)
        return differ(Psi1.compose(y, x), want)

    # --- V x_S G_d
    Vadd = additive_group(V)
    Sact = GroupAction.from_rule(G, Vadd.order, lambda g, i: Vadd.index(Sv(g, Vadd.label(i))))
    cm = CrossedModule(G, Vadd, Sact, GroupHom.trivial(Vadd, G))
    VG = catgroup_from_crossed(cm, "V x_S G_d")
    vl, vi = Vadd.label, Vadd.index

    def vg_explicit(k2, k1):
        (a2, g2), (a1, g1) = k2, k1
        prod = (vi(V.add(vl(a2), Sv(g2, vl(a1)))), G.mul(g2, g1))
        comp = (vi(V.add(vl(a2), vl(a1))), g1) if g1 == g2 else None
        return differ((VG.mul(k2, k1), VG.compose(k2, k1)), (prod, comp))

    # --- eta_2 and the action rho
    @cache
    def eta2(k, f):
        (a, g2), (_, pf) = k, f
        if pf[0] == "id":
            return k
        return (vi(V.scale(lamp(pf[2], pf[1]), vl(a))), g2)

    e2 = EtaMap(VG, Psi1, eta2, "eta_2")

    def rho_obj(g, x):
        return ("*", Sv(g, x[1]))

    @cache
    def rho_mor(k, f):
        (a, gp), (v, pf) = k, f
        nv = V.sub(Sv(gp, v), vl(a))
        if pf[0] == "id":
            return (nv, ("id", Sv(gp, pf[1])))
        _, h, g, psi = pf
        return (nv, ("mor", onH(gp, h), G.mul(gp, g), act_psi(gp, psi)))

    rho = TwistedAction(VG, Psi1, rho_obj, rho_mor, e2, "rho")

    def identity_case(k2, k1, f1, v):
        """f2 = (v; 1_w) on top of a non-identity f1: both sides of the functoriality square."""
        if f1[1][0] == "id":
            return None
        f2 = (v, ("id", Psi1.B.tgt(f1[1])))
        lhs = Psi1.compose(rho_mor(k2, f2), rho_mor(k1, f1))
        rhs = rho_mor(VG.compose(e2(k2, f1), k1), Psi1.compose(f2, f1))
        if lhs is None:
            return "acted morphisms are not composable"
        return differ(lhs, rhs)

    vg_chain = chain_factor(VG.cat, 2)
    f1_factor = Factor(None, None, lambda r: (Psi1.sample_morphism(r),),
                       lambda: ((x,) for x in Psi1.critical_morphisms()))
    laws_S = [product_law("poinc-chain", ("k2", "k1", "psi"), poinc_chain,
                          [list_factor(HG), list_factor(HG), list_factor(psis)])]
    laws_psi1 = [product_law("explicit-composition", ("y", "x"), psi1_explicit, [chain_factor(Psi1, 2)])]
    laws_vg = [product_law("explicit-product-composition", ("k2", "k1"), vg_explicit,
                           [mor_factor(VG.cat), mor_factor(VG.cat)])]
    laws_id = [product_law("identity-case", ("k2", "k1", "f1", "v"), identity_case,
                           [vg_chain, f1_factor, list_factor(vecs)])]

    def composition_example():
        # (h2=1, g2=generator) o (h1=2, g1=e), psi chosen so the pair composes
        if H.order < 3 or G.order < 2:
            return None
        g1, g2 = 0, 1
        return H.mul(onH(G.mul(g1, G.inv(g2)), 1), 2)

    return FixtureBundle(
        "multitwist", "twisted representation of V x_S G_d on Psi_1 built from characters",
        {"psi_p0": Psi0, "eta1": e1, "psi1": Psi1, "VG": VG, "crossed": cm, "eta2": e2, "rho": rho,
         "config": cfg, "tilde_S": tilde_S, "act_psi": act_psi},
        [("characters", lambda p: character_family_check(lam, p)),
         ("tilde-S", lambda p: run_laws("representation of H x| G on Psi", laws_S, p)),
         ("psi_p0", lambda p: category_axioms_check(Psi0, p)),
         ("eta1", lambda p: eta_axioms_check(e1, p)),
         ("psi1", lambda p: category_axioms_check(Psi1, p)),
         ("psi1", lambda p: run_laws("explicit composition", laws_psi1, p)),
         ("VG", lambda p: peiffer_check(cm, p)),
         ("VG", lambda p: catgroup_axioms_check(VG, p)),
         ("VG", lambda p: run_laws("explicit product", laws_vg, p)),
         ("eta2", lambda p: eta_axioms_check(e2, p)),
         ("eta2", lambda p: eta_monoidal_check(e2, p)),
         ("eta2", lambda p: eta_invariance_check(e2, rho, p)),
         ("rho", lambda p: action_check(rho, p)),
         ("rho", lambda p: run_laws("identity-morphism cases", laws_id, p)),
         ("double", lambda p: double_axioms_check(double_from_action(rho, verify=False), p,
                                                  converse=False))],
        {"|Psi|": len(psis), "|Mor(Psi_p0)|": len(mors),
         "|Mor(Psi_1)|": V.size * len(mors), "|Mor(V x_S G_d)|": len(VG.morphisms()),
         "lambda": [list(r) for r in lam.values],
         "composition example h-component": composition_example,
         "eta1(1; 1, e, psi)": lambda: list(eta1((1,) * V.dim, ("mor", 1, 0, psis[0])))})


# ---------------------------------------------------------------- categorical vector spaces

def negation_catvec_action(q: int = 3) -> TwistedAction:
    """Z/2_0 acting on W x V = F_q x F_q (tau0 = id) by negation through the codiscrete group."""
    G = codiscrete_catgroup(cyclic(2))
    c = catvec(q, 1, 1, ((1,),), f"F_{q} x F_{q}")
    sg = lambda a: q - 1 if a else 1
    obj = {a: ((sg(a),),) for a in G.objects()}
    mor = {k: ((sg(k[0]), sg(k[0]) - sg(k[1])), (0, sg(k[1]))) for k in G.morphisms()}
    return linear_action(G, c, obj, mor, name="negation")


def counterfeit_catvec_action(q: int = 3) -> TwistedAction:
    """Like the negation action, except rho(k) on W follows the source of k."""
    a = negation_catvec_action(q)
    G, c = a.group, a.target
    sg = lambda x: q - 1 if x else 1
    obj = {x: ((sg(x),),) for x in G.objects()}
    mor = {k: ((sg(k[1]), sg(k[0]) - sg(k[1])), (0, sg(k[1]))) for k in G.morphisms()}
    return linear_action(G, c, obj, mor, name="source-dependent")


def build_catvec_neg(q=3):
    a = negation_catvec_action(q)
    c = a.target
    return FixtureBundle(
        "catvec-neg", "negation representation on a categorical vector space",
        {"action": a, "space": c},
        [("space", lambda p: catvecspace_check(c, p)),
         ("decomposition", lambda p: decompose_catvecspace(c, p).report),
         ("action", lambda p: action_check(a, p, preconditions=True)),
         ("linear", lambda p: linear_rep_check(a, p)),
         ("structure", lambda p: catvec_rep_structure(a, p)[1])],
        {})


def schur_actions(q: int = 2):
    """The shear representation on W x V (tau0 = 0) and the trivial one on discrete F_q."""
    G = group_catgroup(cyclic(q))
    V1 = catvec(q, 1, 1, name=f"F_{q} x F_{q}")
    V2 = discrete_vector_category(FqSpace(q, 1), f"disc(F_{q})")
    shear = linear_action(G, V1, {0: ((1,),)}, {h: ((1, h), (0, 1)) for h in G.morphisms()},
                          name="shear")
    trivial = linear_action(G, V2, {0: ((1,),)}, {h: ((1,),) for h in G.morphisms()}, name="trivial")
    return shear, trivial


def schur_morphism(kind: str, q: int = 2) -> ActionMorphism:
    a1, a2 = schur_actions(q)
    V1, V2 = a1.target, a2.target
    if kind == "quotient":
        F = LinearFunctor(V1, V2, LinearMap(V1.obj, V2.obj, ((1,),)),
                          LinearMap(V1.mor, V2.mor, ((0, 1),)), "forget-W")
        return ActionMorphism(a1, a2, F, "forget-W")
    if kind == "irred":
        return ActionMorphism(a1, a1, LinearFunctor.identity(V1), "Id")
    if kind == "zero":
        return ActionMorphism(a1, a1, LinearFunctor.zero(V1, V1), "0")
    raise InputError(f"unknown schur morphism {kind!r}")


SCHUR_BRANCH = {"irred": "isomorphism", "quotient": "quotient-isomorphism", "zero": "zero"}


def build_schur(kind: str, q=2):
    m = schur_morphism(kind, q)
    a1, a2 = m.source, m.target

    def irreducible(a):
        v = irreducibility_check(a)
        return None if v.irreducible else f"invariant subcategory {v.witness.describe()}"

    def branch(p):
        v = schur_classify(m, p)
        rep = single("schur verdict", "branch", lambda: differ(v.branch, SCHUR_BRANCH[kind]), p)
        rep.facts["verdict"] = v.to_dict()
        return rep

    checks = [("source", lambda p: catvecspace_check(a1.target, p)),
              ("source", lambda p: action_check(a1, p)),
              ("source", lambda p: single("irreducibility", "irreducible", lambda: irreducible(a1), p))]
    if a2 is not a1:
        checks += [("target", lambda p: catvecspace_check(a2.target, p)),
                   ("target", lambda p: action_check(a2, p)),
                   ("target", lambda p: single("irreducibility", "irreducible",
                                               lambda: irreducible(a2), p))]
    checks.append(("schur", branch))
    return FixtureBundle(f"schur-{kind}", f"Schur test instance ({SCHUR_BRANCH[kind]} expected)",
                         {"morphism": m, "source": a1, "target": a2}, checks,
                         {"expected branch": SCHUR_BRANCH[kind]})


# ---------------------------------------------------------------- registry

FIXTURES = {
    "cg1": (build_cg1, {"K": (_group("K"), "Z2", "group name: Zn, S3 or trivial"),
                        "variant": (_choice("variant", ("codiscrete", "discrete")), "codiscrete",
                                    "codiscrete or discrete")},
            "codiscrete and discrete categorical groups"),
    "affine": (build_affine, {"q": (_prime("q", 7), 3, "prime field size"),
                              "dim": (_int("dim", 1, 2), 1, "dimension of V")},
               "affine group of F_q^dim as a categorical group"),
    "rg1": (build_rg1, {"q": (_prime("q", 7), 3, "prime field size"),
                        "dim": (_int("dim", 1, 2), 1, "dimension of V")},
            "negation action on a codiscrete category, with its double category"),
    "sd1": (build_sd1, {"n": (_int("n", 2, 12), 3, "order of the cyclic group inverted")},
            "semidirect product of one-object categories"),
    "sd2": (build_sd2, {"q": (_prime("q", 13), 3, "field of the one-dimensional space V")},
            "conjugation twist through ker(tau)"),
    "vgg": (build_vgg, {"rep": (_choice("rep", tuple(VGG_REPS)), "s3-f2",
                                "representation: s3-f2 or neg-f3")},
            "vector space twisted by a codiscrete categorical group"),
    "oned": (build_oned, {"q": (_prime("q", 29), 5, "prime with 4 | q-1"),
                          "lambda0": (_int("lambda0", 1, 28), 2, "character value at 1")},
             "one-dimensional character twist"),
    "endcat": (build_endcat, {}, "crossed-module action on an endomorphism category"),
    "multitwist": (lambda q=5, lambda0=2, s=4: build_multitwist(default_multitwist_config(q, lambda0, s)),
                   {"q": (_prime("q", 13), 5, "prime with 4 | q-1"),
                    "lambda0": (_int("lambda0", 1, 12), 2, "basepoint character value at 1"),
                    "s": (_int("s", 1, 12), 4, "S(generator) as a scalar")},
                   "multiple-twist construction at finite scale"),
    "catvec-neg": (build_catvec_neg, {"q": (_prime("q", 7), 3, "prime field size")},
                   "negation representation on W x V"),
    "schur-irred": (lambda q=2: build_schur("irred", q), {"q": (_int("q", 2, 3), 2, "2 or 3")},
                    "identity on an irreducible representation"),
    "schur-quotient": (lambda q=2: build_schur("quotient", q),
                       {"q": (_int("q", 2, 3), 2, "2 or 3")},
                       "functor killing exactly Hom(0,0)"),
    "schur-zero": (lambda q=2: build_schur("zero", q), {"q": (_int("q", 2, 3), 2, "2 or 3")},
                   "zero functor"),
}


def fixture_list() -> list:
    return [{"name": n, "summary": s,
             "params": {k: {"default": d, "help": h} for k, (_, d, h) in schema.items()}}
            for n, (_, schema, s) in FIXTURES.items()]


def build_fixture(name: str, params: Optional[dict] = None, policy=None,
                  verify: bool = False) -> FixtureBundle:
    """Build a named fixture; with ``verify`` a failing declared check raises RefusalError."""
    if name not in FIXTURES:
        raise InputError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
    builder, schema, _ = FIXTURES[name]
    kw = {k: parse(default) for k, (parse, default, _) in schema.items()}
    for k, v in (params or {}).items():
        if k not in schema:
            raise InputError(f"fixture {name} has no parameter {k!r}"
                             + (f" (known: {', '.join(schema)})" if schema else ""))
        kw[k] = schema[k][0](v)
    bundle = builder(**kw)
    if verify:
        rep = bundle.verify(policy)
        if not rep.ok:
            raise RefusalError(f"fixture {name}: declared check {rep.failures()[0].law} fails", rep)
    return bundle
