"""Double categories induced by (twisted) actions, and the double functors between them.

Squares are raw pairs (k, f).  Vertically a square runs from f to rho(k, f)
and squares compose by the group product; horizontally they compose in the
twisted product G x|eta V.
"""
from __future__ import annotations

from typing import Optional

from .actions import ActionMorphism, TwistedAction, action_check
from .errors import InputError, RefusalError
from .etatwist import SemidirectCategory, eta_invariance_check
from .fincat import (Functor, RuleCategory, category_laws, chain_factor,
                     functor_laws, product_law)
from .verify import Law, VerificationPolicy, differ, run_laws

GUARDS = ("target", "dropped", "literal")


class DoubleCategory:
    """``guard`` selects the vertical composability test.

    "target" is the correct one (f' = rho(k, f)); "dropped" composes any two
    squares and "literal" tests f' = rho(k', f).  The last two exist so the
    checker can be shown to catch them.
    """

    def __init__(self, action: TwistedAction, guard: str = "target"):
        if guard not in GUARDS:
            raise InputError(f"unknown vertical guard {guard!r}")
        self.action, self.guard = action, guard
        G, V = action.group, action.target
        self.G, self.V = G, V
        rm = action.rho_mor

        def vcompose(y, x):
            (kp, fp), (k, f) = y, x
            if guard == "target" and fp != rm(k, f):
                return None
            if guard == "literal" and fp != rm(kp, f):
                return None
            return (G.mul(kp, k), f)

        squares = None
        if G.cat.enumerable and V.enumerable:
            squares = lambda: [(k, f) for k in G.morphisms() for f in V.morphisms()]
        crit_v = V.critical_morphisms()
        mors_g = G.morphisms()
        ids_g = [G.cat.ident(x) for x in G.objects()]

        def sample_from(f, r):
            return (r.choice(mors_g), f)

        self.vertical = RuleCategory(
            f"vertical({action.name})", src=lambda x: x[1], tgt=lambda x: rm(x[0], x[1]),
            ident=lambda f: (G.unit, f), compose=vcompose,
            objects=(lambda: list(V.morphisms())) if V.enumerable else None,
            morphisms=squares,
            sample_object=lambda r: V.sample_morphism(r),
            sample_morphism=lambda r: (r.choice(mors_g), V.sample_morphism(r)),
            sample_from=sample_from,
            critical=(lambda: [(k, f) for k in ids_g for f in crit_v]) if crit_v is not None else None,
            guard=False)
        # a large V keeps its declared sub-carrier; the group part is cut to identities
        hcrit = (lambda: [(k, f) for k in ids_g for f in crit_v]) if crit_v is not None else None
        self.horizontal = SemidirectCategory(action.eta, f"horizontal({action.name})", hcrit)

    def hcompose(self, y, x):
        return self.horizontal.compose(y, x)

    def vcompose(self, y, x):
        return self.vertical.compose(y, x)


def double_from_action(a: TwistedAction, policy: Optional[VerificationPolicy] = None,
                       verify: bool = True, guard: str = "target") -> DoubleCategory:
    if verify:
        rep = action_check(a, policy)
        if not rep.ok:
            raise RefusalError(f"{a.name} is not an action", rep)
        if a.twisted:
            inv = eta_invariance_check(a.eta, a, policy)
            if not inv.ok:
                raise RefusalError("the twist is not invariant under the action "
                                   "(eta(k, rho(k', f)) = eta(k, f) fails)", inv)
    return DoubleCategory(a, guard)


def _quadruples(d: DoubleCategory):
    """(G', G, F', F) with G∘_h F defined and F', G' stacked on top of F, G."""
    H, C, rm = d.horizontal, d.G.cat, d.action.rho_mor
    out = C.out_index
    for Gs, Fs in H.chains(2):
        tF, tG = rm(*Fs), rm(*Gs)
        for kF in C.morphisms():
            for kG in out.get(C.tgt(kF), ()):
                yield ((kG, tG), Gs, (kF, tF), Fs)


def _quadruple_count(d: DoubleCategory) -> int:
    C = d.G.cat
    per = sum(len(C.out_index.get(C.tgt(k), ())) for k in C.morphisms())
    return d.horizontal.chain_count(2) * per


def _sample_quadruple(d: DoubleCategory, r):
    H, C, rm = d.horizontal, d.G.cat, d.action.rho_mor
    Gs, Fs = H.sample_chain(2, r)
    kF = C.sample_morphism(r)
    kG = C.sample_from(C.tgt(kF), r)
    return ((kG, rm(*Gs)), Gs, (kF, rm(*Fs)), Fs)


def double_laws(d: DoubleCategory, converse: bool = True) -> list:
    """Boundary conditions and the exchange law.

    ``converse`` adds the 'only if' half of the boundary rule: squares whose
    source and target boundaries compose must compose horizontally.
    """
    H, Vt, C, V = d.horizontal, d.vertical, d.G.cat, d.V
    G, e = d.G, d.action.eta
    enum = H.enumerable

    def h1_source(y, x):
        return differ(Vt.src(H.compose(y, x)), V.compose(Vt.src(y), Vt.src(x)))

    def h1_target(y, x):
        rhs = V.compose(Vt.tgt(y), Vt.tgt(x))
        if rhs is None:
            return "target boundaries are not composable"
        return differ(Vt.tgt(H.compose(y, x)), rhs)

    def h1_converse(y, x):
        s_ok = V.composable(Vt.src(y), Vt.src(x))
        t_ok = V.composable(Vt.tgt(y), Vt.tgt(x))
        if s_ok and t_ok and H.compose(y, x) is None:
            return "both boundary composites exist but the horizontal composite does not"
        return None

    def exchange(Gp, Gs, Fp, Fs):
        top_g, top_f = Vt.compose(Gp, Gs), Vt.compose(Fp, Fs)
        hx, hy = H.compose(Gs, Fs), H.compose(Gp, Fp)
        if None in (top_g, top_f, hx, hy):
            return "a vertical or horizontal composite in the exchange square is undefined"
        lhs, rhs = H.compose(top_g, top_f), Vt.compose(hy, hx)
        if lhs is None or rhs is None:
            return "one side of the exchange law is undefined"
        return differ(lhs, rhs)

    def normal_form(Gp, Gs, Fp, Fs):
        (k2p, _), (k2, f2), (k1p, _), (k1, f1) = Gp, Gs, Fp, Fs
        top_g, top_f = Vt.compose(Gp, Gs), Vt.compose(Fp, Fs)
        if top_g is None or top_f is None:
            return "vertical composite undefined"
        nf = (C.compose(e(G.mul(k2p, k2), f1), G.mul(k1p, k1)), V.compose(f2, f1))
        return differ(H.compose(top_g, top_f), nf)

    def pairs_space():
        sq = Vt.morphisms()
        return ((y, x) for x in sq for y in sq)

    def quad_law(name, test):
        return Law(name, ("G'", "G", "F'", "F"), test,
                   space=(lambda: _quadruples(d)) if enum else None,
                   size=(lambda: _quadruple_count(d)) if enum else None,
                   sample=lambda r: _sample_quadruple(d, r))

    hchain = chain_factor(H, 2)
    n_sq = len(Vt.morphisms()) if Vt.morphisms() is not None else None
    laws = (category_laws(Vt, "vertical.") + category_laws(H, "horizontal.") + [
        Law("vertical-identity-form", ("f",), lambda f: differ(Vt.ident(f), (G.unit, f)),
            space=(lambda: ((f,) for f in V.morphisms())) if V.enumerable else None,
            size=len(V.morphisms()) if V.enumerable else None,
            sample=lambda r: (V.sample_morphism(r),)),
        product_law("h1-source", ("G", "F"), h1_source, [hchain]),
        product_law("h1-target", ("G", "F"), h1_target, [hchain]),
        quad_law("exchange", exchange),
        quad_law("exchange-normal-form", normal_form),
    ])
    if converse:
        laws.append(Law("h1-converse", ("G", "F"), h1_converse,
                        space=pairs_space if n_sq is not None else None,
                        size=n_sq * n_sq if n_sq is not None else None,
                        sample=lambda r: _sample_boundary_pair(d, r)))
    return laws


def _sample_boundary_pair(d: DoubleCategory, r):
    """Squares (G, F) whose source boundaries compose; the k-parts are independent."""
    V, C = d.V, d.G.cat
    f2, f1 = V.sample_chain(2, r)
    return ((C.sample_morphism(r), f2), (C.sample_morphism(r), f1))


def double_axioms_check(d: DoubleCategory, policy: Optional[VerificationPolicy] = None,
                        converse: bool = True):
    return run_laws(f"double category over {d.V.name}", double_laws(d, converse), policy,
                    {"vertical guard": d.guard})


# ---------------------------------------------------------------- induced double functors

class DoubleFunctor:
    """F_*(f) = F(f) on objects, F_*(k, f) = (k, F(f)) on squares."""

    def __init__(self, m: ActionMorphism, d1: DoubleCategory, d2: DoubleCategory):
        if d1.action is not m.source or d2.action is not m.target:
            raise InputError("double categories must come from the morphism's two actions")
        F = m.F
        self.m, self.d1, self.d2 = m, d1, d2
        sq = lambda x: (x[0], F.mor(x[1]))
        self.vertical = Functor(d1.vertical, d2.vertical, F.mor, sq, f"{m.name}_*")
        self.horizontal = Functor(d1.horizontal, d2.horizontal, lambda x: (x[0], F.obj(x[1])), sq,
                                  f"{m.name}_*")

    def obj(self, f):
        return self.vertical.obj(f)

    def __call__(self, x):
        return self.vertical.mor(x)


def induced_double_functor(m: ActionMorphism, d1: Optional[DoubleCategory] = None,
                           d2: Optional[DoubleCategory] = None) -> DoubleFunctor:
    d1 = d1 or DoubleCategory(m.source)
    d2 = d2 or DoubleCategory(m.target)
    return DoubleFunctor(m, d1, d2)


def double_functor_check(Fs: DoubleFunctor, policy: Optional[VerificationPolicy] = None):
    laws = functor_laws(Fs.vertical, "vertical.") + functor_laws(Fs.horizontal, "horizontal.")
    return run_laws(f"double functor {Fs.m.name}_*", laws, policy)
