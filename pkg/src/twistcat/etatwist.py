"""Twist maps eta: Mor(A) x Mor(B) -> Mor(A) and the twisted products they define."""
from __future__ import annotations

from functools import cached_property
from typing import Callable, Optional

from .algebra import FiniteGroup, FqSpace, GroupAction, GroupHom
from .catgroup import CategoricalGroup, CrossedModule
from .errors import InputError, RefusalError
from .fincat import (CARRIER_LIMIT, FinCategory, RuleCategory, TableCategory, chain_factor,
                     mor_factor, obj_factor, product_law)
from .verify import VerificationPolicy, differ, run_laws


class EtaMap:
    """A twist of A by B.  ``A`` may be a CategoricalGroup, which enables the monoidal laws."""

    def __init__(self, A, B: FinCategory, rule: Callable, name: str = "eta"):
        if isinstance(A, CategoricalGroup):
            self.group, A = A, A.cat
        else:
            self.group = None
        self.A, self.B, self._rule, self.name = A, B, rule, name
        self.table = None

    def __call__(self, k, f):
        return self._rule(k, f)

    @classmethod
    def projection(cls, A, B: FinCategory) -> "EtaMap":
        return cls(A, B, lambda k, f: k, "projection")

    @classmethod
    def from_table(cls, A: TableCategory, B: TableCategory, table, name: str = "eta") -> "EtaMap":
        if len(table) != A.m or any(len(row) != B.m for row in table):
            raise InputError(f"eta: expected a {A.m}x{B.m} table indexed by (morA, morB)")
        for i, row in enumerate(table):
            for j, x in enumerate(row):
                if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < A.m:
                    raise InputError(f"eta[{i}][{j}] = {x!r} is not a morphism of A")
        t = tuple(tuple(r) for r in table)
        e = cls(A, B, lambda k, f: t[k][f], name)
        e.table = t
        return e

    def to_json(self) -> dict:
        if not (isinstance(self.A, TableCategory) and isinstance(self.B, TableCategory)):
            raise InputError("only table-backed twists serialize")
        table = self.table or [[self(k, f) for f in range(self.B.m)] for k in range(self.A.m)]
        return {"A": self.A.to_json(), "B": self.B.to_json(), "eta": [list(r) for r in table]}

    @classmethod
    def from_json(cls, doc) -> "EtaMap":
        if not isinstance(doc, dict):
            raise InputError("eta document: expected a JSON object")
        for key in ("A", "B", "eta"):
            if key not in doc:
                raise InputError(f"{key}: missing field")
        A = TableCategory.from_json(doc["A"], "A")
        B = TableCategory.from_json(doc["B"], "B")
        return cls.from_table(A, B, doc["eta"])


def eta_laws(e: EtaMap, prefix: str = "") -> list:
    A, B = e.A, e.B

    def hom_set(k, f):
        x = e(k, f)
        return differ((A.src(x), A.tgt(x)), (A.src(k), A.tgt(k)))

    def right_action(k, f2, f1):
        return differ(e(k, B.compose(f2, f1)), e(e(k, f2), f1))

    def composition(k2, k1, f):
        rhs = A.compose(e(k2, f), e(k1, f))
        if rhs is None:
            return "twisted factors are not composable"
        return differ(e(A.compose(k2, k1), f), rhs)

    return [
        product_law(prefix + "hom-set", ("k", "f"), hom_set, [mor_factor(A), mor_factor(B)]),
        product_law(prefix + "right-action", ("k", "f2", "f1"), right_action,
                    [mor_factor(A), chain_factor(B, 2)]),
        product_law(prefix + "right-unit", ("k", "b"), lambda k, b: differ(e(k, B.ident(b)), k),
                    [mor_factor(A), obj_factor(B)]),
        product_law(prefix + "composition", ("k2", "k1", "f"), composition,
                    [chain_factor(A, 2), mor_factor(B)]),
        product_law(prefix + "identity", ("a", "f"), lambda a, f: differ(e(A.ident(a), f), A.ident(a)),
                    [obj_factor(A), mor_factor(B)]),
    ]


def eta_axioms_check(e: EtaMap, policy: Optional[VerificationPolicy] = None):
    return run_laws(f"twist {e.name}", eta_laws(e), policy)


def eta_monoidal_laws(e: EtaMap, prefix: str = "") -> list:
    G = e.group
    if G is None:
        raise InputError("monoidal laws need a twist whose first category is a categorical group")
    C, B, m, one = G.cat, e.B, G.mul, G.one
    return [
        product_law(prefix + "monoidal-right", ("k", "a", "f"),
                    lambda k, a, f: differ(e(m(k, one(a)), f), m(e(k, f), one(a))),
                    [mor_factor(C), obj_factor(C), mor_factor(B)]),
        product_law(prefix + "monoidal-left", ("c", "k", "f"),
                    lambda c, k, f: differ(e(m(one(c), k), f), m(one(c), e(k, f))),
                    [obj_factor(C), mor_factor(C), mor_factor(B)]),
        product_law(prefix + "monoidal-product", ("k2", "k1", "f"),
                    lambda k2, k1, f: differ(e(m(k2, k1), f), m(e(k2, f), e(k1, f))),
                    [mor_factor(C), mor_factor(C), mor_factor(B)]),
    ]


def eta_monoidal_check(e: EtaMap, policy: Optional[VerificationPolicy] = None):
    return run_laws(f"twist {e.name} (monoidal)", eta_monoidal_laws(e), policy)


def eta_invariance_laws(e: EtaMap, act, prefix: str = "") -> list:
    C = act.group.cat
    return [product_law(prefix + "invariance", ("k", "k'", "f"),
                        lambda k, kp, f: differ(e(k, act.rho_mor(kp, f)), e(k, f)),
                        [mor_factor(C), mor_factor(C), mor_factor(e.B)])]


def eta_invariance_check(e: EtaMap, act, policy: Optional[VerificationPolicy] = None):
    """eta(k, rho(k', f)) = eta(k, f)."""
    return run_laws(f"twist {e.name} (invariance)", eta_invariance_laws(e, act), policy)


# ---------------------------------------------------------------- the twisted product

class SemidirectCategory(FinCategory):
    """Obj(A) x Obj(B), Mor(A) x Mor(B), (k2,f2)∘(k1,f1) = (eta(k2,f1)∘k1, f2∘f1)."""

    def __init__(self, eta: EtaMap, name: Optional[str] = None, critical=None):
        self.eta, self.A, self.B = eta, eta.A, eta.B
        self.name = name or f"{self.A.name} x|{eta.name} {self.B.name}"
        self._critical = critical

    @cached_property
    def _objects(self):
        oa, ob = self.A.objects(), self.B.objects()
        if oa is None or ob is None:
            return None
        return [(a, b) for a in oa for b in ob]

    @cached_property
    def _morphisms(self):
        A, B = self.A, self.B
        if not (A.enumerable and B.enumerable):
            return None
        if len(A.morphisms()) * len(B.morphisms()) > CARRIER_LIMIT:
            return None
        return [(k, f) for k in A.morphisms() for f in B.morphisms()]

    def objects(self):
        return self._objects

    def morphisms(self):
        return self._morphisms

    def src(self, m):
        return (self.A.src(m[0]), self.B.src(m[1]))

    def tgt(self, m):
        return (self.A.tgt(m[0]), self.B.tgt(m[1]))

    def ident(self, x):
        return (self.A.ident(x[0]), self.B.ident(x[1]))

    def compose(self, g, f):
        if self.tgt(f) != self.src(g):
            return None
        (k2, f2), (k1, f1) = g, f
        return (self.A.compose(self.eta(k2, f1), k1), self.B.compose(f2, f1))

    def sample_object(self, rng):
        return (self.A.sample_object(rng), self.B.sample_object(rng))

    def sample_morphism(self, rng):
        return (self.A.sample_morphism(rng), self.B.sample_morphism(rng))

    def sample_from(self, x, rng):
        return (self.A.sample_from(x[0], rng), self.B.sample_from(x[1], rng))

    def critical_morphisms(self):
        if self._critical is not None:
            return self._critical() if callable(self._critical) else self._critical
        ca, cb = self.A.critical_morphisms(), self.B.critical_morphisms()
        if ca is None and cb is None:
            return None
        if ca is None:
            # an undeclared twisting side contributes its identities only
            ca = [self.A.ident(x) for x in self.A.objects()] if self.A.enumerable else None
        if cb is None:
            cb = self.B.morphisms() if self.B.enumerable else None
        if ca is None or cb is None:
            return None
        return [(k, f) for k in ca for f in cb]


def semidirect_product(e: EtaMap, policy: Optional[VerificationPolicy] = None,
                       verify: bool = True) -> SemidirectCategory:
    if verify:
        rep = eta_axioms_check(e, policy)
        if not rep.ok:
            raise RefusalError(f"twist {e.name} fails its axioms", rep)
    return SemidirectCategory(e)


# ---------------------------------------------------------------- standard twists

def vector_category(space: FqSpace, name: str = "") -> RuleCategory:
    """One object, morphisms the vectors, composition by addition."""
    return RuleCategory(name or f"F_{space.q}^{space.dim}", src=lambda v: "*", tgt=lambda v: "*",
                        ident=lambda a: space.zero, compose=space.add, objects=["*"],
                        morphisms=list(space.vectors()))


def action_eta(G1: FiniteGroup, G2: FiniteGroup, alpha: GroupAction, A=None, B=None) -> EtaMap:
    """(a, b) -> alpha_b(a) between one-object categories of G1 and G2."""
    from .fincat import group_category
    if alpha.group is not G2 or alpha.size != G1.order:
        raise InputError("alpha must be an action of G2 on the elements of G1")
    A = A or group_category(G1)
    B = B or group_category(G2)
    return EtaMap(A, B, lambda a, b: alpha(b, a), "eta_alpha")


def conjugation_eta(cg: CategoricalGroup, cm: CrossedModule, C: FinCategory, mu: GroupHom,
                    mor_to_group: Callable = lambda f: f) -> EtaMap:
    """((h, g), f) -> (mu(f)^-1 h mu(f), g), with mu landing in ker tau."""
    H = cm.H
    bad = [x for x in mu.map if cm.tau(x) != 0]
    if mu.codomain is not H or bad:
        raise InputError("mu must be a homomorphism into ker(tau)")

    def rule(k, f):
        h, g = k
        m = mu(mor_to_group(f))
        return (H.mul(H.mul(H.inv(m), h), m), g)

    return EtaMap(cg, C, rule, "eta_mu")
