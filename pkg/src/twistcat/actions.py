"""Actions of categorical groups on categories, plain and twisted, and their morphisms."""
from __future__ import annotations

from typing import Callable, Optional

from .catgroup import CategoricalGroup, catgroup_axioms_check
from .errors import InputError
from .etatwist import (EtaMap, eta_axioms_check, eta_invariance_check, eta_monoidal_check)
from .fincat import (FinCategory, Functor, TableCategory, category_axioms_check, chain_factor,
                     functor_laws, mor_factor, obj_factor, product_law)
from .verify import VerificationPolicy, differ, run_laws


class TwistedAction:
    """rho_obj(a, v) and rho_mor(k, f); an untwisted action has eta = projection."""

    def __init__(self, group: CategoricalGroup, target: FinCategory, rho_obj: Callable,
                 rho_mor: Callable, eta: Optional[EtaMap] = None, name: str = "rho"):
        self.group, self.target = group, target
        self.rho_obj, self.rho_mor = rho_obj, rho_mor
        self.twisted = eta is not None
        self.eta = eta if eta is not None else EtaMap.projection(group, target)
        if self.eta.A is not group.cat or self.eta.B is not target:
            raise InputError("the twist must be a map Mor(G) x Mor(V) -> Mor(G) for this G and V")
        self.name = name

    def to_json(self) -> dict:
        G, V = self.group, self.target
        if not isinstance(V, TableCategory):
            raise InputError("only actions on table-backed categories serialize")
        objs, mors = G.objects(), G.morphisms()
        doc = {"group": G.to_json(), "target": V.to_json(),
               "rho_obj": [[self.rho_obj(a, v) for v in V.objects()] for a in objs],
               "rho_mor": [[self.rho_mor(k, f) for f in V.morphisms()] for k in mors]}
        if self.twisted:
            doc["eta"] = [[G.mor_index[self.eta(k, f)] for f in V.morphisms()] for k in mors]
        return doc

    @classmethod
    def from_json(cls, doc) -> "TwistedAction":
        if not isinstance(doc, dict):
            raise InputError("action document: expected a JSON object")
        for key in ("group", "target", "rho_obj", "rho_mor"):
            if key not in doc:
                raise InputError(f"{key}: missing field")
        G = CategoricalGroup.from_json(doc["group"], "group")
        V = TableCategory.from_json(doc["target"], "target")
        no, nm = G.cat.n, G.cat.m
        ro, rm = doc["rho_obj"], doc["rho_mor"]
        _table_shape("rho_obj", ro, no, V.n, V.n)
        _table_shape("rho_mor", rm, nm, V.m, V.m)
        eta = None
        if doc.get("eta") is not None:
            _table_shape("eta", doc["eta"], nm, V.m, nm)
            et = doc["eta"]
            eta = EtaMap(G, V, lambda k, f: et[k][f], "eta")
        return cls(G, V, lambda a, v: ro[a][v], lambda k, f: rm[k][f], eta)


def _table_shape(key, table, rows, cols, bound):
    if not isinstance(table, list) or len(table) != rows:
        raise InputError(f"{key}: expected {rows} rows")
    for i, row in enumerate(table):
        if not isinstance(row, list) or len(row) != cols:
            raise InputError(f"{key}[{i}]: expected {cols} entries")
        for j, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < bound:
                raise InputError(f"{key}[{i}][{j}] = {x!r} is out of range [0, {bound})")


def _common_laws(a: TwistedAction, prefix: str = "") -> list:
    G, V = a.group, a.target
    C, ro, rm = G.cat, a.rho_obj, a.rho_mor
    return [
        product_law(prefix + "unit", ("f",), lambda f: differ(rm(G.unit, f), f), [mor_factor(V)]),
        product_law(prefix + "product", ("k2", "k1", "f"),
                    lambda k2, k1, f: differ(rm(k2, rm(k1, f)), rm(G.mul(k2, k1), f)),
                    [mor_factor(C), mor_factor(C), mor_factor(V)]),
        product_law(prefix + "object-unit", ("v",), lambda v: differ(ro(G.ounit, v), v), [obj_factor(V)]),
        product_law(prefix + "object-product", ("a", "b", "v"),
                    lambda x, y, v: differ(ro(x, ro(y, v)), ro(G.omul(x, y), v)),
                    [obj_factor(C), obj_factor(C), obj_factor(V)]),
        product_law(prefix + "preserves-source", ("k", "f"),
                    lambda k, f: differ(V.src(rm(k, f)), ro(C.src(k), V.src(f))),
                    [mor_factor(C), mor_factor(V)]),
        product_law(prefix + "preserves-target", ("k", "f"),
                    lambda k, f: differ(V.tgt(rm(k, f)), ro(C.tgt(k), V.tgt(f))),
                    [mor_factor(C), mor_factor(V)]),
        product_law(prefix + "preserves-identity", ("a", "v"),
                    lambda x, v: differ(rm(C.ident(x), V.ident(v)), V.ident(ro(x, v))),
                    [obj_factor(C), obj_factor(V)]),
    ]


def action_laws(a: TwistedAction, prefix: str = "") -> list:
    C, V, e, rm = a.group.cat, a.target, a.eta, a.rho_mor

    def composition(k2, k1, f2, f1):
        lhs = V.compose(rm(k2, f2), rm(k1, f1))
        if lhs is None:
            return "acted morphisms are not composable"
        return differ(lhs, rm(C.compose(e(k2, f1), k1), V.compose(f2, f1)))

    return _common_laws(a, prefix) + [
        product_law(prefix + "composition", ("k2", "k1", "f2", "f1"), composition,
                    [chain_factor(C, 2), chain_factor(V, 2)])]


def action_check(a: TwistedAction, policy: Optional[VerificationPolicy] = None,
                 preconditions: bool = False):
    """All action laws; with ``preconditions`` the group, target and twist checks are merged in."""
    rep = run_laws(f"action {a.name}", action_laws(a), policy)
    if preconditions:
        rep.merge(catgroup_axioms_check(a.group, policy), "group.")
        rep.merge(category_axioms_check(a.target, policy), "target.")
        rep.merge(eta_axioms_check(a.eta, policy), "eta.")
        if a.twisted:
            rep.merge(eta_monoidal_check(a.eta, policy), "eta.")
    return rep


def untwisted_action_check(a: TwistedAction, policy: Optional[VerificationPolicy] = None):
    """Functoriality of G x V -> V read directly, ignoring any twist."""
    C, V, rm = a.group.cat, a.target, a.rho_mor

    def composition(k2, k1, f2, f1):
        lhs = V.compose(rm(k2, f2), rm(k1, f1))
        if lhs is None:
            return "acted morphisms are not composable"
        return differ(lhs, rm(C.compose(k2, k1), V.compose(f2, f1)))

    laws = _common_laws(a) + [product_law("composition", ("k2", "k1", "f2", "f1"), composition,
                                          [chain_factor(C, 2), chain_factor(V, 2)])]
    return run_laws(f"action {a.name} (untwisted)", laws, policy)


# ---------------------------------------------------------------- morphisms of actions

class ActionMorphism:
    def __init__(self, source: TwistedAction, target: TwistedAction, F: Functor, name: str = "F"):
        if source.group is not target.group:
            raise InputError("both actions must be of the same categorical group")
        if F.domain is not source.target or F.codomain is not target.target:
            raise InputError("the functor must run between the two acted-on categories")
        self.source, self.target, self.F, self.name = source, target, F, name
        self.is_identity = False

    @classmethod
    def identity(cls, a: TwistedAction) -> "ActionMorphism":
        m = cls(a, a, Functor.identity(a.target), "Id")
        m.is_identity = True
        return m


def action_morphism_check(m: ActionMorphism, policy: Optional[VerificationPolicy] = None):
    a1, a2, F = m.source, m.target, m.F
    G = a1.group
    C, V1 = G.cat, a1.target
    e1, e2 = a1.eta, a2.eta

    def product_functor(k2, k1, f2, f1):
        left = (C.compose(e1(k2, f1), k1), F.mor(V1.compose(f2, f1)))
        right = (C.compose(e2(k2, F.mor(f1)), k1), a2.target.compose(F.mor(f2), F.mor(f1)))
        return differ(left, right)

    laws = [
        product_law("etacom", ("k", "f"), lambda k, f: differ(e2(k, F.mor(f)), e1(k, f)),
                    [mor_factor(C), mor_factor(V1)]),
        product_law("semimap-objects", ("a", "v"),
                    lambda x, v: differ(F.obj(a1.rho_obj(x, v)), a2.rho_obj(x, F.obj(v))),
                    [obj_factor(C), obj_factor(V1)]),
        product_law("semimap-morphisms", ("k", "f"),
                    lambda k, f: differ(F.mor(a1.rho_mor(k, f)), a2.rho_mor(k, F.mor(f))),
                    [mor_factor(C), mor_factor(V1)]),
        product_law("twisted-product-functor", ("k2", "k1", "f2", "f1"), product_functor,
                    [chain_factor(C, 2), chain_factor(V1, 2)]),
    ]
    inv1 = eta_invariance_check(e1, a1, policy)
    facts = {"source twist invariant": inv1.ok}
    if inv1.ok:
        laws.append(product_law(
            "invariance-on-image", ("k", "k'", "f"),
            lambda k, kp, f: differ(e2(k, a2.rho_mor(kp, F.mor(f))), e2(k, F.mor(f))),
            [mor_factor(C), mor_factor(C), mor_factor(V1)]))
    laws += functor_laws(F, "F.")
    return run_laws(f"action morphism {m.name}", laws, policy, facts)


def rep_category_compose(m2: ActionMorphism, m1: ActionMorphism) -> ActionMorphism:
    """m2 ∘ m1 in the category of twisted actions."""
    if m1.target is not m2.source:
        raise InputError("morphisms do not chain: target of the first is not the source of the second")
    if m1.is_identity:
        return m2
    if m2.is_identity:
        return m1
    return ActionMorphism(m1.source, m2.target, m1.F.then(m2.F), f"{m2.name}.{m1.name}")
