"""Vector categories over F_q, categorical vector spaces and linear representations on them.

Objects and morphisms are coordinate tuples.  A categorical vector space is
stored in the coordinates its morphism space splits into: the first block is
the kernel of the source map, the second the object space.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from .actions import ActionMorphism, TwistedAction, action_check, action_morphism_check
from .algebra import (FqSpace, LinearMap, SUBSPACE_BOUND, identity_matrix, in_span, mat_vec,
                      nullspace, rank, reduce_mod, span_basis, span_elements, subspace_enumerate,
                      zero_matrix)
from .catgroup import CategoricalGroup
from .errors import InputError, LawViolation, RefusalError
from .etatwist import EtaMap
from .fincat import (CARRIER_LIMIT, Factor, FinCategory, Functor, category_laws, chain_factor,
                     functor_laws, list_factor, mor_factor, obj_factor, product_law)
from .verify import Law, VerificationPolicy, differ, run_laws


class VectorCategory(FinCategory):
    """Objects ``obj``, morphisms ``mor``; s, t and id are linear maps.

    ``comp`` is a callable (g, f) -> vector, or the rule name "abelian", which
    composes by g∘f = g + f - id(t(f)).
    """

    def __init__(self, obj: FqSpace, mor: FqSpace, s: LinearMap, t: LinearMap, ident: LinearMap,
                 comp="abelian", name: str = "V"):
        if obj.q != mor.q:
            raise InputError("object and morphism spaces must share the field")
        for key, m, dom, cod in (("s", s, mor, obj), ("t", t, mor, obj), ("id", ident, obj, mor)):
            if m.domain != dom or m.codomain != cod:
                raise InputError(f"{key}: expected a map F_q^{dom.dim} -> F_q^{cod.dim}")
        self.obj, self.mor, self.s, self.t, self.id = obj, mor, s, t, ident
        self.q = obj.q
        self.comp_rule = comp if isinstance(comp, str) else "custom"
        if comp == "abelian":
            comp = self._abelian
        elif not callable(comp):
            raise InputError(f"comp: unknown rule {comp!r}")
        self._comp = comp
        self.name = name

    def _abelian(self, g, f):
        return self.mor.add(g, self.mor.sub(f, self.id(self.t(f))))

    @cached_property
    def _objs(self):
        return list(self.obj.vectors()) if self.obj.size <= CARRIER_LIMIT else None

    @cached_property
    def _mors(self):
        return list(self.mor.vectors()) if self.mor.size <= CARRIER_LIMIT else None

    def objects(self):
        return self._objs

    def morphisms(self):
        return self._mors

    def src(self, f):
        return self.s(f)

    def tgt(self, f):
        return self.t(f)

    def ident(self, a):
        return self.id(a)

    def compose(self, g, f):
        if self.t(f) != self.s(g):
            return None
        return self._comp(g, f)

    @cached_property
    def source_kernel(self) -> tuple:
        return self.s.kernel()

    @cached_property
    def hom00(self) -> tuple:
        """rref basis of Hom(0, 0) = ker s ∩ ker t."""
        rows = self.s.matrix + self.t.matrix
        if not rows or self.mor.dim == 0:
            return span_basis(identity_matrix(self.mor.dim), self.q, self.mor.dim)
        return nullspace(rows, self.q, self.mor.dim)

    def sample_object(self, rng):
        return self.obj.random(rng)

    def sample_morphism(self, rng):
        return self.mor.random(rng)

    def sample_from(self, a, rng):
        f = self.id(a)
        for row in self.source_kernel:
            c = rng.randrange(self.q)
            if c:
                f = self.mor.add(f, self.mor.scale(c, row))
        return f

    def to_json(self) -> dict:
        doc = {"q": self.q, "obj_dim": self.obj.dim, "mor_dim": self.mor.dim,
               "s": [list(r) for r in self.s.matrix], "t": [list(r) for r in self.t.matrix],
               "id": [list(r) for r in self.id.matrix]}
        if self.comp_rule != "custom":
            doc["comp"] = self.comp_rule
        else:
            mors = self.morphisms()
            if mors is None:
                raise InputError("custom composition on a large category does not serialize")
            enc = self.mor.encode
            doc["comp"] = [[None if self.compose(g, f) is None else enc(self.compose(g, f))
                            for f in mors] for g in mors]
        return doc


class CategoricalVectorSpace(VectorCategory):
    """A vector category whose addition and scalar multiplication are functors."""


def _matrix(doc, key, rows, cols, q):
    M = doc.get(key)
    if M is None:
        raise InputError(f"{key}: missing field")
    if not isinstance(M, list) or len(M) != rows or any(
            not isinstance(r, list) or len(r) != cols for r in M):
        raise InputError(f"{key}: expected a {rows}x{cols} matrix")
    for i, r in enumerate(M):
        for j, x in enumerate(r):
            if not isinstance(x, int) or isinstance(x, bool):
                raise InputError(f"{key}[{i}][{j}] = {x!r} is not an integer")
    return tuple(tuple(x % q for x in r) for r in M)


def vector_category_from_json(doc, name: str = "V") -> VectorCategory:
    if not isinstance(doc, dict):
        raise InputError(f"{name}: expected a JSON object")
    for key in ("q", "obj_dim", "mor_dim"):
        if not isinstance(doc.get(key), int):
            raise InputError(f"{name}.{key}: missing or not an integer")
    q, n, m = doc["q"], doc["obj_dim"], doc["mor_dim"]
    obj, mor = FqSpace(q, n), FqSpace(q, m)
    s = LinearMap(mor, obj, _matrix(doc, "s", n, m, q))
    t = LinearMap(mor, obj, _matrix(doc, "t", n, m, q))
    ident = LinearMap(obj, mor, _matrix(doc, "id", m, n, q))
    comp = doc.get("comp", "abelian")
    if isinstance(comp, list):
        if mor.size > CARRIER_LIMIT or len(comp) != mor.size or any(
                not isinstance(r, list) or len(r) != mor.size for r in comp):
            raise InputError(f"{name}.comp: expected a {mor.size}x{mor.size} table")
        table = tuple(tuple(r) for r in comp)
        for row in table:
            for x in row:
                if x is not None and (not isinstance(x, int) or not 0 <= x < mor.size):
                    raise InputError(f"{name}.comp: entry {x!r} is out of range")
        comp = lambda g, f: (None if table[mor.encode(g)][mor.encode(f)] is None
                             else mor.decode(table[mor.encode(g)][mor.encode(f)]))
        return VectorCategory(obj, mor, s, t, ident, comp, name)
    if comp != "abelian":
        raise InputError(f"{name}.comp: unknown rule {comp!r}")
    return CategoricalVectorSpace(obj, mor, s, t, ident, "abelian", name)


def catvec(q: int, w_dim: int, v_dim: int, tau0=None, name: str = "",
           comp="abelian") -> CategoricalVectorSpace:
    """W x V with s(w, v) = v, t(w, v) = tau0(w) + v; tau0 is a v_dim x w_dim matrix."""
    V = FqSpace(q, v_dim)
    M = FqSpace(q, w_dim + v_dim)
    tau0 = zero_matrix(v_dim, w_dim) if tau0 is None else tau0
    eye = identity_matrix(v_dim)
    s = LinearMap(M, V, tuple((0,) * w_dim + r for r in eye))
    t = LinearMap(M, V, tuple(tuple(a) + b for a, b in zip(tau0, eye)))
    ident = LinearMap(V, M, zero_matrix(w_dim, v_dim) + eye)
    cls = CategoricalVectorSpace if comp == "abelian" else VectorCategory
    return cls(V, M, s, t, ident, comp, name or f"F_{q}^{w_dim} x F_{q}^{v_dim}")


def discrete_vector_category(space: FqSpace, name: str = "") -> CategoricalVectorSpace:
    """Identity morphisms only: Mor = Obj."""
    return catvec(space.q, 0, space.dim, name=name or f"disc(F_{space.q}^{space.dim})")


# ---------------------------------------------------------------- checks

def _lin_laws(prefix, f, dom: FqSpace, cod: FqSpace, vecs):
    q = dom.q
    vs = list_factor(vecs) if vecs is not None else None
    rand = lambda r: (dom.random(r),)
    vf = vs or Factor(None, None, rand)
    return [
        product_law(prefix + "additive", ("u", "v"),
                    lambda u, v: differ(f(dom.add(u, v)), cod.add(f(u), f(v))), [vf, vf]),
        product_law(prefix + "homogeneous", ("c", "v"),
                    lambda c, v: differ(f(dom.scale(c, v)), cod.scale(c, f(v))),
                    [list_factor(range(q)), vf]),
    ]


def catvecspace_laws(c: VectorCategory) -> list:
    O, M, q = c.obj, c.mor, c.q
    objs, mors = c.objects(), c.morphisms()
    pairs = chain_factor(c, 2)

    def additivity(g2, f2, g1, f1):
        lhs = c.compose(M.add(g2, g1), M.add(f2, f1))
        if lhs is None:
            return "sums of composable pairs are not composable"
        return differ(lhs, M.add(c.compose(g2, f2), c.compose(g1, f1)))

    def scalar(x, g, f):
        lhs = c.compose(M.scale(x, g), M.scale(x, f))
        if lhs is None:
            return "scaled pair is not composable"
        return differ(lhs, M.scale(x, c.compose(g, f)))

    return (_lin_laws("s.", c.s, M, O, mors) + _lin_laws("t.", c.t, M, O, mors)
            + _lin_laws("id.", c.id, O, M, objs) + [
        Law("zero-identity", (), lambda: differ(c.id(O.zero), M.zero), space=lambda: [()], size=1),
        product_law("additivity", ("g'", "f'", "g", "f"), additivity, [pairs, pairs]),
        product_law("scalar-functorial", ("c", "g", "f"), scalar, [list_factor(range(q)), pairs]),
    ] + category_laws(c, "category."))


def catvecspace_check(c: VectorCategory, policy: Optional[VerificationPolicy] = None):
    """Linearity of s, t, id, functoriality of + and scalar multiplication, and id(0) = 0."""
    return run_laws(f"categorical vector space {c.name}", catvecspace_laws(c), policy)


# ---------------------------------------------------------------- W x V decomposition

@dataclass
class Decomposition:
    """Mor ≅ W x V with W = ker s in the coordinates of its rref basis."""

    cat: VectorCategory
    basis: tuple
    pivots: tuple
    W: FqSpace
    tau0: LinearMap
    report: object = None

    def embed(self, w) -> tuple:
        M = self.cat.mor
        f = M.zero
        for c, row in zip(w, self.basis):
            if c:
                f = M.add(f, M.scale(c, row))
        return f

    def to_pair(self, f) -> tuple:
        c = self.cat
        w = c.mor.add(f, c.id(c.obj.neg(c.s(f))))
        return (tuple(w[p] for p in self.pivots), c.s(f))

    def from_pair(self, w, v) -> tuple:
        return self.cat.mor.add(self.embed(w), self.cat.id(v))

    # the structure formulas, in pair coordinates
    def compose_pairs(self, y, x):
        (w2, v2), (w1, v1) = y, x
        if v2 != self.cat.obj.add(self.tau0(w1), v1):
            return None
        return (self.W.add(w2, w1), v1)

    def identity_pair(self, v):
        return (self.W.zero, v)

    def inverse_pair(self, x):
        w, v = x
        return (self.W.neg(w), self.cat.obj.add(self.tau0(w), v))

    def inverse(self, f):
        return self.from_pair(*self.inverse_pair(self.to_pair(f)))


def _kernel_coords(c: VectorCategory):
    basis = c.source_kernel
    pivots = tuple(next(i for i, x in enumerate(r) if x) for r in basis)
    return basis, pivots


def decompose_catvecspace(c: VectorCategory, policy: Optional[VerificationPolicy] = None,
                          verify: bool = True) -> Decomposition:
    """W = ker s, tau0 = t|W and the relabelling f -> (f + id(-s(f)), s(f)).

    Refuses when ``c`` is not a categorical vector space; otherwise every
    structure formula is checked against the category itself.
    """
    if verify:
        pre = catvecspace_check(c, policy)
        if not pre.ok:
            raise RefusalError(f"{c.name} is not a categorical vector space", pre)
    basis, pivots = _kernel_coords(c)
    W = FqSpace(c.q, len(basis))
    cols = [c.t(row) for row in basis]
    tau0 = LinearMap(W, c.obj, tuple(zip(*cols)) if cols else zero_matrix(c.obj.dim, 0))
    d = Decomposition(c, basis, pivots, W, tau0)
    if verify:
        d.report = run_laws(f"W x V decomposition of {c.name}", decomposition_laws(d), policy,
                            {"dim W": W.dim, "dim V": c.obj.dim,
                             "tau0": [list(r) for r in tau0.matrix]})
        if not d.report.ok:
            raise LawViolation("decomposition formulas fail", d.report.failures()[0].counterexample)
    return d


def decomposition_laws(d: Decomposition) -> list:
    c, W, V = d.cat, d.W, d.cat.obj
    wv = [list(W.vectors()), list(V.vectors())] if W.size * V.size <= CARRIER_LIMIT else None

    def pair_factor():
        if wv is None:
                    return Factor(None, None, lambda r: ((W.random(r), V.random(r)),))
        return list_factor([(w, v) for w in wv[0] for v in wv[1]])

    def composition(g, f):
        return differ(d.to_pair(c.compose(g, f)), d.compose_pairs(d.to_pair(g), d.to_pair(f)))

    def inverse(f):
        h = d.inverse(f)
        return differ((c.compose(h, f), c.compose(f, h)), (c.id(c.s(f)), c.id(c.t(f))))

    return [
        product_law("roundtrip", ("f",), lambda f: differ(d.from_pair(*d.to_pair(f)), f),
                    [mor_factor(c)]),
        product_law("onto", ("pair",), lambda x: differ(d.to_pair(d.from_pair(*x)), x), [pair_factor()]),
        product_law("source", ("f",), lambda f: differ(c.s(f), d.to_pair(f)[1]), [mor_factor(c)]),
        product_law("target", ("f",),
                    lambda f: differ(c.t(f), V.add(d.tau0(d.to_pair(f)[0]), d.to_pair(f)[1])),
                    [mor_factor(c)]),
        product_law("composition", ("g", "f"), composition, [chain_factor(c, 2)]),
        product_law("identity", ("v",), lambda v: differ(d.to_pair(c.id(v)), d.identity_pair(v)),
                    [obj_factor(c)]),
        product_law("inverse", ("f",), inverse, [mor_factor(c)]),
    ]


# ---------------------------------------------------------------- linear representations

def linear_rep_laws(a: TwistedAction) -> list:
    G, V = a.group, a.target
    O, M, q = V.obj, V.mor, V.q
    C, ro, rm = G.cat, a.rho_obj, a.rho_mor
    scal = list_factor(range(q))
    return [
        product_law("object-additive", ("a", "u", "v"),
                    lambda x, u, v: differ(ro(x, O.add(u, v)), O.add(ro(x, u), ro(x, v))),
                    [obj_factor(C), obj_factor(V), obj_factor(V)]),
        product_law("object-homogeneous", ("a", "c", "v"),
                    lambda x, s, v: differ(ro(x, O.scale(s, v)), O.scale(s, ro(x, v))),
                    [obj_factor(C), scal, obj_factor(V)]),
        product_law("morphism-additive", ("k", "f", "g"),
                    lambda k, f, g: differ(rm(k, M.add(f, g)), M.add(rm(k, f), rm(k, g))),
                    [mor_factor(C), mor_factor(V), mor_factor(V)]),
        product_law("morphism-homogeneous", ("k", "c", "f"),
                    lambda k, s, f: differ(rm(k, M.scale(s, f)), M.scale(s, rm(k, f))),
                    [mor_factor(C), scal, mor_factor(V)]),
    ]


def linear_rep_check(a: TwistedAction, policy: Optional[VerificationPolicy] = None):
    """Each rho(g) on objects and rho(k) on morphisms is linear."""
    if not isinstance(a.target, VectorCategory):
        raise InputError("linear representations act on vector categories")
    return run_laws(f"linear representation {a.name}", linear_rep_laws(a), policy)


def linear_action(group: CategoricalGroup, target: VectorCategory, obj_mats, mor_mats,
                  eta: Optional[EtaMap] = None, name: str = "rho") -> TwistedAction:
    """rho_obj(a, v) = obj_mats[a] v and rho_mor(k, f) = mor_mats[k] f, keyed by group labels."""
    q = target.q
    om, mm = dict(obj_mats), dict(mor_mats)
    return TwistedAction(group, target, lambda x, v: mat_vec(om[x], v, q),
                         lambda k, f: mat_vec(mm[k], f, q), eta, name)


def linear_action_from_json(doc, name: str = "rho",
                            group: Optional[CategoricalGroup] = None) -> TwistedAction:
    """``group`` lets several actions share one parsed categorical group."""
    if not isinstance(doc, dict):
        raise InputError(f"{name}: expected a JSON object")
    for key in ("target", "rho_obj", "rho_mor") if group else ("group", "target", "rho_obj", "rho_mor"):
        if key not in doc:
            raise InputError(f"{name}.{key}: missing field")
    G = group or CategoricalGroup.from_json(doc["group"], f"{name}.group")
    V = vector_category_from_json(doc["target"], f"{name}.target")
    q, n, m = V.q, V.obj.dim, V.mor.dim
    ro, rmo = doc["rho_obj"], doc["rho_mor"]
    if not isinstance(ro, list) or len(ro) != G.cat.n:
        raise InputError(f"{name}.rho_obj: expected one matrix per group object ({G.cat.n})")
    if not isinstance(rmo, list) or len(rmo) != G.cat.m:
        raise InputError(f"{name}.rho_mor: expected one matrix per group morphism ({G.cat.m})")
    om = {i: _matrix({"M": M}, "M", n, n, q) for i, M in enumerate(ro)}
    mm = {i: _matrix({"M": M}, "M", m, m, q) for i, M in enumerate(rmo)}
    eta = None
    if doc.get("eta") is not None:
        et = doc["eta"]
        if not isinstance(et, list) or len(et) != G.cat.m or any(
                not isinstance(r, list) or len(r) != V.mor.size for r in et):
            raise InputError(f"{name}.eta: expected a {G.cat.m}x{V.mor.size} table")
        eta = EtaMap(G, V, lambda k, f: et[k][V.mor.encode(f)], "eta")
    return linear_action(G, V, om, mm, eta, name)


def linear_action_to_json(a: TwistedAction) -> dict:
    G, V = a.group, a.target
    basis = lambda sp: [tuple(int(i == j) for j in range(sp.dim)) for i in range(sp.dim)]

    def mat(f, sp):
        cols = [f(e) for e in basis(sp)]
        return [list(r) for r in zip(*cols)] if cols else []

    doc = {"group": G.to_json(), "target": V.to_json(),
           "rho_obj": [mat(lambda v: a.rho_obj(x, v), V.obj) for x in G.objects()],
           "rho_mor": [mat(lambda f: a.rho_mor(k, f), V.mor) for k in G.morphisms()]}
    if a.twisted:
        doc["eta"] = [[G.mor_index[a.eta(k, f)] for f in V.morphisms()] for k in G.morphisms()]
    return doc


# ---------------------------------------------------------------- subcategories and irreducibility

class VectorSubcategory(FinCategory):
    """The sub-vector-category spanned by rref bases of objects and morphisms."""

    def __init__(self, parent: VectorCategory, obj_basis, mor_basis, name: str = ""):
        self.parent = parent
        self.obj_basis = span_basis(obj_basis, parent.q, parent.obj.dim)
        self.mor_basis = span_basis(mor_basis, parent.q, parent.mor.dim)
        self.name = name or f"sub({parent.name})"

    @cached_property
    def _objs(self):
        return span_elements(self.obj_basis, self.parent.q, self.parent.obj.dim)

    @cached_property
    def _mors(self):
        return span_elements(self.mor_basis, self.parent.q, self.parent.mor.dim)

    def objects(self):
        return self._objs

    def morphisms(self):
        return self._mors

    def src(self, f):
        return self.parent.src(f)

    def tgt(self, f):
        return self.parent.tgt(f)

    def ident(self, a):
        return self.parent.ident(a)

    def compose(self, g, f):
        return self.parent.compose(g, f)

    @property
    def dims(self) -> tuple:
        return (len(self.obj_basis), len(self.mor_basis))

    def contains_object(self, v) -> bool:
        return in_span(v, self.obj_basis, self.parent.q)

    def contains_morphism(self, f) -> bool:
        return in_span(f, self.mor_basis, self.parent.q)

    def describe(self) -> dict:
        return {"objects": [list(r) for r in self.obj_basis],
                "morphisms": [list(r) for r in self.mor_basis], "dims": list(self.dims)}


def closure_laws(sub: VectorSubcategory) -> list:
    P = sub.parent
    objs, mors = sub.objects(), sub.morphisms()

    def comp(g, f):
        h = P.compose(g, f)
        return None if h is None or sub.contains_morphism(h) else f"composite {h} leaves the subcategory"

    return [
        product_law("source-closed", ("f",), lambda f: None if sub.contains_object(P.s(f))
                    else "source outside", [list_factor(mors)]),
        product_law("target-closed", ("f",), lambda f: None if sub.contains_object(P.t(f))
                    else "target outside", [list_factor(mors)]),
        product_law("identity-closed", ("a",), lambda a: None if sub.contains_morphism(P.id(a))
                    else "identity outside", [list_factor(objs)]),
        product_law("composition-closed", ("g", "f"), comp, [chain_factor(sub, 2)]),
    ]


def _closed(P: VectorCategory, a: Optional[TwistedAction], Bo, Bm, q) -> bool:
    """Closure of span(Bo), span(Bm); linear conditions on bases, composition on elements."""
    if any(not in_span(P.s(b), Bo, q) or not in_span(P.t(b), Bo, q) for b in Bm):
        return False
    if any(not in_span(P.id(b), Bm, q) for b in Bo):
        return False
    if a is not None:
        G = a.group
        if any(not in_span(a.rho_obj(x, b), Bo, q) for x in G.objects() for b in Bo):
            return False
        if any(not in_span(a.rho_mor(k, b), Bm, q) for k in G.morphisms() for b in Bm):
            return False
    elems = span_elements(Bm, q, P.mor.dim)
    members = set(elems)
    for g in elems:
        for f in elems:
            h = P.compose(g, f)
            if h is not None and h not in members:
                return False
    return True


@dataclass
class IrreducibilityVerdict:
    irreducible: bool
    witness: Optional[VectorSubcategory]
    candidates: int
    invariant: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"irreducible": self.irreducible, "candidates": self.candidates,
                "invariant subcategories": [s.describe()["dims"] for s in self.invariant],
                "witness": None if self.witness is None else self.witness.describe()}


def invariant_subcategories(a: Optional[TwistedAction], P: VectorCategory,
                            bound: int = SUBSPACE_BOUND):
    """Every (objects, morphisms) subspace pair closed under the structure maps and rho.

    Yields (obj_basis, mor_basis) with objects varying slowest, both in
    ``subspace_enumerate`` order.
    """
    q = P.q
    objs = subspace_enumerate(P.obj, bound)
    mors = subspace_enumerate(P.mor, bound)
    for Bo in objs:
        for Bm in mors:
            if _closed(P, a, Bo, Bm, q):
                yield Bo, Bm


def irreducibility_check(a: TwistedAction, bound: int = SUBSPACE_BOUND) -> IrreducibilityVerdict:
    """Search for a proper invariant vector subcategory.

    Proper means other than the whole category, O_V (object 0 with Hom(0, 0))
    and O (the zero morphism alone).  The twist needs no closure condition
    because it lands in Mor(G).  The least witness in enumeration order is
    returned.
    """
    P = a.target
    if not isinstance(P, VectorCategory):
        raise InputError("irreducibility is defined for actions on vector categories")
    q = P.q
    full = (span_basis(identity_matrix(P.obj.dim), q, P.obj.dim),
            span_basis(identity_matrix(P.mor.dim), q, P.mor.dim))
    trivial = {full, ((), P.hom00), ((), ())}
    found, total = [], 0
    for Bo, Bm in invariant_subcategories(a, P, bound):
        total += 1
        if (Bo, Bm) not in trivial:
            found.append(VectorSubcategory(P, Bo, Bm, f"invariant subcategory of {P.name}"))
    return IrreducibilityVerdict(not found, found[0] if found else None, total, found)


# ---------------------------------------------------------------- linear functors and kernels

class LinearFunctor(Functor):
    def __init__(self, domain: VectorCategory, codomain: VectorCategory, obj_map: LinearMap,
                 mor_map: LinearMap, name: str = "F"):
        if obj_map.domain != domain.obj or obj_map.codomain != codomain.obj:
            raise InputError("object map does not run between the object spaces")
        if mor_map.domain != domain.mor or mor_map.codomain != codomain.mor:
            raise InputError("morphism map does not run between the morphism spaces")
        super().__init__(domain, codomain, obj_map, mor_map, name)
        self.obj_map, self.mor_map = obj_map, mor_map

    @classmethod
    def identity(cls, cat: VectorCategory) -> "LinearFunctor":
        return cls(cat, cat, LinearMap(cat.obj, cat.obj, identity_matrix(cat.obj.dim)),
                   LinearMap(cat.mor, cat.mor, identity_matrix(cat.mor.dim)), "Id")

    @classmethod
    def zero(cls, A: VectorCategory, B: VectorCategory) -> "LinearFunctor":
        return cls(A, B, LinearMap(A.obj, B.obj, zero_matrix(B.obj.dim, A.obj.dim)),
                   LinearMap(A.mor, B.mor, zero_matrix(B.mor.dim, A.mor.dim)), "0")


def linear_functor_check(F: LinearFunctor, policy: Optional[VerificationPolicy] = None):
    A, B = F.domain, F.codomain
    laws = (_lin_laws("objects.", F.obj, A.obj, B.obj, A.objects())
            + _lin_laws("morphisms.", F.mor, A.mor, B.mor, A.morphisms()) + functor_laws(F))
    return run_laws(f"linear functor {F.name}", laws, policy)


def kernel_category(F: LinearFunctor, policy: Optional[VerificationPolicy] = None) -> VectorSubcategory:
    """ker F on objects and on morphisms, with its closure verified (``.closure``)."""
    L = VectorSubcategory(F.domain, F.obj_map.kernel(), F.mor_map.kernel(), f"ker {F.name}")
    L.closure = run_laws(f"kernel of {F.name}", closure_laws(L), policy)
    if not L.closure.ok:
        raise LawViolation("kernel of a functor is not a subcategory",
                           L.closure.failures()[0].counterexample)
    return L


class QuotientCategory(FinCategory):
    """V / O_V: morphisms are rref-reduced representatives modulo Hom(0, 0)."""

    def __init__(self, parent: VectorCategory):
        self.parent = parent
        self.hom00 = parent.hom00
        self.name = f"{parent.name}/O"

    def reduce(self, f):
        return reduce_mod(f, self.hom00, self.parent.q)

    @cached_property
    def _mors(self):
        return sorted({self.reduce(f) for f in self.parent.morphisms()})

    def objects(self):
        return self.parent.objects()

    def morphisms(self):
        return self._mors

    def src(self, f):
        return self.parent.src(f)

    def tgt(self, f):
        return self.parent.tgt(f)

    def ident(self, a):
        return self.reduce(self.parent.ident(a))

    def compose(self, g, f):
        h = self.parent.compose(g, f)
        return None if h is None else self.reduce(h)


def descent_law(Q: QuotientCategory) -> Law:
    """Composition of cosets does not depend on the representatives."""
    P = Q.parent
    hs = span_elements(Q.hom00, P.q, P.mor.dim)

    def test(g, f, h2, h1):
        lhs = P.compose(P.mor.add(g, h2), P.mor.add(f, h1))
        if lhs is None:
            return "shifted representatives are not composable"
        return differ(Q.reduce(lhs), Q.compose(g, f))

    return product_law("descent", ("g", "f", "h'", "h"), test,
                       [chain_factor(Q, 2), list_factor(hs), list_factor(hs)])


@dataclass
class SchurVerdict:
    branch: str                    # zero | quotient-isomorphism | isomorphism
    kernel: dict
    certificates: dict
    report: object = None

    def to_dict(self) -> dict:
        return {"branch": self.branch, "kernel": self.kernel, "certificates": self.certificates}


def _bijective(f, dom, cod_size) -> dict:
    images = {f(x) for x in dom}
    return {"domain": len(dom), "image": len(images), "codomain": cod_size,
            "injective": len(images) == len(dom), "surjective": len(images) == cod_size}


def schur_classify(m: ActionMorphism, policy: Optional[VerificationPolicy] = None,
                   bound: int = SUBSPACE_BOUND) -> SchurVerdict:
    """Which of the three cases a linear morphism of irreducible representations falls in."""
    F = m.F
    if not isinstance(F, LinearFunctor):
        raise InputError("schur_classify needs a linear functor")
    V1, V2 = F.domain, F.codomain
    for side, act in (("source", m.source), ("target", m.target)):
        v = irreducibility_check(act, bound)
        if not v.irreducible:
            raise RefusalError(f"the {side} representation is reducible: invariant subcategory "
                               f"{v.witness.describe()}")
    rep = action_morphism_check(m, policy)
    rep.merge(linear_functor_check(F, policy), "linear.")
    if not rep.ok:
        raise RefusalError("not a linear morphism of representations", rep)
    L = kernel_category(F, policy)
    rep.merge(L.closure, "kernel.")
    q = V1.q
    kernel = {"description": L.describe(), "is O": L.dims == (0, 0),
              "is O_V": L.obj_basis == () and L.mor_basis == V1.hom00}
    obj_zero = rank(F.obj_map.matrix, q) == 0 if V1.obj.dim and V2.obj.dim else True
    if obj_zero:
        # objects go to 0, so sources and targets of images vanish as well
        outside = [f for f in V1.morphisms() if any(V2.s(F.mor(f))) or any(V2.t(F.mor(f)))]
        if outside:
            raise LawViolation("objects map to 0 but a morphism image leaves Hom(0,0)", outside[0])
        cert = {"objects to zero": True, "morphism image inside Hom(0,0)": True}
        return SchurVerdict("zero", kernel, cert, rep)
    if kernel["is O_V"] and not kernel["is O"]:
        Q = QuotientCategory(V1)
        qrep = run_laws(f"quotient {Q.name}", [descent_law(Q)] + category_laws(Q, "category."), policy)
        rep.merge(qrep, "quotient.")
        if not qrep.ok:
            raise LawViolation("composition on the quotient is not well defined",
                               qrep.failures()[0].counterexample)
        cert = {"objects": _bijective(F.obj, list(V1.objects()), V2.obj.size),
                "morphisms": _bijective(F.mor, Q.morphisms(), V2.mor.size),
                "quotient morphisms": len(Q.morphisms())}
        _require_bijective(cert, "induced functor on the quotient")
        return SchurVerdict("quotient-isomorphism", kernel, cert, rep)
    if kernel["is O"]:
        cert = {"objects": _bijective(F.obj, list(V1.objects()), V2.obj.size),
                "morphisms": _bijective(F.mor, list(V1.morphisms()), V2.mor.size)}
        _require_bijective(cert, "functor")
        return SchurVerdict("isomorphism", kernel, cert, rep)
    raise LawViolation("kernel is a proper invariant subcategory of an irreducible representation",
                       kernel)


def _require_bijective(cert, what):
    for key in ("objects", "morphisms"):
        c = cert[key]
        if not (c["injective"] and c["surjective"]):
            raise LawViolation(f"{what} is not bijective on {key}", c)


# ---------------------------------------------------------------- representations on W x V

def catvec_rep_structure(a: TwistedAction, policy: Optional[VerificationPolicy] = None):
    """Extract rho0(b) = rho(1_b)|W and test the rigidity of a representation on W x V.

    Returns (rho0, report).  rho0 maps each object of the group to a linear
    map on W.  The report carries the action and linearity laws under
    "action." and "linear." next to the five structure laws, so a candidate
    that is not a representation fails visibly instead of being refused.
    """
    c, G = a.target, a.group
    d = decompose_catvecspace(c, policy)
    W, V, C = d.W, c.obj, G.cat
    rm, ro = a.rho_mor, a.rho_obj
    unit_w = [tuple(int(i == j) for j in range(W.dim)) for i in range(W.dim)]

    def restrict(k):
        cols = [d.to_pair(rm(k, d.embed(e)))[0] for e in unit_w]
        return LinearMap(W, W, tuple(zip(*cols)) if cols else ())

    rho0 = {b: restrict(C.ident(b)) for b in G.objects()}
    ws = list(W.vectors()) if W.size <= CARRIER_LIMIT else None
    wf = list_factor(ws) if ws is not None else None
    tau_img = {}
    for w in (ws or []):
        tau_img.setdefault(d.tau0(w), w)

    def invariant(k, w):
        return differ(c.s(rm(k, d.embed(w))), V.zero)

    def target_only(k, w):
        return differ(rm(k, d.embed(w)), d.embed(rho0[C.tgt(k)](w)))

    def intertwining(k, w):
        b = C.tgt(k)
        return differ(d.tau0(rho0[b](w)), ro(b, d.tau0(w)))

    def identity_inverse(x, f):
        one = C.ident(x)
        return differ(rm(one, d.inverse(f)), d.inverse(rm(one, f)))

    def determination(k, f):
        v = c.s(f)
        if v not in tau_img:
            return None
        f0 = d.embed(tau_img[v])                    # 0 -> v inside W
        ff0 = c.compose(f, f0)                      # 0 -> t(f), again inside W
        top = d.embed(rho0[C.tgt(k)](d.to_pair(ff0)[0]))
        bottom = d.inverse(d.embed(rho0[C.src(k)](tau_img[v])))
        rebuilt = c.compose(top, bottom)
        if rebuilt is None:
            return "factorized pieces are not composable"
        return differ(rebuilt, rm(k, f))

    wfac = wf or Factor(None, None, lambda r: (W.random(r),))
    laws = [
        product_law("w-invariant", ("k", "w"), invariant, [mor_factor(C), wfac]),
        product_law("depends-on-target", ("k", "w"), target_only, [mor_factor(C), wfac]),
        product_law("tau0-intertwining", ("k", "w"), intertwining, [mor_factor(C), wfac]),
        product_law("identity-inverse", ("a", "f"), identity_inverse, [obj_factor(C), mor_factor(c)]),
        product_law("determination", ("k", "f"), determination, [mor_factor(C), mor_factor(c)]),
    ]
    facts = {"rho0": {str(b): [list(r) for r in m.matrix] for b, m in rho0.items()},
             "tau0": [list(r) for r in d.tau0.matrix]}
    rep = run_laws(f"structure of {a.name} on {c.name}", laws, policy, facts)
    rep.merge(action_check(a, policy), "action.")
    rep.merge(linear_rep_check(a, policy), "linear.")
    return rho0, rep
