"""Finite categories, functors and natural transformations.

Two backends share one interface.  ``TableCategory`` stores everything as
index tables; ``RuleCategory`` computes with rules on structural labels and
may be too large to enumerate, in which case it must supply samplers.
Composition is written ``compose(g, f)`` = g∘f and returns None when the
pair is not composable.
"""
from __future__ import annotations

import math
from functools import cached_property
from itertools import product
from typing import Callable, Iterable, Optional, Sequence

from .errors import InputError, LawViolation
from .verify import Law, VerificationPolicy, differ, run_laws

CARRIER_LIMIT = 250000  # beyond this many morphisms we never build indexes


class FinCategory:
    name = "category"
    backend = "intensional"

    # --- structure (override) ---
    def objects(self) -> Optional[Sequence]:
        return None

    def morphisms(self) -> Optional[Sequence]:
        return None

    def src(self, f):
        raise NotImplementedError

    def tgt(self, f):
        raise NotImplementedError

    def ident(self, a):
        raise NotImplementedError

    def compose(self, g, f):
        raise NotImplementedError

    def critical_morphisms(self) -> Optional[Sequence]:
        """Sub-carrier scanned exhaustively when the full carrier is sampled."""
        return None

    # --- derived ---
    @property
    def enumerable(self) -> bool:
        ms = self.morphisms()
        return ms is not None and len(ms) <= CARRIER_LIMIT and self.objects() is not None

    def composable(self, g, f) -> bool:
        return self.tgt(f) == self.src(g)

    @cached_property
    def out_index(self) -> dict:
        return out_index(self, self.morphisms())

    def sample_object(self, rng):
        return rng.choice(self.objects())

    def sample_morphism(self, rng):
        return rng.choice(self.morphisms())

    def sample_from(self, a, rng):
        """A morphism with source a."""
        return rng.choice(self.out_index[a])

    def sample_chain(self, length: int, rng) -> tuple:
        """(f_n, ..., f_1) with f_n∘...∘f_1 composable."""
        f = self.sample_morphism(rng)
        chain = [f]
        for _ in range(length - 1):
            f = self.sample_from(self.tgt(f), rng)
            chain.append(f)
        return tuple(reversed(chain))

    def chain_count(self, length: int) -> int:
        return chain_count(self, length, self.morphisms())

    def chains(self, length: int, morphs=None) -> Iterable[tuple]:
        return chains(self, length, morphs)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


def out_index(cat: FinCategory, morphs) -> dict:
    idx: dict = {}
    for f in morphs:
        idx.setdefault(cat.src(f), []).append(f)
    return idx


def chain_count(cat: FinCategory, length: int, morphs) -> int:
    """Number of composable chains of the given length drawn from morphs."""
    ends: dict = {}
    for f in morphs:
        b = cat.tgt(f)
        ends[b] = ends.get(b, 0) + 1
    for _ in range(length - 1):
        nxt: dict = {}
        for g in morphs:
            w = ends.get(cat.src(g), 0)
            if w:
                c = cat.tgt(g)
                nxt[c] = nxt.get(c, 0) + w
        ends = nxt
    return sum(ends.values())


def chains(cat: FinCategory, length: int, morphs=None) -> Iterable[tuple]:
    """Composable chains (f_n, ..., f_1); the first-applied morphism varies slowest."""
    if morphs is None:
        morphs, idx = cat.morphisms(), cat.out_index
    else:
        idx = out_index(cat, morphs)

    def grow(prefix):
        if len(prefix) == length:
            yield tuple(reversed(prefix))
            return
        for g in idx.get(cat.tgt(prefix[-1]), ()):
            yield from grow(prefix + [g])

    for f in morphs:
        yield from grow([f])


class TableCategory(FinCategory):
    """Objects 0..n-1, morphisms 0..m-1; comp[g][f] = g∘f or None."""

    backend = "extensional"

    def __init__(self, n: int, src, tgt, ident, comp, name: str = "table category",
                 labels: Optional[Sequence] = None):
        m = len(src)
        if len(tgt) != m:
            raise InputError(f"tgt: {len(tgt)} entries, expected {m}")
        if len(ident) != n:
            raise InputError(f"id: {len(ident)} entries, expected {n}")
        for key, arr, bound in (("src", src, n), ("tgt", tgt, n), ("id", ident, m)):
            for i, x in enumerate(arr):
                if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < bound:
                    raise InputError(f"{key}[{i}] = {x!r} is out of range [0, {bound})")
        if len(comp) != m or any(len(row) != m for row in comp):
            raise InputError(f"comp: expected a {m}x{m} table")
        for i, row in enumerate(comp):
            for j, x in enumerate(row):
                if x is not None and (not isinstance(x, int) or not 0 <= x < m):
                    raise InputError(f"comp[{i}][{j}] = {x!r} is out of range")
        self.n, self.m = n, m
        self._src, self._tgt, self._id = tuple(src), tuple(tgt), tuple(ident)
        self.comp = tuple(tuple(r) for r in comp)
        self.name = name
        self.labels = tuple(labels) if labels is not None else None

    def objects(self):
        return range(self.n)

    def morphisms(self):
        return range(self.m)

    def src(self, f):
        return self._src[f]

    def tgt(self, f):
        return self._tgt[f]

    def ident(self, a):
        return self._id[a]

    def compose(self, g, f):
        return self.comp[g][f]

    def to_json(self) -> dict:
        return {"objects": self.n, "morphisms": self.m, "src": list(self._src),
                "tgt": list(self._tgt), "id": list(self._id),
                "comp": [list(r) for r in self.comp]}

    @classmethod
    def from_json(cls, doc, name: str = "category") -> "TableCategory":
        if not isinstance(doc, dict):
            raise InputError(f"{name}: expected a JSON object")
        for key in ("objects", "morphisms", "src", "tgt", "id", "comp"):
            if key not in doc:
                raise InputError(f"{name}.{key}: missing field")
        if len(doc["src"]) != doc["morphisms"]:
            raise InputError(f"{name}.src: length differs from morphisms = {doc['morphisms']}")
        return cls(doc["objects"], doc["src"], doc["tgt"], doc["id"], doc["comp"], name=name)


class RuleCategory(FinCategory):
    """A category computed from rules on labels."""

    def __init__(self, name: str, src, tgt, ident, compose, objects=None, morphisms=None,
                 sample_object=None, sample_morphism=None, sample_from=None, critical=None,
                 guard: bool = True):
        self.name = name
        self.guard = guard
        self._src, self._tgt, self._ident, self._compose = src, tgt, ident, compose
        self._objects, self._morphisms = objects, morphisms
        self._sample_object, self._sample_morphism = sample_object, sample_morphism
        self._sample_from, self._critical = sample_from, critical

    @cached_property
    def _obj_list(self):
        o = self._objects
        return list(o()) if callable(o) else (None if o is None else list(o))

    @cached_property
    def _mor_list(self):
        m = self._morphisms
        return list(m()) if callable(m) else (None if m is None else list(m))

    def objects(self):
        return self._obj_list

    def morphisms(self):
        return self._mor_list

    def src(self, f):
        return self._src(f)

    def tgt(self, f):
        return self._tgt(f)

    def ident(self, a):
        return self._ident(a)

    def compose(self, g, f):
        # unguarded rules decide definedness themselves (and may get it wrong)
        if self.guard and self.tgt(f) != self.src(g):
            return None
        return self._compose(g, f)

    def sample_object(self, rng):
        return self._sample_object(rng) if self._sample_object else super().sample_object(rng)

    def sample_morphism(self, rng):
        return self._sample_morphism(rng) if self._sample_morphism else super().sample_morphism(rng)

    def sample_from(self, a, rng):
        return self._sample_from(a, rng) if self._sample_from else super().sample_from(a, rng)

    def critical_morphisms(self):
        c = self._critical
        return c() if callable(c) else c


def tabulate(cat: FinCategory, name: Optional[str] = None, objs=None, mors=None):
    """Index an enumerable category: (TableCategory, object labels, morphism labels)."""
    objs = list(cat.objects() if objs is None else objs)
    mors = list(cat.morphisms() if mors is None else mors)
    oi = {a: i for i, a in enumerate(objs)}
    mi = {f: i for i, f in enumerate(mors)}
    comp = []
    for g in mors:
        row = []
        for f in mors:
            h = cat.compose(g, f) if cat.composable(g, f) else None
            row.append(None if h is None else mi[h])
        comp.append(row)
    t = TableCategory(len(objs), [oi[cat.src(f)] for f in mors], [oi[cat.tgt(f)] for f in mors],
                      [mi[cat.ident(a)] for a in objs], comp, name=name or cat.name, labels=mors)
    return t, objs, mors


# ---------------------------------------------------------------- small builders

def codiscrete(n: int) -> TableCategory:
    """One morphism (b, a): a -> b for every ordered pair; label index b*n + a."""
    src = [a for b in range(n) for a in range(n)]
    tgt = [b for b in range(n) for a in range(n)]
    ident = [a * n + a for a in range(n)]
    comp = [[(g // n) * n + (f % n) if f // n == g % n else None for f in range(n * n)]
            for g in range(n * n)]
    return TableCategory(n, src, tgt, ident, comp, name=f"codiscrete({n})",
                         labels=[(b, a) for b in range(n) for a in range(n)])


def codiscrete_on(points: Sequence, name: str = "codiscrete") -> RuleCategory:
    """Codiscrete category on arbitrary labels; the morphism a -> b is (b, a)."""
    pts = list(points)
    return RuleCategory(name, src=lambda f: f[1], tgt=lambda f: f[0], ident=lambda a: (a, a),
                        compose=lambda g, f: (g[0], f[1]), objects=pts,
                        morphisms=[(b, a) for b in pts for a in pts])


def discrete(n: int) -> TableCategory:
    return TableCategory(n, list(range(n)), list(range(n)), list(range(n)),
                         [[g if g == f else None for f in range(n)] for g in range(n)],
                         name=f"discrete({n})")


def group_category(G) -> TableCategory:
    """One object, morphisms the elements of G, composition the product."""
    n = G.order
    return TableCategory(1, [0] * n, [0] * n, [0], [[G.mul(g, f) for f in range(n)] for g in range(n)],
                         name=f"B{G.name}")


# ---------------------------------------------------------------- checks

def category_laws(cat: FinCategory, prefix: str = "") -> list:
    enum = cat.enumerable
    objs = cat.objects() if enum else None
    ms = cat.morphisms() if enum else None
    crit = cat.critical_morphisms()
    C = cat

    def ident_ends(a):
        i = C.ident(a)
        return differ((C.src(i), C.tgt(i)), (a, a))

    def defined(g, f):
        ok = C.tgt(f) == C.src(g)
        h = C.compose(g, f)
        if ok and h is None:
            return "composite undefined on a composable pair"
        if not ok and h is not None:
            return f"composite {h!r} defined on a non-composable pair"
        return None

    def ends(g, f):
        h = C.compose(g, f)
        if h is None:
            return "composite undefined on a composable pair"
        return differ((C.src(h), C.tgt(h)), (C.src(f), C.tgt(g)))

    def assoc(h, g, f):
        gf, hg = C.compose(g, f), C.compose(h, g)
        if gf is None or hg is None:
            return "inner composite undefined"
        return differ(C.compose(h, gf), C.compose(hg, f))

    def left_unit(f):
        return differ(C.compose(C.ident(C.tgt(f)), f), f)

    def right_unit(f):
        return differ(C.compose(f, C.ident(C.src(f))), f)

    def sample_pair(r):
        f = C.sample_morphism(r)
        g = C.sample_from(C.tgt(f), r) if r.random() < 0.5 else C.sample_morphism(r)
        return (g, f)

    def chain_law(name, argnames, test, n):
        return Law(prefix + name, argnames, test,
                   space=(lambda: C.chains(n)) if enum else None,
                   size=(lambda: C.chain_count(n)) if enum else None,
                   sample=lambda r: C.sample_chain(n, r),
                   critical=(lambda: C.chains(n, crit)) if crit is not None else None)

    def mor_law(name, test):
        return Law(prefix + name, ("f",), test,
                   space=(lambda: ((f,) for f in ms)) if enum else None,
                   size=len(ms) if enum else None,
                   sample=lambda r: (C.sample_morphism(r),),
                   critical=(lambda: ((f,) for f in crit)) if crit is not None else None)

    return [
        Law(prefix + "identity-endpoints", ("a",), ident_ends,
            space=(lambda: ((a,) for a in objs)) if enum else None,
            size=len(objs) if enum else None, sample=lambda r: (C.sample_object(r),)),
        Law(prefix + "definedness", ("g", "f"), defined,
            space=(lambda: product(ms, ms)) if enum else None,
            size=len(ms) ** 2 if enum else None, sample=sample_pair,
            critical=(lambda: product(crit, crit)) if crit is not None else None),
        chain_law("composite-endpoints", ("g", "f"), ends, 2),
        chain_law("associativity", ("h", "g", "f"), assoc, 3),
        mor_law("left-unit", left_unit),
        mor_law("right-unit", right_unit),
    ]


def category_axioms_check(cat: FinCategory, policy: Optional[VerificationPolicy] = None):
    return run_laws(f"category {cat.name}", category_laws(cat), policy)


# ---------------------------------------------------------------- functors

class Functor:
    def __init__(self, domain: FinCategory, codomain: FinCategory, on_obj: Callable,
                 on_mor: Callable, name: str = "F"):
        self.domain, self.codomain = domain, codomain
        self._obj, self._mor = on_obj, on_mor
        self.name = name

    def obj(self, a):
        return self._obj(a)

    def mor(self, f):
        return self._mor(f)

    __call__ = mor

    @classmethod
    def from_tables(cls, domain: FinCategory, codomain: FinCategory, obj_map, mor_map, name="F"):
        if len(obj_map) != len(domain.objects()):
            raise InputError(f"object map has {len(obj_map)} entries, domain has "
                             f"{len(domain.objects())} objects")
        if len(mor_map) != len(domain.morphisms()):
            raise InputError(f"morphism map has {len(mor_map)} entries, domain has "
                             f"{len(domain.morphisms())} morphisms")
        om, mm = tuple(obj_map), tuple(mor_map)
        return cls(domain, codomain, om.__getitem__, mm.__getitem__, name)

    @classmethod
    def identity(cls, cat: FinCategory) -> "Functor":
        return cls(cat, cat, lambda a: a, lambda f: f, "Id")

    def then(self, other: "Functor") -> "Functor":
        """other ∘ self"""
        if other.domain is not self.codomain:
            raise InputError("functors do not chain: codomain and domain differ")
        return Functor(self.domain, other.codomain, lambda a: other.obj(self.obj(a)),
                       lambda f: other.mor(self.mor(f)), f"{other.name}.{self.name}")


def functor_laws(F: Functor, prefix: str = "") -> list:
    A, B = F.domain, F.codomain
    enum = A.enumerable
    crit = A.critical_morphisms()

    def on_mors(name, test):
        return Law(prefix + name, ("f",), test,
                   space=(lambda: ((f,) for f in A.morphisms())) if enum else None,
                   size=len(A.morphisms()) if enum else None,
                   sample=lambda r: (A.sample_morphism(r),),
                   critical=(lambda: ((f,) for f in crit)) if crit is not None else None)

    def comp(g, f):
        h = A.compose(g, f)
        rhs = B.compose(F.mor(g), F.mor(f))
        if rhs is None:
            return "images are not composable"
        return differ(F.mor(h), rhs)

    return [
        on_mors("preserves-source", lambda f: differ(F.obj(A.src(f)), B.src(F.mor(f)))),
        on_mors("preserves-target", lambda f: differ(F.obj(A.tgt(f)), B.tgt(F.mor(f)))),
        Law(prefix + "preserves-identity", ("a",), lambda a: differ(F.mor(A.ident(a)), B.ident(F.obj(a))),
            space=(lambda: ((a,) for a in A.objects())) if enum else None,
            size=len(A.objects()) if enum else None, sample=lambda r: (A.sample_object(r),)),
        Law(prefix + "preserves-composition", ("g", "f"), comp,
            space=(lambda: A.chains(2)) if enum else None,
            size=(lambda: A.chain_count(2)) if enum else None,
            sample=lambda r: A.sample_chain(2, r),
            critical=(lambda: A.chains(2, crit)) if crit is not None else None),
    ]


def functor_check(F: Functor, policy: Optional[VerificationPolicy] = None):
    return run_laws(f"functor {F.name}", functor_laws(F), policy)


# ---------------------------------------------------------------- natural transformations

class NatTransform:
    """component(a): F(a) -> F'(a) in the codomain category."""

    def __init__(self, dom: Functor, cod: Functor, component: Callable, name: str = "w"):
        if dom.domain is not cod.domain or dom.codomain is not cod.codomain:
            raise InputError("natural transformation between non-parallel functors")
        self.dom, self.cod, self._c, self.name = dom, cod, component, name

    def __call__(self, a):
        return self._c(a)

    @classmethod
    def identity(cls, F: Functor) -> "NatTransform":
        return cls(F, F, lambda a: F.codomain.ident(F.obj(a)), "id")


def naturality_check(w: NatTransform, policy: Optional[VerificationPolicy] = None):
    A, B = w.dom.domain, w.dom.codomain
    F, G = w.dom, w.cod
    enum = A.enumerable

    def natural(f):
        lhs = B.compose(G.mor(f), w(A.src(f)))
        rhs = B.compose(w(A.tgt(f)), F.mor(f))
        if lhs is None or rhs is None:
            return "naturality square has an undefined side"
        return differ(lhs, rhs)

    laws = [
        Law("component-endpoints", ("a",), lambda a: differ((B.src(w(a)), B.tgt(w(a))), (F.obj(a), G.obj(a))),
            space=(lambda: ((a,) for a in A.objects())) if enum else None,
            size=len(A.objects()) if enum else None, sample=lambda r: (A.sample_object(r),)),
        Law("naturality", ("f",), natural,
            space=(lambda: ((f,) for f in A.morphisms())) if enum else None,
            size=len(A.morphisms()) if enum else None, sample=lambda r: (A.sample_morphism(r),)),
    ]
    return run_laws(f"natural transformation {w.name}", laws, policy)


def _same_functor(F: Functor, G: Functor) -> bool:
    if F is G:
        return True
    A = F.domain
    if A is not G.domain or F.codomain is not G.codomain or not A.enumerable:
        return False
    return (all(F.obj(a) == G.obj(a) for a in A.objects())
            and all(F.mor(f) == G.mor(f) for f in A.morphisms()))


def nat_vcompose(w2: NatTransform, w1: NatTransform) -> NatTransform:
    """(w2∘w1)(v) = w2(v)∘w1(v)."""
    if not _same_functor(w1.cod, w2.dom):
        raise InputError("vertical composite needs cod(w1) = dom(w2)")
    B = w1.dom.codomain

    def comp(a):
        h = B.compose(w2(a), w1(a))
        if h is None:
            raise InputError(f"components at {a!r} are not composable")
        return h

    A = w1.dom.domain
    if A.enumerable:
        for a in A.objects():
            comp(a)
    return NatTransform(w1.dom, w2.cod, comp, f"{w2.name}.{w1.name}")


def nat_hcompose(w2: NatTransform, w1: NatTransform) -> NatTransform:
    """w1: F1 => F1' (V1 -> V2), w2: F2 => F2' (V2 -> V3).

    The component at v is F2'(w1(v))∘w2(F1(v)); the equivalent form
    w2(F1'(v))∘F2(w1(v)) is evaluated too and must agree.
    """
    if w1.dom.codomain is not w2.dom.domain:
        raise InputError("horizontal composite needs w1 to land where w2 starts")
    F1, F1p, F2, F2p = w1.dom, w1.cod, w2.dom, w2.cod
    C = F2.codomain

    def both(v):
        a = C.compose(F2p.mor(w1(v)), w2(F1.obj(v)))
        b = C.compose(w2(F1p.obj(v)), F2.mor(w1(v)))
        return a, b

    def comp(v):
        a, b = both(v)
        if a is None or a != b:
            raise LawViolation(f"the two horizontal composite forms differ at {v!r}",
                               {"object": v, "lhs": a, "rhs": b})
        return a

    A = F1.domain
    if A.enumerable:
        for v in A.objects():
            comp(v)
    return NatTransform(F1.then(F2), F1p.then(F2p), comp, f"{w2.name}*{w1.name}")


# ---------------------------------------------------------------- product tuple spaces

class Factor:
    """One coordinate block of a law's tuple space.

    ``items`` enumerates the block (None when too large), ``sample`` draws
    one entry and ``critical`` lists the declared sub-carrier, if any.
    Every entry is a tuple, so chain blocks contribute several arguments.
    """

    def __init__(self, items=None, size=None, sample=None, critical=None):
        self.items, self.size, self.sample, self.critical = items, size, sample, critical


def mor_factor(cat: FinCategory) -> Factor:
    crit = cat.critical_morphisms()
    if cat.enumerable:
        ms = cat.morphisms()
        items, size = (lambda: ((f,) for f in ms)), (lambda: len(ms))
    else:
        items = size = None
    return Factor(items, size, lambda r: (cat.sample_morphism(r),),
                  (lambda: ((f,) for f in crit)) if crit is not None else None)


def obj_factor(cat: FinCategory) -> Factor:
    objs = cat.objects()
    crit = cat.critical_morphisms()
    if objs is None:
        return Factor(None, None, lambda r: (cat.sample_object(r),),
                      (lambda: sorted({(cat.src(f),) for f in crit}, key=repr)) if crit is not None else None)
    return Factor(lambda: ((a,) for a in objs), lambda: len(objs), lambda r: (cat.sample_object(r),))


def chain_factor(cat: FinCategory, n: int) -> Factor:
    crit = cat.critical_morphisms()
    if cat.enumerable:
        items, size = (lambda: cat.chains(n)), (lambda: cat.chain_count(n))
    else:
        items = size = None
    return Factor(items, size, lambda r: cat.sample_chain(n, r),
                  (lambda: cat.chains(n, crit)) if crit is not None else None)


def list_factor(values: Sequence) -> Factor:
    vals = list(values)
    return Factor(lambda: ((v,) for v in vals), lambda: len(vals), lambda r: (r.choice(vals),))


def product_law(name: str, argnames, test, factors: Sequence[Factor]) -> Law:
    def flat(blocks):
        out = ()
        for b in blocks:
            out += b
        return out

    enum = all(f.items is not None for f in factors)
    space = size = critical = None
    if enum:
        space = lambda: (flat(bs) for bs in product(*(list(f.items()) for f in factors)))
        size = lambda: math.prod(f.size() for f in factors)
    if any(f.critical is not None for f in factors):
        parts = [f.critical if f.critical is not None else f.items for f in factors]
        if all(p is not None for p in parts):
            critical = lambda: (flat(bs) for bs in product(*(list(p()) for p in parts)))
    return Law(name, argnames, test, space=space, size=size,
               sample=lambda r: flat(f.sample(r) for f in factors), critical=critical)
