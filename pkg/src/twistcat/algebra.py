"""Finite groups, actions, vector spaces over prime fields and characters.

Everything is exact: group elements are table indices (identity at 0) and
vectors are tuples of residues mod q.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce
from itertools import combinations, product
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import InputError, RefusalError
from .verify import Law, VerificationPolicy, differ, run_laws

SUBSPACE_BOUND = 4096


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n ** 0.5) + 1))


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# ---------------------------------------------------------------- groups

class FiniteGroup:
    """A group given by its multiplication table; element 0 is the identity."""

    def __init__(self, table: Sequence[Sequence[int]], labels: Optional[Sequence] = None,
                 name: str = ""):
        n = len(table)
        if n == 0:
            raise InputError("table: a group needs at least one element")
        rows = []
        for i, row in enumerate(table):
            if len(row) != n:
                raise InputError(f"table: row {i} has length {len(row)}, expected {n}")
            for j, x in enumerate(row):
                if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
                    raise InputError(f"table[{i}][{j}] = {x!r} is not an index in [0, {n})")
            rows.append(tuple(row))
        if labels is not None and len(labels) != n:
            raise InputError("labels: wrong length")
        self.table = tuple(rows)
        self.order = n
        self.labels = tuple(labels) if labels is not None else None
        self.name = name or f"group[{n}]"

    def __repr__(self):
        return f"FiniteGroup({self.name})"

    identity = 0

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverse(self) -> tuple:
        inv = []
        for g in range(self.order):
            row = self.table[g]
            inv.append(next((h for h in range(self.order) if row[h] == 0), -1))
        return tuple(inv)

    def inv(self, a: int) -> int:
        i = self.inverse[a]
        if i < 0:
            raise InputError(f"element {a} has no inverse")
        return i

    def prod(self, *xs: int) -> int:
        return reduce(self.mul, xs, 0)

    def conj(self, g: int, h: int) -> int:
        """g h g^-1"""
        return self.mul(self.mul(g, h), self.inv(g))

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.mul(x, g)
            k += 1
            if k > self.order:
                raise InputError(f"element {g} has no finite order in the table")
        return k

    @cached_property
    def exponent(self) -> int:
        return reduce(lcm, (self.element_order(g) for g in range(self.order)), 1)

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def label(self, i: int):
        return self.labels[i] if self.labels is not None else i

    def index(self, label) -> int:
        if self.labels is None:
            return label
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"{label!r} is not an element of {self.name}") from None

    def elements(self) -> range:
        return range(self.order)

    def to_json(self) -> dict:
        return {"order": self.order, "table": [list(r) for r in self.table]}

    @classmethod
    def from_json(cls, doc, name: str = "") -> "FiniteGroup":
        if not isinstance(doc, dict) or "table" not in doc:
            raise InputError(f"{name or 'group'}: expected an object with 'order' and 'table'")
        table = doc["table"]
        if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
            raise InputError(f"{name or 'group'}.table: expected a list of lists")
        if "order" in doc and doc["order"] != len(table):
            raise InputError(f"{name or 'group'}.order: {doc['order']} does not match table size {len(table)}")
        return cls(table, name=name)


def group_from_elements(elements: Sequence, op, name: str = "") -> FiniteGroup:
    """Tabulate a group from explicit elements; ``elements[0]`` must be the identity."""
    idx = {x: i for i, x in enumerate(elements)}
    table = [[idx[op(a, b)] for b in elements] for a in elements]
    return FiniteGroup(table, labels=elements, name=name)


def compose_perm(p: tuple, q: tuple) -> tuple:
    """(p∘q)(x) = p(q(x))"""
    return tuple(p[x] for x in q)


def permutation_group(generators: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    """Closure of the generators, listed breadth first from the identity."""
    gens = [tuple(g) for g in generators]
    n = len(gens[0]) if gens else 0
    e = tuple(range(n))
    elems, seen, i = [e], {e}, 0
    while i < len(elems):
        for s in gens:
            y = compose_perm(elems[i], s)
            if y not in seen:
                seen.add(y)
                elems.append(y)
        i += 1
    return group_from_elements(elems, compose_perm, name)


def cycle_notation(perm: Sequence[int]) -> str:
    """1-based cycle notation, e.g. (0,2,1) -> '(23)'."""
    seen, out = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = perm[x]
        out.append("(" + "".join(cyc) + ")")
    return "".join(out) or "e"


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise InputError("cyclic group order must be positive")
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)],
                       labels=list(range(n)), name=f"Z/{n}")


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], labels=[0], name="1")


def symmetric3() -> FiniteGroup:
    """S3 generated by (12) and (123); elements listed e, (12), (123), ..."""
    return permutation_group([(1, 0, 2), (1, 2, 0)], name="S3")


def sign_of(perm: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(perm)) for j in range(i) if perm[j] > perm[i])
    return inversions % 2


def units(q: int) -> FiniteGroup:
    """Multiplicative group F_q^*, elements listed 1, 2, ..., q-1."""
    if not is_prime(q):
        raise InputError(f"q = {q} is not prime")
    return group_from_elements(list(range(1, q)), lambda a, b: a * b % q, f"F_{q}*")


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    elems = [(a, b) for a in A.elements() for b in B.elements()]
    return group_from_elements(elems, lambda x, y: (A.mul(x[0], y[0]), B.mul(x[1], y[1])),
                               f"{A.name}x{B.name}")


def parse_group(spec: str) -> FiniteGroup:
    """'Z4', 'Z/4', 'S3', 'trivial'."""
    s = spec.replace("/", "").strip()
    if s in ("1", "trivial"):
        return trivial_group()
    if s == "S3":
        return symmetric3()
    if s[:1] == "Z" and s[1:].isdigit():
        return cyclic(int(s[1:]))
    raise InputError(f"unknown group name {spec!r} (use Zn, S3 or trivial)")


# ---------------------------------------------------------------- homs and actions

class GroupHom:
    def __init__(self, domain: FiniteGroup, codomain: FiniteGroup, mapping: Sequence[int]):
        if len(mapping) != domain.order:
            raise InputError(f"map: has {len(mapping)} entries, domain has {domain.order} elements")
        for i, x in enumerate(mapping):
            if not isinstance(x, int) or not 0 <= x < codomain.order:
                raise InputError(f"map[{i}] = {x!r} is not an element of the codomain")
        self.domain, self.codomain, self.map = domain, codomain, tuple(mapping)

    def __call__(self, g: int) -> int:
        return self.map[g]

    @classmethod
    def trivial(cls, domain, codomain):
        return cls(domain, codomain, [0] * domain.order)

    def kernel(self) -> list:
        return [g for g in self.domain.elements() if self.map[g] == 0]

    def to_json(self):
        return {"map": list(self.map)}


class GroupAction:
    """A left action of ``group`` on {0..size-1}; perms[g][x] = g·x."""

    def __init__(self, group: FiniteGroup, size: int, perms: Sequence[Sequence[int]]):
        if len(perms) != group.order:
            raise InputError(f"perms: has {len(perms)} rows, group has {group.order} elements")
        for g, p in enumerate(perms):
            if len(p) != size or not all(isinstance(x, int) and 0 <= x < size for x in p):
                raise InputError(f"perms[{g}] is not a map of a {size}-element carrier")
        self.group, self.size, self.perms = group, size, tuple(tuple(p) for p in perms)

    def __call__(self, g: int, x: int) -> int:
        return self.perms[g][x]

    @classmethod
    def trivial(cls, group: FiniteGroup, size: int) -> "GroupAction":
        return cls(group, size, [list(range(size))] * group.order)

    @classmethod
    def from_rule(cls, group: FiniteGroup, size: int, rule) -> "GroupAction":
        return cls(group, size, [[rule(g, x) for x in range(size)] for g in group.elements()])

    def to_json(self):
        return {"perms": [list(p) for p in self.perms]}


# ---------------------------------------------------------------- checks

def group_check(g: FiniteGroup, policy: Optional[VerificationPolicy] = None):
    n, t = g.order, g.table
    rng3 = lambda: product(range(n), repeat=3)

    def latin(kind, i):
        line = t[i] if kind == "row" else tuple(t[r][i] for r in range(n))
        return None if len(set(line)) == n else f"{kind} {i} repeats an entry"

    def has_inverse(a):
        b = g.inverse[a]
        if b < 0 or t[b][a] != 0:
            return f"no two-sided inverse for {a}"
        return None

    laws = [
        Law("latin-square", ("line", "index"), latin,
            space=lambda: ((k, i) for k in ("row", "column") for i in range(n)), size=2 * n),
        Law("associativity", ("a", "b", "c"),
            lambda a, b, c: differ(t[t[a][b]][c], t[a][t[b][c]]),
            space=rng3, size=n ** 3,
            sample=lambda r: (r.randrange(n), r.randrange(n), r.randrange(n))),
        Law("identity", ("a",), lambda a: differ((t[0][a], t[a][0]), (a, a)),
            space=lambda: ((a,) for a in range(n)), size=n),
        Law("inverse", ("a",), has_inverse, space=lambda: ((a,) for a in range(n)), size=n),
    ]
    return run_laws(f"group {g.name}", laws, policy)


def hom_check(f: GroupHom, policy: Optional[VerificationPolicy] = None):
    A, B, m = f.domain, f.codomain, f.map
    laws = [
        Law("hom-product", ("g", "h"), lambda a, b: differ(m[A.mul(a, b)], B.mul(m[a], m[b])),
            space=lambda: product(range(A.order), repeat=2), size=A.order ** 2,
            sample=lambda r: (r.randrange(A.order), r.randrange(A.order))),
        Law("hom-identity", (), lambda: differ(m[0], 0), space=lambda: [()], size=1),
    ]
    return run_laws("homomorphism", laws, policy)


def group_action_check(act: GroupAction, policy: Optional[VerificationPolicy] = None):
    G, p, n = act.group, act.perms, act.size
    laws = [
        Law("action-identity", ("x",), lambda x: differ(p[0][x], x),
            space=lambda: ((x,) for x in range(n)), size=n),
        Law("action-product", ("g", "h", "x"),
            lambda g, h, x: differ(p[G.mul(g, h)][x], p[g][p[h][x]]),
            space=lambda: product(range(G.order), range(G.order), range(n)),
            size=G.order ** 2 * n,
            sample=lambda r: (r.randrange(G.order), r.randrange(G.order), r.randrange(n))),
        Law("action-bijective", ("g",),
            lambda g: None if len(set(p[g])) == n else "not a permutation",
            space=lambda: ((g,) for g in range(G.order)), size=G.order),
    ]
    return run_laws("group action", laws, policy)


def automorphism_check(act: GroupAction, H: FiniteGroup, policy: Optional[VerificationPolicy] = None):
    """Each act(g) is a bijective endomorphism of H, and act is an action."""
    if act.size != H.order:
        raise InputError(f"alpha: acts on {act.size} points but H has {H.order} elements")
    G, p = act.group, act.perms
    rep = group_action_check(act, policy)
    law = Law("automorphism", ("g", "h", "h'"),
              lambda g, a, b: differ(p[g][H.mul(a, b)], H.mul(p[g][a], p[g][b])),
              space=lambda: product(range(G.order), range(H.order), range(H.order)),
              size=G.order * H.order ** 2,
              sample=lambda r: (r.randrange(G.order), r.randrange(H.order), r.randrange(H.order)))
    return rep.merge(run_laws("automorphisms", [law], policy))


# ---------------------------------------------------------------- F_q linear algebra

@dataclass(frozen=True)
class FqSpace:
    q: int
    dim: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise InputError(f"q = {self.q} is not prime")
        if self.dim < 0:
            raise InputError("dim must be non-negative")

    @property
    def size(self) -> int:
        return self.q ** self.dim

    @property
    def zero(self) -> tuple:
        return (0,) * self.dim

    def vectors(self) -> Iterable[tuple]:
        """Lexicographic order, which is also the integer-encoding order."""
        return product(range(self.q), repeat=self.dim)

    def encode(self, v: Sequence[int]) -> int:
        n = 0
        for x in v:
            n = n * self.q + x
        return n

    def decode(self, n: int) -> tuple:
        out = []
        for _ in range(self.dim):
            n, r = divmod(n, self.q)
            out.append(r)
        return tuple(reversed(out))

    def add(self, u, v) -> tuple:
        return tuple((a + b) % self.q for a, b in zip(u, v))

    def sub(self, u, v) -> tuple:
        return tuple((a - b) % self.q for a, b in zip(u, v))

    def neg(self, v) -> tuple:
        return tuple(-a % self.q for a in v)

    def scale(self, c: int, v) -> tuple:
        return tuple(c * a % self.q for a in v)

    def random(self, rng) -> tuple:
        return tuple(rng.randrange(self.q) for _ in range(self.dim))

    def to_json(self):
        return {"q": self.q, "dim": self.dim}


def mat_vec(M, v, q: int) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, v)) % q for row in M)


def mat_mul(A, B, q: int) -> tuple:
    cols = list(zip(*B)) if B else []
    return tuple(tuple(sum(a * b for a, b in zip(row, c)) % q for c in cols) for row in A)


def identity_matrix(n: int) -> tuple:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zero_matrix(rows: int, cols: int) -> tuple:
    return tuple((0,) * cols for _ in range(rows))


def rref(rows, q: int, ncols: Optional[int] = None):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    ncols = ncols if ncols is not None else (len(m[0]) if m else 0)
    pivots, r = [], 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] % q), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, q)
        m[r] = [x * inv % q for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % q:
                f = m[i][c]
                m[i] = [(a - f * b) % q for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(x % q for x in row) for row in m[:r]), tuple(pivots)


def span_basis(vectors, q: int, dim: int) -> tuple:
    return rref(list(vectors), q, dim)[0]


def rank(M, q: int) -> int:
    return len(rref(M, q, len(M[0]) if M else 0)[0])


def reduce_mod(v, basis, q: int) -> tuple:
    """Canonical coset representative of v modulo span(basis); basis in rref."""
    v = list(v)
    for row in basis:
        c = next(i for i, x in enumerate(row) if x)
        f = v[c]
        if f:
            v = [(a - f * b) % q for a, b in zip(v, row)]
    return tuple(v)


def in_span(v, basis, q: int) -> bool:
    return not any(reduce_mod(v, basis, q))


def span_elements(basis, q: int, dim: int) -> list:
    out = []
    for coeffs in product(range(q), repeat=len(basis)):
        v = [0] * dim
        for c, row in zip(coeffs, basis):
            if c:
                v = [(a + c * b) % q for a, b in zip(v, row)]
        out.append(tuple(v))
    return out


def nullspace(M, q: int, ncols: int) -> tuple:
    """rref basis of {x : Mx = 0} for an (r x ncols) matrix."""
    R, piv = rref(M, q, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fcol in free:
        x = [0] * ncols
        x[fcol] = 1
        for row, pc in zip(R, piv):
            x[pc] = -row[fcol] % q
        basis.append(x)
    return span_basis(basis, q, ncols)


def column_space(M, q: int, nrows: int) -> tuple:
    return span_basis(zip(*M) if M and M[0] else [], q, nrows)


def mat_inverse(M, q: int) -> tuple:
    n = len(M)
    aug = [list(r) + list(e) for r, e in zip(M, identity_matrix(n))]
    R, piv = rref(aug, q, 2 * n)
    if tuple(piv[:n]) != tuple(range(n)) or len(R) < n:
        raise InputError("matrix is singular")
    return tuple(tuple(r[n:]) for r in R)


@dataclass(frozen=True)
class LinearMap:
    domain: FqSpace
    codomain: FqSpace
    matrix: tuple

    def __post_init__(self):
        M = tuple(tuple(int(x) % self.domain.q for x in row) for row in self.matrix)
        if len(M) != self.codomain.dim or any(len(r) != self.domain.dim for r in M):
            raise InputError(f"matrix shape does not match {self.codomain.dim}x{self.domain.dim}")
        if self.domain.q != self.codomain.q:
            raise InputError("domain and codomain fields differ")
        object.__setattr__(self, "matrix", M)

    def __call__(self, v) -> tuple:
        if self.domain.dim == 0:
            return self.codomain.zero
        return mat_vec(self.matrix, v, self.domain.q)

    def kernel(self) -> tuple:
        if self.codomain.dim == 0:
            return span_basis(identity_matrix(self.domain.dim), self.domain.q, self.domain.dim)
        return nullspace(self.matrix, self.domain.q, self.domain.dim)

    def image(self) -> tuple:
        return column_space(self.matrix, self.domain.q, self.codomain.dim)

    def then(self, other: "LinearMap") -> "LinearMap":
        """other ∘ self"""
        return LinearMap(self.domain, other.codomain, mat_mul(other.matrix, self.matrix, self.domain.q)
                         if self.domain.dim and other.codomain.dim else
                         zero_matrix(other.codomain.dim, self.domain.dim))


def linear_map_check(f, domain: FqSpace, codomain: FqSpace, name: str = "map",
                     policy: Optional[VerificationPolicy] = None):
    """Additivity and homogeneity of an arbitrary callable between F_q spaces."""
    q = domain.q
    vecs = lambda: list(domain.vectors())
    laws = [
        Law(f"{name}.additive", ("u", "v"),
            lambda u, v: differ(f(domain.add(u, v)), codomain.add(f(u), f(v))),
            space=lambda: product(vecs(), repeat=2), size=domain.size ** 2,
            sample=lambda r: (domain.random(r), domain.random(r))),
        Law(f"{name}.homogeneous", ("c", "v"),
            lambda c, v: differ(f(domain.scale(c, v)), codomain.scale(c, f(v))),
            space=lambda: product(range(q), vecs()), size=q * domain.size,
            sample=lambda r: (r.randrange(q), domain.random(r))),
    ]
    return run_laws(name, laws, policy)


def additive_group(space: FqSpace) -> FiniteGroup:
    return group_from_elements(list(space.vectors()), space.add, f"F_{space.q}^{space.dim}")


def general_linear(d: int, q: int) -> FiniteGroup:
    """GL(d, q), identity first, the rest in lexicographic order of entries."""
    mats = []
    for entries in product(range(q), repeat=d * d):
        M = tuple(tuple(entries[i * d:(i + 1) * d]) for i in range(d))
        if rank(M, q) == d:
            mats.append(M)
    e = identity_matrix(d)
    mats.remove(e)
    return group_from_elements([e] + mats, lambda A, B: mat_mul(A, B, q), f"GL({d},{q})")


# ---------------------------------------------------------------- subspaces

def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subspace_count(space: FqSpace) -> int:
    return sum(gaussian_binomial(space.dim, k, space.q) for k in range(space.dim + 1))


def subspace_enumerate(space: FqSpace, bound: int = SUBSPACE_BOUND) -> list:
    """Every subspace as its rref basis (tuple of rows), by dimension then lexicographically."""
    q, d = space.q, space.dim
    if q ** d > bound:
        raise RefusalError(f"F_{q}^{d} has {q ** d} vectors, above the enumeration bound {bound}; "
                           "shrink the instance")
    out = []
    for k in range(d + 1):
        for pivots in combinations(range(d), k):
            slots = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, d)
                     if j not in pivots]
            for fill in product(range(q), repeat=len(slots)):
                rows = [[0] * d for _ in range(k)]
                for i, p in enumerate(pivots):
                    rows[i][p] = 1
                for (i, j), x in zip(slots, fill):
                    rows[i][j] = x
                out.append(tuple(tuple(r) for r in rows))
    return out


# ---------------------------------------------------------------- characters

class CharacterFamily:
    """Characters λ_p: H -> F_q^* indexed by points of a G-set M.

    ``values[p][h]`` is λ_p(h).  H is any finite group whose exponent divides
    q-1; G acts on M through ``on_M`` and on H through ``on_H``.
    """

    def __init__(self, q: int, H: FiniteGroup, G: FiniteGroup, on_M: GroupAction,
                 on_H: GroupAction, values: Sequence[Sequence[int]]):
        if not is_prime(q):
            raise InputError(f"q = {q} is not prime")
        if (q - 1) % H.exponent:
            raise InputError(f"exponent of H ({H.exponent}) does not divide q-1 = {q - 1}; "
                             "no faithful F_q-valued characters exist")
        if on_M.group is not G or on_H.group is not G:
            raise InputError("on_M and on_H must be actions of G")
        if on_H.size != H.order:
            raise InputError("on_H must act on the elements of H")
        if len(values) != on_M.size:
            raise InputError(f"values: {len(values)} characters for {on_M.size} points")
        for p, row in enumerate(values):
            if len(row) != H.order or not all(isinstance(x, int) and 1 <= x < q for x in row):
                raise InputError(f"values[{p}] must list {H.order} nonzero residues mod {q}")
        self.q, self.H, self.G, self.on_M, self.on_H = q, H, G, on_M, on_H
        self.values = tuple(tuple(r) for r in values)

    @property
    def points(self) -> int:
        return self.on_M.size

    def __call__(self, p: int, h: int) -> int:
        return self.values[p][h]

    @classmethod
    def induced(cls, q, H, G, on_M, on_H, base: Sequence[int], p0: int = 0):
        """Spread λ_{p0} over the orbit of p0 by λ_{g p0}(h) = λ_{p0}(g^-1 h)."""
        vals: dict = {}
        for g in G.elements():
            p = on_M(g, p0)
            row = tuple(base[on_H(G.inv(g), h)] for h in H.elements())
            if vals.setdefault(p, row) != row:
                raise InputError(f"character at point {p} is not well defined: the stabilizer "
                                 "of the basepoint does not fix λ_p0")
        if len(vals) != on_M.size:
            raise InputError("M must be a single orbit of the basepoint")
        return cls(q, H, G, on_M, on_H, [vals[p] for p in range(on_M.size)])


def character_family_check(c: CharacterFamily, policy: Optional[VerificationPolicy] = None):
    H, G, q, lam = c.H, c.G, c.q, c.values
    npts = c.points
    laws = [
        Law("character-hom", ("p", "h1", "h2"),
            lambda p, a, b: differ(lam[p][H.mul(a, b)], lam[p][a] * lam[p][b] % q),
            space=lambda: product(range(npts), range(H.order), range(H.order)),
            size=npts * H.order ** 2,
            sample=lambda r: (r.randrange(npts), r.randrange(H.order), r.randrange(H.order))),
        Law("character-equivariance", ("g", "p", "h"),
            lambda g, p, h: differ(lam[c.on_M(g, p)][h], lam[p][c.on_H(G.inv(g), h)]),
            space=lambda: product(range(G.order), range(npts), range(H.order)),
            size=G.order * npts * H.order,
            sample=lambda r: (r.randrange(G.order), r.randrange(npts), r.randrange(H.order))),
    ]
    rep = run_laws("character family", laws, policy)
    rep.merge(group_action_check(c.on_M, policy), "M.")
    rep.merge(automorphism_check(c.on_H, H, policy), "H.")
    return rep
