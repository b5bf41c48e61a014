"""Finite-dimensional algebras with coproduct, and the algebras built from
Coxeter data (nil-Coxeter, 0-Hecke, generic Hecke, group algebras)."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .core import Alphabet, FreeAlgebra, QQ
from .errors import (DecompositionFailure, InputError, NotGrouplikeBasis,
                     NotNilpotent, NotSaturated)
from .linalg import Subspace, kernel, rank, solve, sparse_add
from .rewrite import ReductionSystem, enumerate_basis, knuth_bendix_bounded


def _vec_eq(a, b):
    return {k: v for k, v in a.items() if v} == {k: v for k, v in b.items() if v}


class AlgebraWithCoproduct:
    """Structure constants for an algebra with basis a_0 = 1, a_1, ..., a_{dim-1}.

    ``mult`` maps (j, k) to a sparse vector {l: u_jk^l}; products involving the
    unit are filled in when absent.  ``coprod`` maps j to {(k, l): r_j^kl}.
    ``counit`` is a list of scalars and ``antipode`` a list of sparse vectors
    (S(a_j) = sum_k S_j^k a_k).
    """

    def __init__(self, field, dim, mult, coprod=None, counit=None, antipode=None,
                 names=None, words=None):
        self.field = field
        self.dim = int(dim)
        if self.dim < 1:
            raise InputError("algebra dimension must be positive")
        F = field
        u = [[None] * dim for _ in range(dim)]
        for (j, k), vec in mult.items():
            self._idx(j), self._idx(k)
            u[j][k] = {l: F(c) for l, c in vec.items() if F(c)}
            for l in u[j][k]:
                self._idx(l)
        for j in range(dim):
            for k in range(dim):
                if u[j][k] is None:
                    if j == 0:
                        u[j][k] = {k: F.one}
                    elif k == 0:
                        u[j][k] = {j: F.one}
                    else:
                        u[j][k] = {}
        self.u = u
        self.r = None
        if coprod is not None:
            r = [None] * dim
            for j, vec in coprod.items():
                self._idx(j)
                r[j] = {(k, l): F(c) for (k, l), c in vec.items() if F(c)}
            if r[0] is None:
                r[0] = {(0, 0): F.one}
            self.r = [x if x is not None else {} for x in r]
        self.counit = [F(c) for c in counit] if counit is not None else None
        self.antipode = None
        if antipode is not None:
            self.antipode = [{k: F(c) for k, c in row.items() if F(c)} for row in antipode]
        self.names = tuple(names) if names is not None else tuple(f"a{j}" for j in range(dim))
        self.words = tuple(words) if words is not None else None

    def _idx(self, j):
        if not (0 <= j < self.dim):
            raise InputError(f"algebra index {j} out of range 0..{self.dim - 1}")

    # elements are sparse dicts index -> scalar
    def basis(self, j):
        return {j: self.field.one}

    def one(self):
        return {0: self.field.one}

    def mul(self, x, y):
        acc = {}
        for j, c in x.items():
            if not c:
                continue
            row = self.u[j]
            for k, d in y.items():
                if d:
                    sparse_add(acc, row[k], c * d)
        return acc

    def coproduct(self, x):
        if self.r is None:
            raise InputError("algebra has no coproduct")
        acc = {}
        for j, c in x.items():
            sparse_add(acc, self.r[j], c)
        return acc

    def coproduct2(self, x):
        """(Delta x id) Delta, as {(k, l, m): c}."""
        acc = {}
        for (k, m), c in self.coproduct(x).items():
            for (k1, k2), d in self.r[k].items():
                sparse_add(acc, {(k1, k2, m): d}, c)
        return acc

    def tensor_mul(self, X, Y):
        acc = {}
        for (a, b), c in X.items():
            for (e, f), d in Y.items():
                for l, x in self.u[a][e].items():
                    for h, y in self.u[b][f].items():
                        sparse_add(acc, {(l, h): x * y}, c * d)
        return acc

    def eps(self, x):
        if self.counit is None:
            raise InputError("algebra has no counit")
        return sum((c * self.counit[j] for j, c in x.items()), self.field.zero)

    def S(self, x):
        acc = {}
        for j, c in x.items():
            sparse_add(acc, self.antipode[j], c)
        return acc

    def left_matrix(self, x):
        """Dense matrix of left multiplication by x (column k = x * a_k)."""
        F = self.field
        M = [[F.zero] * self.dim for _ in range(self.dim)]
        for k in range(self.dim):
            for l, c in self.mul(x, {k: F.one}).items():
                M[l][k] = c
        return M

    def right_matrix(self, x):
        F = self.field
        M = [[F.zero] * self.dim for _ in range(self.dim)]
        for k in range(self.dim):
            for l, c in self.mul({k: F.one}, x).items():
                M[l][k] = c
        return M

    def to_dense(self, x):
        v = [self.field.zero] * self.dim
        for j, c in x.items():
            v[j] = c
        return v

    def from_dense(self, v):
        return {j: c for j, c in enumerate(v) if c}

    def is_grouplike(self, j):
        return self.r is not None and self.r[j] == {(j, j): self.field.one}

    def with_field(self, field):
        """Reinterpret the structure constants over another field."""
        def cv(c):
            n, d = self.field.to_pair(c)
            return field((n, d))
        mult = {(j, k): {l: cv(c) for l, c in self.u[j][k].items()}
                for j in range(self.dim) for k in range(self.dim)}
        coprod = None if self.r is None else {j: {kl: cv(c) for kl, c in row.items()}
                                               for j, row in enumerate(self.r)}
        counit = None if self.counit is None else [cv(c) for c in self.counit]
        anti = None if self.antipode is None else [{k: cv(c) for k, c in row.items()}
                                                   for row in self.antipode]
        return AlgebraWithCoproduct(field, self.dim, mult, coprod, counit, anti,
                                    self.names, self.words)

    def __repr__(self):
        return f"AlgebraWithCoproduct(dim={self.dim}, field={self.field!r})"


@dataclass
class AxiomReport:
    assoc: bool
    unit: bool
    coassoc: Optional[bool]
    cocomm: Optional[bool]
    mult: Optional[bool]
    counit: Optional[bool] = None
    counit_mult: Optional[bool] = None
    antipode: Optional[bool] = None

    def ok(self):
        return all(v is not False for v in vars(self).values())


def check_axioms(A):
    F, n = A.field, A.dim
    one = F.one
    assoc = all(
        _vec_eq(A.mul(A.mul({i: one}, {j: one}), {m: one}), A.mul({i: one}, A.mul({j: one}, {m: one})))
        for i in range(n) for j in range(n) for m in range(n))
    unit = all(A.u[0][j] == {j: one} and A.u[j][0] == {j: one} for j in range(n))
    if A.r is None:
        return AxiomReport(assoc, unit, None, None, None)
    unit = unit and A.r[0] == {(0, 0): one}
    coassoc = True
    cocomm = True
    for j in range(n):
        left = A.coproduct2({j: one})
        right = {}
        for (k, l), c in A.r[j].items():
            for (l1, l2), d in A.r[l].items():
                sparse_add(right, {(k, l1, l2): d}, c)
        coassoc &= _vec_eq(left, right)
        cocomm &= all(A.r[j].get((l, k), F.zero) == c for (k, l), c in A.r[j].items())
    mult = all(_vec_eq(A.coproduct(A.mul({j: one}, {k: one})),
                       A.tensor_mul(A.r[j], A.r[k]))
               for j in range(n) for k in range(n))
    rep = AxiomReport(assoc, unit, coassoc, cocomm, mult)
    if A.counit is not None:
        ok = True
        for j in range(n):
            lft, rgt = {}, {}
            for (k, l), c in A.r[j].items():
                sparse_add(lft, {l: A.counit[k]}, c)
                sparse_add(rgt, {k: A.counit[l]}, c)
            ok &= _vec_eq(lft, {j: one}) and _vec_eq(rgt, {j: one})
        rep.counit = ok
        rep.counit_mult = A.counit[0] == one and all(
            A.eps(A.mul({j: one}, {k: one})) == A.counit[j] * A.counit[k]
            for j in range(n) for k in range(n))
    if A.antipode is not None and A.counit is not None:
        ok = True
        for j in range(n):
            lft, rgt = {}, {}
            for (k, l), c in A.r[j].items():
                sparse_add(lft, A.mul(A.S({k: one}), {l: one}), c)
                sparse_add(rgt, A.mul({k: one}, A.S({l: one})), c)
            target = {0: A.counit[j]}
            ok &= _vec_eq(lft, target) and _vec_eq(rgt, target)
        rep.antipode = ok
    return rep


def grouplike_elements(A, max_candidates=4096):
    """Basis elements of a grouplike algebra, after confirming the singleton property.

    Every basis vector must satisfy Delta(g) = g (x) g; then all candidates
    with coefficients in {0, 1, -1} on small supports are tested, and only the
    basis vectors themselves may be grouplike.
    """
    F = A.field
    if A.r is None:
        raise NotGrouplikeBasis("no coproduct")
    for j in range(A.dim):
        if not A.is_grouplike(j):
            raise NotGrouplikeBasis(f"basis element {A.names[j]} is not grouplike")
    found = []
    count = 0
    for size in range(1, A.dim + 1):
        for supp in itertools.combinations(range(A.dim), size):
            for signs in itertools.product((1, -1), repeat=size):
                count += 1
                if count > max_candidates:
                    break
                g = {j: F(s) for j, s in zip(supp, signs)}
                D = A.coproduct(g)
                gg = {(k, l): a * b for k, a in g.items() for l, b in g.items()}
                if _vec_eq(D, gg):
                    found.append(g)
    singletons = [{j: F.one} for j in range(A.dim)]
    if any(len(g) != 1 or list(g.values())[0] != F.one for g in found):
        raise NotGrouplikeBasis("a grouplike element is not a basis singleton")
    return singletons


def grouplike_closure_ok(A):
    """Products of basis elements are basis elements or zero (monoid with zero)."""
    F = A.field
    for j in range(A.dim):
        for k in range(A.dim):
            p = A.u[j][k]
            if p and (len(p) != 1 or list(p.values())[0] != F.one):
                return False
    return True


# ---------------------------------------------------------------- monoids


@dataclass
class MonoidWithZero:
    elements: list          # labels; the zero element is None and is listed last
    table: dict             # (i, j) -> index into elements
    unit: int

    @property
    def size(self):
        return len(self.elements)

    @property
    def zero(self):
        return self.elements.index(None)

    def mul(self, i, j):
        return self.table[(i, j)]

    def check(self):
        n, z, e = self.size, self.zero, self.unit
        for i in range(n):
            if self.mul(e, i) != i or self.mul(i, e) != i:
                return False
            if self.mul(z, i) != z or self.mul(i, z) != z:
                return False
        return all(self.mul(self.mul(i, j), k) == self.mul(i, self.mul(j, k))
                   for i in range(n) for j in range(n) for k in range(n))


def a1n_monoid(d):
    """Exponent tuples e with 0 <= e_i < d_i, plus zero; addition that overflows is zero."""
    d = tuple(int(x) for x in d)
    if any(x < 2 for x in d):
        raise InputError("all d_i must be at least 2")
    tuples = sorted(itertools.product(*[range(x) for x in d]), key=lambda t: (sum(t), tuple(-x for x in t)))
    elements = list(tuples) + [None]
    pos = {t: i for i, t in enumerate(elements)}
    z = len(elements) - 1
    table = {}
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            if a is None or b is None:
                table[(i, j)] = z
                continue
            s = tuple(x + y for x, y in zip(a, b))
            table[(i, j)] = z if max(x - m for x, m in zip(s, d)) >= 0 else pos[s]
    return MonoidWithZero(elements, table, pos[tuple(0 for _ in d)])


def monoid_algebra(M, field=QQ, names=None):
    """k M / k 0_M with grouplike coproduct on the nonzero elements."""
    nz = [i for i in range(M.size) if M.elements[i] is not None]
    nz.remove(M.unit)
    nz = [M.unit] + nz
    idx = {m: j for j, m in enumerate(nz)}
    mult = {}
    for j, a in enumerate(nz):
        for k, b in enumerate(nz):
            c = M.mul(a, b)
            mult[(j, k)] = {} if c == M.zero else {idx[c]: 1}
    coprod = {j: {(j, j): 1} for j in range(len(nz))}
    if names is None:
        names = [str(M.elements[i]) for i in nz]
    return AlgebraWithCoproduct(field, len(nz), mult, coprod, names=names)


def group_algebra(elements, mul, field=QQ, names=None):
    """Group algebra from an element list (identity first) and a product function."""
    pos = {g: i for i, g in enumerate(elements)}
    n = len(elements)
    mult = {(j, k): {pos[mul(a, b)]: 1} for j, a in enumerate(elements) for k, b in enumerate(elements)}
    coprod = {j: {(j, j): 1} for j in range(n)}
    counit = [1] * n
    inv = {}
    for a in elements:
        for b in elements:
            if mul(a, b) == elements[0]:
                inv[a] = b
    antipode = [{pos[inv[a]]: 1} for a in elements]
    return AlgebraWithCoproduct(field, n, mult, coprod, counit, antipode,
                                names=names or [str(g) for g in elements])


def cyclic_group_algebra(n, field=QQ):
    names = ["1"] + [f"g^{k}" if k > 1 else "g" for k in range(1, n)]
    return group_algebra(list(range(n)), lambda a, b: (a + b) % n, field, names)


def trivial_algebra(field=QQ):
    return AlgebraWithCoproduct(field, 1, {}, {0: {(0, 0): 1}}, [1], [{0: 1}], names=["1"])


# ---------------------------------------------------------------- Coxeter


@dataclass(frozen=True)
class CoxeterData:
    m: tuple                 # symmetric matrix; 0 encodes infinity
    d: tuple
    p: Optional[tuple] = None   # p[i] = coefficients (c_0, ..., c_{d_i - 1}) of p_i

    def __post_init__(self):
        n = len(self.m)
        m = tuple(tuple(int(x) for x in row) for row in self.m)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))
        if any(len(row) != n for row in m) or len(self.d) != n:
            raise InputError("Coxeter matrix must be square and match d")
        for i in range(n):
            if m[i][i] != 1:
                raise InputError("Coxeter matrix needs unit diagonal")
            for j in range(n):
                if m[i][j] != m[j][i]:
                    raise InputError("Coxeter matrix must be symmetric")
                if i != j and m[i][j] != 0 and m[i][j] < 2:
                    raise InputError("off-diagonal braid exponents must be >= 2 or infinite")
        if any(x < 2 for x in self.d):
            raise InputError("all d_i must be at least 2")
        if self.p is not None:
            p = tuple(tuple(c for c in pi) for pi in self.p)
            if len(p) != n or any(len(pi) != di for pi, di in zip(p, self.d)):
                raise InputError("p_i must have exactly d_i coefficients")
            object.__setattr__(self, "p", p)

    @property
    def rank(self):
        return len(self.m)


def coxeter_matrix(name):
    """Coxeter matrices for A_n, B_n, D_n, G2, I2(m) and products A1^n."""
    name = name.replace(" ", "")
    if name.startswith("A1^"):
        n = int(name[3:])
        return tuple(tuple(1 if i == j else 2 for j in range(n)) for i in range(n))
    kind, n = name[0], name[1:]
    if kind == "I":
        m = int(name[3:-1]) if name.startswith("I2(") else int(n)
        return ((1, m), (m, 1))
    if kind == "G":
        return ((1, 6), (6, 1))
    n = int(n)
    M = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        M[i][i + 1] = M[i + 1][i] = 3
    if kind == "B" and n >= 2:
        M[n - 2][n - 1] = M[n - 1][n - 2] = 4
    elif kind == "D" and n >= 4:
        M[n - 2][n - 1] = M[n - 1][n - 2] = 2
        M[n - 3][n - 1] = M[n - 1][n - 3] = 3
    elif kind != "A":
        raise InputError(f"unknown Coxeter type {name}")
    return tuple(tuple(r) for r in M)


def coxeter_data(name, d=None, p=None):
    m = coxeter_matrix(name)
    if d is None:
        d = (2,) * len(m)
    elif isinstance(d, int):
        d = (d,) * len(m)
    return CoxeterData(m, tuple(d), p)


@dataclass
class BuiltAlgebra:
    algebra: AlgebraWithCoproduct
    words: list
    saturated: bool
    system: ReductionSystem
    presentation: ReductionSystem
    grouplike: bool


def coxeter_presentation(cx, field=QQ, p=None):
    n = cx.rank
    alpha = Alphabet([f"T{i + 1}" for i in range(n)])
    ring = FreeAlgebra(field, alpha)
    if p is None:
        p = cx.p if cx.p is not None else tuple((0,) * di for di in cx.d)
    rules = []
    for i in range(n):
        rules.append(((i,) * cx.d[i], {(i,) * e: c for e, c in enumerate(p[i]) if field(c)}))
    for i in range(n):
        for j in range(i + 1, n):
            mij = cx.m[i][j]
            if mij == 0:
                continue
            small = tuple(i if t % 2 == 0 else j for t in range(mij))
            big = tuple(j if t % 2 == 0 else i for t in range(mij))
            rules.append((big, {small: 1}))
    return ReductionSystem(ring, rules)


def _grouplike_p(p):
    """p is zero or a single monomial T^e with coefficient one."""
    nz = [(e, c) for e, c in enumerate(p) if c]
    return not nz or (len(nz) == 1 and nz[0][1] == 1)


def build_generic_hecke(cx, degree_cap=12, field=QQ, p=None):
    """Complete the braid + power presentation, enumerate a basis and assemble constants.

    The coproduct T_i -> T_i (x) T_i is attached when it respects the power
    relations, checked in the constructed algebra.
    """
    pres = coxeter_presentation(cx, field, p)
    if degree_cap < max(cx.d):
        raise InputError("degree_cap must be at least max(d_i)")
    comp = knuth_bendix_bounded(pres, degree_cap)
    if not comp.complete:
        raise NotSaturated("completion did not finish within the degree cap")
    sys = comp.system
    basis = enumerate_basis(sys, degree_cap)
    if not basis.saturated:
        raise NotSaturated(f"irreducible words persist up to length {degree_cap}")
    words = basis.words
    pos = {w: i for i, w in enumerate(words)}
    F = field
    mult = {}
    for j, w1 in enumerate(words):
        for k, w2 in enumerate(words):
            nf = sys.normal_form_terms({w1 + w2: F.one})
            mult[(j, k)] = {pos[w]: c for w, c in nf.items()}
    names = [sys.ring.alphabet.word_str(w).replace(" ", "") for w in words]
    A0 = AlgebraWithCoproduct(F, len(words), mult, names=names, words=words)
    glike = _coproduct_respects_relations(A0, pres, sys, pos)
    coprod = {j: {(j, j): 1} for j in range(len(words))} if glike else None
    A = AlgebraWithCoproduct(F, len(words), mult, coprod, names=names, words=words)
    return BuiltAlgebra(A, words, True, sys, pres, glike)


def _coproduct_respects_relations(A, pres, sys, pos):
    """Delta(lhs) = Delta(rhs) in A (x) A for every defining relation, with Delta(T_i) = T_i (x) T_i."""
    F = A.field

    def delta_word(w):
        # Delta(w) = w (x) w, read in A (x) A through the normal form of w
        return _tensor_square(sys.normal_form_terms({w: F.one}), pos)

    for rule in pres.rules:
        lhs = delta_word(rule.lhs)
        rhs = {}
        for w, c in rule.rhs.terms.items():
            sparse_add(rhs, delta_word(w), c)
        if not _vec_eq(lhs, rhs):
            return False
    return True


def _tensor_square(nf, pos):
    out = {}
    for x, c in nf.items():
        for y, d in nf.items():
            out[(pos[x], pos[y])] = c * d
    return out


def build_nilcoxeter(cx, degree_cap=12, field=QQ):
    return build_generic_hecke(cx, degree_cap, field, tuple((0,) * di for di in cx.d))


def zero_hecke(cx, degree_cap=12, field=QQ):
    if any(di != 2 for di in cx.d):
        raise InputError("the 0-Hecke algebra uses d_i = 2")
    return build_generic_hecke(cx, degree_cap, field, tuple((0, 1) for _ in cx.d))


def coxeter_group_algebra(cx, degree_cap=12, field=QQ):
    """Generic Hecke algebra with p_i = 1 and d_i = 2: the group algebra of W."""
    if any(di != 2 for di in cx.d):
        raise InputError("group algebras use d_i = 2")
    b = build_generic_hecke(cx, degree_cap, field, tuple((1, 0) for _ in cx.d))
    A = b.algebra
    n = A.dim
    anti = []
    for j in range(n):
        inv = [k for k in range(n) if A.u[j][k] == {0: field.one}]
        anti.append({inv[0]: 1})
    b.algebra = AlgebraWithCoproduct(field, n, {(j, k): A.u[j][k] for j in range(n) for k in range(n)},
                                     {j: A.r[j] for j in range(n)}, [1] * n, anti, A.names, A.words)
    return b


@dataclass
class StructureClass:
    coalgebra: bool
    bialgebra: bool
    hopf: bool
    independence: bool
    coalgebra_computed: Optional[bool] = None
    bialgebra_computed: Optional[bool] = None
    hopf_computed: Optional[bool] = None
    dim: Optional[int] = None

    def consistent(self):
        """Syntactic and computed flags agree whenever independence holds."""
        if not self.independence:
            return True
        return (self.coalgebra == self.coalgebra_computed and self.bialgebra == self.bialgebra_computed
                and self.hopf == self.hopf_computed)


def solve_counit(A):
    """A counit for the coproduct of A by linear algebra, or None."""
    F, n = A.field, A.dim
    rows, rhs = [], []
    for j in range(n):
        for target in range(n):
            row1 = [F.zero] * n
            row2 = [F.zero] * n
            for (k, l), c in A.r[j].items():
                if l == target:
                    row1[k] += c
                if k == target:
                    row2[l] += c
            val = F.one if target == j else F.zero
            rows += [row1, row2]
            rhs += [val, val]
    return solve(rows, rhs, F)


def solve_antipode(A, counit):
    """An antipode given a counit, or None.  Unknowns S_k^m."""
    F, n = A.field, A.dim
    idx = lambda k, m: k * n + m
    rows, rhs = [], []
    for j in range(n):
        for t in range(n):
            r1 = [F.zero] * (n * n)
            r2 = [F.zero] * (n * n)
            for (k, l), c in A.r[j].items():
                for m in range(n):
                    a = A.u[m][l].get(t)
                    if a:
                        r1[idx(k, m)] += c * a
                    b = A.u[k][m].get(t)
                    if b:
                        r2[idx(l, m)] += c * b
            val = counit[j] if t == 0 else F.zero
            rows += [r1, r2]
            rhs += [val, val]
    sol = solve(rows, rhs, F)
    if sol is None:
        return None
    return [{m: sol[idx(k, m)] for m in range(n) if sol[idx(k, m)]} for k in range(n)]


def _grouplike_inverses(A):
    """Antipode for a grouplike basis: every basis element needs a two-sided inverse."""
    F, n = A.field, A.dim
    out = []
    for j in range(n):
        L = A.left_matrix({j: F.one})
        R = A.right_matrix({j: F.one})
        e0 = [F.one] + [F.zero] * (n - 1)
        x = solve(L + R, e0 + e0, F)
        if x is None:
            return None
        out.append(A.from_dense(x))
    return out


def classify_structure(cx, degree_cap=12, field=QQ):
    """Coalgebra / bialgebra / Hopf classification of a generic Hecke algebra."""
    p = cx.p if cx.p is not None else tuple((0,) * di for di in cx.d)
    syn_co = all(_grouplike_p(pi) for pi in p)
    syn_bi = syn_co and all(any(pi) for pi in p)
    syn_hopf = syn_co and all(pi[0] == 1 for pi in p)
    b = build_generic_hecke(cx, degree_cap, field, p)
    A, sys = b.algebra, b.system
    pos = {w: i for i, w in enumerate(b.words)}
    F = field
    indep = True
    for i, di in enumerate(cx.d):
        vecs = []
        for e in range(di):
            v = [F.zero] * A.dim
            for w, c in sys.normal_form_terms({(i,) * e: F.one}).items():
                v[pos[w]] = c
            vecs.append(v)
        indep &= rank(vecs, F, A.dim) == di
    co = b.grouplike
    bi = hopf = False
    if co:
        eps = solve_counit(A)
        if eps is not None:
            bi = _counit_multiplicative(A, eps)
        if bi:
            hopf = _grouplike_inverses(A) is not None
    return StructureClass(syn_co, syn_bi, syn_hopf, indep, co, bi, hopf, A.dim)


def _counit_multiplicative(A, eps):
    F = A.field
    if eps[0] != F.one:
        return False
    val = lambda x: sum((c * eps[j] for j, c in x.items()), F.zero)
    return all(val(A.mul({j: F.one}, {k: F.one})) == eps[j] * eps[k]
               for j in range(A.dim) for k in range(A.dim))


# ---------------------------------------------------------------- nilpotent ideals


def augmentation_basis(A):
    """Basis vectors a_1, ..., a_{dim-1} (the span of nonempty words for word bases)."""
    F = A.field
    return [{j: F.one} for j in range(1, A.dim)]


def _span(A, vecs):
    return Subspace(A.field, A.dim, [A.to_dense(v) for v in vecs])


def ideal_powers(A, ideal_basis, max_power=None):
    """[m^1, m^2, ...] as Subspaces, stopping at zero or when the chain stabilizes."""
    F = A.field
    m = _span(A, ideal_basis)
    powers = [m]
    limit = max_power or A.dim + 2
    while powers[-1].dim and len(powers) < limit:
        prod = []
        for x in powers[-1].basis:
            for y in m.basis:
                prod.append(A.to_dense(A.mul(A.from_dense(x), A.from_dense(y))))
        nxt = Subspace(F, A.dim, prod)
        if nxt.dim == powers[-1].dim:
            powers.append(nxt)
            break
        powers.append(nxt)
    return powers


def check_decomposition(A, ideal_basis):
    """A = k 1 (+) m with m a two-sided ideal."""
    F = A.field
    m = _span(A, ideal_basis)
    one = A.to_dense(A.one())
    if m.contains(one) or m.dim + 1 != A.dim:
        raise DecompositionFailure("A is not k1 (+) m")
    for x in m.basis:
        for j in range(A.dim):
            xv = A.from_dense(x)
            if not m.contains(A.to_dense(A.mul({j: F.one}, xv))) or \
               not m.contains(A.to_dense(A.mul(xv, {j: F.one}))):
                raise DecompositionFailure("m is not a two-sided ideal")
    return m


def nilpotency_index(A, ideal_basis):
    """Least l with m^l = 0."""
    check_decomposition(A, ideal_basis)
    powers = ideal_powers(A, ideal_basis)
    if powers[-1].dim:
        raise NotNilpotent("powers of the ideal stabilize at a nonzero subspace")
    return len(powers)


def module_element_matrix(A, mats, x):
    """Matrix of the algebra element x acting through the basis matrices ``mats``."""
    F = A.field
    n = len(mats[0])
    M = [[F.zero] * n for _ in range(n)]
    for j, c in x.items():
        for r in range(n):
            for s in range(n):
                if mats[j][r][s]:
                    M[r][s] += c * mats[j][r][s]
    return M


@dataclass
class LevelFiltration:
    levels: list          # lev_0, lev_1, ..., lev_l as Subspaces of M
    prim: Subspace
    ell_M: int
    strict: bool


def level_filtration(A, mats, ideal_basis):
    """lev_k(M) = ker_M m^k for k = 0..l_A, with Prim(M) = lev_1(M)."""
    F = A.field
    n = len(mats[0])
    powers = ideal_powers(A, ideal_basis)
    levels = [Subspace(F, n)]
    for P in powers:
        rows = []
        for b in P.basis:
            rows.extend(module_element_matrix(A, mats, A.from_dense(b)))
        levels.append(kernel(rows, F, n) if rows else Subspace(F, n, _identity_rows(n, F)))
    ell = next((k for k, L in enumerate(levels) if L.dim == n), len(levels))
    strict = all(levels[k].dim < levels[k + 1].dim for k in range(min(ell, len(levels) - 1)))
    return LevelFiltration(levels, levels[1] if len(levels) > 1 else levels[0], ell, strict)


def _identity_rows(n, F):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def prim_left(A, ideal_basis):
    """{a : m a = 0}, i.e. Prim of the left regular module."""
    rows = []
    for b in ideal_basis:
        rows.extend(A.left_matrix(b))
    return kernel(rows, A.field, A.dim)


def prim_right(A, ideal_basis):
    """{a : a m = 0}, i.e. Prim of the right regular module."""
    rows = []
    for b in ideal_basis:
        rows.extend(A.right_matrix(b))
    return kernel(rows, A.field, A.dim)


def frobenius_pairing_nondegenerate(A, trace_index):
    F = A.field
    G = [[A.mul({j: F.one}, {k: F.one}).get(trace_index, F.zero) for k in range(A.dim)]
         for j in range(A.dim)]
    return rank(G, F, A.dim) == A.dim


def primitive_coproduct_algebra(field=QQ):
    """k[a]/(a^2) with a primitive: a fixture that has no grouplike basis."""
    one = field.one
    return AlgebraWithCoproduct(field, 2, {(1, 1): {}},
                                {1: {(1, 0): one, (0, 1): one}}, names=["1", "a"])
