"""Exact linear algebra over the package fields.

Sparse vectors are dicts ``column -> scalar`` with no stored zeros; dense
vectors and matrices are lists.  Everything is exact; pivots are chosen by
the largest column under a caller-supplied key so that the same routine serves
both echelon forms of word-indexed vectors and ordinary matrices.
"""
from __future__ import annotations


def sparse_add(acc, vec, c=1):
    """acc += c * vec, in place; returns acc."""
    for k, v in vec.items():
        s = acc.get(k)
        s = c * v if s is None else s + c * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)
    return acc


def sparse_scale(vec, c):
    if not c:
        return {}
    return {k: c * v for k, v in vec.items()}


class Echelon:
    """Incremental row echelon form of sparse vectors.

    Each stored row is normalized to leading coefficient one, and the leading
    column is the maximum of its support under ``key``.
    """

    def __init__(self, field, key=None):
        self.field = field
        self.key = key if key is not None else (lambda c: c)
        self.rows = {}

    def __len__(self):
        return len(self.rows)

    def _lead(self, vec):
        return max(vec, key=self.key)

    def reduce(self, vec):
        """Return the remainder of ``vec`` after reduction by the stored rows."""
        vec = dict(vec)
        rem = {}
        key = self.key
        while vec:
            lead = max(vec, key=key)
            row = self.rows.get(lead)
            c = vec[lead]
            if row is None:
                rem[lead] = c
                del vec[lead]
                continue
            for col, val in row.items():
                nv = vec.get(col)
                nv = -c * val if nv is None else nv - c * val
                if nv:
                    vec[col] = nv
                else:
                    vec.pop(col, None)
        return rem

    def head_reduce(self, vec):
        """Reduce only until the leading column is not a pivot."""
        vec = dict(vec)
        key = self.key
        while vec:
            lead = max(vec, key=key)
            row = self.rows.get(lead)
            if row is None:
                return vec, lead
            c = vec[lead]
            for col, val in row.items():
                nv = vec.get(col)
                nv = -c * val if nv is None else nv - c * val
                if nv:
                    vec[col] = nv
                else:
                    vec.pop(col, None)
        return vec, None

    def add(self, vec):
        """Insert a vector; return its new pivot column or None if dependent."""
        vec, lead = self.head_reduce(vec)
        if lead is None:
            return None
        inv = self.field.one / vec[lead]
        self.rows[lead] = {k: v * inv for k, v in vec.items()}
        return lead

    def contains(self, vec):
        return not self.head_reduce(vec)[0]

    def pivots(self):
        return list(self.rows)


# ---------------------------------------------------------------- dense


def dense_to_sparse(v):
    return {i: x for i, x in enumerate(v) if x}


def sparse_to_dense(v, n, field):
    out = [field.zero] * n
    for i, x in v.items():
        out[i] = x
    return out


def rref(rows, field, ncols=None):
    """Reduced row echelon form of a dense matrix.

    Pivots are taken leftmost first (standard convention).  Returns the
    nonzero rows and the pivot columns.
    """
    rows = [[field(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    piv = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = field.one / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], piv


def rank(rows, field, ncols=None):
    return len(rref(rows, field, ncols)[1])


def nullspace(rows, field, ncols):
    """Basis of {x : M x = 0} for a dense matrix M with ``ncols`` columns."""
    if not rows:
        return [[field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(rows, field, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, pc in zip(R, piv):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(rows, rhs, field):
    """One solution x of M x = rhs, or None when inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, piv = rref(aug, field, ncols + 1)
    if ncols in piv:
        return None
    x = [field.zero] * ncols
    for row, pc in zip(R, piv):
        x[pc] = row[ncols]
    return x


def mat_mul(A, B, field):
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        r = [field.zero] * n
        for k, a in enumerate(row):
            if a:
                bk = B[k]
                for j in range(n):
                    if bk[j]:
                        r[j] += a * bk[j]
        out.append(r)
    return out


def mat_vec(A, v, field):
    return [sum((a * b for a, b in zip(row, v) if a and b), field.zero) for row in A]


def identity(n, field):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def zeros(n, m, field):
    return [[field.zero] * m for _ in range(n)]


def transpose(A):
    return [list(r) for r in zip(*A)] if A else []


def mat_sub(A, B):
    return [[a - b for a, b in zip(r, s)] for r, s in zip(A, B)]


def mat_add(A, B):
    return [[a + b for a, b in zip(r, s)] for r, s in zip(A, B)]


def mat_scale(A, c):
    return [[c * a for a in r] for r in A]


def inverse(A, field):
    n = len(A)
    aug = [list(r) + e for r, e in zip(A, identity(n, field))]
    R, piv = rref(aug, field, 2 * n)
    if piv[:n] != list(range(n)) or len(piv) < n:
        return None
    return [r[n:] for r in R[:n]]


class Subspace:
    """Subspace of k^n stored as a canonical reduced row echelon basis."""

    def __init__(self, field, n, vectors=()):
        self.field = field
        self.n = n
        vecs = [list(v) for v in vectors]
        if vecs:
            R, piv = rref(vecs, field, n)
        else:
            R, piv = [], []
        self.basis = [tuple(r) for r in R]
        self.pivots = tuple(piv)

    @property
    def dim(self):
        return len(self.basis)

    @property
    def codim(self):
        return self.n - self.dim

    def contains(self, v):
        v = list(v)
        for row, pc in zip(self.basis, self.pivots):
            if v[pc]:
                f = v[pc]
                v = [a - f * b for a, b in zip(v, row)]
        return not any(v)

    def contains_space(self, other):
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.n == other.n and self.basis == other.basis

    def __hash__(self):
        return hash(tuple(self.basis))

    def __add__(self, other):
        return Subspace(self.field, self.n, list(self.basis) + list(other.basis))

    def intersect(self, other):
        # kernel of [B1^T | -B2^T]
        F = self.field
        if not self.basis or not other.basis:
            return Subspace(F, self.n)
        cols = [list(v) for v in self.basis] + [[-x for x in v] for v in other.basis]
        M = transpose(cols)
        ker = nullspace(M, F, len(cols))
        out = []
        for c in ker:
            v = [F.zero] * self.n
            for coef, b in zip(c[: self.dim], self.basis):
                if coef:
                    v = [a + coef * x for a, x in zip(v, b)]
            out.append(v)
        return Subspace(F, self.n, out)

    def __repr__(self):
        return f"Subspace(dim={self.dim} in k^{self.n})"


def kernel(M, field, ncols):
    return Subspace(field, ncols, nullspace(M, field, ncols))


def image(M, field):
    """Column space of M."""
    n = len(M)
    return Subspace(field, n, transpose(M))
