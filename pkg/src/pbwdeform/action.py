"""A-module structures on V given by structure constants, fixed spaces and radicals."""
from __future__ import annotations

from .errors import InputError, ZeroTensorDegree
from .linalg import Subspace, identity, kernel, mat_sub, sparse_add


class ModuleAction:
    """a_j(x_k) = sum_h s[(j, k)][h] x_h, indices 0-based on both sides.

    Unit rows s[(0, k)] default to the identity.
    """

    def __init__(self, field, dim_a, dim_v, s):
        self.field = field
        self.dim_a = dim_a
        self.dim_v = dim_v
        F = field
        table = {}
        for (j, k), vec in s.items():
            if not (0 <= j < dim_a and 0 <= k < dim_v):
                raise InputError(f"action index ({j}, {k}) out of range")
            row = {}
            for h, c in vec.items():
                if not 0 <= h < dim_v:
                    raise InputError(f"module index {h} out of range")
                if F(c):
                    row[h] = F(c)
            table[(j, k)] = row
        for j in range(dim_a):
            for k in range(dim_v):
                if (j, k) not in table:
                    table[(j, k)] = {k: F.one} if j == 0 else {}
        self.s = table

    @classmethod
    def from_matrices(cls, field, mats):
        """Build from matrices rho(a_j) (row h, column k holds s_jk^h)."""
        dim_a, dim_v = len(mats), len(mats[0])
        s = {(j, k): {h: mats[j][h][k] for h in range(dim_v) if mats[j][h][k]}
             for j in range(dim_a) for k in range(dim_v)}
        return cls(field, dim_a, dim_v, s)

    def matrix(self, j):
        F = self.field
        M = [[F.zero] * self.dim_v for _ in range(self.dim_v)]
        for k in range(self.dim_v):
            for h, c in self.s[(j, k)].items():
                M[h][k] = c
        return M

    def matrices(self):
        return [self.matrix(j) for j in range(self.dim_a)]

    def element_matrix(self, a):
        F = self.field
        M = [[F.zero] * self.dim_v for _ in range(self.dim_v)]
        for j, c in a.items():
            for k in range(self.dim_v):
                for h, d in self.s[(j, k)].items():
                    M[h][k] += c * d
        return M

    def act(self, a, v):
        """a(v) for sparse vectors a over A and v over V."""
        acc = {}
        for j, c in a.items():
            for k, d in v.items():
                sparse_add(acc, self.s[(j, k)], c * d)
        return acc

    def with_field(self, field, src_field):
        def cv(c):
            return field(src_field.to_pair(c))
        return ModuleAction(field, self.dim_a, self.dim_v,
                            {jk: {h: cv(c) for h, c in row.items()} for jk, row in self.s.items()})


def check_module_axiom(A, act):
    """a_j(a_k(x_i)) = (a_j a_k)(x_i) and 1 acts as the identity."""
    F = A.field
    if act.dim_a != A.dim:
        raise InputError("module and algebra dimensions disagree")
    for k in range(act.dim_v):
        if act.s[(0, k)] != {k: F.one}:
            return False
    for j in range(A.dim):
        for k in range(A.dim):
            ajk = A.mul({j: F.one}, {k: F.one})
            for i in range(act.dim_v):
                lhs = act.act({j: F.one}, act.act({k: F.one}, {i: F.one}))
                rhs = act.act(ajk, {i: F.one})
                if lhs != rhs:
                    return False
    return True


def act_tensor(A, act, a, tensor):
    """Action of a on a tensor {(i1, ..., in): c} of V^{(x) n} through iterated coproducts."""
    F = A.field
    if not tensor:
        return {}
    n = len(next(iter(tensor)))
    if n == 0:
        raise ZeroTensorDegree("the action on V^0 is not defined")
    # iterated coproduct of a as {(k1, ..., kn): c}
    comps = {(j,): c for j, c in a.items() if c}
    for _ in range(n - 1):
        nxt = {}
        for ks, c in comps.items():
            for (k1, k2), d in A.r[ks[-1]].items():
                sparse_add(nxt, {ks[:-1] + (k1, k2): d}, c)
        comps = nxt
    out = {}
    for ks, c in comps.items():
        for idx, d in tensor.items():
            part = {(): c * d}
            for kk, ii in zip(ks, idx):
                img = act.s[(kk, ii)]
                nxt = {}
                for pre, e in part.items():
                    for h, f in img.items():
                        sparse_add(nxt, {pre + (h,): e * f})
                part = nxt
            sparse_add(out, part)
    return out


def fix_space(act, a):
    """(fix(a), d_a) with fix(a) = ker(a - id) and d_a its codimension."""
    F = act.field
    M = mat_sub(act.element_matrix(a), identity(act.dim_v, F))
    fix = kernel(M, F, act.dim_v)
    return fix, act.dim_v - fix.dim


def radical(kappa, field):
    """Kernel of a skew Gram matrix (row and column kernels agree)."""
    return kernel(kappa, field, len(kappa))


def is_alternating(kappa):
    n = len(kappa)
    return all(not kappa[i][i] for i in range(n)) and all(
        kappa[i][j] == -kappa[j][i] for i in range(n) for j in range(n))


def kappa_components(A, dim_v, v_tensor, field):
    """Skew matrices kappa_m with kappa_A(x_i, x_j) = sum_m kappa_m[i][j] a_m.

    ``v_tensor`` maps (i, j) with i > j (0-based) to {m: coefficient}.
    """
    comps = [[[field.zero] * dim_v for _ in range(dim_v)] for _ in range(A.dim)]
    for (i, j), vec in v_tensor.items():
        for m, c in vec.items():
            comps[m][i][j] += c
            comps[m][j][i] -= c
    return comps


def invariant_under(A, act, subspace_vectors):
    """Is span(subspace_vectors) an A-submodule of V?"""
    F = A.field
    S = Subspace(F, act.dim_v, subspace_vectors)
    for j in range(A.dim):
        M = act.matrix(j)
        for b in S.basis:
            img = [sum((M[h][k] * b[k] for k in range(act.dim_v)), F.zero) for h in range(act.dim_v)]
            if not S.contains(img):
                return False
    return True

