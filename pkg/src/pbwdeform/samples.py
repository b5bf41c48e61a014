"""Named instances and seeded random instance generators."""
from __future__ import annotations

import itertools
import random
from functools import lru_cache

from .action import ModuleAction
from .coalgebra import (a1n_monoid, build_nilcoxeter, coxeter_data,
                        coxeter_group_algebra, cyclic_group_algebra,
                        monoid_algebra, trivial_algebra, zero_hecke)
from .core import QQ
from .deformation import DeformationData, Instance, condition_residuals
from .linalg import Subspace, inverse, mat_mul, nullspace, identity

SAMPLE_VALUES = (-2, -1, 0, 1, 2)
DENSITY = 0.3


# ---------------------------------------------------------------- algebras


@lru_cache(maxsize=None)
def _zoo(field):
    z = {
        "k": trivial_algebra(field),
        "kZ2": cyclic_group_algebra(2, field),
        "kZ3": cyclic_group_algebra(3, field),
        "kZ4": cyclic_group_algebra(4, field),
        "kZ2xZ2": coxeter_group_algebra(coxeter_data("A1^2"), field=field).algebra,
        "NC_A1(2)": build_nilcoxeter(coxeter_data("A1", (2,)), field=field).algebra,
        "NC_A1(3)": build_nilcoxeter(coxeter_data("A1", (3,)), field=field).algebra,
        "NC_A1(4)": build_nilcoxeter(coxeter_data("A1", (4,)), field=field).algebra,
        "NC_A1^2(2,2)": build_nilcoxeter(coxeter_data("A1^2", (2, 2)), field=field).algebra,
        "0Hecke_A1": zero_hecke(coxeter_data("A1"), field=field).algebra,
        "0Hecke_A1^2": zero_hecke(coxeter_data("A1^2"), field=field).algebra,
        "M_A1(3)": monoid_algebra(a1n_monoid((3,)), field),
    }
    return z


def algebra_zoo(field=QQ):
    return dict(_zoo(field))


def nilcoxeter_a1(d=2, field=QQ):
    return _zoo(field)[f"NC_A1({d})"] if d in (2, 3, 4) else \
        build_nilcoxeter(coxeter_data("A1", (d,)), field=field).algebra


# ---------------------------------------------------------------- modules


def characters(A, values=(-1, 0, 1)):
    """Algebra maps A -> k with values in ``values`` on the non-unit basis."""
    F = A.field
    out = []
    for vals in itertools.product(values, repeat=A.dim - 1):
        chi = [F.one] + [F(v) for v in vals]
        ok = all(sum((c * chi[l] for l, c in A.u[j][k].items()), F.zero) == chi[j] * chi[k]
                 for j in range(1, A.dim) for k in range(1, A.dim))
        if ok:
            out.append(chi)
    return out


def character_module(A, chi):
    return [[[chi[j]]] for j in range(A.dim)]


def _restrict(A, S, mats_big):
    """Matrices of the action on an invariant subspace S (given as a Subspace)."""
    F = A.field
    out = []
    for M in mats_big:
        rows = [[F.zero] * S.dim for _ in range(S.dim)]
        for col, b in enumerate(S.basis):
            img = [sum((M[h][k] * b[k] for k in range(S.n)), F.zero) for h in range(S.n)]
            coords = [img[p] for p in S.pivots]
            for r, c in enumerate(coords):
                rows[r][col] = c
        out.append(rows)
    return out


def _quotient(A, S, mats_big):
    F = A.field
    free = [c for c in range(S.n) if c not in S.pivots]
    out = []
    for M in mats_big:
        rows = [[F.zero] * len(free) for _ in free]
        for col, f in enumerate(free):
            img = [M[h][f] for h in range(S.n)]
            for b, p in zip(S.basis, S.pivots):
                if img[p]:
                    c = img[p]
                    img = [x - c * y for x, y in zip(img, b)]
            for r, g in enumerate(free):
                rows[r][col] = img[g]
        out.append(rows)
    return out


def regular_matrices(A):
    return [A.left_matrix({j: A.field.one}) for j in range(A.dim)]


def cyclic_submodule(A, vec):
    F = A.field
    gens = [A.to_dense(A.mul({j: F.one}, vec)) for j in range(A.dim)]
    S = Subspace(F, A.dim, gens)
    return S


def direct_sum(m1, m2, field):
    n1, n2 = len(m1[0]), len(m2[0])
    out = []
    for a, b in zip(m1, m2):
        M = [[field.zero] * (n1 + n2) for _ in range(n1 + n2)]
        for i in range(n1):
            for j in range(n1):
                M[i][j] = a[i][j]
        for i in range(n2):
            for j in range(n2):
                M[n1 + i][n1 + j] = b[i][j]
        out.append(M)
    return out


def module_atoms(A, rng, tries=6):
    """Small modules: characters, cyclic submodules and quotients of A^mult."""
    F = A.field
    atoms = [character_module(A, chi) for chi in characters(A)]
    reg = regular_matrices(A)
    atoms.append(reg)
    for _ in range(tries):
        vec = {j: F(rng.choice(SAMPLE_VALUES)) for j in range(A.dim)}
        vec = {j: c for j, c in vec.items() if c}
        if not vec:
            continue
        S = cyclic_submodule(A, vec)
        if 0 < S.dim:
            atoms.append(_restrict(A, S, reg))
        if 0 < S.dim < A.dim:
            atoms.append(_quotient(A, S, reg))
    return atoms


def random_invertible(n, rng, field):
    while True:
        P = [[field(rng.choice((-1, 0, 0, 1))) for _ in range(n)] for _ in range(n)]
        for i in range(n):
            P[i][i] = field.one
        Pi = inverse(P, field)
        if Pi is not None:
            return P, Pi


def random_module(A, dim_v, rng, conjugate=True):
    """A random A-module of dimension dim_v, as a ModuleAction."""
    F = A.field
    atoms = [m for m in module_atoms(A, rng) if len(m[0]) <= dim_v]
    ones = [m for m in atoms if len(m[0]) == 1]
    mats = None
    size = 0
    while size < dim_v:
        room = [m for m in atoms if len(m[0]) <= dim_v - size]
        pick = rng.choice(room if rng.random() < 0.7 else (ones or room))
        mats = pick if mats is None else direct_sum(mats, pick, F)
        size += len(pick[0])
    if conjugate:
        P, Pi = random_invertible(dim_v, rng, F)
        mats = [mat_mul(mat_mul(Pi, M, F), P, F) for M in mats]
    return ModuleAction.from_matrices(F, mats)


# ---------------------------------------------------------------- deformations


def _sparse_random(rng, field, keys, n_out, density=DENSITY):
    out = {}
    for key in keys:
        vec = {}
        for l in range(n_out):
            if rng.random() < density:
                c = rng.choice((-2, -1, 1, 2))
                vec[l] = field(c)
        if vec:
            out[key] = vec
    return out


def random_deformation(A, act, rng, density=DENSITY):
    F = A.field
    nV = act.dim_v
    q = _sparse_random(rng, F, [(j, k) for j in range(1, A.dim) for k in range(nV)], A.dim, density)
    v = _sparse_random(rng, F, [(j, k) for j in range(nV) for k in range(j)], A.dim, density)
    w = _sparse_random(rng, F, [(j, k) for j in range(nV) for k in range(j)], nV, density)
    return DeformationData(F, A.dim, nV, q, v, w)


def _flatten_residuals(res):
    out = {}
    for name, entries in res.items():
        for idx, vec in entries.items():
            for key, c in vec.items():
                out[(name, idx, key)] = c
    return out


def _linear_solutions(A, act, unit_params, build):
    """Basis of parameter vectors whose residuals vanish, assuming linear residuals."""
    F = A.field
    cols = []
    keys = set()
    zero_res = _flatten_residuals(condition_residuals(A, act, build({})))
    for p in unit_params:
        r = _flatten_residuals(condition_residuals(A, act, build({p: F.one})))
        cols.append(r)
        keys |= set(r)
    keys = sorted(keys, key=repr)
    if zero_res:
        return []
    M = [[col.get(k, F.zero) for col in cols] for k in keys]
    if not M:
        return [[F.one if i == j else F.zero for i in range(len(unit_params))] for j in range(len(unit_params))]
    return nullspace(M, F, len(unit_params))


def kappa_a_solutions(A, act):
    """Basis of kappa_A (with lambda = kappa_V = 0) satisfying every condition."""
    F = A.field
    nV = act.dim_v
    params = [(j, k, l) for j in range(nV) for k in range(j) for l in range(A.dim)]

    def build(vals):
        v = {}
        for (j, k, l), c in vals.items():
            v.setdefault((j, k), {})[l] = c
        return DeformationData(F, A.dim, nV, v=v)

    return params, _linear_solutions(A, act, params, build), build


def lambda_linear_solutions(A, act):
    """Basis of lambda solving the conditions that are linear in lambda (kappa = 0)."""
    F = A.field
    nV = act.dim_v
    params = [(j, k, l) for j in range(1, A.dim) for k in range(nV) for l in range(A.dim)]

    def build(vals):
        q = {}
        for (j, k, l), c in vals.items():
            q.setdefault((j, k), {})[l] = c
        return DeformationData(F, A.dim, nV, q=q)

    cols, keys = [], set()
    for p in params:
        res = condition_residuals(A, act, build({p: F.one}))
        res = {"action": res["action"], "compat2": res["compat2"]}
        r = _flatten_residuals(res)
        cols.append(r)
        keys |= set(r)
    keys = sorted(keys, key=repr)
    if not keys:
        basis = [[F.one if i == j else F.zero for i in range(len(params))] for j in range(len(params))]
    else:
        M = [[col.get(k, F.zero) for col in cols] for k in keys]
        basis = nullspace(M, F, len(params))
    return params, basis, build


def _combine(params, basis, build, rng, field):
    if not basis:
        return build({})
    vals = {}
    for b in basis:
        c = field(rng.choice(SAMPLE_VALUES))
        if c:
            for p, x in zip(params, b):
                if x:
                    vals[p] = vals.get(p, field.zero) + c * x
    return build({p: c for p, c in vals.items() if c})


def _perturb(d, A, act, rng):
    F = A.field
    nV = act.dim_v
    q = {k: dict(v) for k, v in d.q.items()}
    v = {k: dict(x) for k, x in d.v.items()}
    w = {k: dict(x) for k, x in d.w.items()}
    which = rng.choice(["q", "v", "w"] if nV >= 2 else ["q"])
    if which == "q" and A.dim > 1:
        key = (rng.randrange(1, A.dim), rng.randrange(nV))
        l = rng.randrange(A.dim)
        q.setdefault(key, {})[l] = q.get(key, {}).get(l, F.zero) + F(rng.choice((-1, 1)))
    elif which in ("v", "w") and nV >= 2:
        j = rng.randrange(1, nV)
        k = rng.randrange(j)
        tgt, n = (v, A.dim) if which == "v" else (w, nV)
        l = rng.randrange(n)
        tgt.setdefault((j, k), {})[l] = tgt.get((j, k), {}).get(l, F.zero) + F(rng.choice((-1, 1)))
    return DeformationData(F, A.dim, nV, q, v, w)


MODES = (("smash", 0.05), ("kappa_a", 0.25), ("lambda", 0.20), ("lie", 0.15), ("random", 0.20),
         ("perturbed", 0.15))

# Lie brackets on k^n as w tensors (j > k), 0-based
LIE_BRACKETS = {
    2: [{(1, 0): {0: 1}}, {(1, 0): {1: 1}}],
    3: [{(1, 0): {2: -1}, (2, 0): {0: 2}, (2, 1): {1: -2}},       # sl2
        {(1, 0): {2: 1}},                                        # Heisenberg
        {(2, 0): {0: 1}, (2, 1): {1: 1}},                        # ad h diagonal
        {(2, 0): {1: 1}, (2, 1): {0: -1}}],                      # rotation type
}


def _scaled(w, c):
    return {k: {l: c * x for l, x in vec.items()} for k, vec in w.items()}


def random_instance(rng, field=QQ, max_dim_a=4, max_dim_v=3, mode=None):
    zoo = [(n, A) for n, A in _zoo(field).items() if A.dim <= max_dim_a]
    name, A = rng.choice(zoo)
    dim_v = rng.randint(1, max_dim_v)
    act = random_module(A, dim_v, rng)
    if mode is None:
        r = rng.random()
        acc = 0.0
        for mode, wgt in MODES:
            acc += wgt
            if r < acc:
                break
    if mode == "smash":
        d = DeformationData(field, A.dim, dim_v)
    elif mode in ("kappa_a", "lambda"):
        solver = kappa_a_solutions if mode == "kappa_a" else lambda_linear_solutions
        for attempt in range(8):
            if attempt:
                dim_v = rng.randint(2 if mode == "kappa_a" else 1, max_dim_v)
                act = random_module(A, dim_v, rng)
            params, basis, build = solver(A, act)
            if basis:
                break
        d = _combine(params, basis, build, rng, field)
    elif mode == "lie":
        dim_v = rng.randint(2, max_dim_v)
        chi = rng.choice(characters(A))
        act = ModuleAction.from_matrices(field, [[[chi[j] if r == c else field.zero for c in range(dim_v)]
                                                  for r in range(dim_v)] for j in range(A.dim)])
        w = _scaled(rng.choice(LIE_BRACKETS[dim_v]), field(rng.choice((-2, -1, 1, 2))))
        d = DeformationData(field, A.dim, dim_v, w=w)
    elif mode == "random":
        d = random_deformation(A, act, rng)
    else:
        params, basis, build = kappa_a_solutions(A, act)
        d = _perturb(_combine(params, basis, build, rng, field), A, act, rng)
    return Instance(A, act, d, f"{name}/dimV={dim_v}/{mode}")


def random_instances(seed, count, field=QQ, **kw):
    rng = random.Random(seed)
    return [random_instance(rng, field, **kw) for _ in range(count)]


# ---------------------------------------------------------------- named instances


def weyl(field=QQ):
    A = trivial_algebra(field)
    return Instance(A, ModuleAction(field, 1, 2, {}),
                    DeformationData(field, 1, 2, v={(1, 0): {0: 1}}), "weyl")


def usl2(field=QQ):
    """x1 = e, x2 = f, x3 = h: [f, e] = -h, [h, e] = 2e, [h, f] = -2f."""
    A = trivial_algebra(field)
    return Instance(A, ModuleAction(field, 1, 3, {}),
                    DeformationData(field, 1, 3, w={(1, 0): {2: -1}, (2, 0): {0: 2}, (2, 1): {1: -2}}),
                    "usl2")


def usl2_perturbed(field=QQ):
    """[e, f] = h + e, which breaks the Jacobi identity."""
    A = trivial_algebra(field)
    return Instance(A, ModuleAction(field, 1, 3, {}),
                    DeformationData(field, 1, 3, w={(1, 0): {2: -1, 0: -1}, (2, 0): {0: 2}, (2, 1): {1: -2}}),
                    "usl2_perturbed")


def smash(A, act, name="smash"):
    return Instance(A, act, DeformationData(A.field, A.dim, act.dim_v), name)


def reflection_z2(t=1, c=1, field=QQ):
    """kZ/2 acting on k^2 by s = -id, with [x2, x1] = t + c s."""
    A = cyclic_group_algebra(2, field)
    act = ModuleAction.from_matrices(field, [identity(2, field), [[field(-1), field.zero], [field.zero, field(-1)]]])
    return Instance(A, act, DeformationData(field, 2, 2, v={(1, 0): {0: t, 1: c}}), f"reflection_z2({t},{c})")


def nc_a1_jordan(dim_v=2, field=QQ):
    """NC_A1(2) with T acting by x2 -> x1 (and killing the other basis vectors)."""
    A = nilcoxeter_a1(2, field)
    N = [[field.zero] * dim_v for _ in range(dim_v)]
    N[0][1] = field.one
    return A, ModuleAction.from_matrices(field, [identity(dim_v, field), N])


def nc_a1_example(kappa_a, kappa_v=None, dim_v=2, field=QQ):
    A, act = nc_a1_jordan(dim_v, field)
    return Instance(A, act, DeformationData(field, A.dim, dim_v, v=kappa_a, w=kappa_v),
                    f"nc_a1(2)/dimV={dim_v}")


def named_instances(field=QQ):
    out = [weyl(field), usl2(field), usl2_perturbed(field)]
    for nm, A in _zoo(field).items():
        if A.dim <= 4:
            A_, act = A, random_module(A, 2, random.Random(7))
            out.append(smash(A_, act, f"smash/{nm}"))
    for t, c in [(0, 0), (1, 0), (0, 1), (1, 1), (2, -3)]:
        out.append(reflection_z2(t, c, field))
    out.append(nc_a1_example({(1, 0): {1: 1}}))
    out.append(nc_a1_example({(1, 0): {0: 1}}))
    out.append(nc_a1_example({(1, 0): {1: 1}}, {(1, 0): {0: 1}}))
    out.append(nc_a1_example({(1, 0): {1: 1}}, dim_v=3))
    out.append(nc_a1_example({}, dim_v=3))
    return out


# ---------------------------------------------------------------- grouplike instances


GROUPLIKE_ZOO = ("kZ2", "kZ3", "kZ4", "kZ2xZ2", "NC_A1(2)", "NC_A1(3)", "NC_A1(4)",
                 "NC_A1^2(2,2)", "0Hecke_A1", "0Hecke_A1^2", "M_A1(3)")
NILPOTENT_ZOO = ("NC_A1(2)", "NC_A1(3)", "NC_A1(4)", "NC_A1^2(2,2)")


def wedge(phi, psi):
    """The alternating form (phi ^ psi)(u, v) = phi(u) psi(v) - psi(u) phi(v) as a matrix."""
    n = len(phi)
    return [[phi[i] * psi[j] - psi[i] * phi[j] for j in range(n)] for i in range(n)]


def random_skew(n, rng, field):
    K = [[field.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i):
            c = field(rng.choice(SAMPLE_VALUES))
            K[i][j], K[j][i] = c, -c
    return K


def admissible_component(act, m, rng):
    """A nonzero form kappa_m satisfying the admissibility conditions for T_m, or None."""
    from .action import fix_space
    F = act.field
    n = act.dim_v
    fix, d = fix_space(act, {m: F.one})
    c = F(rng.choice((-2, -1, 1, 2)))
    if d == 0:
        K = random_skew(n, rng, F)
        return K if any(any(r) for r in K) else None
    ann = nullspace(fix.basis, F, n) if fix.basis else identity(n, F)
    if d == 2:
        phi, psi = ann
    elif d == 1 and n >= 2:
        phi = ann[0]
        for _ in range(20):
            psi = [F(rng.choice(SAMPLE_VALUES)) for _ in range(n)]
            if Subspace(F, n, [phi, psi]).dim == 2:
                break
        else:
            return None
    else:
        return None
    return [[c * x for x in row] for row in wedge(phi, psi)]


def _v_from_components(comps, n):
    v = {}
    for m, K in comps.items():
        for i in range(n):
            for j in range(i):
                if K[i][j]:
                    v.setdefault((i, j), {})[m] = K[i][j]
    return v


def grouplike_instance(rng, field=QQ, nilpotent=False):
    """kappa_V = lambda = 0 and kappa_A built componentwise over a grouplike basis.

    Each component is zero, admissible by construction, or a random
    alternating form.  With ``nilpotent`` the algebra is a nil-Coxeter algebra
    and V is 3-dimensional, so nilpotent grouplikes act without fixed vectors.
    """
    zoo = _zoo(field)
    name = rng.choice(NILPOTENT_ZOO if nilpotent else GROUPLIKE_ZOO)
    A = zoo[name]
    dim_v = 3 if nilpotent else rng.randint(2, 3)
    act = random_module(A, dim_v, rng)
    comps = {}
    for m in range(A.dim):
        r = rng.random()
        if r < 0.3:
            continue
        K = admissible_component(act, m, rng) if r < 0.65 else None
        if K is None:
            K = random_skew(dim_v, rng, field)
        comps[m] = K
    d = DeformationData(field, A.dim, dim_v, v=_v_from_components(comps, dim_v))
    return Instance(A, act, d, f"{name}/dimV={dim_v}/grouplike")


def grouplike_instances(seed, count, field=QQ, nilpotent_every=4):
    rng = random.Random(seed)
    return [grouplike_instance(rng, field, nilpotent=(i % nilpotent_every == 0))
            for i in range(count)]
