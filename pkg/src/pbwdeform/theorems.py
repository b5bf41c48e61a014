"""Executable checks of the structural results about H_{lambda,kappa}.

Every checker computes the theorem's prediction and, independently, the
ground truth (direct evaluation, normal forms or the PBW decision), and
reports both so that tests can assert that they agree.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional

from .action import fix_space, kappa_components, radical
from .coalgebra import (augmentation_basis, check_axioms, check_decomposition,
                        grouplike_elements, ideal_powers, level_filtration,
                        module_element_matrix, prim_left, prim_right)
from .deformation import (HkLayout, build_presentation, check_ambiguities,
                          condition_residuals, pbw_check, validate)
from .errors import (Assume2Violated, DecompositionFailure, HypothesisViolated,
                     MissingStructure, NotNilpotent)
from .linalg import (Echelon, Subspace, identity, kernel, mat_mul, mat_sub,
                     nullspace, rank, solve, sparse_add)


def _e(F, j):
    return {j: F.one}


def _commutator(sys, u, w, F):
    """Normal form of u w - w u for words u, w."""
    terms = {}
    sparse_add(terms, {u + w: F.one})
    sparse_add(terms, {w + u: -F.one})
    return sys.normal_form_terms(terms)


# ---------------------------------------------------------------- Assumption checks


@dataclass
class Assume2Data:
    ideal: Subspace          # m inside A
    ideal_basis: list        # sparse vectors spanning m
    powers: list             # m, m^2, ..., 0
    ell: int
    chi: list                # augmentation character: a_j = chi_j 1 + (element of m)


def assume2(A, ideal_basis=None):
    """Verify A = k1 (+) m with m nilpotent and Delta(m) inside m (x) m."""
    F = A.field
    ideal_basis = ideal_basis or augmentation_basis(A)
    try:
        m = check_decomposition(A, ideal_basis)
    except DecompositionFailure as exc:
        raise Assume2Violated(str(exc)) from exc
    powers = ideal_powers(A, ideal_basis)
    if powers[-1].dim:
        raise Assume2Violated("the ideal is not nilpotent")
    if not ideal_basis:
        raise Assume2Violated("the ideal must be nonzero")
    # functional vanishing on m, normalized to 1 on the unit
    phi = nullspace(m.basis, F, A.dim)[0] if m.basis else [F.one] * A.dim
    scale = phi[0]
    chi = [c / scale for c in phi]
    if A.r is None:
        raise Assume2Violated("the algebra needs a coproduct")
    for b in m.basis:
        D = A.coproduct(A.from_dense(b))
        left, right = {}, {}
        for (k, l), c in D.items():
            if chi[k]:
                sparse_add(right, {l: c * chi[k]})
            if chi[l]:
                sparse_add(left, {k: c * chi[l]})
        if left or right:
            raise Assume2Violated("Delta(m) is not contained in m (x) m")
    return Assume2Data(m, list(ideal_basis), powers, len(powers), chi)


# ---------------------------------------------------------------- Jacobi over grouplike bases


@dataclass
class MClass:
    m: int
    tag: str                 # KappaZero | IdentityAction | ReflectionLike | Inadmissible
    d: int
    rad_codim_in_fix: Optional[int]
    ejac: bool

    @property
    def admissible(self):
        return self.tag != "Inadmissible"


@dataclass
class JacobiReport:
    classes: List[MClass]
    symbolic_jacobi: bool

    @property
    def all_admissible(self):
        return all(c.admissible for c in self.classes)

    @property
    def ejac_everywhere(self):
        return all(c.ejac for c in self.classes)

    @property
    def consistent(self):
        per_m = all(c.admissible == c.ejac for c in self.classes)
        return per_m and self.ejac_everywhere == self.symbolic_jacobi

    def to_text(self):
        lines = []
        for c in self.classes:
            extra = f" d={c.d}" + (f" rad codim in fix={c.rad_codim_in_fix}"
                                   if c.rad_codim_in_fix is not None else "")
            lines.append(f"m={c.m}: {c.tag}{extra}; Ejac {'holds' if c.ejac else 'fails'}")
        head = "all m admissible" if self.all_admissible else "some m inadmissible"
        tail = "Ejac verified" if self.ejac_everywhere else "Ejac fails"
        lines.append(f"{head}; {tail}")
        if not self.consistent:
            lines.append("INCONSISTENT")
        return "\n".join(lines)


def _ejac_holds(kappa, N, n, F):
    """kappa(y,x) N z = kappa(y,z) N x + kappa(z,x) N y for all basis x, y, z."""
    for x in range(n):
        for y in range(n):
            for z in range(n):
                for h in range(n):
                    lhs = kappa[y][x] * N[h][z]
                    rhs = kappa[y][z] * N[h][x] + kappa[z][x] * N[h][y]
                    if lhs != rhs:
                        return False
    return True


def classify_component(act, kappa, m):
    """Tag one grouplike basis element T_m against its kappa component."""
    F = act.field
    n = act.dim_v
    fix, d = fix_space(act, _e(F, m))
    zero = all(not kappa[i][j] for i in range(n) for j in range(n))
    rad = radical(kappa, F)
    codim = None
    if zero:
        tag = "KappaZero"
    elif d == 0:
        tag = "IdentityAction"
    else:
        tag = "Inadmissible"
        if d in (1, 2) and fix.contains_space(rad):
            codim = fix.dim - rad.dim
            if codim == 2 - d:
                tag = "ReflectionLike"
    N = mat_sub(identity(n, F), act.matrix(m))
    return MClass(m, tag, d, codim, _ejac_holds(kappa, N, n, F))


def jacobi_grouplike_classify(A, act, d):
    """Classify each grouplike T_m and compare with Ejac and the symbolic Jacobi identity."""
    if d.w:
        raise HypothesisViolated("kappa_V must vanish")
    grouplike_elements(A)
    F = A.field
    comps = kappa_components(A, act.dim_v, d.v, F)
    classes = [classify_component(act, comps[m], m) for m in range(A.dim)]
    sym = not condition_residuals(A, act, d)["jacobi2"]
    return JacobiReport(classes, sym)


# ---------------------------------------------------------------- nil-Coxeter PBW classification


@dataclass
class NilcoxReport:
    predicted: bool
    reason: str
    actual: object           # PBWReport
    jacobi_predicted: Optional[bool] = None
    jacobi_actual: Optional[bool] = None

    @property
    def agree(self):
        ok = self.predicted == self.actual.passed and self.actual.agree
        if self.jacobi_predicted is not None:
            ok = ok and self.jacobi_predicted == self.jacobi_actual
        return ok

    def to_text(self):
        lines = [f"predicted: {'PBW' if self.predicted else 'not PBW'} ({self.reason})",
                 self.actual.to_text()]
        if self.jacobi_predicted is not None:
            lines.append(f"jacobi predicted {self.jacobi_predicted}, observed {self.jacobi_actual}")
        lines.append("agreement" if self.agree else "MISMATCH")
        return "\n".join(lines)


def _image_in(S, vectors, A):
    return all(S.contains(A.to_dense(x)) for x in vectors if x)


def nilcox_pbw_classify(A, act, d, ideal_basis=None, cap=4):
    """Predict PBW from the nilpotent-ideal classification and compare with pbw_check."""
    F = A.field
    data = assume2(A, ideal_basis)
    n = act.dim_v
    if d.q:
        raise HypothesisViolated("lambda must vanish")
    kA = [d.vfull(j, k) for j in range(n) for k in range(j)]
    kV = [d.wfull(j, k) for j in range(n) for k in range(j)]
    if n <= 2:
        primA = prim_left(A, data.ideal_basis)
        primV = level_filtration(A, act.matrices(), data.ideal_basis).prim
        okV = all(primV.contains([x.get(h, F.zero) for h in range(n)]) for x in kV if x)
        okA = _image_in(primA, kA, A)
        predicted = okV and okA
        if predicted:
            reason = "im κ_V ⊆ Prim(V) and im κ_A ⊆ Prim(A^mult)"
        elif not okA:
            reason = "im κ_A ⊄ Prim(A^mult)"
        else:
            reason = "im κ_V ⊄ Prim(V)"
    else:
        if d.w:
            raise HypothesisViolated("kappa_V must vanish when dim V > 2")
        predicted = not d.v
        reason = "κ_A ≡ 0" if predicted else "dim V > 2 and κ_A ≠ 0"
    actual = pbw_check(A, act, d, cap=cap, raise_on_disagreement=False)
    jp = ja = None
    if not d.w:
        units = Subspace(F, A.dim, [A.to_dense(A.one())])
        jp = n <= 2 or _image_in(units, kA, A)
        ja = not condition_residuals(A, act, d)["jacobi2"]
    return NilcoxReport(predicted, reason, actual, jp, ja)


# ---------------------------------------------------------------- H-modules given by matrices


def h_module_residuals(A, act, d, X, R):
    """Names of the defining relations of H violated by x_i -> X[i], a_j -> R[j]."""
    F = A.field
    n = len(R[0])
    bad = []
    I = identity(n, F)
    if R[0] != I:
        bad.append("unit")
    for j in range(A.dim):
        for k in range(A.dim):
            lhs = mat_mul(R[j], R[k], F)
            rhs = module_element_matrix(A, R, A.u[j][k])
            if lhs != rhs:
                bad.append(f"a{j} a{k}")
    for j in range(1, A.dim):
        for k in range(act.dim_v):
            M = mat_mul(R[j], X[k], F)
            for (l, m), c in A.r[j].items():
                for h, e in act.s[(l, k)].items():
                    P = mat_mul(X[h], R[m], F)
                    M = [[M[r][s] - c * e * P[r][s] for s in range(n)] for r in range(n)]
            L = module_element_matrix(A, R, d.lam(_e(F, j), _e(F, k)))
            if M != L:
                bad.append(f"a{j} x{k + 1}")
    for j in range(act.dim_v):
        for k in range(j):
            C = mat_sub(mat_mul(X[j], X[k], F), mat_mul(X[k], X[j], F))
            K = module_element_matrix(A, R, d.vfull(j, k))
            for h, c in d.wfull(j, k).items():
                K = [[K[r][s] + c * X[h][r][s] for s in range(n)] for r in range(n)]
            if C != K:
                bad.append(f"x{j + 1} x{k + 1}")
    return bad


def one_dim_module(A, data, mu):
    """x_i -> mu_i, m -> 0 (A acts through the augmentation character)."""
    return [[[c]] for c in mu], [[[c]] for c in data.chi]


def one_dim_affine_system(A, act, d, data):
    """Rows and right-hand side of the linear conditions on mu for a 1-dim module killed by m."""
    F = A.field
    n = act.dim_v
    rows, rhs = [], []
    for j in range(1, A.dim):
        for k in range(n):
            row = [F.zero] * n
            row[k] += data.chi[j]
            for (l, m), c in A.r[j].items():
                for h, e in act.s[(l, k)].items():
                    row[h] -= c * e * data.chi[m]
            lam = d.lam(_e(F, j), _e(F, k))
            rows.append(row)
            rhs.append(sum((c * data.chi[l] for l, c in lam.items()), F.zero))
    for j in range(n):
        for k in range(j):
            row = [F.zero] * n
            for h, c in d.wfull(j, k).items():
                row[h] -= c
            ka = d.vfull(j, k)
            rows.append(row)
            rhs.append(sum((c * data.chi[l] for l, c in ka.items()), F.zero))
    return rows, rhs


def _solve_affine(rows, rhs, n, F):
    if not rows:
        return [F.zero] * n
    aug_rows = [list(r) for r in rows]
    return solve(aug_rows, rhs, F)


# ---------------------------------------------------------------- simple modules


@dataclass
class SimpleModuleReport:
    cond1: bool
    cond2: bool
    cond3: bool
    sampled_mu_valid: int
    sampled_mu_total: int
    action_holds: bool                     # lambda satisfies the A-action condition
    level_containment: Optional[bool]      # lambda(m^k, lev_k V) in m^k, when the action condition holds
    kernel_claim_modules: int
    kernel_claim_ok: bool
    trace_obstruction: Optional[bool]      # kappa_A into m forced by a finite-dim module (char 0)

    @property
    def consistent(self):
        inflation = (self.sampled_mu_valid == self.sampled_mu_total) if self.cond2 else \
            (self.sampled_mu_valid == 0)
        # the step from (2) to (1) expands lambda on products, which is the action condition
        ok = self.cond2 == self.cond3 and inflation and self.kernel_claim_ok
        if self.action_holds:
            ok = ok and self.cond1 == self.cond2
        if self.level_containment is not None:
            ok = ok and self.level_containment
        return ok and self.trace_obstruction is not False


def lambda_level_containment(A, act, d, data):
    """lambda(m^k, lev_k V) inside m^k for every k."""
    F = A.field
    lev = level_filtration(A, act.matrices(), data.ideal_basis).levels
    for k, P in enumerate(data.powers, start=1):
        if k >= len(lev):
            break
        for b in P.basis:
            for v in lev[k].basis:
                val = d.lam(A.from_dense(b), {i: c for i, c in enumerate(v) if c})
                if not P.contains(A.to_dense(val)):
                    return False
    return True


def _sample_h_modules(A, act, d, rng, module_dims=(2, 3), tries=12):
    """Finite-dimensional H-modules found by solving the a-x relations for X and
    keeping solutions that also satisfy the commutator relations."""
    from .samples import random_module
    F = A.field
    n = act.dim_v
    found = []
    for dim_m in module_dims:
        W = random_module(A, dim_m, rng).matrices()
        # unknowns X[i][r][s], flattened
        nvar = n * dim_m * dim_m
        idx = lambda i, r, s: (i * dim_m + r) * dim_m + s
        rows, rhs = [], []
        for j in range(1, A.dim):
            for k in range(n):
                L = module_element_matrix(A, W, d.lam(_e(F, j), _e(F, k)))
                for r in range(dim_m):
                    for s in range(dim_m):
                        row = [F.zero] * nvar
                        for p in range(dim_m):
                            if W[j][r][p]:
                                row[idx(k, p, s)] += W[j][r][p]
                        for (l, m), c in A.r[j].items():
                            for h, e in act.s[(l, k)].items():
                                for p in range(dim_m):
                                    if W[m][p][s]:
                                        row[idx(h, r, p)] -= c * e * W[m][p][s]
                        rows.append(row)
                        rhs.append(L[r][s])
        base = _solve_affine(rows, rhs, nvar, F)
        if base is None:
            continue
        null = nullspace(rows, F, nvar) if rows else [[F.one if i == j else F.zero for i in range(nvar)]
                                                      for j in range(nvar)]
        cands = [base] + [[b + c for b, c in zip(base, v)] for v in null]
        for _ in range(tries):
            coeffs = [F(rng.choice((-1, 0, 0, 1))) for _ in null]
            vec = list(base)
            for c, v in zip(coeffs, null):
                if c:
                    vec = [a + c * b for a, b in zip(vec, v)]
            cands.append(vec)
        for vec in cands:
            X = [[[vec[idx(i, r, s)] for s in range(dim_m)] for r in range(dim_m)] for i in range(n)]
            if not h_module_residuals(A, act, d, X, W):
                found.append((X, W))
    return found


def kernel_is_submodule(A, data, X, R, k):
    """Is ker_M(m^k) stable under the x_i and a_j?"""
    F = A.field
    dim_m = len(R[0])
    rows = []
    for b in data.powers[k - 1].basis:
        rows.extend(module_element_matrix(A, R, A.from_dense(b)))
    K = kernel(rows, F, dim_m) if rows else Subspace(F, dim_m, identity(dim_m, F))
    for M in list(X) + list(R):
        for v in K.basis:
            img = [sum((M[r][s] * v[s] for s in range(dim_m)), F.zero) for r in range(dim_m)]
            if not K.contains(img):
                return False
    return True


def simple_module_suite(A, act, d, ideal_basis=None, seed=0, n_mu=8):
    F = A.field
    data = assume2(A, ideal_basis)
    if d.w:
        raise HypothesisViolated("kappa_V must vanish")
    validate(A, act, d)
    n = act.dim_v
    m_sp = data.ideal
    lam_m = all(m_sp.contains(A.to_dense(d.lam(A.from_dense(b), _e(F, k))))
                for b in m_sp.basis for k in range(n))
    kA_in_m = all(m_sp.contains(A.to_dense(d.vfull(j, k))) for j in range(n) for k in range(j))
    cond2 = lam_m and kA_in_m
    cond1 = kA_in_m and all(P.contains(A.to_dense(d.lam(A.from_dense(b), _e(F, k))))
                            for P in data.powers for b in P.basis for k in range(n))
    rows, rhs = one_dim_affine_system(A, act, d, data)
    cond3 = _solve_affine(rows, rhs, n, F) is not None

    rng = random.Random(seed)
    mus = [[F.zero] * n] + [[F(rng.randint(-5, 5)) for _ in range(n)] for _ in range(n_mu - 1)]
    valid = 0
    for mu in mus:
        X, R = one_dim_module(A, data, mu)
        if not h_module_residuals(A, act, d, X, R):
            valid += 1

    action = not condition_residuals(A, act, d)["action"]
    level = lambda_level_containment(A, act, d, data) if action else None

    claim_ok, count = True, 0
    modules = _sample_h_modules(A, act, d, rng)
    if cond2:
        for X, R in modules:
            count += 1
            for k in range(1, data.ell + 1):
                claim_ok &= kernel_is_submodule(A, data, X, R, k)

    # a finite-dimensional module forces kappa_A into m in characteristic zero
    trace = None
    if F.characteristic == 0 and (cond3 or modules):
        trace = kA_in_m
    return SimpleModuleReport(cond1, cond2, cond3, valid, len(mus), action, level, count, claim_ok, trace)


# ---------------------------------------------------------------- Proposition on A-modules


@dataclass
class ModuleFacts:
    dim: int
    mM_zero: bool
    semisimple_trace: Optional[bool]     # None when the trace criterion does not apply
    prim_nonzero: bool
    proper_in_codim1: bool               # every sampled proper submodule lies in a codim-1 submodule
    mM_in_codim1: bool                   # mM lies in every codim-1 submodule found by search
    codim1_found: int
    prim_A_in_m: bool

    @property
    def consistent(self):
        ok = self.prim_nonzero and self.proper_in_codim1 and self.mM_in_codim1 and self.prim_A_in_m
        if self.semisimple_trace is not None:
            ok = ok and self.semisimple_trace == self.mM_zero
        return ok and self.codim1_found > 0


def _invariant(S, mats, F):
    for M in mats:
        for v in S.basis:
            img = [sum((M[r][s] * v[s] for s in range(S.n)), F.zero) for r in range(S.n)]
            if not S.contains(img):
                return False
    return True


def _trace_semisimple(mats, F):
    """Dickson: the image algebra B of A in End(M) is semisimple iff its trace form is
    nondegenerate (characteristic zero)."""
    n = len(mats[0])
    flat = Subspace(F, n * n, [[M[r][s] for r in range(n) for s in range(n)] for M in mats])
    B = [[[v[r * n + s] for s in range(n)] for r in range(n)] for v in flat.basis]
    G = []
    for P in B:
        row = []
        for Q in B:
            PQ = mat_mul(P, Q, F)
            row.append(sum((PQ[i][i] for i in range(n)), F.zero))
        G.append(row)
    return rank(G, F, len(B)) == len(B)


def module_facts(A, mats, ideal_basis=None, rng=None, samples=6):
    """Proposition checks for one A-module given by matrices."""
    F = A.field
    data = assume2(A, ideal_basis)
    rng = rng or random.Random(0)
    n = len(mats[0])
    ideal_mats = [module_element_matrix(A, mats, A.from_dense(b)) for b in data.ideal.basis]
    mM = Subspace(F, n, [[M[r][s] for r in range(n)] for M in ideal_mats for s in range(n)])
    trace = _trace_semisimple(mats, F) if F.characteristic == 0 else None
    prim = level_filtration(A, mats, data.ideal_basis).prim
    full = Subspace(F, n, identity(n, F))
    # proper submodules: cyclic ones and the levels
    subs = [S for S in level_filtration(A, mats, data.ideal_basis).levels if S.dim < n]
    for _ in range(samples):
        v = [F(rng.randint(-2, 2)) for _ in range(n)]
        imgs = [[sum((M[r][s] * v[s] for s in range(n)), F.zero) for r in range(n)] for M in mats]
        S = Subspace(F, n, imgs)
        if S.dim < n:
            subs.append(S)
    proper_ok = all((S + mM).dim < n for S in subs)
    # codimension-one submodules by brute force over functionals with entries in {-1, 0, 1}
    found = 0
    mM_ok = True
    for phi in itertools.product((-1, 0, 1), repeat=n):
        if not any(phi) or next(c for c in phi if c) != 1:
            continue
        H = kernel([[F(c) for c in phi]], F, n)
        if _invariant(H, mats, F):
            found += 1
            mM_ok &= H.contains_space(mM)
    primA = prim_left(A, data.ideal_basis)
    return ModuleFacts(n, mM.dim == 0, trace, prim.dim > 0, proper_ok, mM_ok, found,
                       data.ideal.contains_space(primA))


# ---------------------------------------------------------------- center


def pbw_words(L, dim_a, dim_v, D):
    out = []
    for deg in range(D + 1):
        for xs in itertools.combinations_with_replacement(range(dim_v), deg):
            for j in range(dim_a):
                out.append(tuple(xs) + L.a(j))
    return out


@dataclass
class CenterReport:
    dim: int
    basis: list                 # list of {word: c}
    hypotheses: Dict[str, bool]
    layout: object = None

    @property
    def hypotheses_hold(self):
        return all(self.hypotheses.values())

    def basis_text(self):
        from .core import NCPoly
        return [str(NCPoly(self.layout.ring, z)) for z in self.basis]


def _solve_annihilator(F, cols, eqs):
    """Nullspace of the linear map sending basis column b to the list of vectors eqs[b]."""
    keys = {}
    for vecs in eqs:
        for vec in vecs:
            for w in vec:
                keys.setdefault(w, len(keys))
    nblocks = len(eqs[0]) if eqs else 0
    rows = [[F.zero] * len(cols) for _ in range(len(keys) * nblocks)]
    for b, vecs in enumerate(eqs):
        for g, vec in enumerate(vecs):
            for w, c in vec.items():
                rows[g * len(keys) + keys[w]][b] += c
    rows = [r for r in rows if any(r)]
    return nullspace(rows, F, len(cols))


def center_hypotheses(A, act, d, cap=4):
    F = A.field
    hyp = {}
    rep = pbw_check(A, act, d, cap=cap, raise_on_disagreement=False)
    hyp["pbw"] = rep.passed
    try:
        data = assume2(A)
        hyp["assume2"] = True
        hyp["prim_equal"] = prim_left(A, data.ideal_basis) == prim_right(A, data.ideal_basis)
        hyp["lambda_m_in_m"] = all(data.ideal.contains(A.to_dense(d.lam(A.from_dense(b), _e(F, k))))
                                   for b in data.ideal.basis for k in range(act.dim_v))
    except Assume2Violated:
        hyp["assume2"] = False
    return hyp


def center_truncated(A, act, d, D):
    """Elements z in the span of PBW words of degree <= D with [z, g] = 0 for all generators g."""
    F = A.field
    sys = build_presentation(A, act, d)
    L = HkLayout(A.dim, act.dim_v, F)
    words = pbw_words(L, A.dim, act.dim_v, D)
    gens = [L.x(i) for i in range(act.dim_v)] + [L.a(j) for j in range(1, A.dim)]
    eqs = []
    for b in words:
        vecs = []
        for g in gens:
            comm = _commutator(sys, b, g, F)
            vecs.append(comm)
        eqs.append(vecs)
    null = _solve_annihilator(F, words, eqs) if gens else \
        [[F.one if i == j else F.zero for i in range(len(words))] for j in range(len(words))]
    basis = [{w: c for w, c in zip(words, v) if c} for v in null]
    return CenterReport(len(basis), basis, center_hypotheses(A, act, d), L)


# ---------------------------------------------------------------- abelianization


@dataclass
class AbelianizationReport:
    dims: list                  # graded dimensions of H/[H,H] in degrees 0..D
    expected: list
    m_quotient_dim: int

    @property
    def passed(self):
        return self.dims == self.expected


def _deg(word, L):
    return sum(1 for c in word if L.is_x(c))


def m_quotient_dim(A, act, d, data):
    """dim m / ([m, m] + A (im kappa_A) A)."""
    F = A.field
    n = act.dim_v
    vecs = []
    mb = [A.from_dense(b) for b in data.ideal.basis]
    for x in mb:
        for y in mb:
            c = A.mul(x, y)
            sparse_add(c, A.mul(y, x), -F.one)
            vecs.append(A.to_dense(c))
    for j in range(n):
        for k in range(j):
            kv = d.vfull(j, k)
            for p in range(A.dim):
                for q in range(A.dim):
                    vecs.append(A.to_dense(A.mul(A.mul(_e(F, p), kv), _e(F, q))))
    return data.ideal.dim - Subspace(F, A.dim, vecs).dim


def abelianization_truncated(A, act, d, D, slack=1):
    """Graded dimensions of H/[H,H] in V-degrees 0..D.

    Commutators of PBW words whose degrees add up to at most D + slack are
    reduced to normal form; the commutator space in filtered degree <= n is
    read off an echelon form whose leading terms have the highest degree.
    """
    from math import comb
    F = A.field
    if F.characteristic != 0:
        raise HypothesisViolated("the abelianization formula needs an infinite field; use Q")
    if d.q or d.w:
        raise HypothesisViolated("lambda and kappa_V must vanish")
    data = assume2(A)
    n = act.dim_v
    if not all(data.ideal.contains(A.to_dense(d.vfull(j, k))) for j in range(n) for k in range(j)):
        raise HypothesisViolated("kappa_A must take values in m")
    if not pbw_check(A, act, d, raise_on_disagreement=False).passed:
        raise HypothesisViolated("the PBW property is required")
    sys = build_presentation(A, act, d)
    L = HkLayout(A.dim, n, F)
    words = pbw_words(L, A.dim, n, D + slack)
    ech = Echelon(F, key=lambda w: (_deg(w, L), w))
    for i, b in enumerate(words):
        for c in words[i + 1:]:
            if _deg(b, L) + _deg(c, L) > D + slack:
                continue
            comm = _commutator(sys, b, c, F)
            if comm:
                ech.add(comm)
    per_deg = [0] * (D + slack + 2)
    for lead in ech.rows:
        per_deg[_deg(lead, L)] += 1
    dims = []
    for k in range(D + 1):
        pbw_k = comb(n + k - 1, k) * A.dim
        dims.append(pbw_k - per_deg[k])
    mq = m_quotient_dim(A, act, d, data)
    expected = [1 + mq] + [comb(n + k - 1, k) for k in range(1, D + 1)]
    return AbelianizationReport(dims, expected, mq)


# ---------------------------------------------------------------- Hopf inheritance


@dataclass
class HopfReport:
    parts: Dict[int, bool]          # identity-level flags for parts (1)-(3)
    relations: Dict[int, bool]      # the same structures tested on relation images in H
    pbw: bool
    extends_remark: Optional[bool]  # lambda = 0 and kappa_A primitive imply every available part

    @property
    def consistent(self):
        ok = True
        for p, flag in self.parts.items():
            if flag:
                ok &= self.relations[p]
            if self.pbw:
                ok &= flag == self.relations[p]
        return ok and self.extends_remark is not False


def _tensor_eq(x, y):
    return {k: v for k, v in x.items() if v} == {k: v for k, v in y.items() if v}


def _primitive_tensor(x):
    """x (x) 1 + 1 (x) x for x in A."""
    out = {}
    for l, c in x.items():
        sparse_add(out, {(l, 0): c})
        sparse_add(out, {(0, l): c})
    return out


def _ehopf1(A, act, d):
    F = A.field
    n = act.dim_v
    for j in range(A.dim):
        for k in range(n):
            lam = d.lam(_e(F, j), _e(F, k))
            lhs = A.coproduct(lam)
            rhs = {}
            for (p, q), c in A.r[j].items():
                for l, e in d.lam(_e(F, p), _e(F, k)).items():
                    sparse_add(rhs, {(l, q): c * e})
                for l, e in d.lam(_e(F, q), _e(F, k)).items():
                    sparse_add(rhs, {(p, l): c * e})
            if not _tensor_eq(lhs, rhs):
                return False
    for j in range(n):
        for k in range(j):
            kv = d.vfull(j, k)
            if not _tensor_eq(A.coproduct(kv), _primitive_tensor(kv)):
                return False
    return True


def _lambda_in_ker_eps(A, act, d):
    F = A.field
    return all(not A.eps(d.lam(_e(F, j), _e(F, k))) for j in range(A.dim) for k in range(act.dim_v))


def _antipode_identity(A, act, d):
    """S(lambda(a, v)) = sum lambda(S(a_(1)), a_(2)(v))."""
    F = A.field
    for j in range(A.dim):
        for k in range(act.dim_v):
            lhs = A.S(d.lam(_e(F, j), _e(F, k)))
            rhs = {}
            for (p, q), c in A.r[j].items():
                v = act.act(_e(F, q), _e(F, k))
                sparse_add(rhs, d.lam(A.S(_e(F, p)), v), c)
            if {l: c for l, c in lhs.items() if c} != {l: c for l, c in rhs.items() if c}:
                return False
    return True


def _relation_polys(A, act, d, L):
    """Defining relations as lists of (coefficient, list of letters) with algebra letters
    tagged ('a', j) and module letters ('x', i)."""
    F = A.field
    rels = []
    for j in range(1, A.dim):
        for k in range(act.dim_v):
            r = [(F.one, [("a", j), ("x", k)])]
            for (p, m), c in A.r[j].items():
                for h, e in act.s[(p, k)].items():
                    r.append((-c * e, [("x", h), ("a", m)]))
            for l, c in d.lam(_e(F, j), _e(F, k)).items():
                r.append((-c, [("a", l)]))
            rels.append(r)
    for j in range(act.dim_v):
        for k in range(j):
            r = [(F.one, [("x", j), ("x", k)]), (-F.one, [("x", k), ("x", j)])]
            for l, c in d.vfull(j, k).items():
                r.append((-c, [("a", l)]))
            for h, c in d.wfull(j, k).items():
                r.append((-c, [("x", h)]))
            rels.append(r)
    return rels


def _letter_word(L, letter):
    kind, i = letter
    return L.x(i) if kind == "x" else L.a(i)


def _delta_relations_vanish(A, act, d, sys, L):
    """Delta(x) = x (x) 1 + 1 (x) x and Delta on A kill every relation in H (x) H."""
    F = A.field

    def delta(letter):
        kind, i = letter
        if kind == "x":
            return {(L.x(i), ()): F.one, ((), L.x(i)): F.one}
        return {(L.a(p), L.a(q)): c for (p, q), c in A.r[i].items()}

    for rel in _relation_polys(A, act, d, L):
        total = {}
        for coef, letters in rel:
            cur = {((), ()): coef}
            for letter in letters:
                nxt = {}
                for (u1, u2), c in cur.items():
                    for (w1, w2), e in delta(letter).items():
                        sparse_add(nxt, {(u1 + w1, u2 + w2): c * e})
                cur = nxt
            sparse_add(total, cur)
        out = {}
        for (u1, u2), c in total.items():
            n1 = sys.normal_form_terms({u1: F.one})
            n2 = sys.normal_form_terms({u2: F.one})
            for w1, c1 in n1.items():
                for w2, c2 in n2.items():
                    sparse_add(out, {(w1, w2): c * c1 * c2})
        if out:
            return False
    return True


def _eps_relations_vanish(A, act, d, L):
    F = A.field
    for rel in _relation_polys(A, act, d, L):
        tot = F.zero
        for coef, letters in rel:
            val = coef
            for kind, i in letters:
                val = val * (F.zero if kind == "x" else A.counit[i])
            tot += val
        if tot:
            return False
    return True


def _antipode_relations_vanish(A, act, d, sys, L):
    """S(x) = -x and S on A, extended anti-multiplicatively, kill every relation."""
    F = A.field
    for rel in _relation_polys(A, act, d, L):
        total = {}
        for coef, letters in rel:
            cur = {(): coef}
            for kind, i in reversed(letters):
                img = {L.x(i): -F.one} if kind == "x" else \
                    {L.a(l): c for l, c in A.antipode[i].items()}
                nxt = {}
                for u, c in cur.items():
                    for w, e in img.items():
                        sparse_add(nxt, {u + w: c * e})
                cur = nxt
            sparse_add(total, cur)
        if sys.normal_form_terms(total):
            return False
    return True


def hopf_inheritance_check(A, act, d, parts=None, cap=4):
    F = A.field
    validate(A, act, d)
    available = [1] + ([2] if A.counit is not None else []) + \
        ([3] if A.counit is not None and A.antipode is not None else [])
    if parts is None:
        parts = available
    for p in parts:
        if p not in available:
            raise MissingStructure(f"part {p} needs a counit" + (" and an antipode" if p == 3 else ""))
    sys = build_presentation(A, act, d)
    L = HkLayout(A.dim, act.dim_v, F)
    pbw = check_ambiguities(A, act, d, cap, check=False).passed
    flags, rels = {}, {}
    e1 = _ehopf1(A, act, d)
    r1 = _delta_relations_vanish(A, act, d, sys, L)
    for p in parts:
        if p == 1:
            flags[1], rels[1] = e1, r1
        elif p == 2:
            flags[2] = e1 and _lambda_in_ker_eps(A, act, d)
            rels[2] = r1 and _eps_relations_vanish(A, act, d, L)
        elif p == 3:
            flags[3] = e1 and _lambda_in_ker_eps(A, act, d) and _antipode_identity(A, act, d)
            rels[3] = r1 and _eps_relations_vanish(A, act, d, L) and \
                _antipode_relations_vanish(A, act, d, sys, L)
    remark = None
    if not d.q and not d.w:
        prim = all(_tensor_eq(A.coproduct(d.vfull(j, k)), _primitive_tensor(d.vfull(j, k)))
                   for j in range(act.dim_v) for k in range(j))
        if prim:
            remark = all(flags.values())
    return HopfReport(flags, rels, pbw, remark)


# ---------------------------------------------------------------- Yetter-Drinfeld


@dataclass
class YDReport:
    pyd: Dict[int, Optional[bool]]
    pyd5_applicable: bool
    preln: Dict[str, bool]
    tau_inverse: bool
    tau_equivariant: bool
    centralizer_is_weight_space: bool

    @property
    def pyd_agree(self):
        vals = [v for k, v in self.pyd.items() if v is not None]
        return len(set(vals)) <= 1

    @property
    def preln_agree(self):
        return len(set(self.preln.values())) <= 1

    @property
    def consistent(self):
        return (self.pyd_agree and self.preln_agree and self.tau_inverse and self.tau_equivariant
                and self.centralizer_is_weight_space)


def _require_hopf(A):
    if A.counit is None or A.antipode is None:
        raise MissingStructure("a counit and an antipode are required")
    rep = check_axioms(A)
    if not (rep.ok() and rep.antipode and rep.counit):
        raise MissingStructure("the algebra is not a cocommutative Hopf algebra")


def _ad(A, a, m):
    """ad a (m) = sum a_(1) m S(a_(2))."""
    acc = {}
    for (p, q), c in A.coproduct(a).items():
        sparse_add(acc, A.mul(A.mul(_e(A.field, p), m), A.S(_e(A.field, q))), c)
    return acc


def _clean(x):
    return {k: v for k, v in x.items() if v}


def yd_conditions(A, act, d):
    """Truth values of the five equivalent conditions with M = A (adjoint action)."""
    F = A.field
    n = act.dim_v
    kap = lambda x, y: d.kA(x, y)
    vec = lambda i: _e(F, i)
    res = {i: True for i in range(1, 6)}
    applicable = True
    for j in range(A.dim):
        a = _e(F, j)
        D2 = A.coproduct(a)
        D3 = A.coproduct2(a)
        for v in range(n):
            for w in range(n):
                k0 = kap(vec(v), vec(w))
                # (1) a(kappa(v, w)) = sum kappa(a1 v, a2 w)
                rhs = {}
                for (p, q), c in D2.items():
                    sparse_add(rhs, kap(act.act(_e(F, p), vec(v)), act.act(_e(F, q), vec(w))), c)
                if _clean(_ad(A, a, k0)) != _clean(rhs):
                    res[1] = False
                # (2) tau^op(sum kappa(a1 v, w) (x) a2), multiplied in B, = sum a1 kappa(v, S(a2) w)
                lhs = {}
                for (p, q), c in D2.items():
                    m = kap(act.act(_e(F, p), vec(v)), vec(w))
                    for (p2, q2), c2 in A.coproduct(_e(F, q)).items():
                        sparse_add(lhs, A.mul(_e(F, p2), _ad(A, A.S(_e(F, q2)), m)), c * c2)
                rhs = {}
                for (p, q), c in D2.items():
                    sw = act.act(A.S(_e(F, q)), vec(w))
                    sparse_add(rhs, A.mul(_e(F, p), kap(vec(v), sw)), c)
                if _clean(lhs) != _clean(rhs):
                    res[2] = False
                # (3) a kappa(v, w) = sum kappa(a1 v, a2 w) a3
                rhs = {}
                for (p, q, r), c in D3.items():
                    kk = kap(act.act(_e(F, p), vec(v)), act.act(_e(F, q), vec(w)))
                    sparse_add(rhs, A.mul(kk, _e(F, r)), c)
                if _clean(A.mul(a, k0)) != _clean(rhs):
                    res[3] = False
                # (4) kappa(v, w) a = sum a1 kappa(S(a2) v, S(a3) w)
                rhs = {}
                for (p, q, r), c in D3.items():
                    kk = kap(act.act(A.S(_e(F, q)), vec(v)), act.act(A.S(_e(F, r)), vec(w)))
                    sparse_add(rhs, A.mul(_e(F, p), kk), c)
                if _clean(A.mul(k0, a)) != _clean(rhs):
                    res[4] = False
                # hypothesis of (5): kappa(a v, w) = kappa(v, S(a) w)
                if _clean(kap(act.act(a, vec(v)), vec(w))) != _clean(kap(vec(v), act.act(A.S(a), vec(w)))):
                    applicable = False
                # (5) im kappa commutes with A
                if _clean(A.mul(a, k0)) != _clean(A.mul(k0, a)):
                    res[5] = False
    if not applicable:
        res[5] = None
    return res, applicable


def preln_conditions(A, act, d, sys, L):
    """(a) sum a1 v S(a2) = a(v), (b) a v = sum a1(v) a2, (c) v a = sum a1 S(a2)(v), in H."""
    F = A.field
    out = {"a": True, "b": True, "c": True}
    for j in range(A.dim):
        D2 = A.coproduct(_e(F, j))
        for k in range(act.dim_v):
            ta = {}
            for (p, q), c in D2.items():
                for l, e in A.S(_e(F, q)).items():
                    sparse_add(ta, {L.a(p) + L.x(k) + L.a(l): c * e})
            for h, c in act.s[(j, k)].items():
                sparse_add(ta, {L.x(h): -c})
            if sys.normal_form_terms(ta):
                out["a"] = False
            tb = {L.a(j) + L.x(k): F.one}
            for (p, q), c in D2.items():
                for h, e in act.s[(p, k)].items():
                    sparse_add(tb, {L.x(h) + L.a(q): -c * e})
            if sys.normal_form_terms(tb):
                out["b"] = False
            tc = {L.x(k) + L.a(j): F.one}
            for (p, q), c in D2.items():
                for h, e in act.act(A.S(_e(F, q)), _e(F, k)).items():
                    sparse_add(tc, {L.a(p) + L.x(h): -c * e})
            if sys.normal_form_terms(tc):
                out["c"] = False
    return out


def tau_matrices(A, act):
    """tau: A (x) V -> V (x) A and tau^op: V (x) A -> A (x) V as dense matrices.

    A (x) V is indexed by j * dim_v + k and V (x) A by k * dim_a + j.
    """
    F = A.field
    n, da = act.dim_v, A.dim
    N = n * da
    T = [[F.zero] * N for _ in range(N)]
    Top = [[F.zero] * N for _ in range(N)]
    for j in range(da):
        for k in range(n):
            for (p, q), c in A.r[j].items():
                for h, e in act.s[(p, k)].items():
                    T[h * da + q][j * n + k] += c * e
                for h, e in act.act(A.S(_e(F, q)), _e(F, k)).items():
                    Top[p * n + h][k * da + j] += c * e
    return T, Top


def _tensor_action(A, act, j, order):
    """Matrix of a_j on A^ad (x) V (order 'AV') or V (x) A^ad (order 'VA')."""
    F = A.field
    n, da = act.dim_v, A.dim
    N = n * da
    M = [[F.zero] * N for _ in range(N)]
    for (p, q), c in A.r[j].items():
        for b in range(da):
            adb = _ad(A, _e(F, p if order == "AV" else q), _e(F, b))
            for k in range(n):
                img = act.act(_e(F, q if order == "AV" else p), _e(F, k))
                for l, e in adb.items():
                    for h, f in img.items():
                        if order == "AV":
                            M[l * n + h][b * n + k] += c * e * f
                        else:
                            M[h * da + l][k * da + b] += c * e * f
    return M


def _centralizer_vs_weight(A, act, d, sys, L, cap):
    F = A.field
    words = pbw_words(L, A.dim, act.dim_v, cap)
    gens = list(range(1, A.dim))
    if not gens:
        return True
    cen, wt = [], []
    for b in words:
        cvecs, wvecs = [], []
        for j in gens:
            cvecs.append(_commutator(sys, L.a(j), b, F))
            t = {}
            for (p, q), c in A.coproduct(_e(F, j)).items():
                for l, e in A.S(_e(F, q)).items():
                    sparse_add(t, {L.a(p) + b + L.a(l): c * e})
            sparse_add(t, {b: -A.counit[j]})
            wvecs.append(sys.normal_form_terms(t))
        cen.append(cvecs)
        wt.append(wvecs)
    n1 = _solve_annihilator(F, words, cen)
    n2 = _solve_annihilator(F, words, wt)
    return Subspace(F, len(words), n1) == Subspace(F, len(words), n2)


def yetter_drinfeld_suite(A, act, d, degree_cap=2):
    _require_hopf(A)
    validate(A, act, d)
    F = A.field
    sys = build_presentation(A, act, d)
    L = HkLayout(A.dim, act.dim_v, F)
    pyd, applicable = yd_conditions(A, act, d)
    preln = preln_conditions(A, act, d, sys, L)
    T, Top = tau_matrices(A, act)
    N = len(T)
    I = identity(N, F)
    inv = mat_mul(Top, T, F) == I and mat_mul(T, Top, F) == I
    equiv = all(mat_mul(T, _tensor_action(A, act, j, "AV"), F) ==
                mat_mul(_tensor_action(A, act, j, "VA"), T, F) for j in range(A.dim))
    cw = _centralizer_vs_weight(A, act, d, sys, L, degree_cap)
    return YDReport(pyd, applicable, preln, inv, equiv, cw)


# ---------------------------------------------------------------- symplectic reflections


@dataclass
class ReflectionReport:
    stage: str                  # "not_pbw", "support_failed", "rank_ok", "rank_violation"
    pbw: bool
    support_ok: Optional[bool]
    rank: Optional[int]

    @property
    def passed(self):
        return self.stage in ("rank_ok",)


def symplectic_reflection_rank(A, act, d, a_prime, a_dprime, U, cap=4):
    """Check rank(a' - eps(a')) <= 2 under the coproduct-support hypothesis.

    ``a_prime`` and ``a_dprime`` are sparse algebra elements and ``U`` a list
    of sparse algebra elements spanning a complement to k a''.
    """
    F = A.field
    if d.w:
        raise HypothesisViolated("kappa_V must vanish")
    if A.counit is None:
        raise HypothesisViolated("a counit is required")
    Us = Subspace(F, A.dim, [A.to_dense(u) for u in U])
    ad2 = A.to_dense(a_dprime)
    if not any(ad2) or Us.contains(ad2) or Us.dim + 1 != A.dim:
        raise HypothesisViolated("U is not a complement to k a''")
    pbw = pbw_check(A, act, d, cap=cap, raise_on_disagreement=False).passed
    if not pbw:
        return ReflectionReport("not_pbw", False, None, None)
    da = A.dim
    flat = lambda T: [T.get((p, q), F.zero) for p in range(da) for q in range(da)]
    AU = [flat({(p, l): c for l, c in u.items()}) for p in range(da) for u in U]
    aa = flat({(p, q): c * e for p, c in a_prime.items() for q, e in a_dprime.items()})
    small = Subspace(F, da * da, AU)
    big = Subspace(F, da * da, AU + [aa])
    images = [flat(A.coproduct(d.vfull(j, k))) for j in range(act.dim_v) for k in range(j)]
    inside = all(big.contains(v) for v in images)
    escapes = any(not small.contains(v) for v in images)
    if not (inside and escapes):
        return ReflectionReport("support_failed", True, False, None)
    M = act.element_matrix(a_prime)
    e = A.eps(a_prime)
    M = [[M[r][s] - (e if r == s else F.zero) for s in range(act.dim_v)] for r in range(act.dim_v)]
    rk = rank(M, F, act.dim_v)
    return ReflectionReport("rank_ok" if rk <= 2 else "rank_violation", True, True, rk)
