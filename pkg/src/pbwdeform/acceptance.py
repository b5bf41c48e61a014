"""The acceptance suite as plain functions, shared by the tests and scripts/.

Each criterion returns a :class:`CriterionResult`; ``line()`` renders the
one-line pass/fail summary.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field as dc_field
from math import prod

from .action import ModuleAction
from .coalgebra import a1n_monoid, build_nilcoxeter, coxeter_data, monoid_algebra, zero_hecke
from .core import QQ, PrimeField, misordering_index
from .deformation import (DeformationData, build_presentation, homogenize_and_extract_mu,
                          pbw_check)
from .linalg import identity
from .rewrite import enumerate_ambiguities, resolve_ambiguity
from .samples import (grouplike_instances, named_instances, nilcoxeter_a1, random_instances,
                      usl2, weyl)
from .theorems import (abelianization_truncated, center_truncated, jacobi_grouplike_classify,
                       nilcox_pbw_classify)

F5 = PrimeField(5)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    seconds: float
    limit: float
    detail: str = ""
    data: dict = dc_field(default_factory=dict)

    def line(self):
        flag = "PASS" if self.passed else "FAIL"
        return (f"{flag} criterion {self.number}: {self.title}; {self.detail} "
                f"({self.seconds:.1f}s, limit {self.limit:.0f}s)")


def _timed(number, title, limit, body):
    t = time.perf_counter()
    ok, detail, data = body()
    dt = time.perf_counter() - t
    return CriterionResult(number, title, ok and dt < limit, dt, limit, detail, data)


# ---------------------------------------------------------------- 1. dimension table


def _a1n_matches_monoid(d, field):
    """Nil-Coxeter A1^n and the exponent monoid give the same structure constants."""
    b = build_nilcoxeter(coxeter_data(f"A1^{len(d)}", d), 16, field)
    A = b.algebra
    M = monoid_algebra(a1n_monoid(d), field)
    if A.dim != M.dim:
        return False, A.dim
    zero_e = tuple(0 for _ in d)
    mon = [e for e in a1n_monoid(d).elements if e is not None]
    order = [mon.index(zero_e)] + [i for i, e in enumerate(mon) if e != zero_e]
    to_m = {j: order.index(mon.index(tuple(w.count(i) for i in range(len(d)))))
            for j, w in enumerate(b.words)}
    for j, k in itertools.product(range(A.dim), repeat=2):
        if {to_m[l]: c for l, c in A.u[j][k].items()} != M.u[to_m[j]][to_m[k]]:
            return False, A.dim
    return b.saturated, A.dim


def dimension_table(field=QQ):
    """{label: (observed, expected)} for every entry of the table."""
    rows = {}
    for d in range(2, 6):
        b = build_nilcoxeter(coxeter_data("A1", (d,)), 12, field)
        rows[f"NC_A1({d})"] = (b.algebra.dim if b.saturated else None, d)
    for name, order in (("A2", 6), ("B2", 8)):
        b = build_nilcoxeter(coxeter_data(name, 2), 12, field)
        rows[f"NC_{name}(2,2)"] = (b.algebra.dim if b.saturated else None, order)
    for n in (1, 2, 3):
        for d in itertools.product(range(2, 5), repeat=n):
            ok, dim = _a1n_matches_monoid(d, field)
            rows[f"NC_A1^{n}{d}"] = (dim if ok else None, prod(d))
    b = zero_hecke(coxeter_data("A2"), 12, field)
    rows["0Hecke(A2)"] = (b.algebra.dim if b.saturated else None, 6)
    return rows


def criterion_1(field=QQ):
    def body():
        rows = dimension_table(field)
        bad = [k for k, (got, want) in rows.items() if got != want]
        return not bad, f"{len(rows) - len(bad)}/{len(rows)} dimensions exact", {"rows": rows}
    return _timed(1, f"dimension table over {field!r}", 5, body)


# ---------------------------------------------------------------- 2. four-way agreement


def four_way(field=QQ, seed=2024, count=200):
    insts = random_instances(seed, count, field, max_dim_a=4, max_dim_v=3) + named_instances(field)
    verdicts, disagreements = [], []
    for inst in insts:
        rep = pbw_check(inst.A, inst.act, inst.deform, cap=4, raise_on_disagreement=False)
        verdicts.append(rep.passed)
        if not rep.agree:
            disagreements.append((inst.name, rep.summary()))
    return insts, verdicts, disagreements


def criterion_2(field=QQ, seed=2024, count=200):
    def body():
        insts, verdicts, dis = four_way(field, seed, count)
        npbw = sum(verdicts)
        detail = (f"{len(insts)} instances ({npbw} PBW, {len(insts) - npbw} not), "
                  f"{len(dis)} disagreements")
        return not dis, detail, {"disagreements": dis, "verdicts": verdicts}
    return _timed(2, f"four-way PBW agreement over {field!r}", 600, body)


# ---------------------------------------------------------------- 3. nil-Coxeter sweep


def _nc_modules(dim_v, field):
    """T acting by x2 -> x1, and T acting by zero."""
    N = [[field.zero] * dim_v for _ in range(dim_v)]
    N[0][1] = field.one
    Z = [[field.zero] * dim_v for _ in range(dim_v)]
    return {"jordan": [identity(dim_v, field), N], "zero": [identity(dim_v, field), Z]}


def nilcox_sweep(field=QQ):
    """Rows (module, dim_v, entries, pbw, predicted, classifier_agrees)."""
    A = nilcoxeter_a1(2, field)
    rows = []
    vals = (-1, 0, 1)
    for label, mats in _nc_modules(2, field).items():
        act = ModuleAction.from_matrices(field, mats)
        T = mats[1]
        for a0, a1, w0, w1 in itertools.product(vals, repeat=4):
            d = DeformationData(field, 2, 2, v={(1, 0): {0: a0, 1: a1}}, w={(1, 0): {0: w0, 1: w1}})
            pbw = pbw_check(A, act, d, raise_on_disagreement=False).passed
            # Prim(V) = ker T; k T means no unit component
            kv_prim = all(T[h][0] * w0 + T[h][1] * w1 == 0 for h in range(2))
            predicted = kv_prim and a0 == 0
            rep = nilcox_pbw_classify(A, act, d)
            rows.append((label, 2, (a0, a1, w0, w1), pbw, predicted, rep.agree and rep.predicted == predicted))
    for label, mats in _nc_modules(3, field).items():
        act = ModuleAction.from_matrices(field, mats)
        pairs = [(1, 0), (2, 0), (2, 1)]
        for ent in itertools.product(vals, repeat=6):
            v = {pr: {0: ent[2 * i], 1: ent[2 * i + 1]} for i, pr in enumerate(pairs)}
            d = DeformationData(field, 2, 3, v=v)
            pbw = pbw_check(A, act, d, raise_on_disagreement=False).passed
            predicted = not any(ent)
            rep = nilcox_pbw_classify(A, act, d)
            rows.append((label, 3, ent, pbw, predicted, rep.agree and rep.predicted == predicted))
    return rows


def criterion_3(field=QQ):
    def body():
        rows = nilcox_sweep(field)
        bad = [r for r in rows if r[3] != r[4] or not r[5]]
        n2 = sum(1 for r in rows if r[1] == 2)
        detail = (f"{n2} combinations at dim V = 2 and {len(rows) - n2} at dim V = 3, "
                  f"{sum(r[3] for r in rows)} PBW, {len(bad)} mismatches")
        return not bad, detail, {"rows": rows}
    return _timed(3, f"nil-Coxeter PBW classification sweep over {field!r}", 120, body)


# ---------------------------------------------------------------- 4. grouplike Jacobi classifier


def jacobi_sweep(field=QQ, seed=17, count=120):
    """Per instance: (name, classifier says admissible, symbolic Jacobi holds, nilpotent, consistent).

    The classifier tags each grouplike from fixed spaces and radicals; the
    symbolic route reduces the Jacobi residual in H.  Per grouplike the tag
    must also match the Ejac evaluation.
    """
    out = []
    for inst in grouplike_instances(seed, count, field):
        rep = jacobi_grouplike_classify(inst.A, inst.act, inst.deform)
        nil = inst.name.startswith("NC_")
        out.append((inst.name, rep.all_admissible, rep.symbolic_jacobi, nil, rep.consistent))
    return out


def criterion_4(field=QQ, seed=17, count=120):
    def body():
        rows = jacobi_sweep(field, seed, count)
        bad = [r for r in rows if r[1] != r[2] or not r[4]]
        nil = sum(r[3] for r in rows)
        adm = sum(r[1] for r in rows)
        detail = (f"{len(rows)} grouplike instances ({nil} over nil-Coxeter algebras, "
                  f"{adm} admissible), {len(bad)} mismatches")
        return not bad, detail, {"rows": rows}
    return _timed(4, f"grouplike classifier vs direct Jacobi evaluation over {field!r}", 60, body)


# ---------------------------------------------------------------- 5. rewriting engine


def misordering_trials(seed=5, trials=1000):
    """Count (steps checked, violations) of the misordering decrease over random reductions."""
    rng = random.Random(seed)
    insts = random_instances(seed, 40)
    systems = [build_presentation(i.A, i.act, i.deform) for i in insts]
    steps = violations = 0
    while steps < trials:
        S = rng.choice(systems)
        alpha = S.ring.alphabet
        w = tuple(rng.randrange(len(alpha)) for _ in range(rng.randint(2, 6)))
        occ = S.occurrences(w)
        if not occ:
            continue
        pos, idx = rng.choice(occ)
        m = misordering_index(w, alpha)
        steps += 1
        if any(misordering_index(u, alpha) >= m for u in S.apply_rule_at(w, pos, idx)):
            violations += 1
    return steps, violations


def strategy_trials(seed=6, trials=1000):
    """Count (polynomials checked, disagreements) between deterministic and random strategies."""
    rng = random.Random(seed)
    systems = []
    for inst in random_instances(seed, 60) + [weyl(), usl2()]:
        S = build_presentation(inst.A, inst.act, inst.deform)
        if all(resolve_ambiguity(a, S).resolved for a in enumerate_ambiguities(S)):
            systems.append(S)
    bad = 0
    for _ in range(trials):
        S = rng.choice(systems)
        n = len(S.ring.alphabet)
        terms = {tuple(rng.randrange(n) for _ in range(rng.randint(0, 5))): rng.randint(-3, 3)
                 for _ in range(3)}
        p = S.ring.from_terms(terms)
        if S.normal_form(p, rng=rng) != S.normal_form(p):
            bad += 1
    return trials, bad, len(systems)


def criterion_5():
    def body():
        steps, viol = misordering_trials()
        polys, bad, nsys = strategy_trials()
        detail = (f"{steps} reductions with {viol} misordering violations; "
                  f"{polys} polynomials over {nsys} confluent systems with {bad} strategy disagreements")
        return viol == 0 and bad == 0 and steps >= 1000 and polys >= 1000, detail, {}
    return _timed(5, "rewriting engine", 60, body)


# ---------------------------------------------------------------- 6. center and abelianization


def criterion_6():
    def body():
        A = nilcoxeter_a1(2)
        N = [[QQ.zero, QQ.one], [QQ.zero, QQ.zero]]
        act = ModuleAction.from_matrices(QQ, [identity(2, QQ), N])
        d = DeformationData(QQ, 2, 2, v={(1, 0): {1: 1}})
        c = center_truncated(A, act, d, 3)
        ab = abelianization_truncated(A, act, d, 3)
        ok = c.hypotheses_hold and c.dim == 1 and ab.dims == [1, 2, 3, 4] and ab.passed
        detail = f"center dim {c.dim} in degree <= 3, abelianization dims {ab.dims} (formula {ab.expected})"
        return ok, detail, {}
    return _timed(6, "truncated center and abelianization", 60, body)


# ---------------------------------------------------------------- 7. characteristic 5


def criterion_7():
    def body():
        parts = []
        ok = True
        q1, p1 = dimension_table(QQ), dimension_table(F5)
        same1 = q1 == p1 and all(g == w for g, w in p1.values())
        parts.append(f"dims {'identical' if same1 else 'differ'}")
        ok &= same1
        _, _, dis = four_way(F5)
        parts.append(f"{len(dis)} four-way disagreements")
        ok &= not dis
        q3 = [r[3] for r in nilcox_sweep(QQ)]
        r3 = nilcox_sweep(F5)
        same3 = q3 == [r[3] for r in r3] and all(r[3] == r[4] and r[5] for r in r3)
        parts.append(f"sweep verdicts {'identical' if same3 else 'differ'}")
        ok &= same3
        rows4 = jacobi_sweep(F5)
        bad4 = [r for r in rows4 if r[1] != r[2] or not r[4]]
        parts.append(f"{len(bad4)} classifier mismatches on {len(rows4)}")
        ok &= not bad4
        return ok, ", ".join(parts), {}
    return _timed(7, "criteria 1-4 over F5", 900, body)


# ---------------------------------------------------------------- 8. deformation maps


def criterion_8():
    def body():
        out = []
        for inst in (weyl(), usl2()):
            rep = homogenize_and_extract_mu(inst.A, inst.act, inst.deform)
            out.append((inst.name, rep.passed and rep.flat))
        ok = all(v for _, v in out)
        return ok, ", ".join(f"{n}: {'exact' if v else 'mismatch'}" for n, v in out), {}
    return _timed(8, "mu extraction after homogenization", 10, body)


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
            5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8}


def run_all(numbers=None, echo=print):
    results = []
    for n in numbers or sorted(CRITERIA):
        r = CRITERIA[n]()
        echo(r.line())
        results.append(r)
    return results
