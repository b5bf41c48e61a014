"""Command line front-end: read presentation files, run checks, print reports.

Exit codes: 0 pass, 1 fail, 2 input error, 3 PBW methods disagree.
"""
from __future__ import annotations

import argparse
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from . import fileformat as ff
from .core import NCPoly
from .deformation import METHODS, HkLayout, build_presentation, graded_dimension_oracle, pbw_check
from .errors import InputError, MethodDisagreement, PBWError
from .theorems import (abelianization_truncated, center_truncated, hopf_inheritance_check,
                       jacobi_grouplike_classify, module_facts, nilcox_pbw_classify,
                       simple_module_suite, yetter_drinfeld_suite)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_DISAGREE = 0, 1, 2, 3
WORKERS_ENV = "PBWDEFORM_WORKERS"
THEOREMS = ("tgeneric", "tnilcox", "tsimple", "p1", "hopf", "yd")


def _flag(x):
    return "n/a" if x is None else ("yes" if x else "no")


def _witness(inst, rep):
    """A readable reason for a PBW failure, preferring the nilpotent classification."""
    try:
        nr = nilcox_pbw_classify(inst.A, inst.act, inst.deform)
        if not nr.predicted:
            return nr.reason
    except PBWError:
        pass
    for v in rep.verdicts.values():
        if not v.passed:
            return v.witness
    return None


def cmd_check_pbw(pres, args):
    inst = ff.build_instance(pres)
    methods = tuple(args.methods.split(",")) if args.methods else METHODS
    cap = args.cap or pres.cap("degree_cap")
    rep = pbw_check(inst.A, inst.act, inst.deform, methods, cap, raise_on_disagreement=False)
    text = rep.to_text()
    if not rep.agree:
        return EXIT_DISAGREE, text
    if rep.passed:
        return EXIT_PASS, text
    return EXIT_FAIL, text + f"\nwitness: {_witness(inst, rep)}"


def cmd_build(pres, args):
    A, saturated = ff.build_algebra(pres, args.kind)
    if not saturated:
        return EXIT_FAIL, f"dim = {A.dim}, not saturated"
    out = ff.Presentation(pres.field, ff.constants_block(A), pres.module, pres.deformation,
                          pres.caps, pres.name)
    return EXIT_PASS, ff.serialize(out).rstrip("\n")


def cmd_dims(pres, args):
    A, saturated = ff.build_algebra(pres)
    lines = [f"dim = {A.dim}, {'saturated' if saturated else 'not saturated'}"]
    if pres.module is not None:
        inst = ff.build_instance(pres)
        cap = args.cap or pres.cap("degree_cap")
        r = graded_dimension_oracle(inst.A, inst.act, inst.deform, cap)
        lines.append("filtered dims: " + " ".join(str(x) for x in r.dims))
        lines.append("PBW counts:    " + " ".join(str(x) for x in r.expected))
    return (EXIT_PASS if saturated else EXIT_FAIL), "\n".join(lines)


def cmd_normal_form(pres, args):
    inst = ff.build_instance(pres)
    sys_ = build_presentation(inst.A, inst.act, inst.deform)
    p = sys_.ring.parse(args.input)
    return EXIT_PASS, str(sys_.normal_form(p, step_cap=pres.cap("step_cap")))


def cmd_center(pres, args):
    inst = ff.build_instance(pres)
    rep = center_truncated(inst.A, inst.act, inst.deform, args.degree)
    lines = [f"dim = {rep.dim}"]
    lines += [f"  {t}" for t in rep.basis_text()]
    lines += [f"{k}: {_flag(v)}" for k, v in sorted(rep.hypotheses.items())]
    ok = rep.dim == 1 if rep.hypotheses_hold else True
    return (EXIT_PASS if ok else EXIT_FAIL), "\n".join(lines)


def cmd_abelianization(pres, args):
    inst = ff.build_instance(pres)
    rep = abelianization_truncated(inst.A, inst.act, inst.deform, args.degree)
    lines = ["dims:     " + " ".join(str(x) for x in rep.dims),
             "expected: " + " ".join(str(x) for x in rep.expected),
             f"dim m/([m,m] + A im(kappa_A) A) = {rep.m_quotient_dim}"]
    return (EXIT_PASS if rep.passed else EXIT_FAIL), "\n".join(lines)


def _theorem_text(name, inst, args):
    A, act, d = inst.A, inst.act, inst.deform
    if name == "tgeneric":
        rep = jacobi_grouplike_classify(A, act, d)
        return rep.consistent, rep.to_text()
    if name == "tnilcox":
        rep = nilcox_pbw_classify(A, act, d, cap=args.cap or 4)
        return rep.agree, rep.to_text()
    if name == "tsimple":
        rep = simple_module_suite(A, act, d, seed=args.seed)
        lines = [f"(1) simple modules factor through the augmentation: {_flag(rep.cond1)}",
                 f"(2) lambda and kappa_A land in m: {_flag(rep.cond2)}",
                 f"(3) H has a one-dimensional module: {_flag(rep.cond3)}",
                 f"valid one-dimensional modules: {rep.sampled_mu_valid}/{rep.sampled_mu_total}",
                 f"action condition: {_flag(rep.action_holds)}",
                 f"level containment: {_flag(rep.level_containment)}",
                 f"kernel submodules: {rep.kernel_claim_modules} modules, {_flag(rep.kernel_claim_ok)}",
                 f"trace obstruction: {_flag(rep.trace_obstruction)}",
                 "consistent" if rep.consistent else "INCONSISTENT"]
        return rep.consistent, "\n".join(lines)
    if name == "p1":
        rep = module_facts(A, act.matrices(), rng=random.Random(args.seed))
        lines = [f"dim V = {rep.dim}", f"mV = 0: {_flag(rep.mM_zero)}",
                 f"semisimple (trace form): {_flag(rep.semisimple_trace)}",
                 f"Prim(V) nonzero: {_flag(rep.prim_nonzero)}",
                 f"proper submodules inside a codim-1 submodule: {_flag(rep.proper_in_codim1)}",
                 f"mV inside every codim-1 submodule: {_flag(rep.mM_in_codim1)}",
                 f"codim-1 submodules found: {rep.codim1_found}",
                 f"Prim(A) inside m: {_flag(rep.prim_A_in_m)}",
                 "consistent" if rep.consistent else "INCONSISTENT"]
        return rep.consistent, "\n".join(lines)
    if name == "hopf":
        rep = hopf_inheritance_check(A, act, d, cap=args.cap or 4)
        lines = [f"part {p}: identities {_flag(rep.parts[p])}, relations {_flag(rep.relations[p])}"
                 for p in sorted(rep.parts)]
        lines += [f"PBW: {_flag(rep.pbw)}", f"primitive extension: {_flag(rep.extends_remark)}",
                  "consistent" if rep.consistent else "INCONSISTENT"]
        return rep.consistent, "\n".join(lines)
    if name == "yd":
        rep = yetter_drinfeld_suite(A, act, d)
        lines = [f"condition {k}: {_flag(v)}" for k, v in sorted(rep.pyd.items())]
        lines += [f"relation check {k}: {_flag(v)}" for k, v in sorted(rep.preln.items())]
        lines += [f"tau inverse: {_flag(rep.tau_inverse)}", f"tau equivariant: {_flag(rep.tau_equivariant)}",
                  f"centralizer = weight space: {_flag(rep.centralizer_is_weight_space)}",
                  "consistent" if rep.consistent else "INCONSISTENT"]
        return rep.consistent, "\n".join(lines)
    raise InputError(f"unknown theorem {name!r}; choose from {', '.join(THEOREMS)}")


def cmd_theorem(pres, args):
    ok, text = _theorem_text(args.name, ff.build_instance(pres), args)
    return (EXIT_PASS if ok else EXIT_FAIL), text


COMMANDS = {"check-pbw": cmd_check_pbw, "build": cmd_build, "dims": cmd_dims,
            "normal-form": cmd_normal_form, "center": cmd_center,
            "abelianization": cmd_abelianization, "theorem": cmd_theorem}


def run_file(command, path, args):
    """(exit code, report text) for one file; never raises on expected errors."""
    try:
        pres = ff.load(path)
        return COMMANDS[command](pres, args)
    except MethodDisagreement as e:
        return EXIT_DISAGREE, e.report.to_text()
    except (InputError, OSError) as e:
        return EXIT_INPUT, f"input error: {e}"
    except PBWError as e:
        return EXIT_FAIL, f"{type(e).__name__}: {e}"


def _job(item):
    return run_file(*item)


def build_parser():
    p = argparse.ArgumentParser(prog="pbwdeform", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        sp = sub.add_parser(name, **kw)
        sp.add_argument("files", nargs="+")
        return sp

    sp = add("check-pbw", help="run the PBW tests")
    sp.add_argument("--methods", help="comma separated subset of " + ",".join(METHODS))
    sp.add_argument("--cap", type=int)
    sp = add("build", help="print the algebra as explicit structure constants")
    sp.add_argument("--kind", choices=ff.KINDS)
    sp = add("dims", help="algebra dimension and filtered dimensions of H")
    sp.add_argument("--cap", type=int)
    sp = add("normal-form", help="normal form of a word or polynomial in H")
    sp.add_argument("--input", required=True)
    sp = add("center", help="elements commuting with all generators up to a degree")
    sp.add_argument("--degree", type=int, default=3)
    sp = add("abelianization", help="graded dimensions of H/[H,H]")
    sp.add_argument("--degree", type=int, default=3)
    sp = add("theorem", help="run one of the theorem checks")
    sp.add_argument("--name", required=True, choices=THEOREMS)
    sp.add_argument("--cap", type=int)
    return p


def _workers():
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise InputError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_PASS
    try:
        workers = _workers()
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    jobs = [(args.command, f, args) for f in args.files]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_job, jobs))
    else:
        results = [_job(j) for j in jobs]
    for (_, path, _), (code, text) in zip(jobs, results):
        if len(jobs) > 1:
            print(f"== {path}")
        print(text)
    return max(code for code, _ in results)


if __name__ == "__main__":
    sys.exit(main())
