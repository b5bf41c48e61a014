"""Reading and writing presentation files (JSON with sparse triple tensors).

A tensor entry is ``[[i1, ..., ir], num, den]``; indices are 0-based.  See
fixtures/SCHEMA.md for the full layout.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from .action import ModuleAction
from .coalgebra import (AlgebraWithCoproduct, CoxeterData, MonoidWithZero, a1n_monoid,
                        build_generic_hecke, build_nilcoxeter, coxeter_group_algebra,
                        coxeter_matrix, cyclic_group_algebra, group_algebra, monoid_algebra,
                        zero_hecke)
from .core import make_field
from .deformation import DeformationData, Instance
from .errors import InputError

KINDS = ("group", "monoid_zero", "nilcoxeter", "zero_hecke", "generic_hecke", "a1n")
TOP_KEYS = {"name", "field", "algebra", "module", "deformation", "caps"}
CONST_KEYS = {"dim", "names", "u", "r", "counit", "antipode"}
CTOR_KEYS = {"kind", "coxeter", "d", "p", "order", "table", "unit"}
CAP_DEFAULTS = {"degree_cap": 4, "step_cap": 1_000_000, "build_cap": 12}


def _req(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{where}: missing key {key!r}")
    return obj[key]


def _check_keys(obj, allowed, where):
    if not isinstance(obj, dict):
        raise InputError(f"{where} must be an object")
    extra = set(obj) - allowed
    if extra:
        raise InputError(f"{where}: unknown keys {sorted(extra)}")


def _int(x, where):
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{where}: expected an integer, got {x!r}")
    return x


def parse_triples(raw, arity, where):
    """Canonical sorted list of (indices, Fraction) with zero entries dropped."""
    if not isinstance(raw, list):
        raise InputError(f"{where} must be a list of triples")
    seen = {}
    for ent in raw:
        if not (isinstance(ent, list) and len(ent) == 3 and isinstance(ent[0], list)):
            raise InputError(f"{where}: malformed entry {ent!r}")
        idx = tuple(_int(i, where) for i in ent[0])
        if len(idx) != arity:
            raise InputError(f"{where}: expected {arity} indices, got {len(idx)}")
        if any(i < 0 for i in idx):
            raise InputError(f"{where}: negative index in {ent!r}")
        num, den = _int(ent[1], where), _int(ent[2], where)
        if den == 0:
            raise InputError(f"{where}: zero denominator")
        if idx in seen:
            raise InputError(f"{where}: duplicate entry for {list(idx)}")
        seen[idx] = Fraction(num, den)
    return sorted((k, c) for k, c in seen.items() if c)


def _emit_triples(entries):
    return [[list(idx), c.numerator, c.denominator] for idx, c in entries]


def _check_range(entries, bounds, where):
    for idx, _ in entries:
        for i, b in zip(idx, bounds):
            if i >= b:
                raise InputError(f"{where}: index {list(idx)} out of range")


@dataclass
class Presentation:
    field: dict
    algebra: dict            # {"constants": {...}} or {"constructor": {...}}, tensors canonical
    module: Optional[dict] = None
    deformation: Optional[dict] = None
    caps: dict = dc_field(default_factory=lambda: dict(CAP_DEFAULTS))
    name: str = ""

    @property
    def F(self):
        return make_field(self.field["kind"], self.field.get("p"))

    def cap(self, key):
        return self.caps.get(key, CAP_DEFAULTS[key])


def _parse_field(raw):
    _check_keys(raw, {"kind", "p"}, "field")
    kind = _req(raw, "kind", "field")
    if kind == "Q":
        return {"kind": "Q"}
    if kind == "Fp":
        p = _int(_req(raw, "p", "field"), "field.p")
        make_field("Fp", p)
        return {"kind": "Fp", "p": p}
    raise InputError(f"field kind must be 'Q' or 'Fp', got {kind!r}")


def _parse_constants(raw):
    _check_keys(raw, CONST_KEYS, "algebra.constants")
    dim = _int(_req(raw, "dim", "algebra.constants"), "dim")
    if dim < 1:
        raise InputError("algebra dimension must be positive")
    out = {"dim": dim, "u": parse_triples(raw.get("u", []), 3, "u")}
    _check_range(out["u"], (dim,) * 3, "u")
    if "r" in raw:
        out["r"] = parse_triples(raw["r"], 3, "r")
        _check_range(out["r"], (dim,) * 3, "r")
    if "counit" in raw:
        out["counit"] = parse_triples(raw["counit"], 1, "counit")
        _check_range(out["counit"], (dim,), "counit")
    if "antipode" in raw:
        out["antipode"] = parse_triples(raw["antipode"], 2, "antipode")
        _check_range(out["antipode"], (dim, dim), "antipode")
    if "names" in raw:
        names = raw["names"]
        if not (isinstance(names, list) and len(names) == dim and all(isinstance(s, str) for s in names)):
            raise InputError("names must list one string per basis element")
        out["names"] = list(names)
    return out


def _parse_coxeter(raw):
    if isinstance(raw, str):
        return raw
    if not (isinstance(raw, list) and all(isinstance(r, list) for r in raw)):
        raise InputError("coxeter must be a type name or a matrix")
    return [[_int(x, "coxeter") for x in row] for row in raw]


def _parse_constructor(raw):
    _check_keys(raw, CTOR_KEYS, "algebra.constructor")
    kind = _req(raw, "kind", "algebra.constructor")
    if kind not in KINDS:
        raise InputError(f"constructor kind must be one of {KINDS}, got {kind!r}")
    out = {"kind": kind}
    if "coxeter" in raw:
        out["coxeter"] = _parse_coxeter(raw["coxeter"])
    if "d" in raw:
        d = raw["d"]
        out["d"] = [_int(x, "d") for x in d] if isinstance(d, list) else _int(d, "d")
    if "p" in raw:
        out["p"] = parse_triples(raw["p"], 2, "p")
    if "order" in raw:
        out["order"] = _int(raw["order"], "order")
    if "table" in raw:
        t = raw["table"]
        if not (isinstance(t, list) and all(isinstance(r, list) and len(r) == len(t) for r in t)):
            raise InputError("table must be a square list of lists")
        out["table"] = [[None if x is None else _int(x, "table") for x in r] for r in t]
    if "unit" in raw:
        out["unit"] = _int(raw["unit"], "unit")
    need = {"nilcoxeter": ["coxeter"], "zero_hecke": ["coxeter"], "generic_hecke": ["coxeter", "p"],
            "a1n": ["d"], "monoid_zero": ["table"]}.get(kind, [])
    for k in need:
        _req(out, k, f"constructor {kind}")
    if kind == "group" and sum(k in out for k in ("order", "table", "coxeter")) != 1:
        raise InputError("a group constructor takes exactly one of order, table or coxeter")
    return out


def _parse_module(raw):
    _check_keys(raw, {"dimV", "s"}, "module")
    n = _int(_req(raw, "dimV", "module"), "dimV")
    if n < 1:
        raise InputError("dimV must be positive")
    return {"dimV": n, "s": parse_triples(raw.get("s", []), 3, "s")}


def _fold_skew(entries, where):
    """Rewrite entries with j < k as (k, j) with the opposite sign."""
    acc = {}
    for (j, k, l), c in entries:
        if j == k:
            raise InputError(f"{where} must be alternating: diagonal entry at {[j, k, l]}")
        key, sign = ((j, k, l), 1) if j > k else ((k, j, l), -1)
        acc[key] = acc.get(key, 0) + sign * c
    return sorted((k, c) for k, c in acc.items() if c)


def _parse_deformation(raw):
    _check_keys(raw, {"q", "v", "w"}, "deformation")
    out = {k: parse_triples(raw.get(k, []), 3, k) for k in ("q", "v", "w")}
    out["v"] = _fold_skew(out["v"], "v")
    out["w"] = _fold_skew(out["w"], "w")
    return out


def from_dict(raw):
    _check_keys(raw, TOP_KEYS, "file")
    alg = _req(raw, "algebra", "file")
    _check_keys(alg, {"constants", "constructor"}, "algebra")
    if len(alg) != 1:
        raise InputError("algebra needs exactly one of constants or constructor")
    if "constants" in alg:
        algebra = {"constants": _parse_constants(alg["constants"])}
    else:
        algebra = {"constructor": _parse_constructor(alg["constructor"])}
    caps = dict(CAP_DEFAULTS)
    if "caps" in raw:
        _check_keys(raw["caps"], set(CAP_DEFAULTS), "caps")
        for k, v in raw["caps"].items():
            caps[k] = _int(v, f"caps.{k}")
    name = raw.get("name", "")
    if not isinstance(name, str):
        raise InputError("name must be a string")
    module = _parse_module(raw["module"]) if "module" in raw else None
    deform = _parse_deformation(raw["deformation"]) if "deformation" in raw else None
    if deform is not None and module is None:
        raise InputError("a deformation needs a module")
    return Presentation(_parse_field(_req(raw, "field", "file")), algebra, module, deform, caps, name)


def parse(text):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"not valid JSON: {e}") from None
    return from_dict(raw)


def load(path):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def to_dict(pres):
    out = {"field": dict(pres.field), "caps": dict(sorted(pres.caps.items()))}
    if pres.name:
        out["name"] = pres.name
    if "constants" in pres.algebra:
        c = pres.algebra["constants"]
        body = {"dim": c["dim"], "u": _emit_triples(c["u"])}
        for k in ("r", "counit", "antipode"):
            if k in c:
                body[k] = _emit_triples(c[k])
        if "names" in c:
            body["names"] = list(c["names"])
        out["algebra"] = {"constants": body}
    else:
        c = dict(pres.algebra["constructor"])
        if "p" in c:
            c["p"] = _emit_triples(c["p"])
        out["algebra"] = {"constructor": c}
    if pres.module is not None:
        out["module"] = {"dimV": pres.module["dimV"], "s": _emit_triples(pres.module["s"])}
    if pres.deformation is not None:
        out["deformation"] = {k: _emit_triples(pres.deformation[k]) for k in ("q", "v", "w")}
    return out


def _compact(x):
    return json.dumps(x, separators=(", ", ": "))


def _dump(obj, pad=""):
    """Sorted-key JSON with one tensor entry per line."""
    inner = pad + "  "
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_dump(obj[k], inner)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list) and obj and all(isinstance(e, list) for e in obj):
        return "[\n" + ",\n".join(inner + _compact(e) for e in obj) + "\n" + pad + "]"
    return _compact(obj)


def serialize(pres):
    return _dump(to_dict(pres)) + "\n"


# ---------------------------------------------------------------- building objects


def _grouped(entries, F):
    """{(i1, ..., i_{r-1}): {i_r: c}} from canonical triples."""
    out = {}
    for idx, c in entries:
        out.setdefault(idx[:-1], {})[idx[-1]] = F((c.numerator, c.denominator))
    return out


def _coxeter(ctor, d=None, p=None):
    raw = ctor["coxeter"]
    m = coxeter_matrix(raw) if isinstance(raw, str) else tuple(tuple(r) for r in raw)
    if d is None:
        d = ctor.get("d", 2)
    if isinstance(d, int):
        d = (d,) * len(m)
    return CoxeterData(m, tuple(d), p)


def build_algebra(pres, kind=None):
    """(algebra, saturated) for the file's algebra; ``kind`` overrides the constructor kind."""
    F = pres.F
    if "constants" in pres.algebra:
        if kind is not None:
            raise InputError("--kind applies only to constructor files")
        c = pres.algebra["constants"]
        mult = {jk: vec for jk, vec in _grouped(c["u"], F).items()}
        coprod = None
        if "r" in c:
            coprod = {}
            for (j, k, l), val in c["r"]:
                coprod.setdefault(j, {})[(k, l)] = F((val.numerator, val.denominator))
        counit = None
        if "counit" in c:
            counit = [F.zero] * c["dim"]
            for (j,), val in c["counit"]:
                counit[j] = F((val.numerator, val.denominator))
        anti = None
        if "antipode" in c:
            g = _grouped(c["antipode"], F)
            anti = [g.get((j,), {}) for j in range(c["dim"])]
        return AlgebraWithCoproduct(F, c["dim"], {(j, k): v for (j, k), v in mult.items()},
                                    coprod, counit, anti, names=c.get("names")), True
    ctor = pres.algebra["constructor"]
    kind = kind or ctor["kind"]
    cap = pres.cap("build_cap")
    if kind == "group":
        if "order" in ctor:
            return cyclic_group_algebra(ctor["order"], F), True
        if "table" in ctor:
            t = ctor["table"]
            n = len(t)
            if any(x is None or not 0 <= x < n for r in t for x in r):
                raise InputError("group table entries must be element indices")
            return group_algebra(list(range(n)), lambda a, b: t[a][b], F), True
        return coxeter_group_algebra(_coxeter(ctor, 2), cap, F).algebra, True
    if kind == "monoid_zero":
        t = ctor["table"]
        n = len(t)
        if any(x is not None and not 0 <= x < n for r in t for x in r):
            raise InputError("monoid table entries must be element indices or null")
        table = {(i, j): (n if t[i][j] is None else t[i][j]) for i in range(n) for j in range(n)}
        for i in range(n + 1):
            table[(i, n)] = table[(n, i)] = n
        M = MonoidWithZero(list(range(n)) + [None], table, ctor.get("unit", 0))
        if not M.check():
            raise InputError("the table is not a monoid with zero")
        return monoid_algebra(M, F), True
    if kind == "a1n":
        d = ctor["d"]
        return monoid_algebra(a1n_monoid([d] if isinstance(d, int) else d), F), True
    if kind == "nilcoxeter":
        b = build_nilcoxeter(_coxeter(ctor), cap, F)
    elif kind == "zero_hecke":
        b = zero_hecke(_coxeter(ctor, 2), cap, F)
    elif kind == "generic_hecke":
        cx = _coxeter(ctor)
        p = [[F.zero] * di for di in cx.d]
        for (i, e), val in ctor.get("p", []):
            if i >= cx.rank or e >= cx.d[i]:
                raise InputError(f"p index {[i, e]} out of range")
            p[i][e] = F((val.numerator, val.denominator))
        b = build_generic_hecke(cx, cap, F, tuple(tuple(x) for x in p))
    else:
        raise InputError(f"unknown constructor kind {kind!r}")
    return b.algebra, b.saturated


def build_instance(pres, kind=None):
    A, _ = build_algebra(pres, kind)
    if pres.module is None:
        raise InputError("the file has no module section")
    F = A.field
    n = pres.module["dimV"]
    _check_range(pres.module["s"], (A.dim, n, n), "s")
    act = ModuleAction(F, A.dim, n, _grouped(pres.module["s"], F))
    dd = pres.deformation or {"q": [], "v": [], "w": []}
    _check_range(dd["q"], (A.dim, n, A.dim), "q")
    _check_range(dd["v"], (n, n, A.dim), "v")
    _check_range(dd["w"], (n, n, n), "w")
    d = DeformationData(F, A.dim, n, _grouped(dd["q"], F), _grouped(dd["v"], F), _grouped(dd["w"], F))
    return Instance(A, act, d, pres.name)


def _triples_from(F, items):
    out = []
    for idx, c in items:
        if c:
            n, den = F.to_pair(c)
            out.append((tuple(idx), Fraction(n, den)))
    return sorted(out)


def constants_block(A):
    F = A.field
    c = {"dim": A.dim, "names": list(A.names),
         "u": _triples_from(F, [((j, k, l), x) for j in range(A.dim) for k in range(A.dim)
                                for l, x in A.u[j][k].items() if j and k])}
    if A.r is not None:
        c["r"] = _triples_from(F, [((j, k, l), x) for j in range(A.dim) for (k, l), x in A.r[j].items()])
    if A.counit is not None:
        c["counit"] = _triples_from(F, [((j,), x) for j, x in enumerate(A.counit)])
    if A.antipode is not None:
        c["antipode"] = _triples_from(F, [((j, k), x) for j, row in enumerate(A.antipode)
                                          for k, x in row.items()])
    return {"constants": c}


def from_instance(inst, caps=None):
    """Presentation with explicit structure constants for an Instance."""
    A, act, d = inst.A, inst.act, inst.deform
    F = A.field
    field = {"kind": "Q"} if F.characteristic == 0 else {"kind": "Fp", "p": F.characteristic}
    s = _triples_from(F, [((j, k, h), x) for (j, k), row in act.s.items() for h, x in row.items()
                          if not (j == 0 and row == {k: F.one})])
    deform = {"q": _triples_from(F, [((j, k, l), x) for (j, k), vec in d.q.items() for l, x in vec.items()]),
              "v": _triples_from(F, [((j, k, l), x) for (j, k), vec in d.v.items() for l, x in vec.items()]),
              "w": _triples_from(F, [((j, k, h), x) for (j, k), vec in d.w.items() for h, x in vec.items()])}
    return Presentation(field, constants_block(A), {"dimV": act.dim_v, "s": s}, deform,
                        dict(caps or CAP_DEFAULTS), inst.name)
