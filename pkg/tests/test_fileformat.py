import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pbwdeform import fileformat as ff
from pbwdeform.deformation import pbw_check
from pbwdeform.errors import InputError
from pbwdeform.samples import random_instances, reflection_z2, usl2, weyl

FIXTURES = ["weyl.alg", "usl2.alg", "nc_a2.alg"]


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_are_canonical(fixture_path, name):
    text = open(fixture_path(name)).read()
    assert ff.serialize(ff.parse(text)) == text


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_build(fixture_path, name):
    inst = ff.build_instance(ff.load(fixture_path(name)))
    assert pbw_check(inst.A, inst.act, inst.deform).passed


def test_fixture_structure_matches_samples(fixture_path):
    for name, make in [("weyl.alg", weyl), ("usl2.alg", usl2)]:
        inst = ff.build_instance(ff.load(fixture_path(name)))
        ref = make()
        assert inst.deform.v == ref.deform.v and inst.deform.w == ref.deform.w
        assert inst.act.s == ref.act.s


def test_nc_a2_dimension(fixture_path):
    A, saturated = ff.build_algebra(ff.load(fixture_path("nc_a2.alg")))
    assert A.dim == 6 and saturated


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_round_trip_random_instances(seed):
    inst = random_instances(seed, 1)[0]
    pres = ff.from_instance(inst)
    text = ff.serialize(pres)
    again = ff.parse(text)
    assert ff.serialize(again) == text
    back = ff.build_instance(again)
    assert back.A.u == inst.A.u and back.A.r == inst.A.r
    assert back.act.s == inst.act.s
    assert (back.deform.q, back.deform.v, back.deform.w) == (inst.deform.q, inst.deform.v, inst.deform.w)


def test_rationals_are_reduced():
    raw = json.loads(open_fixture_text("weyl"))
    raw["deformation"]["v"] = [[[1, 0, 0], 2, 4]]
    pres = ff.from_dict(raw)
    assert pres.deformation["v"] == [((1, 0, 0), Fraction(1, 2))]
    assert '[[1, 0, 0], 1, 2]' in ff.serialize(pres)


def test_skew_entries_are_folded():
    raw = json.loads(open_fixture_text("weyl"))
    raw["deformation"]["v"] = [[[0, 1, 0], 1, 1]]
    pres = ff.from_dict(raw)
    assert pres.deformation["v"] == [((1, 0, 0), Fraction(-1))]


def open_fixture_text(name):
    from pathlib import Path
    return (Path(__file__).resolve().parents[1] / "fixtures" / f"{name}.alg").read_text()


@pytest.mark.parametrize("mutate", [
    lambda r: r.pop("field"),
    lambda r: r.update(extra=1),
    lambda r: r["field"].update(kind="R"),
    lambda r: r["field"].update(kind="Fp", p=4),
    lambda r: r["deformation"].update(v=[[[1, 0], 1, 1]]),
    lambda r: r["deformation"].update(v=[[[1, 0, 0], 1, 0]]),
    lambda r: r["deformation"].update(v=[[[1, 0, 0], 1.5, 1]]),
    lambda r: r["deformation"].update(v=[[[1, 1, 0], 1, 1]]),
    lambda r: r["deformation"].update(v=[[[1, 0, 0], 1, 1], [[1, 0, 0], 2, 1]]),
    lambda r: r["module"].update(dimV=0),
    lambda r: r["algebra"].update(constructor={"kind": "nilcoxeter"}),
    lambda r: r["algebra"]["constants"].update(dim=0),
    lambda r: r.pop("module"),
])
def test_schema_errors(mutate):
    raw = json.loads(open_fixture_text("weyl"))
    mutate(raw)
    with pytest.raises(InputError):
        ff.build_instance(ff.from_dict(raw))


def test_out_of_range_indices():
    raw = json.loads(open_fixture_text("weyl"))
    raw["deformation"]["v"] = [[[2, 0, 0], 1, 1]]
    with pytest.raises(InputError):
        ff.build_instance(ff.from_dict(raw))
    raw = json.loads(open_fixture_text("weyl"))
    raw["deformation"]["v"] = [[[1, 0, 1], 1, 1]]
    with pytest.raises(InputError):
        ff.build_instance(ff.from_dict(raw))


def test_invalid_json():
    with pytest.raises(InputError):
        ff.parse("{not json")


@pytest.mark.parametrize("ctor,dim", [
    ({"kind": "group", "order": 3}, 3),
    ({"kind": "group", "coxeter": "A2"}, 6),
    ({"kind": "group", "table": [[0, 1], [1, 0]]}, 2),
    ({"kind": "monoid_zero", "table": [[0, 1], [1, None]]}, 2),
    ({"kind": "nilcoxeter", "coxeter": "B2"}, 8),
    ({"kind": "nilcoxeter", "coxeter": [[1, 2], [2, 1]], "d": [2, 3]}, 6),
    ({"kind": "zero_hecke", "coxeter": "A2"}, 6),
    ({"kind": "generic_hecke", "coxeter": "A1", "d": [2], "p": [[[0, 0], 1, 1]]}, 2),
    ({"kind": "a1n", "d": [2, 3]}, 6),
])
def test_constructors(ctor, dim):
    pres = ff.from_dict({"field": {"kind": "Q"}, "algebra": {"constructor": ctor}})
    A, saturated = ff.build_algebra(pres)
    assert A.dim == dim and saturated
    assert ff.serialize(ff.parse(ff.serialize(pres))) == ff.serialize(pres)


def test_bad_monoid_table():
    pres = ff.from_dict({"field": {"kind": "Q"},
                         "algebra": {"constructor": {"kind": "monoid_zero", "table": [[0, 1], [1, 0]],
                                                     "unit": 1}}})
    with pytest.raises(InputError):
        ff.build_algebra(pres)


def test_kind_override():
    pres = ff.from_dict({"field": {"kind": "Q"},
                         "algebra": {"constructor": {"kind": "nilcoxeter", "coxeter": "A2"}}})
    A, _ = ff.build_algebra(pres, kind="zero_hecke")
    assert A.u[1][1] == {1: A.field.one}


def test_fp_file():
    pres = ff.from_instance(reflection_z2(1, 1))
    raw = ff.to_dict(pres)
    raw["field"] = {"kind": "Fp", "p": 5}
    inst = ff.build_instance(ff.from_dict(raw))
    assert inst.A.field.characteristic == 5
    assert pbw_check(inst.A, inst.act, inst.deform).passed
