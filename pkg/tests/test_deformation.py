import random

import pytest

from pbwdeform.action import ModuleAction
from pbwdeform.core import QQ, PrimeField
from pbwdeform.deformation import (CONDITIONS, METHODS, DeformationData, HkLayout,
                                   build_presentation, check_ambiguities,
                                   check_constant_identities, check_symbolic_conditions,
                                   condition_residuals, defining_relations,
                                   expected_pbw_counts, filtered_dimensions,
                                   graded_dimension_oracle, homogenize_and_extract_mu,
                                   in_ideal_truncated, lambda_preserves_degree, pbw_check,
                                   residual_as_terms, validate)
from pbwdeform.errors import InputError, PBWRequired, ValidationError
from pbwdeform.samples import (named_instances, nc_a1_example, random_instances, reflection_z2,
                               usl2, usl2_perturbed, weyl)


def parts(inst):
    return inst.A, inst.act, inst.deform


@pytest.mark.parametrize("make", [weyl, usl2, lambda: reflection_z2(1, 1)])
def test_pbw_examples_pass(make):
    rep = pbw_check(*parts(make()))
    assert rep.passed and set(rep.verdicts) == set(METHODS)


def test_perturbed_usl2_fails_everywhere():
    rep = pbw_check(*parts(usl2_perturbed()))
    assert rep.agree and not rep.passed
    assert check_symbolic_conditions(*parts(usl2_perturbed())).first_failure()[0] == "jacobi2"


def test_kappa_one_over_nilcoxeter_fails():
    inst = nc_a1_example({(1, 0): {0: 1}})
    rep = pbw_check(*parts(inst))
    assert not rep.passed and rep.agree
    assert rep.verdicts["dimension"].witness.startswith("degree 1")
    inst = nc_a1_example({(1, 0): {1: 1}})
    assert pbw_check(*parts(inst)).passed


def test_named_instances_agree():
    for inst in named_instances():
        assert pbw_check(*parts(inst), raise_on_disagreement=False).agree, inst.name


def test_symbolic_and_constant_routes_agree_per_instance():
    for inst in random_instances(11, 40):
        s = check_symbolic_conditions(*parts(inst)).passed
        c = check_constant_identities(*parts(inst)).passed
        assert s == c


def test_expected_counts():
    assert expected_pbw_counts(1, 2, 3) == [1, 3, 6, 10]
    # a1 is a letter of length one: 1 | x1, a1 | x1 x1, x1 a1
    assert expected_pbw_counts(2, 1, 2) == [1, 3, 5]


def test_weyl_relations_and_layout():
    L, rels = defining_relations(*parts(weyl()))
    assert rels == [{(1, 0): QQ.one, (0, 1): -QQ.one, (): -QQ.one}]
    L = HkLayout(3, 2, QQ)
    assert L.a(0) == () and L.a(2) == (3,) and L.x(1) == (1,)


def test_oracle_monotone_under_relaxation():
    for inst in random_instances(5, 10):
        L, rels = defining_relations(*parts(inst))
        full = filtered_dimensions(len(L.alphabet), rels, 3, QQ)
        for i in range(len(rels)):
            relaxed = filtered_dimensions(len(L.alphabet), rels[:i] + rels[i + 1:], 3, QQ)
            assert all(r >= f for r, f in zip(relaxed, full))


def test_oracle_cap_guards():
    with pytest.raises(InputError):
        graded_dimension_oracle(*parts(weyl()), degree_cap=2)
    with pytest.raises(InputError):
        graded_dimension_oracle(*parts(weyl()), degree_cap=9)


def test_conditions_hold_inside_h():
    # every residual is a consequence of the relations, even when PBW fails
    seen = 0
    for inst in random_instances(3, 30):
        res = condition_residuals(*parts(inst))
        for name in CONDITIONS:
            for r in list(res[name].values())[:2]:
                terms = residual_as_terms(*parts(inst), name, r)
                assert in_ideal_truncated(*parts(inst), terms, cap=3)
                seen += 1
    assert seen > 0


def test_lambda_zero_iff_degree_preserved():
    for inst in random_instances(8, 40):
        assert (not inst.deform.q) == lambda_preserves_degree(*parts(inst))


def test_mu_extraction_weyl_and_usl2():
    for inst in (weyl(), usl2()):
        rep = homogenize_and_extract_mu(*parts(inst))
        assert rep.passed and rep.flat
    rep = homogenize_and_extract_mu(*parts(usl2()))
    # [e, f] = h read off mu_1
    diff = dict(rep.mu1_vv[(0, 1)])
    for w, c in rep.mu1_vv[(1, 0)].items():
        diff[w] = diff.get(w, QQ.zero) - c
    assert {w: c for w, c in diff.items() if c} == {(2,): QQ.one}


def test_mu_extraction_requires_pbw():
    with pytest.raises(PBWRequired):
        homogenize_and_extract_mu(*parts(usl2_perturbed()))


def test_validation_errors():
    inst = weyl()
    A, act = inst.A, inst.act
    with pytest.raises(ValidationError):
        validate(A, act, DeformationData(QQ, 1, 3))
    inst = reflection_z2()
    bad = DeformationData(QQ, 2, 2, q={(0, 0): {1: 1}})
    with pytest.raises(ValidationError):
        validate(inst.A, inst.act, bad)
    with pytest.raises(InputError):
        DeformationData(QQ, 1, 2, v={(0, 0): {0: 1}})
    with pytest.raises(InputError):
        DeformationData(QQ, 1, 2, v={(1, 0): {3: 1}})


def test_skew_entries_fold():
    d = DeformationData(QQ, 1, 2, v={(0, 1): {0: 1}})
    assert d.v == {(1, 0): {0: QQ(-1)}}
    assert d.vfull(0, 1) == {0: QQ.one}


def test_ambiguity_counts_cover_all_types():
    rep = check_ambiguities(*parts(reflection_z2()))
    assert rep.passed
    assert {"axx", "aax", "aaa"} <= set(rep.counts)
    assert set(check_ambiguities(*parts(usl2())).counts) == {"xxx"}


def test_pbw_mod_p():
    F = PrimeField(5)
    assert pbw_check(*parts(weyl(F))).passed
    assert not pbw_check(*parts(usl2_perturbed(F))).passed


def test_usl2_normal_form():
    sys_ = build_presentation(*parts(usl2()))
    p = sys_.ring.parse("x2 x1")
    assert str(sys_.normal_form(p)) == "x1 x2 - x3"
