import random

import pytest

from pbwdeform.action import ModuleAction
from pbwdeform.coalgebra import cyclic_group_algebra, primitive_coproduct_algebra
from pbwdeform.core import QQ, PrimeField
from pbwdeform.deformation import DeformationData
from pbwdeform.errors import Assume2Violated, HypothesisViolated, MissingStructure, NotGrouplikeBasis
from pbwdeform.linalg import identity
from pbwdeform.samples import (NILPOTENT_ZOO, algebra_zoo, grouplike_instances, nc_a1_example,
                               random_instances, random_module, reflection_z2, usl2, weyl)
from pbwdeform.theorems import (abelianization_truncated, assume2, center_truncated,
                                hopf_inheritance_check, jacobi_grouplike_classify,
                                module_facts, nilcox_pbw_classify, simple_module_suite,
                                symplectic_reflection_rank, yetter_drinfeld_suite)

F = QQ
ZOO = algebra_zoo()


def parts(inst):
    return inst.A, inst.act, inst.deform


def diag(*xs):
    return [[F(x) if i == j else F.zero for j in range(len(xs))] for i, x in enumerate(xs)]


# ---------------------------------------------------------------- assumptions


def test_assume2():
    data = assume2(ZOO["NC_A1(3)"])
    assert data.ell == 3 and data.chi == [1, 0, 0]
    with pytest.raises(Assume2Violated):
        assume2(ZOO["kZ2"])


# ---------------------------------------------------------------- Jacobi over grouplike bases


def test_reflection_is_admissible():
    rep = jacobi_grouplike_classify(*parts(reflection_z2(1, 1)))
    assert [c.tag for c in rep.classes] == ["IdentityAction", "ReflectionLike"]
    assert rep.to_text().endswith("all m admissible; Ejac verified")
    assert rep.consistent


def test_nilpotent_grouplike_on_k3_is_inadmissible():
    inst = nc_a1_example({(1, 0): {1: 1}}, dim_v=3)
    rep = jacobi_grouplike_classify(*parts(inst))
    assert rep.classes[1].tag == "Inadmissible" and not rep.classes[1].ejac
    assert rep.consistent and not rep.symbolic_jacobi


def test_jacobi_needs_grouplike_basis_and_no_kappa_v():
    with pytest.raises(HypothesisViolated):
        jacobi_grouplike_classify(*parts(usl2()))
    A = primitive_coproduct_algebra(PrimeField(2))
    act = ModuleAction(A.field, 2, 2, {})
    with pytest.raises(NotGrouplikeBasis):
        jacobi_grouplike_classify(A, act, DeformationData(A.field, 2, 2))


@pytest.mark.parametrize("field", [QQ, PrimeField(5)])
def test_jacobi_classifier_random(field):
    for inst in grouplike_instances(2, 40, field):
        assert jacobi_grouplike_classify(*parts(inst)).consistent, inst.name


# ---------------------------------------------------------------- nil-Coxeter PBW classification


@pytest.mark.parametrize("ka,kv,dim_v,pbw", [
    ({(1, 0): {1: 1}}, None, 2, True),
    ({(1, 0): {0: 1}}, None, 2, False),
    ({(1, 0): {1: 1}}, {(1, 0): {0: 1}}, 2, True),
    ({(1, 0): {1: 1}}, {(1, 0): {1: 1}}, 2, False),
    ({(2, 1): {1: 1}}, None, 3, False),
    ({}, None, 3, True),
])
def test_nilcox_examples(ka, kv, dim_v, pbw):
    rep = nilcox_pbw_classify(*parts(nc_a1_example(ka, kv, dim_v)))
    assert rep.predicted == pbw and rep.agree


def test_nilcox_reason_text():
    rep = nilcox_pbw_classify(*parts(nc_a1_example({(1, 0): {0: 1}})))
    assert rep.reason.startswith("im κ_A ⊄ Prim")


def test_nilcox_random_agree():
    n = 0
    for inst in random_instances(4, 200):
        if inst.name.split("/")[0] not in NILPOTENT_ZOO or inst.deform.q:
            continue
        if inst.act.dim_v > 2 and inst.deform.w:
            continue
        assert nilcox_pbw_classify(*parts(inst)).agree, inst.name
        n += 1
    assert n > 10


# ---------------------------------------------------------------- one-dimensional and simple modules


@pytest.mark.parametrize("ka", [{(1, 0): {1: 1}}, {(1, 0): {0: 1}}, {}])
def test_simple_module_suite(ka):
    rep = simple_module_suite(*parts(nc_a1_example(ka)))
    assert rep.consistent
    assert rep.cond2 == (0 not in ka.get((1, 0), {}))


def test_simple_module_suite_random():
    n = 0
    for inst in random_instances(6, 120):
        if inst.name.split("/")[0] not in NILPOTENT_ZOO or inst.deform.w:
            continue
        assert simple_module_suite(*parts(inst)).consistent, inst.name
        n += 1
    assert n > 10


def test_module_facts_random():
    rng = random.Random(3)
    for name in NILPOTENT_ZOO:
        A = ZOO[name]
        for dim in (1, 2, 3):
            act = random_module(A, dim, rng)
            assert module_facts(A, act.matrices(), rng=rng).consistent


def test_module_facts_trace_only_in_char_zero():
    A = ZOO["NC_A1(2)"].with_field(PrimeField(5))
    act = random_module(A, 2, random.Random(1))
    f = module_facts(A, act.matrices(), rng=random.Random(1))
    assert f.semisimple_trace is None and f.consistent


# ---------------------------------------------------------------- center and abelianization


def test_center_dimension_one():
    rep = center_truncated(*parts(nc_a1_example({(1, 0): {1: 1}})), 3)
    assert rep.hypotheses_hold and rep.dim == 1 and rep.basis_text() == ["1"]


def test_center_of_commutative_smash_is_large():
    A = cyclic_group_algebra(2)
    act = ModuleAction.from_matrices(F, [identity(2, F), identity(2, F)])
    rep = center_truncated(A, act, DeformationData(F, 2, 2), 2)
    assert not rep.hypotheses_hold and rep.dim == 12


def test_weyl_center_is_trivial():
    # the Weyl algebra has trivial center in characteristic zero
    rep = center_truncated(*parts(weyl()), 4)
    assert rep.dim == 1


def test_abelianization_dims():
    rep = abelianization_truncated(*parts(nc_a1_example({(1, 0): {1: 1}})), 3)
    assert rep.dims == [1, 2, 3, 4] and rep.passed
    rep = abelianization_truncated(*parts(nc_a1_example({})), 3)
    assert rep.dims == [2, 2, 3, 4] and rep.passed


def test_abelianization_slack_stable():
    inst = nc_a1_example({(1, 0): {1: 1}})
    assert abelianization_truncated(*parts(inst), 3, slack=2).dims == [1, 2, 3, 4]


def test_abelianization_hypotheses():
    with pytest.raises(HypothesisViolated):
        abelianization_truncated(*parts(nc_a1_example({(1, 0): {0: 1}})), 2)
    with pytest.raises(HypothesisViolated):
        abelianization_truncated(*parts(nc_a1_example({(1, 0): {1: 1}}, field=PrimeField(5))), 2)


# ---------------------------------------------------------------- Hopf structures


def test_hopf_inheritance_reflection():
    for t, c in [(1, 1), (0, 0), (0, 1)]:
        rep = hopf_inheritance_check(*parts(reflection_z2(t, c)))
        assert rep.consistent
    rep = hopf_inheritance_check(*parts(reflection_z2(0, 0)))
    assert all(rep.parts.values()) and all(rep.relations.values())


def test_hopf_inheritance_weyl():
    rep = hopf_inheritance_check(*parts(weyl()))
    assert rep.consistent
    assert rep.parts[1] is False


def test_hopf_needs_structure():
    A = ZOO["NC_A1(2)"]
    act = random_module(A, 2, random.Random(0))
    d = DeformationData(F, 2, 2)
    assert set(hopf_inheritance_check(A, act, d).parts) == {1}
    with pytest.raises(MissingStructure):
        hopf_inheritance_check(A, act, d, parts=[1, 2])
    with pytest.raises(MissingStructure):
        yetter_drinfeld_suite(A, act, d)


def test_yd_reflection():
    rep = yetter_drinfeld_suite(*parts(reflection_z2(1, 1)))
    assert rep.consistent and all(rep.pyd.values()) and all(rep.preln.values())


def test_yd_equivariance_failure():
    A = cyclic_group_algebra(2)
    act = ModuleAction.from_matrices(F, [identity(3, F), diag(-1, -1, 1)])
    d = DeformationData(F, 2, 3, v={(2, 0): {0: 1}})
    rep = yetter_drinfeld_suite(A, act, d)
    assert rep.pyd_agree and rep.pyd[1] is False and rep.pyd[5] is None


def test_yd_lambda_breaks_relations():
    A = cyclic_group_algebra(2)
    d = DeformationData(F, 2, 2, q={(1, 0): {0: 1}})
    rep = yetter_drinfeld_suite(A, reflection_z2().act, d)
    assert rep.preln_agree and not any(rep.preln.values())


# ---------------------------------------------------------------- symplectic reflections


def test_reflection_rank():
    inst = reflection_z2(1, 1)
    one = {1: F.one}
    rep = symplectic_reflection_rank(*parts(inst), one, one, [{0: F.one}])
    assert rep.stage == "rank_ok" and rep.rank == 2
    A = cyclic_group_algebra(2)
    act = ModuleAction.from_matrices(F, [identity(4, F), diag(-1, -1, -1, 1)])
    d = DeformationData(F, 2, 4, v={(1, 0): {1: 1}})
    assert symplectic_reflection_rank(A, act, d, one, one, [{0: F.one}]).stage == "not_pbw"


def test_reflection_rank_bad_complement():
    inst = reflection_z2(1, 1)
    with pytest.raises(HypothesisViolated):
        symplectic_reflection_rank(*parts(inst), {1: F.one}, {1: F.one}, [{1: F.one}])
