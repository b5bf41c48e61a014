import random

import pytest
from hypothesis import given, settings, strategies as st

from pbwdeform.action import (ModuleAction, act_tensor, check_module_axiom, fix_space,
                              invariant_under, is_alternating, kappa_components, radical)
from pbwdeform.core import QQ, PrimeField
from pbwdeform.errors import InputError, ZeroTensorDegree
from pbwdeform.linalg import rank
from pbwdeform.samples import algebra_zoo, random_module, random_skew

ZOO = algebra_zoo()


def test_rank_two_form_on_k3():
    kappa = [[QQ(0), QQ(1), QQ(0)], [QQ(-1), QQ(0), QQ(0)], [QQ(0), QQ(0), QQ(0)]]
    assert is_alternating(kappa)
    assert radical(kappa, QQ).dim == 1


def test_fix_space_of_reflection():
    A = ZOO["kZ2"]
    act = ModuleAction.from_matrices(QQ, [[[1, 0], [0, 1]], [[-1, 0], [0, 1]]])
    fix, d = fix_space(act, {1: QQ.one})
    assert (fix.dim, d) == (1, 1)
    assert check_module_axiom(A, act)


def test_module_axiom_detects_failure():
    A = ZOO["kZ2"]
    act = ModuleAction.from_matrices(QQ, [[[1, 0], [0, 1]], [[2, 0], [0, 1]]])
    assert not check_module_axiom(A, act)


def test_bad_indices():
    with pytest.raises(InputError):
        ModuleAction(QQ, 2, 2, {(2, 0): {0: 1}})
    with pytest.raises(InputError):
        ModuleAction(QQ, 2, 2, {(1, 0): {5: 1}})


def test_zero_tensor_degree():
    A = ZOO["kZ2"]
    act = random_module(A, 2, random.Random(0))
    with pytest.raises(ZeroTensorDegree):
        act_tensor(A, act, {1: QQ.one}, {(): QQ.one})


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(ZOO)), st.integers(0, 10_000), st.integers(1, 3))
def test_act_tensor_is_an_action(name, seed, degree):
    A = ZOO[name]
    rng = random.Random(seed)
    act = random_module(A, 2, rng)
    a = {j: QQ(rng.randint(-2, 2)) for j in range(A.dim)}
    b = {j: QQ(rng.randint(-2, 2)) for j in range(A.dim)}
    t = {tuple(rng.randrange(2) for _ in range(degree)): QQ(rng.randint(1, 3)) for _ in range(3)}
    lhs = act_tensor(A, act, A.mul(a, b), t)
    rhs = act_tensor(A, act, a, act_tensor(A, act, b, t))
    clean = lambda x: {k: v for k, v in x.items() if v}
    assert clean(lhs) == clean(rhs)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(ZOO)), st.integers(0, 10_000))
def test_fix_codimension(name, seed):
    A = ZOO[name]
    rng = random.Random(seed)
    act = random_module(A, 3, rng)
    for j in range(A.dim):
        fix, d = fix_space(act, {j: QQ.one})
        assert fix.dim + d == 3


@pytest.mark.parametrize("field", [QQ, PrimeField(5), PrimeField(3)])
def test_radical_rank_parity(field):
    rng = random.Random(1)
    for n in range(1, 6):
        for _ in range(10):
            K = random_skew(n, rng, field)
            assert is_alternating(K)
            r = rank(K, field, n)
            assert r % 2 == 0
            assert radical(K, field).dim == n - r


def test_kappa_components_are_skew():
    A = ZOO["kZ3"]
    comps = kappa_components(A, 3, {(1, 0): {1: QQ(2)}, (2, 1): {0: QQ(1), 2: QQ(-1)}}, QQ)
    for K in comps:
        assert is_alternating(K)
    assert comps[1][1][0] == 2 and comps[1][0][1] == -2


def test_invariant_subspace():
    A = ZOO["NC_A1(2)"]
    act = ModuleAction.from_matrices(QQ, [[[1, 0], [0, 1]], [[0, 1], [0, 0]]])
    assert invariant_under(A, act, [[1, 0]])
    assert not invariant_under(A, act, [[0, 1]])
