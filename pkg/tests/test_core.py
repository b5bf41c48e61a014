from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pbwdeform.core import (QQ, Alphabet, FreeAlgebra, PrimeField, all_words, deglex_compare,
                            deglex_key, hk_alphabet, make_field, misordering_index)
from pbwdeform.errors import AlphabetMismatch, InputError

F5 = PrimeField(5)
words = st.lists(st.integers(0, 2), max_size=6).map(tuple)


# ---------------------------------------------------------------- fields


def test_rational_field_exact():
    assert QQ((1, 3)) + QQ((1, 6)) == QQ((1, 2))
    assert QQ("2/4") == QQ((1, 2))
    assert QQ.fmt(QQ((-3, 6))) == "-1/2"
    assert QQ.to_pair(QQ(7)) == (7, 1)
    with pytest.raises(InputError):
        QQ(0.5)


def test_prime_field_arithmetic():
    a, b = F5(3), F5(4)
    assert a + b == F5(2)
    assert a * b == F5(2)
    assert a / b == F5(2)          # 4 * 2 = 8 = 3
    assert F5((1, 2)) == F5(3)
    assert -F5(1) == F5(4)
    assert F5.characteristic == 5 and QQ.characteristic == 0
    with pytest.raises(ZeroDivisionError):
        a / F5(0)
    with pytest.raises(InputError):
        F5((1, 5))


def test_make_field():
    assert make_field("Q") == QQ
    assert make_field("Fp", 7) == PrimeField(7)
    with pytest.raises(InputError):
        make_field("Fp", 6)
    with pytest.raises(InputError):
        make_field("R")


@given(st.integers(-50, 50), st.integers(1, 20), st.integers(-50, 50), st.integers(1, 20))
def test_fp_reduction_is_a_ring_map(n1, d1, n2, d2):
    p = 7
    if d1 % p == 0 or d2 % p == 0:
        return
    F = PrimeField(p)
    x, y = Fraction(n1, d1), Fraction(n2, d2)
    img = lambda q: F((q.numerator, q.denominator))
    assert img(x + y) == img(x) + img(y)
    assert img(x * y) == img(x) * img(y)


# ---------------------------------------------------------------- orders


def test_deglex_examples():
    assert deglex_compare((1,), (0, 0)) == -1
    assert deglex_compare((0, 1), (1, 0)) == -1
    assert deglex_compare((), ()) == 0
    assert sorted([(1, 0), (0,), (), (0, 1)], key=deglex_key) == [(), (0,), (0, 1), (1, 0)]


@settings(max_examples=500, deadline=None)
@given(st.lists(st.tuples(words, words, words, words), min_size=25, max_size=25))
def test_deglex_is_a_semigroup_order(batch):
    # 500 batches of 25 gives 12500 (a, b, u, v) samples
    for a, b, u, v in batch:
        if deglex_compare(a, b) > 0:
            a, b = b, a
        assert deglex_compare(u + a + v, u + b + v) <= 0


@settings(max_examples=2000, deadline=None)
@given(words, words, words)
def test_deglex_total_antisymmetric_transitive(a, b, c):
    ab, ba = deglex_compare(a, b), deglex_compare(b, a)
    assert ab == -ba
    assert (ab == 0) == (a == b)
    if ab <= 0 and deglex_compare(b, c) <= 0:
        assert deglex_compare(a, c) <= 0


def test_all_words_sorted():
    ws = all_words(2, 3)
    assert len(ws) == 15
    assert ws == sorted(ws, key=deglex_key)


# ---------------------------------------------------------------- misordering index


def test_misordering_examples():
    alpha = hk_alphabet(2, 2)           # x1, x2, a1
    x1, x2, a1 = 0, 1, 2
    assert misordering_index((), alpha) == 0
    assert misordering_index((a1, x1), alpha) == 4
    # one inversion plus r**3 with r = 2
    assert misordering_index((x2, x1), alpha) == 9
    assert misordering_index((x1, x2), alpha) == 8


@given(st.lists(st.integers(0, 2), max_size=5), st.booleans(), st.integers(1, 2))
def test_misordering_on_pbw_words(xs, with_a, a):
    alpha = hk_alphabet(3, 3)
    w = tuple(sorted(xs)) + ((2 + a,) if with_a else ())
    n_mod = len(xs)
    q = 1 if with_a else 0
    # no inversions and no algebra letter before a module letter
    assert misordering_index(w, alpha) == q + n_mod ** 3


# ---------------------------------------------------------------- polynomials


def _ring(F=QQ):
    return FreeAlgebra(F, Alphabet(["x", "y", "z"]))


coef = st.integers(-3, 3)
terms = st.dictionaries(st.lists(st.integers(0, 2), max_size=3).map(tuple), coef, max_size=4)


@settings(max_examples=200, deadline=None)
@given(terms, terms, terms)
def test_ring_axioms(t1, t2, t3):
    R = _ring()
    p, q, r = (R.from_terms(t) for t in (t1, t2, t3))
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p + q) * r == p * r + q * r
    assert p + q == q + p
    assert p * R.one() == p == R.one() * p
    assert p - p == R.zero()


@settings(max_examples=100, deadline=None)
@given(terms, terms)
def test_ring_axioms_mod_p(t1, t2):
    R = _ring(F5)
    p, q = R.from_terms(t1), R.from_terms(t2)
    assert (p + q) * (p + q) == p * p + p * q + q * p + q * q
    assert (p * 5) == R.zero()


def test_parse_and_print():
    R = _ring()
    p = R.parse("2 x y - 1/2 z + 1")
    assert p.coefficient((0, 1)) == QQ(2)
    assert p.coefficient((2,)) == QQ((-1, 2))
    assert str(p) == "2 x y - 1/2 z + 1"
    assert str(R.parse("y x - x y")) == "y x - x y"
    assert str(R.zero()) == "0"
    with pytest.raises(InputError):
        R.parse("w")


def test_alphabet_mismatch():
    R1, R2 = _ring(), FreeAlgebra(QQ, Alphabet(["x", "y"]))
    with pytest.raises(AlphabetMismatch):
        R1.gen("x") + R2.gen("x")
    with pytest.raises(AlphabetMismatch):
        _ring(F5).gen("x") * R1.gen("x")


def test_hk_alphabet_layout():
    alpha = hk_alphabet(2, 3)
    assert alpha.names == ("x1", "x2", "a1", "a2")
    assert alpha.parse_word("x2 a1") == (1, 2)
    assert alpha.parse_word("1") == ()
