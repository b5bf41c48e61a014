"""Exact scalars, typed alphabets, words and noncommutative polynomials.

Words are tuples of integer letter codes.  The order of the codes inside an
:class:`Alphabet` is the generator order, so the degree-lexicographic key of
a word is simply ``(len(w), w)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Tuple

import gmpy2

from .errors import AlphabetMismatch, InputError

Word = Tuple[int, ...]
EMPTY: Word = ()


# ---------------------------------------------------------------- fields


class RationalField:
    """The field Q, with elements represented by ``gmpy2.mpq``."""

    characteristic = 0
    name = "Q"

    def __init__(self):
        self.zero = gmpy2.mpq(0)
        self.one = gmpy2.mpq(1)

    def __call__(self, x):
        if isinstance(x, tuple):
            return gmpy2.mpq(int(x[0]), int(x[1]))
        if isinstance(x, str):
            return gmpy2.mpq(Fraction(x.strip()))
        if isinstance(x, Fraction):
            return gmpy2.mpq(x.numerator, x.denominator)
        if isinstance(x, float):
            raise InputError("floating point scalars are not accepted")
        return gmpy2.mpq(x)

    def to_pair(self, x):
        return int(x.numerator), int(x.denominator)

    def fmt(self, x):
        n, d = self.to_pair(x)
        return str(n) if d == 1 else f"{n}/{d}"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class FpElem:
    """Residue class modulo a prime."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _co(self, o):
        if isinstance(o, FpElem):
            return o.v
        if isinstance(o, int):
            return o % self.p
        if isinstance(o, Fraction) or type(o).__name__ == "mpq":
            return int(o.numerator) * pow(int(o.denominator), -1, self.p) % self.p
        return NotImplemented

    def __add__(self, o):
        c = self._co(o)
        return NotImplemented if c is NotImplemented else FpElem(self.v + c, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        c = self._co(o)
        return NotImplemented if c is NotImplemented else FpElem(self.v - c, self.p)

    def __rsub__(self, o):
        c = self._co(o)
        return NotImplemented if c is NotImplemented else FpElem(c - self.v, self.p)

    def __mul__(self, o):
        c = self._co(o)
        return NotImplemented if c is NotImplemented else FpElem(self.v * c, self.p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        c = self._co(o)
        if c is NotImplemented:
            return NotImplemented
        if c == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return FpElem(self.v * pow(c, -1, self.p), self.p)

    def __rtruediv__(self, o):
        c = self._co(o)
        if c is NotImplemented:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return FpElem(c * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return FpElem(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e):
        if e < 0:
            return FpElem(pow(self.v, -1, self.p), self.p) ** (-e)
        return FpElem(pow(self.v, e, self.p), self.p)

    def __eq__(self, o):
        c = self._co(o)
        if c is NotImplemented:
            return NotImplemented
        return self.v == c

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} mod {self.p}"


class PrimeField:
    """The field F_p for a prime p."""

    def __init__(self, p):
        p = int(p)
        if p < 2 or not gmpy2.is_prime(p):
            raise InputError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"
        self.zero = FpElem(0, p)
        self.one = FpElem(1, p)

    def __call__(self, x):
        if isinstance(x, FpElem):
            if x.p != self.p:
                raise InputError("mixing residues of different primes")
            return x
        if isinstance(x, tuple):
            n, d = int(x[0]), int(x[1])
            if d % self.p == 0:
                raise InputError(f"denominator {d} vanishes mod {self.p}")
            return FpElem(n * pow(d, -1, self.p), self.p)
        if isinstance(x, str):
            f = Fraction(x.strip())
            return self((f.numerator, f.denominator))
        if isinstance(x, Fraction) or type(x).__name__ == "mpq":
            return self((int(x.numerator), int(x.denominator)))
        if isinstance(x, float):
            raise InputError("floating point scalars are not accepted")
        return FpElem(int(x), self.p)

    def to_pair(self, x):
        return int(self(x).v), 1

    def fmt(self, x):
        return str(self(x).v)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return self.name


def make_field(kind="Q", p=None):
    if kind in ("Q", "QQ", None):
        return RationalField()
    if kind in ("Fp", "F"):
        return PrimeField(p)
    raise InputError(f"unknown field kind {kind!r}")


QQ = RationalField()


# ---------------------------------------------------------------- alphabets


class GenKind(enum.Enum):
    MODULE = "x"
    ALGEBRA = "a"
    PARAM = "t"


@dataclass(frozen=True)
class Generator:
    kind: GenKind
    index: int


class Alphabet:
    """Finite ordered alphabet; letter code ``i`` is the i-th generator."""

    def __init__(self, names, kinds=None, indices=None):
        self.names = tuple(names)
        n = len(self.names)
        self.kinds = tuple(kinds) if kinds is not None else (GenKind.ALGEBRA,) * n
        self.indices = tuple(indices) if indices is not None else tuple(range(1, n + 1))
        if len(set(self.names)) != n or len(self.kinds) != n or len(self.indices) != n:
            raise InputError("alphabet names must be distinct and fully typed")
        self._code = {name: i for i, name in enumerate(self.names)}

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and other.names == self.names and other.kinds == self.kinds

    def __hash__(self):
        return hash(self.names)

    def generator(self, code):
        return Generator(self.kinds[code], self.indices[code])

    def code(self, name):
        try:
            return self._code[name]
        except KeyError:
            raise InputError(f"unknown generator {name!r}") from None

    def parse_word(self, text):
        text = text.strip()
        if text in ("", "1"):
            return EMPTY
        return tuple(self.code(tok) for tok in text.replace("*", " ").split())

    def word_str(self, w):
        return " ".join(self.names[c] for c in w) if w else "1"


def hk_alphabet(dim_v, dim_a):
    """Letters x1..xn followed by a1..a_{dimA-1}; the unit a0 is never a letter."""
    names = [f"x{i + 1}" for i in range(dim_v)] + [f"a{j}" for j in range(1, dim_a)]
    kinds = [GenKind.MODULE] * dim_v + [GenKind.ALGEBRA] * (dim_a - 1)
    idx = list(range(1, dim_v + 1)) + list(range(1, dim_a))
    return Alphabet(names, kinds, idx)


# ---------------------------------------------------------------- orders


def deglex_key(w, rank=None):
    if rank is None:
        return (len(w), w)
    return (len(w), tuple(rank[c] for c in w))


def deglex_compare(w1, w2, rank=None):
    """-1, 0 or 1 as w1 is smaller, equal or larger in degree-lex order.

    ``rank`` optionally maps letter codes to their position in the generator
    order; by default the code order is used.
    """
    k1, k2 = deglex_key(w1, rank), deglex_key(w2, rank)
    return (k1 > k2) - (k1 < k2)


def misordering_index(w, alphabet):
    """o + p + p*r + q + r**3 for a word over an x/a alphabet.

    o counts inversions among module letters, p counts (algebra letter before
    module letter) pairs, q and r count algebra and module letters.
    """
    o = p = q = r = 0
    seen_mod = []
    for c in w:
        kind = alphabet.kinds[c]
        if kind is GenKind.MODULE:
            o += sum(1 for d in seen_mod if d > c)
            p += q
            r += 1
            seen_mod.append(c)
        elif kind is GenKind.ALGEBRA:
            q += 1
    return o + p + p * r + q + r ** 3


# ---------------------------------------------------------------- polynomials


class FreeAlgebra:
    """Parent of :class:`NCPoly` values: a field together with an alphabet."""

    def __init__(self, field, alphabet):
        self.field = field
        self.alphabet = alphabet

    def __eq__(self, other):
        return isinstance(other, FreeAlgebra) and other.field == self.field and other.alphabet == self.alphabet

    def __hash__(self):
        return hash((self.field, self.alphabet))

    def zero(self):
        return NCPoly(self, {})

    def one(self):
        return NCPoly(self, {EMPTY: self.field.one})

    def word(self, w, coef=None):
        return NCPoly(self, {tuple(w): self.field.one if coef is None else self.field(coef)})

    def gen(self, name):
        return self.word((self.alphabet.code(name),))

    def scalar(self, c):
        return NCPoly(self, {EMPTY: self.field(c)})

    def from_terms(self, terms):
        F = self.field
        out = {}
        for w, c in terms.items():
            c = F(c)
            if c:
                out[tuple(w)] = c
        return NCPoly(self, out, _clean=True)

    def parse(self, text):
        """Parse a sum like ``"2 x1 x2 - 1/2 a1 + 1"``."""
        F = self.field
        terms: Dict[Word, object] = {}
        text = text.replace("-", " - ").replace("+", " + ")
        sign, coef, letters = 1, None, []
        toks = text.split() + ["+"]

        def flush():
            nonlocal coef, letters
            if coef is None and not letters:
                return
            c = F(sign) * (F.one if coef is None else coef)
            w = tuple(self.alphabet.code(t) for t in letters if t != "1")
            terms[w] = terms.get(w, F.zero) + c
            coef, letters = None, []

        for tok in toks:
            if tok in "+-":
                flush()
                sign = -1 if tok == "-" else 1
            elif tok[0].isdigit() and not letters:
                coef = F(tok) if coef is None else coef * F(tok)
            else:
                letters.append(tok)
        return self.from_terms(terms)


class NCPoly:
    """Sparse linear combination of words.  Treated as immutable."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms, _clean=False):
        self.ring = ring
        if _clean:
            self.terms = terms
        else:
            self.terms = {w: c for w, c in terms.items() if c}

    # arithmetic
    def _check(self, other):
        if other.ring != self.ring:
            raise AlphabetMismatch("polynomials over different alphabets or fields")

    def _coerce(self, other):
        if isinstance(other, NCPoly):
            self._check(other)
            return other
        return self.ring.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t.get(w)
            s = c if s is None else s + c
            if s:
                t[w] = s
            else:
                t.pop(w, None)
        return NCPoly(self.ring, t, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.ring, {w: -c for w, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        return NCPoly(self.ring, {w: c * d for w, d in self.terms.items()}, _clean=True)

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return self.scale(other)
        self._check(other)
        t = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                t[w] = t.get(w, 0) + c1 * c2
        return NCPoly(self.ring, t)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n):
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.ring == other.ring and self.terms == other.terms
        return self == self.ring.scalar(other)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def coefficient(self, w):
        return self.terms.get(tuple(w), self.ring.field.zero)

    def sorted_terms(self):
        """Terms in descending degree-lex order."""
        return sorted(self.terms.items(), key=lambda t: deglex_key(t[0]), reverse=True)

    def leading_word(self):
        if not self.terms:
            return None
        return max(self.terms, key=deglex_key)

    def degree(self):
        return max((len(w) for w in self.terms), default=-1)

    def __str__(self):
        F, A = self.ring.field, self.ring.alphabet
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            n, d = F.to_pair(c)
            neg = n < 0
            mag = F.fmt(-c if neg else c)
            body = A.word_str(w)
            if w:
                text = body if mag == "1" else f"{mag} {body}"
            else:
                text = mag
            parts.append(("-" if neg else "+", text))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, text in parts[1:]:
            s += f" {sign} {text}"
        return s

    __repr__ = __str__


def poly_mul(p, q):
    return p * q


def all_words(n_letters, max_len):
    """All words of length <= max_len in degree-lex order."""
    out = [EMPTY]
    level = [EMPTY]
    for _ in range(max_len):
        level = [w + (c,) for w in level for c in range(n_letters)]
        out.extend(level)
    return out


def words_of_length(n_letters, length) -> Iterable[Word]:
    level = [EMPTY]
    for _ in range(length):
        level = [w + (c,) for w in level for c in range(n_letters)]
    return level
