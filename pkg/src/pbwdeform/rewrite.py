"""Rewriting engine for the Diamond Lemma.

A :class:`ReductionSystem` holds rules ``lhs -> rhs`` whose right-hand sides
are strictly smaller than the left-hand side in a semigroup order.  Normal
forms of words are memoized per system; the randomized strategy used by the
confluence tests bypasses the memo.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import List

from .core import EMPTY, NCPoly, deglex_key
from .errors import CapExceeded, InputError, OrientationFailure
from .linalg import sparse_add

DEFAULT_STEP_CAP = 1_000_000


@dataclass(frozen=True)
class ReductionRule:
    lhs: tuple
    rhs: NCPoly

    def __post_init__(self):
        if not self.lhs:
            raise InputError("rule lhs must be nonempty")


@dataclass(frozen=True)
class Ambiguity:
    left_rule: int
    right_rule: int
    overlap_word: tuple
    overlap_len: int
    right_len: int

    @property
    def right_pos(self):
        return len(self.overlap_word) - self.right_len


@dataclass
class Resolution:
    ambiguity: Ambiguity
    difference: NCPoly

    @property
    def resolved(self):
        return self.difference.is_zero()


class ReductionSystem:
    """Oriented rules over a free algebra with a semigroup order.

    ``order_key`` maps a word to a sortable key; it defaults to degree-lex in
    letter-code order.  Construction checks the order condition, duplicate
    left-hand sides and inclusion ambiguities.
    """

    def __init__(self, ring, rules, order_key=None, check=True):
        self.ring = ring
        self.order_key = order_key if order_key is not None else deglex_key
        self.rules: List[ReductionRule] = []
        for r in rules:
            if not isinstance(r, ReductionRule):
                lhs, rhs = r
                if not isinstance(rhs, NCPoly):
                    rhs = ring.from_terms(rhs)
                r = ReductionRule(tuple(lhs), rhs)
            self.rules.append(r)
        self.rules = tuple(self.rules)
        self._lhs = {r.lhs: i for i, r in enumerate(self.rules)}
        self._lengths = sorted({len(r.lhs) for r in self.rules})
        self._cache = {}
        if check:
            self._validate()

    def _validate(self):
        if len(self._lhs) != len(self.rules):
            raise InputError("two rules share a left-hand side")
        key = self.order_key
        for r in self.rules:
            if r.rhs.ring != self.ring:
                raise InputError("rule rhs over a different ring")
            k = key(r.lhs)
            for w in r.rhs.terms:
                if not key(w) < k:
                    raise OrientationFailure(
                        f"rule {self.ring.alphabet.word_str(r.lhs)} has a non-smaller term "
                        f"{self.ring.alphabet.word_str(w)}")
        for r in self.rules:
            for i in range(len(r.lhs)):
                for L in self._lengths:
                    if i == 0 and L == len(r.lhs):
                        continue
                    if i + L <= len(r.lhs) and r.lhs[i:i + L] in self._lhs:
                        raise InputError("inclusion ambiguity between rule left-hand sides")

    def __len__(self):
        return len(self.rules)

    # ---------------------------------------------------------- matching

    def find(self, w, start=0):
        """Leftmost occurrence (position, rule index) at or after ``start``."""
        lhs = self._lhs
        n = len(w)
        for pos in range(start, n):
            for L in self._lengths:
                if pos + L > n:
                    break
                idx = lhs.get(w[pos:pos + L])
                if idx is not None:
                    return pos, idx
        return None

    def occurrences(self, w):
        out = []
        lhs = self._lhs
        n = len(w)
        for pos in range(n):
            for L in self._lengths:
                if pos + L > n:
                    break
                idx = lhs.get(w[pos:pos + L])
                if idx is not None:
                    out.append((pos, idx))
        return out

    def is_irreducible(self, w):
        return self.find(w) is None

    def apply_rule_at(self, w, pos, idx):
        """The polynomial obtained by rewriting ``w`` once at ``pos`` by rule ``idx``."""
        r = self.rules[idx]
        if w[pos:pos + len(r.lhs)] != r.lhs:
            raise InputError("rule does not match at the given position")
        pre, suf = w[:pos], w[pos + len(r.lhs):]
        return {pre + u + suf: c for u, c in r.rhs.terms.items()}

    # ---------------------------------------------------------- normal forms

    def _nf_word(self, w, budget):
        cache = self._cache
        hit = cache.get(w)
        if hit is not None:
            return hit
        stack = [w]
        while stack:
            u = stack[-1]
            if u in cache:
                stack.pop()
                continue
            occ = self.find(u)
            if occ is None:
                cache[u] = {u: self.ring.field.one}
                stack.pop()
                continue
            pos, idx = occ
            r = self.rules[idx]
            pre, suf = u[:pos], u[pos + len(r.lhs):]
            pending = [pre + v + suf for v in r.rhs.terms]
            missing = [x for x in pending if x not in cache]
            if missing:
                budget[0] -= 1
                if budget[0] < 0 or len(stack) > budget[1]:
                    raise CapExceeded("step cap exhausted during normal form computation")
                stack.extend(missing)
                continue
            budget[0] -= 1
            if budget[0] < 0:
                raise CapExceeded("step cap exhausted during normal form computation")
            acc = {}
            for v, c in r.rhs.terms.items():
                sparse_add(acc, cache[pre + v + suf], c)
            cache[u] = acc
            stack.pop()
        return cache[w]

    def normal_form_terms(self, terms, step_cap=DEFAULT_STEP_CAP):
        budget = [2 * step_cap, step_cap]
        acc = {}
        for w, c in terms.items():
            sparse_add(acc, self._nf_word(tuple(w), budget), c)
        return acc

    def normal_form(self, p, step_cap=DEFAULT_STEP_CAP, rng=None):
        if step_cap <= 0:
            raise InputError("step_cap must be positive")
        if rng is not None:
            return self._random_normal_form(p, step_cap, rng)
        return NCPoly(self.ring, self.normal_form_terms(p.terms, step_cap), _clean=True)

    def _random_normal_form(self, p, step_cap, rng):
        terms = dict(p.terms)
        steps = 0
        while True:
            red = [w for w in terms if self.find(w) is not None]
            if not red:
                return NCPoly(self.ring, terms, _clean=True)
            steps += 1
            if steps > step_cap:
                raise CapExceeded("step cap exhausted during normal form computation")
            w = rng.choice(sorted(red, key=self.order_key))
            pos, idx = rng.choice(self.occurrences(w))
            c = terms.pop(w)
            sparse_add(terms, self.apply_rule_at(w, pos, idx), c)

    def reduce_once(self, p):
        """Rewrite the leftmost occurrence in the largest reducible monomial.

        Returns ``(new_poly, changed)``.
        """
        red = [w for w in p.terms if self.find(w) is not None]
        if not red:
            return p, False
        w = max(red, key=self.order_key)
        pos, idx = self.find(w)
        terms = dict(p.terms)
        c = terms.pop(w)
        sparse_add(terms, self.apply_rule_at(w, pos, idx), c)
        return NCPoly(self.ring, terms, _clean=True), True


def normal_form(p, sys, step_cap=DEFAULT_STEP_CAP):
    return sys.normal_form(p, step_cap)


def reduce_once(p, sys):
    return sys.reduce_once(p)


# ---------------------------------------------------------------- ambiguities


def enumerate_ambiguities(sys):
    """All proper overlaps lhs_i = L M, lhs_j = M R with L, M, R nonempty."""
    out = []
    rules = sys.rules
    for i, ri in enumerate(rules):
        a = ri.lhs
        for j, rj in enumerate(rules):
            b = rj.lhs
            for k in range(1, min(len(a), len(b))):
                if a[len(a) - k:] == b[:k]:
                    word = a + b[k:]
                    out.append(Ambiguity(i, j, word, k, len(b)))
    return out


def resolve_ambiguity(amb, sys, step_cap=DEFAULT_STEP_CAP):
    """Reduce the overlap word both ways and return the normal-form difference."""
    w = amb.overlap_word
    left = sys.apply_rule_at(w, 0, amb.left_rule)
    right = sys.apply_rule_at(w, amb.right_pos, amb.right_rule)
    budget_terms = {}
    sparse_add(budget_terms, left)
    sparse_add(budget_terms, right, -sys.ring.field.one)
    diff = sys.normal_form_terms(budget_terms, step_cap)
    return Resolution(amb, NCPoly(sys.ring, diff, _clean=True))


# ---------------------------------------------------------------- completion


@dataclass
class Completion:
    system: ReductionSystem
    complete: bool
    residual: list = dc_field(default_factory=list)
    skipped: list = dc_field(default_factory=list)
    rounds: int = 0


def _orient(diff, ring, key):
    lead = max(diff, key=key)
    c = diff[lead]
    inv = ring.field.one / c
    rhs = {w: -v * inv for w, v in diff.items() if w != lead}
    return lead, rhs


def knuth_bendix_bounded(sys, degree_cap, step_cap=DEFAULT_STEP_CAP, max_rounds=10_000):
    """Bounded completion.

    Overlaps whose word is longer than ``degree_cap`` are skipped and reported.
    Each unresolved difference is oriented with its largest monomial as the
    new left-hand side; rules made reducible by it are re-reduced.
    """
    if sys.rules and degree_cap < max(len(r.lhs) for r in sys.rules):
        raise InputError("degree_cap below the longest rule")
    ring, key = sys.ring, sys.order_key
    rules = {r.lhs: dict(r.rhs.terms) for r in sys.rules}
    current = sys
    for rnd in range(max_rounds):
        ambs = enumerate_ambiguities(current)
        inside = [a for a in ambs if len(a.overlap_word) <= degree_cap]
        skipped = [a for a in ambs if len(a.overlap_word) > degree_cap]
        new_poly = None
        residual = []
        for a in inside:
            res = resolve_ambiguity(a, current, step_cap)
            if not res.resolved:
                if new_poly is None:
                    new_poly = res.difference.terms
                residual.append(res)
        if new_poly is None:
            return Completion(current, True, [], skipped, rnd)
        if max(len(w) for w in new_poly) > degree_cap:
            return Completion(current, False, residual, skipped, rnd)
        # add the new rule and re-reduce every rule it makes reducible
        lead, rhs = _orient(new_poly, ring, key)
        if lead in rules:
            raise OrientationFailure("oriented difference duplicates an existing lhs")
        queue = [(lead, rhs)]
        while queue:
            lhs, rhs = queue.pop()
            rules[lhs] = rhs
            for other in list(rules):
                if other == lhs:
                    continue
                if _contains(other, lhs):
                    orhs = rules.pop(other)
                    tmp = ReductionSystem(ring, [(l, ring.from_terms(r)) for l, r in rules.items()],
                                          key, check=False)
                    poly = {other: ring.field.one}
                    sparse_add(poly, orhs, -ring.field.one)
                    red = tmp.normal_form_terms(poly, step_cap)
                    if red:
                        queue.append(_orient(red, ring, key))
        current = ReductionSystem(ring, [(l, ring.from_terms(r)) for l, r in rules.items()], key)
    return Completion(current, False, [], [], max_rounds)


def _contains(word, sub):
    n, m = len(word), len(sub)
    return any(word[i:i + m] == sub for i in range(n - m + 1))


def interreduce(sys, step_cap=DEFAULT_STEP_CAP):
    """Reduce each right-hand side by the whole system."""
    ring = sys.ring
    new = []
    for r in sys.rules:
        new.append((r.lhs, ring.from_terms(sys.normal_form_terms(r.rhs.terms, step_cap))))
    return ReductionSystem(ring, new, sys.order_key)


# ---------------------------------------------------------------- bases


@dataclass
class BasisEnumeration:
    words: list
    saturated: bool
    by_degree: list


def enumerate_basis(sys, degree_cap):
    """Irreducible words of length <= degree_cap, degree by degree.

    ``saturated`` is true when some degree <= degree_cap has no irreducible
    word, in which case no longer irreducible word exists either.
    """
    n = len(sys.ring.alphabet)
    levels = [[EMPTY]]
    saturated = False
    maxlen = max(sys._lengths, default=0)
    for d in range(1, degree_cap + 1):
        nxt = []
        for w in levels[-1]:
            for c in range(n):
                u = w + (c,)
                # only suffixes can be new occurrences
                start = max(0, len(u) - maxlen)
                if sys.find(u, start) is None:
                    nxt.append(u)
        levels.append(nxt)
        if not nxt:
            saturated = True
            break
    words = [w for lvl in levels for w in lvl]
    return BasisEnumeration(words, saturated, [len(l) for l in levels])
