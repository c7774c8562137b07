"""Predicates on sequences and bases: two-sided admissibility, membership
of a base in the univoque set / its closure / the self-admissible set, and
the combinatorial word machinery (primitive words, reflection recurrence,
irreducible and star-irreducible sequences).

Everything is exact: the inputs are eventually periodic, so each predicate
reduces to finitely many lexicographic comparisons.  Failures carry a
witness (the offending shift or index) to make debugging and shrinking
possible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import constants
from .bases import BaseSpec, quasi_greedy, quasi_greedy_digitseq
from .errors import NotInXiRange, NotPrimitive, OutOfRange, PrecisionExhausted
from .words import (
    DigitSeq,
    Word,
    append_periodic,
    lex_cmp,
    periodize,
    seq_le,
    seq_lt,
    word_vs_seq,
)


def in_V_tilde(a: DigitSeq, witness: list | None = None) -> bool:
    """Two-sided self-admissibility: reflect(a) <= shift^n(a) <= a for all n."""
    M = a.alphabet.M
    p, m = len(a.preperiod), len(a.period)
    L = p + m
    W = 2 * p + 2 * m  # conclusive comparison window for shift-vs-self
    dig = [a.digit(i) for i in range(L + W + 1)]
    for n in range(L + 1):
        for i in range(W):
            x, y = dig[n + i], dig[i]
            if x != y:
                if x > y:
                    if witness is not None:
                        witness.append(("upper", n))
                    return False
                break
        for i in range(W):
            x, y = dig[n + i], M - dig[i]
            if x != y:
                if x < y:
                    if witness is not None:
                        witness.append(("lower", n))
                    return False
                break
    return True


def _periodic_word_admissible(h: tuple, M: int) -> bool:
    """Is (h)^oo two-sided admissible?  Pure digit-tuple fast path."""
    j = len(h)
    ext = h * 3
    for n in range(j):
        for i in range(2 * j):
            x, y = ext[n + i], ext[i]
            if x != y:
                if x > y:
                    return False
                break
        for i in range(2 * j):
            x, y = ext[n + i], M - ext[i]
            if x != y:
                if x < y:
                    return False
                break
    return True


def _strict_shift_checks(a: DigitSeq) -> tuple[bool, bool, list]:
    """(closure-style, univoque-style) shift conditions with witnesses.

    closure-style: reflect(a) < shift^n(a) <= a for every n >= 0.
    univoque-style: strict on both sides for every n >= 1.
    """
    M = a.alphabet.M
    p, m = len(a.preperiod), len(a.period)
    L = p + m
    W = 2 * p + 2 * m
    dig = [a.digit(i) for i in range(L + W + 1)]

    def cmp_shift(n: int) -> tuple[int, int]:
        up = lo = 0
        for i in range(W):
            x, y = dig[n + i], dig[i]
            if x != y:
                up = 1 if x > y else -1
                break
        for i in range(W):
            x, y = M - dig[i], dig[n + i]
            if x != y:
                lo = 1 if x > y else -1
                break
        return up, lo

    closure = True
    univoque = True
    witnesses: list = []
    for n in range(L + 1):
        up, lo = cmp_shift(n)
        if up > 0:
            closure = univoque = False
            witnesses.append(("upper", n))
        if lo >= 0:
            closure = False
            witnesses.append(("lower-strict", n))
            if lo > 0:
                univoque = False
        if n >= 1 and up == 0:
            univoque = False
            witnesses.append(("upper-strict", n))
        if n >= 1 and lo == 0:
            univoque = False
    return closure, univoque, witnesses


@dataclass
class Classification:
    in_V_tilde: bool
    in_V: bool
    in_U_bar: bool
    in_U: bool
    irreducible: bool | None = None
    star_irreducible: bool | None = None
    star_level: int | None = None
    prefix_certified: bool = False
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "in_V_tilde": self.in_V_tilde,
            "in_V": self.in_V,
            "in_U_bar": self.in_U_bar,
            "in_U": self.in_U,
            "irreducible": self.irreducible,
            "star_irreducible": self.star_irreducible,
            "star_level": self.star_level,
            "prefix_certified": self.prefix_certified,
            "witnesses": [list(w) for w in self.witnesses],
        }


def sequence_class(
    a: DigitSeq, j_max: int | None = None, classify_kind: bool = True
) -> Classification:
    """Classify the base whose quasi-greedy expansion of 1 is ``a``."""
    M = a.alphabet.M
    witness: list = []
    vt = in_V_tilde(a, witness)
    closure, univ, w2 = _strict_shift_checks(a)
    if a == periodize(Word([M], a.alphabet)):
        # the top base is univoque by convention despite its equal shifts
        closure, univ, w2 = True, True, []
    cls = Classification(vt, vt, vt and closure, vt and closure and univ)
    cls.witnesses = witness + w2
    if vt and classify_kind:
        ok, j = is_irreducible(a, j_max, with_witness=True)
        cls.irreducible = ok
        if not ok and j is not None:
            cls.witnesses.append(("irreducible", j))
        try:
            level = is_star_irreducible(a, j_max)
        except NotInXiRange:
            cls.star_irreducible = None
        else:
            cls.star_irreducible = level is not False
            cls.star_level = level if level is not False else None
    return cls


def base_class(q: BaseSpec, depth: int = 64, max_steps: int = 256) -> Classification:
    """Classify a base via its quasi-greedy expansion.

    When the expansion is detected to be eventually periodic the verdict is
    exact; otherwise the shift conditions are checked on the first ``depth``
    digits only and the result is flagged prefix-certified.
    """
    a = quasi_greedy_digitseq(q, max_steps=max_steps)
    if a is not None:
        return sequence_class(a)
    prefix = quasi_greedy(q, depth)
    cls = _prefix_class(prefix)
    cls.prefix_certified = True
    return cls


def _prefix_class(prefix: Word) -> Classification:
    """Shift checks on a finite prefix; undecided comparisons count as ok."""
    n = len(prefix)
    d = prefix.digits
    rd = prefix.reflect().digits
    vt = closure = univ = True
    wit: list = []
    for i in range(1, n):
        tail = d[i:]
        up = (tail > d[: n - i]) - (tail < d[: n - i])
        lo = (rd[: n - i] > tail) - (rd[: n - i] < tail)
        if up > 0:
            vt = closure = univ = False
            wit.append(("upper", i))
        if lo > 0:
            vt = closure = univ = False
            wit.append(("lower", i))
        if lo == 0:
            closure = False
        if up == 0 or lo == 0:
            univ = False
    return Classification(vt, vt, vt and closure, vt and closure and univ, witnesses=wit)


# ---------------------------------------------------------------------------
# primitive words and reflection recurrence


def is_primitive(a: Word) -> bool:
    """Every proper shift strictly above the reflection, at most the word."""
    m = len(a)
    if m == 0:
        return False
    d = a.digits
    rd = a.reflect().digits
    for i in range(m):
        suf = d[i:]
        if not rd[: m - i] < suf <= d[: m - i]:
            return False
    return True


def reflection_recurrence(a: Word) -> Word:
    """Truncate a primitive word at its first reflection recurrence point.

    Returns the prefix a[:s] for the least s such that the suffix starting
    at s, with last digit decremented, equals the reflected prefix of the
    complementary length; the word itself if no such s exists.
    """
    if not is_primitive(a):
        raise NotPrimitive(f"{a.text()} is not primitive")
    m = len(a)
    dec = a.minus().digits  # primitivity forces the last digit above 0
    rd = a.reflect().digits
    for s in range(m):
        if dec[s:] == rd[: m - s]:
            return a[:s]
    return a


def rr_chain(a: Word) -> list[Word]:
    """Iterated reflection recurrence words until empty or fixed."""
    chain = [a]
    cur = a
    while len(cur) > 0:
        nxt = reflection_recurrence(cur)
        if nxt == cur:
            break
        chain.append(nxt)
        cur = nxt
    return chain


# ---------------------------------------------------------------------------
# irreducible / star-irreducible sequences


def _default_j_max(a: DigitSeq) -> int:
    return 4 * a.descriptor_len


def _competitor(a: DigitSeq, j: int) -> DigitSeq:
    """a_1..a_j (reflect(a_1..a_j).plus())^oo."""
    head = a.prefix(j)
    return append_periodic(head, head.reflect().plus())


def _blocks_at(a: DigitSeq, j: int, dig: list | None = None) -> bool:
    """Does index j witness failure of the irreducibility inequality?

    Active only when the decremented prefix repeats into a two-sided
    admissible sequence; then the competitor sequence must stay strictly
    below ``a`` (equality already counts as failure).
    """
    M = a.alphabet.M
    p, m = len(a.preperiod), len(a.period)
    bound = j + p + math.lcm(j, m) + 1
    if dig is None or len(dig) < bound:
        dig = [a.digit(i) for i in range(bound)]
    if dig[j - 1] == 0:
        return False
    head = tuple(dig[:j])
    if not _periodic_word_admissible(head[:-1] + (head[-1] - 1,), M):
        return False
    # competitor digits: head, then (reflect(head) plus) cyclically
    cyc = tuple(M - d for d in head[:-1]) + (M - head[-1] + 1,)
    for i in range(bound):
        c = head[i] if i < j else cyc[(i - j) % j]
        if c != dig[i]:
            return c > dig[i]
    return True  # equal over the conclusive window: not strictly below


def is_irreducible(
    a: DigitSeq, j_max: int | None = None, with_witness: bool = False
):
    """No admissible truncation dominates the sequence (indices <= j_max)."""
    if not in_V_tilde(a):
        raise OutOfRange("irreducibility is defined for two-sided admissible sequences")
    J = j_max if j_max is not None else _default_j_max(a)
    p, m = len(a.preperiod), len(a.period)
    dig = [a.digit(i) for i in range(J + p + math.lcm(J, m) + J * m + 1)]
    for j in range(1, J + 1):
        if _blocks_at(a, j, dig):
            return (False, j) if with_witness else False
    return (True, None) if with_witness else True


def _compare_with_thue_morse(a: DigitSeq, cap: int = 4096) -> int:
    """Exact comparison of ``a`` against the aperiodic Thue-Morse expansion."""
    M = a.alphabet.M
    lam = constants.thue_morse_lambda(M, max(64, 4 * a.descriptor_len))
    while True:
        for i, d in enumerate(lam.digits):
            e = a.digit(i)
            if e != d:
                return -1 if e < d else 1
        if len(lam) >= cap:
            raise PrecisionExhausted("sequence shadows the Thue-Morse expansion too long")
        lam = constants.thue_morse_lambda(M, min(cap, 2 * len(lam)))


def star_bracket_level(a: DigitSeq, n_cap: int = 16) -> int:
    """The unique n with step_expansion(n+1) <= a < step_expansion(n)."""
    M = a.alphabet.M
    if lex_cmp(a, constants.step_expansion(M, 1)) >= 0:
        raise NotInXiRange("sequence at or above the transitive-base expansion")
    if _compare_with_thue_morse(a) <= 0:
        raise NotInXiRange("sequence at or below the Komornik-Loreti expansion")
    n = 1
    while n < n_cap:
        if lex_cmp(constants.step_expansion(M, n + 1), a) <= 0:
            return n
        n += 1
    raise PrecisionExhausted("step-expansion bracket level exceeds the cap")


def is_star_irreducible(a: DigitSeq, j_max: int | None = None):
    """False, or the bracket level n at which the sequence is star-irreducible.

    Like irreducibility, but the truncation indices up to the level's
    threshold are waived.
    """
    if not in_V_tilde(a):
        raise OutOfRange(
            "star-irreducibility is defined for two-sided admissible sequences"
        )
    n = star_bracket_level(a)
    threshold = constants.star_j_threshold(a.alphabet.M, n)
    J = j_max if j_max is not None else max(_default_j_max(a), 2 * threshold)
    p, m = len(a.preperiod), len(a.period)
    dig = [a.digit(i) for i in range(J + p + J * m + 2)]
    for j in range(threshold + 1, J + 1):
        if _blocks_at(a, j, dig):
            return False
    return n
