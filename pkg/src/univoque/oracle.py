"""Brute-force word counting, independent of the automaton construction.

Membership of a finite word in the language is decided from first
principles: the word must show no visible violation of the shift
inequalities, and (for the strict modes) some explicit infinite
continuation must exist.  Continuations are searched as ``bridge +
eventually periodic tail`` with the tail drawn from a small candidate
family (the bound tails, their reflections, and midline/alternating
cycles); a candidate is accepted only after the whole eventually periodic
sequence passes an exact membership check, so the oracle never
overcounts.  The search is exhaustive over bounded bridges, so a miss can
only undercount -- which the equivalence tests would expose.
"""

from __future__ import annotations

from .errors import OutOfRange
from .subshift import ShiftSpec
from .words import DigitSeq, Word, lex_cmp, periodize, word


def seq_in_shift(x: DigitSeq, spec: ShiftSpec) -> bool:
    """Exact membership of an eventually periodic sequence."""
    u, low, mode = spec.upper, spec.lower, spec.mode
    M = spec.alphabet.M
    for n in range(x.descriptor_len + 1):
        s = x.shift(n)
        cu = lex_cmp(s, u)
        cl = lex_cmp(low, s)
        if mode == "V":
            if cu > 0 or cl > 0:
                return False
        elif mode == "W":
            if cu >= 0 or cl >= 0:
                return False
        else:  # U: conditions attach to the digit before the tail
            if n == 0:
                continue
            d = x.digit(n - 1)
            if d < M and cu >= 0:
                return False
            if d > 0 and cl >= 0:
                return False
    return True


def word_prefix_ok(digits: tuple, spec: ShiftSpec) -> bool:
    """No visible violation of the shift inequalities on a finite word."""
    n = len(digits)
    u, low, mode = spec.upper, spec.lower, spec.mode
    M = spec.alphabet.M
    for i in range(n):
        if mode == "U" and i == 0:
            continue
        if mode == "U":
            d = digits[i - 1]
            check_up, check_lo = d < M, d > 0
        else:
            check_up = check_lo = True
        if check_up:
            for j in range(i, n):
                e, b = digits[j], u.digit(j - i)
                if e != b:
                    if e > b:
                        return False
                    break
        if check_lo:
            for j in range(i, n):
                e, b = digits[j], low.digit(j - i)
                if e != b:
                    if e < b:
                        return False
                    break
    return True


def _candidate_tails(spec: ShiftSpec) -> list[DigitSeq]:
    M = spec.alphabet.M
    k = spec.alphabet.k
    cands: list[DigitSeq] = []
    for t in range(spec.upper.descriptor_len + 1):
        cands.append(spec.upper.shift(t))
    for t in range(spec.lower.descriptor_len + 1):
        cands.append(spec.lower.shift(t))
    # cycles that ride a bound and break away at a block boundary
    span = spec.upper.descriptor_len + 2 * len(spec.upper.period)
    for m in range(1, span + 1):
        head = spec.upper.prefix(m)
        if head.digits[-1] > 0:
            cands.append(periodize(head.minus()))
    span = spec.lower.descriptor_len + 2 * len(spec.lower.period)
    for m in range(1, span + 1):
        head = spec.lower.prefix(m)
        if head.digits[-1] < M:
            cands.append(periodize(head.plus()))
    mids = [word([k], M), word([k + 1, k], M), word([k, k + 1], M)]
    mids += [word([M, 0], M), word([0, M], M), word([0], M), word([M], M)]
    for w in mids:
        cands.append(periodize(w))
    out, seen = [], set()
    for c in cands:
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


class BruteForce:
    """Exhaustive word enumerator for one ShiftSpec."""

    def __init__(self, spec: ShiftSpec, horizon: int = 8):
        self.spec = spec
        self.horizon = horizon
        self.tails = _candidate_tails(spec)

    def extendable(self, digits: tuple) -> bool:
        """Is there an infinite valid continuation of this word?"""
        return self._search(digits, 0)

    def _search(self, digits: tuple, depth: int) -> bool:
        for tail in self.tails:
            full = DigitSeq(digits + tail.preperiod, tail.period, self.spec.alphabet)
            if seq_in_shift(full, self.spec):
                return True
        if depth >= self.horizon:
            return False
        M = self.spec.alphabet.M
        for d in range(M + 1):
            ext = digits + (d,)
            if word_prefix_ok(ext, self.spec) and self._search(ext, depth + 1):
                return True
        return False

    def count(self, n: int) -> int:
        """Number of length-n words appearing in the shift space."""
        if n < 0:
            raise OutOfRange("n must be >= 0")
        M = self.spec.alphabet.M
        total = 0
        stack: list[tuple] = [()]
        while stack:
            cur = stack.pop()
            if len(cur) == n:
                if self.extendable(cur):
                    total += 1
                continue
            for d in range(M + 1):
                ext = cur + (d,)
                if word_prefix_ok(ext, self.spec):
                    stack.append(ext)
        return total


def brute_count(spec: ShiftSpec, n: int, horizon: int = 8) -> int:
    return BruteForce(spec, horizon).count(n)
