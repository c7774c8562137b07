"""Digits, finite words, and eventually periodic sequences.

All combinatorics downstream run over the alphabet {0, ..., M}.  Infinite
sequences are always eventually periodic and are kept in canonical form
(shortest preperiod, primitive period block), so structural equality is
semantic equality and lexicographic comparison is decidable from a bounded
digit window.

The text codec used by the CLI and JSON payloads writes a sequence as
``pre(per)``, e.g. ``5(43)`` for 5 43 43 43...; digits are bare characters
for M <= 9 and comma-separated integers otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import AlphabetMismatch, EmptyPeriod, OutOfRange

LT, EQ, GT = -1, 0, 1


@dataclass(frozen=True)
class Alphabet:
    """The digit set {0, ..., M}."""

    M: int

    def __post_init__(self) -> None:
        if self.M < 1:
            raise OutOfRange(f"alphabet needs M >= 1, got {self.M}")

    @property
    def k(self) -> int:
        # middle digit parameter: M = 2k or M = 2k + 1
        return self.M // 2

    @property
    def even(self) -> bool:
        return self.M % 2 == 0

    def check_digit(self, d: int) -> None:
        if not 0 <= d <= self.M:
            raise OutOfRange(f"digit {d} outside 0..{self.M}")


class Word:
    """An immutable finite digit string over an alphabet (may be empty)."""

    __slots__ = ("digits", "alphabet")

    def __init__(self, digits: Iterable[int], alphabet: Alphabet):
        digits = tuple(map(int, digits))
        if digits and not (0 <= min(digits) and max(digits) <= alphabet.M):
            alphabet.check_digit(min(digits))
            alphabet.check_digit(max(digits))
        object.__setattr__(self, "digits", digits)
        object.__setattr__(self, "alphabet", alphabet)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Word is immutable")

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.digits)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.digits[i], self.alphabet)
        return self.digits[i]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Word)
            and self.alphabet == other.alphabet
            and self.digits == other.digits
        )

    def __hash__(self) -> int:
        return hash((self.digits, self.alphabet.M))

    def __repr__(self) -> str:
        return f"Word({self.text()!r}, M={self.alphabet.M})"

    def __add__(self, other: "Word") -> "Word":
        self._check(other)
        return Word(self.digits + other.digits, self.alphabet)

    def __mul__(self, k: int) -> "Word":
        return Word(self.digits * k, self.alphabet)

    def _check(self, other: "Word") -> None:
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch(f"{self.alphabet} vs {other.alphabet}")

    def reflect(self) -> "Word":
        M = self.alphabet.M
        return Word(tuple(M - d for d in self.digits), self.alphabet)

    def plus(self) -> "Word":
        """Increment the last digit; requires it to be below M."""
        if not self.digits:
            raise OutOfRange("cannot increment the empty word")
        if self.digits[-1] >= self.alphabet.M:
            raise OutOfRange("last digit already maximal")
        return Word(self.digits[:-1] + (self.digits[-1] + 1,), self.alphabet)

    def minus(self) -> "Word":
        """Decrement the last digit; requires it to be above 0."""
        if not self.digits:
            raise OutOfRange("cannot decrement the empty word")
        if self.digits[-1] <= 0:
            raise OutOfRange("last digit already zero")
        return Word(self.digits[:-1] + (self.digits[-1] - 1,), self.alphabet)

    def text(self) -> str:
        if self.alphabet.M <= 9:
            return "".join(str(d) for d in self.digits)
        return ",".join(str(d) for d in self.digits)


def word(digits: Iterable[int], M: int) -> Word:
    return Word(digits, Alphabet(M))


def word_cmp(a: Word, b: Word) -> int:
    """Lexicographic comparison of two words of equal length."""
    a._check(b)
    if len(a) != len(b):
        raise OutOfRange("word_cmp needs equal lengths")
    if a.digits < b.digits:
        return LT
    if a.digits > b.digits:
        return GT
    return EQ


def _primitive_root(digits: tuple[int, ...]) -> tuple[int, ...]:
    # smallest block whose repetition gives the word (divisor lengths only:
    # two periods of a purely periodic sequence imply their gcd is one)
    m = len(digits)
    for d in range(1, m):
        if m % d == 0 and digits == digits[:d] * (m // d):
            return digits[:d]
    return digits


class DigitSeq:
    """An eventually periodic infinite sequence ``preperiod (period)^oo``.

    Canonical form is established at construction: the period block is
    primitive as a cyclic word and the preperiod is shortest possible (its
    last digit differs from the digit the period would have put there).
    Two DigitSeq values compare equal exactly when they denote the same
    infinite sequence.
    """

    __slots__ = ("preperiod", "period", "alphabet")

    def __init__(self, preperiod: Iterable[int], period: Iterable[int], alphabet: Alphabet):
        pre = tuple(int(d) for d in preperiod)
        per = tuple(int(d) for d in period)
        if not per:
            raise EmptyPeriod("period block must be nonempty")
        for d in pre + per:
            alphabet.check_digit(d)
        per = _primitive_root(per)
        # absorb preperiod digits that already follow the cycle
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = (per[-1],) + per[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)
        object.__setattr__(self, "alphabet", alphabet)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("DigitSeq is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DigitSeq)
            and self.alphabet == other.alphabet
            and self.preperiod == other.preperiod
            and self.period == other.period
        )

    def __hash__(self) -> int:
        return hash((self.preperiod, self.period, self.alphabet.M))

    def __repr__(self) -> str:
        return f"DigitSeq({self.text()!r}, M={self.alphabet.M})"

    @property
    def descriptor_len(self) -> int:
        return len(self.preperiod) + len(self.period)

    def digit(self, i: int) -> int:
        p = len(self.preperiod)
        if i < p:
            return self.preperiod[i]
        return self.period[(i - p) % len(self.period)]

    def prefix(self, n: int) -> Word:
        return Word((self.digit(i) for i in range(n)), self.alphabet)

    def reflect(self) -> "DigitSeq":
        M = self.alphabet.M
        return DigitSeq(
            (M - d for d in self.preperiod), (M - d for d in self.period), self.alphabet
        )

    def shift(self, n: int) -> "DigitSeq":
        if n < 0:
            raise OutOfRange("shift distance must be >= 0")
        p, m = len(self.preperiod), len(self.period)
        if n <= p:
            return DigitSeq(self.preperiod[n:], self.period, self.alphabet)
        r = (n - p) % m
        return DigitSeq((), self.period[r:] + self.period[:r], self.alphabet)

    def is_purely_periodic(self) -> bool:
        return not self.preperiod

    def text(self) -> str:
        pre = Word(self.preperiod, self.alphabet).text()
        per = Word(self.period, self.alphabet).text()
        return f"{pre}({per})"


def periodize(w: Word) -> DigitSeq:
    """w^oo."""
    if len(w) == 0:
        raise EmptyPeriod("cannot periodize the empty word")
    return DigitSeq((), w.digits, w.alphabet)


def append_periodic(pre: Word, per: Word) -> DigitSeq:
    """pre per^oo."""
    pre._check(per)
    if len(per) == 0:
        raise EmptyPeriod("period word must be nonempty")
    return DigitSeq(pre.digits, per.digits, pre.alphabet)


def concat(w: Word, x: DigitSeq) -> DigitSeq:
    if w.alphabet != x.alphabet:
        raise AlphabetMismatch(f"{w.alphabet} vs {x.alphabet}")
    return DigitSeq(w.digits + x.preperiod, x.period, x.alphabet)


def constant(d: int, M: int) -> DigitSeq:
    return periodize(word([d], M))


def lex_cmp(x: DigitSeq, y: DigitSeq) -> int:
    """Total lexicographic order on eventually periodic sequences.

    Comparing up to preperiods plus one least common multiple of the two
    period lengths is conclusive: beyond that window both sequences repeat
    with a common period, so agreement there is agreement forever.
    """
    if x.alphabet != y.alphabet:
        raise AlphabetMismatch(f"{x.alphabet} vs {y.alphabet}")
    bound = (
        len(x.preperiod)
        + len(y.preperiod)
        + math.lcm(len(x.period), len(y.period))
    )
    for i in range(bound):
        a, b = x.digit(i), y.digit(i)
        if a != b:
            return LT if a < b else GT
    return EQ


def seq_le(x: DigitSeq, y: DigitSeq) -> bool:
    return lex_cmp(x, y) <= 0


def seq_lt(x: DigitSeq, y: DigitSeq) -> bool:
    return lex_cmp(x, y) < 0


def word_vs_seq(w: Word, x: DigitSeq) -> int:
    """Compare a word against the first len(w) digits of a sequence."""
    if w.alphabet != x.alphabet:
        raise AlphabetMismatch(f"{w.alphabet} vs {x.alphabet}")
    for i, d in enumerate(w.digits):
        e = x.digit(i)
        if d != e:
            return LT if d < e else GT
    return EQ


def parse_word(text: str, M: int) -> Word:
    alphabet = Alphabet(M)
    text = text.strip()
    if not text:
        return Word((), alphabet)
    if M <= 9 and "," not in text:
        return Word((int(c) for c in text), alphabet)
    return Word((int(t) for t in text.split(",") if t.strip() != ""), alphabet)


def parse_seq(text: str, M: int) -> DigitSeq:
    """Parse the ``pre(per)`` notation; bare digits mean a pure period."""
    text = text.strip()
    if "(" in text:
        head, _, rest = text.partition("(")
        body = rest.rstrip()
        if not body.endswith(")"):
            raise OutOfRange(f"unbalanced parentheses in {text!r}")
        pre = parse_word(head, M)
        per = parse_word(body[:-1], M)
        return append_periodic(pre, per)
    return periodize(parse_word(text, M))
