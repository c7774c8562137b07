"""Bases q in (1, M+1]: exact representation, evaluation, and expansions.

A base is either an exact rational or an algebraic number given by an
integer polynomial with an isolating interval.  The two core algorithms:

* ``quasi_greedy`` produces digits of the quasi-greedy expansion of 1,
  i.e. the lexicographically largest expansion with infinitely many
  nonzero digits.  Each digit is the largest d with d < q * remainder
  (strictness is what keeps the expansion infinite), so a digit decision
  is a sign test of an integer polynomial at q; ties (q * remainder
  exactly integral) are resolved exactly.

* ``solve_base`` inverts an eventually periodic expansion: clearing
  denominators of  sum a_i q^-i = 1  gives an integer polynomial whose
  single root above 1 is the base, isolated by bisection (the power sum
  is strictly decreasing in q).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import algebra
from .algebra import AlgebraicReal, Poly
from .errors import NotAdmissible, OutOfRange, PrecisionExhausted
from .words import Alphabet, DigitSeq, Word, periodize, seq_le, word

DEFAULT_PRECISION_BITS = 256


@dataclass(frozen=True)
class RealApprox:
    """A rational enclosure [lo, hi] of a real value."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def __float__(self) -> float:
        return float(self.mid)


class BaseSpec:
    """A base q in (1, M+1], exact rational or algebraic."""

    __slots__ = ("alphabet", "value")

    def __init__(self, alphabet: Alphabet, value: Fraction | AlgebraicReal):
        if isinstance(value, AlgebraicReal):
            r = value.exact_rational()
            if r is not None:
                value = r
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "value", value)
        if not (self.cmp_fraction(1) > 0 and self.cmp_fraction(alphabet.M + 1) <= 0):
            raise OutOfRange(f"base must lie in (1, {alphabet.M + 1}]")

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("BaseSpec is immutable")

    @property
    def kind(self) -> str:
        return "rational" if isinstance(self.value, Fraction) else "algebraic"

    def __repr__(self) -> str:
        return f"BaseSpec({self.decimal(10)}, M={self.alphabet.M})"

    def cmp_fraction(self, x) -> int:
        x = Fraction(x)
        if isinstance(self.value, Fraction):
            return (self.value > x) - (self.value < x)
        return self.value.cmp_fraction(x)

    def cmp(self, other: "BaseSpec") -> int:
        if isinstance(other.value, Fraction):
            return self.cmp_fraction(other.value)
        if isinstance(self.value, Fraction):
            return -other.cmp_fraction(self.value)
        return self.value.cmp(other.value)

    def interval(self, width: Fraction | None = None) -> tuple[Fraction, Fraction]:
        if isinstance(self.value, Fraction):
            return self.value, self.value
        v = self.value
        if width is not None:
            v = v.refine_to(Fraction(width))
        return v.lo, v.hi

    def __float__(self) -> float:
        return float(self.value)

    def decimal(self, digits: int = 12) -> str:
        scale = 10**digits
        if isinstance(self.value, Fraction):
            n = round(self.value * scale)
        else:
            lo, hi = self.interval(Fraction(1, 4 * scale))
            n = round((lo + hi) / 2 * scale)
        sign = "-" if n < 0 else ""
        n = abs(n)
        return f"{sign}{n // scale}.{n % scale:0{digits}d}"

    def to_json(self) -> dict:
        if isinstance(self.value, Fraction):
            return {"kind": "rational", "value": str(self.value)}
        return {
            "kind": "algebraic",
            "coeffs": list(self.value.coeffs),
            "low": str(self.value.lo),
            "high": str(self.value.hi),
        }

    @classmethod
    def from_json(cls, data: dict, alphabet: Alphabet) -> "BaseSpec":
        if data["kind"] == "rational":
            return cls(alphabet, Fraction(data["value"]))
        root = AlgebraicReal(
            tuple(data["coeffs"]), Fraction(data["low"]), Fraction(data["high"])
        )
        return cls(alphabet, root)

    @classmethod
    def from_rational(cls, value, M: int) -> "BaseSpec":
        return cls(Alphabet(M), Fraction(value))

    @classmethod
    def from_poly(cls, coeffs, lo, hi, M: int) -> "BaseSpec":
        lo, hi = Fraction(lo), Fraction(hi)
        if algebra.count_roots(coeffs, lo, hi) != 1:
            raise OutOfRange("interval must isolate exactly one root")
        return cls(Alphabet(M), AlgebraicReal(tuple(coeffs), lo, hi))


# ---------------------------------------------------------------------------
# evaluation of digit sequences


def _interval_inv(lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    # both endpoints positive in every use below
    return 1 / hi, 1 / lo


def _interval_mul(a, b) -> tuple[Fraction, Fraction]:
    c = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(c), max(c)


def pi_q(x: DigitSeq | Word, q: BaseSpec, width=Fraction(1, 10**12)) -> RealApprox:
    """Enclose  sum_i x_i q^-i  within the requested width.

    Eventually periodic sequences use the closed geometric-series form, so
    the result is exact for rational q and an enclosure otherwise.
    """
    width = Fraction(width)
    if width <= 0:
        raise OutOfRange("width must be positive")
    if isinstance(x, Word):
        pre, per = x.digits, ()
    else:
        pre, per = x.preperiod, x.period

    def value_at(qv: Fraction) -> Fraction:
        inv = 1 / qv
        head = Fraction(0)
        p = inv
        for d in pre:
            head += d * p
            p *= inv
        if per:
            tail = Fraction(0)
            t = inv
            for d in per:
                tail += d * t
                t *= inv
            head += inv ** len(pre) * tail / (1 - inv ** len(per))
        return head

    if isinstance(q.value, Fraction):
        v = value_at(q.value)
        return RealApprox(v, v)

    root = q.value
    while root.lo <= 1:
        root = root.refine()
    for _ in range(DEFAULT_PRECISION_BITS):
        vlo, vhi = value_at(root.lo), value_at(root.hi)
        lo, hi = min(vlo, vhi), max(vlo, vhi)
        # the power sum is monotone in q, so endpoint values enclose it
        if hi - lo <= width:
            return RealApprox(lo, hi)
        root = root.refine()
    raise PrecisionExhausted("pi_q enclosure did not reach the requested width")


# ---------------------------------------------------------------------------
# quasi-greedy expansion


def _qg_rational(q: Fraction, M: int, n: int):
    """Yield (digit, remainder) pairs for a rational base."""
    r = Fraction(1)
    for _ in range(n):
        x = q * r
        d = min(math.ceil(x) - 1, M)  # largest digit strictly below x
        r = x - d
        yield d, r


class _AlgebraicExpander:
    """Digit-by-digit quasi-greedy expansion at an algebraic base.

    The remainder after i digits is the integer polynomial
    q^i - a_1 q^(i-1) - ... - a_i evaluated at the base, so every digit
    decision is the position of q*r relative to the integers: decided by
    interval evaluation, with an exact vanishing test when an endpoint
    collision persists (that is the tie where the expansion must round
    down to stay infinite).
    """

    def __init__(self, root: AlgebraicReal, M: int, bits: int):
        self.root = root
        self.M = M
        self.bits_left = bits
        self.rem: Poly = (1,)

    def _refine(self, steps: int = 8) -> None:
        if self.bits_left <= 0:
            raise PrecisionExhausted("digit decision exceeded the precision budget")
        take = min(steps, self.bits_left)
        self.bits_left -= take
        root = self.root
        for _ in range(take):
            root = root.refine()
        self.root = root

    def next_digit(self) -> int:
        x = algebra.shift_up(self.rem, 1)  # q * r
        while True:
            xlo, xhi = algebra.eval_interval(x, self.root.lo, self.root.hi)
            dlo = algebra.floor_strict(xlo)
            dhi = algebra.floor_strict(xhi)
            if dlo == dhi:
                d = min(dlo, self.M)
                break
            # an integer may sit inside the enclosure: test exactly
            hit = None
            for c in range(dlo + 1, dhi + 1):
                if algebra.is_zero_at_root(algebra.sub(x, (c,)), self.root):
                    hit = c
                    break
            if hit is not None:
                d = min(hit - 1, self.M)
                break
            self._refine()
        self.rem = algebra.sub(x, (d,))
        return d


def quasi_greedy(q: BaseSpec, n: int, precision_bits: int | None = None) -> Word:
    """First n digits of the quasi-greedy expansion of 1 in base q."""
    if n < 0:
        raise OutOfRange("n must be >= 0")
    M = q.alphabet.M
    bits = DEFAULT_PRECISION_BITS if precision_bits is None else precision_bits
    if isinstance(q.value, Fraction):
        return Word((d for d, _ in _qg_rational(q.value, M, n)), q.alphabet)
    ex = _AlgebraicExpander(q.value, M, bits)
    return Word((ex.next_digit() for _ in range(n)), q.alphabet)


def quasi_greedy_digitseq(
    q: BaseSpec, max_steps: int = 512, precision_bits: int | None = None
) -> DigitSeq | None:
    """Detect eventual periodicity of the quasi-greedy expansion.

    The digits are a function of the remainder value, so a repeated
    remainder closes the cycle exactly.  Returns None when no repeat shows
    up within ``max_steps`` (the expansion may still be aperiodic or just
    have a longer cycle).
    """
    M = q.alphabet.M
    bits = DEFAULT_PRECISION_BITS if precision_bits is None else precision_bits
    digits: list[int] = []

    if isinstance(q.value, Fraction):
        seen: dict = {Fraction(1): 0}
        for i, (d, r) in enumerate(_qg_rational(q.value, M, max_steps), start=1):
            digits.append(d)
            if r in seen:
                j = seen[r]
                return DigitSeq(digits[:j], digits[j:i], q.alphabet)
            seen[r] = i
        return None

    ex = _AlgebraicExpander(q.value, M, bits)
    minimal = q.value.coeffs

    def key(rem: Poly):
        return tuple(algebra.poly_mod(rem, minimal))

    seen = {key(ex.rem): 0}
    for i in range(1, max_steps + 1):
        digits.append(ex.next_digit())
        k = key(ex.rem)
        if k in seen:
            j = seen[k]
            return DigitSeq(digits[:j], digits[j:i], q.alphabet)
        seen[k] = i
    return None


# ---------------------------------------------------------------------------
# admissibility and inversion


def is_quasi_greedy_admissible(a: DigitSeq) -> bool:
    """Is ``a`` the quasi-greedy expansion of 1 for some base?

    Requires an infinite expansion (tail not all zero) whose shifted tails
    never exceed the sequence itself at positions holding a digit < M.
    Eventual periodicity makes the shift check finite.
    """
    if a.period == (0,):
        return False  # ends in 0^oo: not an infinite expansion
    M = a.alphabet.M
    for n in range(1, a.descriptor_len + 1):
        if a.digit(n - 1) < M and not seq_le(a.shift(n), a):
            return False
    return True


def solve_base(a: DigitSeq, initial_width=Fraction(1, 2)) -> BaseSpec:
    """The unique base whose quasi-greedy expansion of 1 is ``a``."""
    if not is_quasi_greedy_admissible(a):
        raise NotAdmissible(f"{a.text()} is not a quasi-greedy expansion of 1")
    M = a.alphabet.M
    pre, per = a.preperiod, a.period
    p, m = len(pre), len(per)
    # clear denominators of sum a_i q^-i = 1 over q^p (q^m - 1)
    U = algebra.trim(tuple(reversed(pre)))  # sum_{i<=p} pre_i q^(p-i)
    V = algebra.trim(tuple(reversed(per)))
    qm1 = algebra.sub(algebra.shift_up((1,), m), (1,))  # q^m - 1
    P = algebra.add(algebra.mul(qm1, U), V)
    P = algebra.sub(P, algebra.shift_up(qm1, p))
    P = algebra.trim(P)

    if algebra.degree(P) == 1:
        root = Fraction(-P[0], P[1])
        return BaseSpec(a.alphabet, root)
    for c in range(2, M + 2):
        if algebra.evaluate(P, Fraction(c)) == 0:
            return BaseSpec(a.alphabet, Fraction(c))

    # sign(P) agrees with sign(sum - 1) on (1, M+1]; the sum is strictly
    # decreasing in q, so plain bisection isolates the root
    lo, hi = Fraction(1), Fraction(M + 1)
    if algebra.evaluate(P, lo) <= 0:
        raise NotAdmissible(f"no base solves {a.text()}")
    while hi - lo > initial_width:
        mid = (lo + hi) / 2
        v = algebra.evaluate(P, mid)
        if v == 0:
            return BaseSpec(a.alphabet, mid)
        if v > 0:
            lo = mid
        else:
            hi = mid
    return BaseSpec(a.alphabet, AlgebraicReal(P, lo, hi))
