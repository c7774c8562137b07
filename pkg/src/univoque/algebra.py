"""Exact arithmetic for the algebraic numbers that appear as bases.

Polynomials are tuples of integer (or Fraction) coefficients in ascending
order.  An :class:`AlgebraicReal` is the unique root of an integer
polynomial inside a half-open rational interval ``(lo, hi]``; because the
interval isolates exactly one root and the polynomial changes sign across
it, comparison with any rational is a single exact sign evaluation, and
interval refinement is plain bisection.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import OutOfRange

Poly = tuple


def trim(p) -> Poly:
    p = tuple(p)
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def degree(p: Poly) -> int:
    return len(trim(p)) - 1


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return trim(
        tuple((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))
    )


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def shift_up(p: Poly, k: int) -> Poly:
    """Multiply by x^k."""
    if not p:
        return ()
    return (0,) * k + tuple(p)


def scale(p: Poly, c) -> Poly:
    return trim(tuple(a * c for a in p))


def derivative(p: Poly) -> Poly:
    return trim(tuple(i * p[i] for i in range(1, len(p))))


def evaluate(p: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def eval_interval(p: Poly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Interval Horner evaluation; valid for any sign pattern."""
    alo = ahi = Fraction(0)
    for c in reversed(p):
        cands = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(cands) + c, max(cands) + c
    return alo, ahi


def content_normalize(p: Poly) -> Poly:
    """Divide by integer content and make the leading coefficient positive."""
    p = trim(p)
    if not p:
        return ()
    g = 0
    for c in p:
        g = math.gcd(g, abs(c))
    p = tuple(c // g for c in p)
    if p[-1] < 0:
        p = neg(p)
    return p


def to_fraction_poly(p: Poly) -> Poly:
    return tuple(Fraction(c) for c in p)


def _divmod_frac(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    a = list(to_fraction_poly(trim(a)))
    b = to_fraction_poly(trim(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = c
        for i, bc in enumerate(b):
            a[i + k] -= c * bc
        while a and a[-1] == 0:
            a.pop()
    return trim(q), trim(a)


def poly_mod(a: Poly, b: Poly) -> Poly:
    return _divmod_frac(a, b)[1]


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Primitive integer gcd (Euclid over the rationals)."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, poly_mod(a, b)
    if not a:
        return ()
    lcm_den = 1
    for c in a:
        lcm_den = lcm_den * Fraction(c).denominator // math.gcd(
            lcm_den, Fraction(c).denominator
        )
    return content_normalize(tuple(int(Fraction(c) * lcm_den) for c in a))


def sturm_chain(p: Poly) -> list[Poly]:
    p = to_fraction_poly(trim(p))
    if degree(p) <= 0:
        return [p]
    chain = [p, to_fraction_poly(derivative(p))]
    while degree(chain[-1]) > 0:
        r = poly_mod(chain[-2], chain[-1])
        if not r:
            break
        chain.append(neg(r))
    return chain


def _variations(chain: list[Poly], x: Fraction) -> int:
    signs = []
    for p in chain:
        v = evaluate(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: Poly, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in (lo, hi]."""
    p = trim(p)
    if degree(p) <= 0:
        return 0
    chain = sturm_chain(p)
    return _variations(chain, lo) - _variations(chain, hi)


def floor_strict(x: Fraction) -> int:
    """Largest integer strictly below x."""
    return math.ceil(x) - 1


def sign_at(p: Poly, x: Fraction) -> int:
    """Sign of p(x), computed as the integer p(num/den) * den^deg."""
    if not p:
        return 0
    num, den = x.numerator, x.denominator
    acc = p[-1]
    power = 1
    for c in reversed(p[:-1]):
        power *= den
        acc = acc * num + c * power
    return (acc > 0) - (acc < 0)


class AlgebraicReal:
    """The unique root of ``coeffs`` in the half-open interval (lo, hi].

    Invariants: ``P(lo) != 0``; either ``P(hi) == 0`` (the root is hi) or
    ``sign P(hi) != sign P(lo)``; exactly one root lies in the interval.
    Instances are immutable; refinement returns a new value.
    """

    __slots__ = ("coeffs", "lo", "hi", "_sign_lo")

    def __init__(self, coeffs: Poly, lo: Fraction, hi: Fraction):
        coeffs = content_normalize(coeffs)
        lo, hi = Fraction(lo), Fraction(hi)
        if not lo < hi:
            raise OutOfRange("isolating interval must have lo < hi")
        slo = sign_at(coeffs, lo)
        if slo == 0:
            raise OutOfRange("interval is half-open; lo must not be a root")
        shi = sign_at(coeffs, hi)
        if shi != 0 and shi == slo:
            raise OutOfRange("polynomial does not change sign across the interval")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "_sign_lo", slo)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("AlgebraicReal is immutable")

    def __repr__(self) -> str:
        return f"AlgebraicReal({list(self.coeffs)}, ({self.lo}, {self.hi}])"

    def width(self) -> Fraction:
        return self.hi - self.lo

    def cmp_fraction(self, x: Fraction) -> int:
        """Sign of (root - x); exact, no refinement needed."""
        x = Fraction(x)
        if x <= self.lo:
            return 1
        if x >= self.hi:
            # root <= hi <= x, equal only when x is the right endpoint root
            if x == self.hi and sign_at(self.coeffs, self.hi) == 0:
                return 0
            return -1
        v = sign_at(self.coeffs, x)
        if v == 0:
            return 0
        # same sign as at lo: the single sign change is still ahead
        return 1 if v == self._sign_lo else -1

    @classmethod
    def _trusted(cls, coeffs: Poly, lo: Fraction, hi: Fraction, sign_lo: int):
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", coeffs)
        object.__setattr__(obj, "lo", lo)
        object.__setattr__(obj, "hi", hi)
        object.__setattr__(obj, "_sign_lo", sign_lo)
        return obj

    def refine(self) -> "AlgebraicReal":
        return self.refine_to(self.width() / 2)

    def refine_to(self, width: Fraction) -> "AlgebraicReal":
        lo, hi = self.lo, self.hi
        s = self._sign_lo
        while hi - lo > width:
            mid = (lo + hi) / 2
            v = sign_at(self.coeffs, mid)
            if v == 0:
                # root hit exactly; shrink from the left, root stays at hi
                new_lo = mid - width / 2
                if new_lo > lo and sign_at(self.coeffs, new_lo) == s:
                    lo = new_lo
                hi = mid
                break
            if v == s:
                lo = mid
            else:
                hi = mid
        if (lo, hi) == (self.lo, self.hi):
            return self
        return AlgebraicReal._trusted(self.coeffs, lo, hi, s)

    def exact_rational(self) -> Fraction | None:
        """The root itself when it happens to be rational (root == hi)."""
        if sign_at(self.coeffs, self.hi) == 0:
            return self.hi
        return None

    def __float__(self) -> float:
        r = self.refine_to(Fraction(1, 1 << 64))
        return float((r.lo + r.hi) / 2)

    def cmp(self, other: "AlgebraicReal | Fraction | int") -> int:
        if isinstance(other, (int, Fraction)):
            return self.cmp_fraction(Fraction(other))
        a, b = self, other
        checked_common = False
        for _ in range(512):
            if a.hi <= b.lo:
                return -1  # a_root <= a.hi <= b.lo < b_root
            if b.hi <= a.lo:
                return 1
            if not checked_common:
                # equal iff a shared root lies in the interval overlap
                checked_common = True
                g = poly_gcd(a.coeffs, b.coeffs)
                if degree(g) >= 1:
                    olo, ohi = max(a.lo, b.lo), min(a.hi, b.hi)
                    if olo < ohi and count_roots(g, olo, ohi) >= 1:
                        return 0
            a, b = a.refine(), b.refine()
        raise OutOfRange("could not separate two algebraic numbers")


def is_zero_at_root(h: Poly, root: AlgebraicReal) -> bool:
    """Does the integer polynomial h vanish at the given algebraic number?

    True exactly when gcd(h, P) keeps a root inside the isolating interval;
    since the interval holds a single root of P this pins the value.
    """
    h = trim(h)
    if not h:
        return True
    if degree(h) == 0:
        return False
    g = poly_gcd(h, root.coeffs)
    if degree(g) < 1:
        return False
    return count_roots(g, root.lo, root.hi) >= 1
