import random
from fractions import Fraction

import pytest

from univoque import algebra
from univoque.algebra import AlgebraicReal
from univoque.errors import OutOfRange


def test_sign_at_matches_evaluate():
    rng = random.Random(3)
    for _ in range(300):
        p = tuple(rng.randint(-9, 9) for _ in range(rng.randint(1, 6)))
        x = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
        v = algebra.evaluate(p, x)
        assert algebra.sign_at(p, x) == (v > 0) - (v < 0)


def test_count_roots():
    # (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
    p = (-6, 11, -6, 1)
    assert algebra.count_roots(p, Fraction(0), Fraction(4)) == 3
    assert algebra.count_roots(p, Fraction(1), Fraction(2)) == 1  # (1, 2] holds 2
    assert algebra.count_roots(p, Fraction(3), Fraction(4)) == 0
    assert algebra.count_roots(p, Fraction(5, 2), Fraction(3)) == 1  # includes 3


def test_algebraic_real_golden():
    r = AlgebraicReal((-1, -1, 1), Fraction(1), Fraction(2))
    assert r.cmp_fraction(Fraction(8, 5)) == 1
    assert r.cmp_fraction(Fraction(13, 8)) == -1
    tight = r.refine_to(Fraction(1, 10**30))
    assert tight.width() <= Fraction(1, 10**30)
    assert abs(float(tight) - (1 + 5**0.5) / 2) < 1e-12


def test_algebraic_cmp_and_equality():
    a = AlgebraicReal((-1, -1, 1), Fraction(1), Fraction(2))
    b = AlgebraicReal((-1, -1, 1), Fraction(3, 2), Fraction(7, 4))
    assert a.cmp(b) == 0  # same root, different isolating intervals
    c = AlgebraicReal((1, -6, 1), Fraction(5), Fraction(6))  # 3 + 2 sqrt(2)
    assert a.cmp(c) == -1 and c.cmp(a) == 1
    assert c.cmp(Fraction(6)) == -1 and c.cmp(Fraction(5)) == 1


def test_exact_rational_endpoint():
    r = AlgebraicReal((-2, 1), Fraction(1), Fraction(2))  # root exactly 2
    assert r.exact_rational() == 2
    assert r.cmp_fraction(Fraction(2)) == 0


def test_constructor_validation():
    with pytest.raises(OutOfRange):
        AlgebraicReal((-1, -1, 1), Fraction(2), Fraction(3))  # no sign change
    with pytest.raises(OutOfRange):
        AlgebraicReal((-4, 0, 1), Fraction(2), Fraction(3))  # lo is the root


def test_gcd_and_zero_detection():
    p = algebra.mul((-1, 1), (-2, 1))  # (x-1)(x-2)
    q = algebra.mul((-1, 1), (-3, 1))  # (x-1)(x-3)
    assert algebra.poly_gcd(p, q) == (-1, 1)
    root = AlgebraicReal((-2, 1), Fraction(1), Fraction(5, 2))
    assert algebra.is_zero_at_root((-2, 1), root)
    assert algebra.is_zero_at_root((), root)
    assert not algebra.is_zero_at_root((-1, 1), root)
