import random
from fractions import Fraction

import pytest

from univoque.bases import (
    BaseSpec,
    is_quasi_greedy_admissible,
    pi_q,
    quasi_greedy,
    quasi_greedy_digitseq,
    solve_base,
)
from univoque.errors import NotAdmissible, OutOfRange
from univoque.words import lex_cmp, parse_seq, parse_word


GOLDEN = solve_base(parse_seq("(10)", 1))


def test_pi_q_top_and_zero():
    q = BaseSpec.from_rational(Fraction(5, 2), 2)
    top = pi_q(parse_seq("(2)", 2), q)
    assert top.lo == top.hi == Fraction(2) / (Fraction(5, 2) - 1)
    zero = pi_q(parse_seq("(0)", 2), q)
    assert zero.lo == zero.hi == 0


def test_pi_q_golden_is_one():
    v = pi_q(parse_seq("(10)", 1), GOLDEN, Fraction(1, 10**15))
    assert v.lo <= 1 <= v.hi and v.width <= Fraction(1, 10**15)


def test_pi_q_word_prefix():
    q = BaseSpec.from_rational(2, 1)
    v = pi_q(parse_word("11", 1), q)
    assert v.lo == v.hi == Fraction(3, 4)


def test_quasi_greedy_integer_base():
    assert quasi_greedy(BaseSpec.from_rational(2, 1), 5).text() == "11111"


def test_quasi_greedy_top_base():
    for M in (1, 3, 8):
        q = BaseSpec.from_rational(M + 1, M)
        assert quasi_greedy(q, 4).digits == (M,) * 4


def test_quasi_greedy_golden_tie_resolution():
    # q*remainder hits an exact integer every other step
    assert quasi_greedy(GOLDEN, 8).text() == "10101010"


def test_quasi_greedy_near_transitive_base():
    q = BaseSpec.from_rational(Fraction("5.82842712474619"), 8)
    assert quasi_greedy(q, 6).text() == "544444"


def test_solve_base_golden():
    assert GOLDEN.to_json()["coeffs"] == [-1, -1, 1]
    assert abs(float(GOLDEN) - 1.6180339887) < 1e-9


def test_solve_base_transitive_base_m8():
    q = solve_base(parse_seq("5(4)", 8))
    assert q.to_json()["coeffs"] == [1, -6, 1]
    assert abs(float(q) - (3 + 2 * 2**0.5)) < 1e-12


def test_solve_base_top():
    q = solve_base(parse_seq("(8)", 8))
    assert q.kind == "rational" and q.value == 9


def test_solve_base_rejects_inadmissible():
    with pytest.raises(NotAdmissible):
        solve_base(parse_seq("(01)", 1))


def test_admissibility_examples():
    assert is_quasi_greedy_admissible(parse_seq("(10)", 1))
    assert not is_quasi_greedy_admissible(parse_seq("(01)", 1))
    assert is_quasi_greedy_admissible(parse_seq("5(4)", 8))
    assert not is_quasi_greedy_admissible(parse_seq("1(0)", 1))  # ends in zeros


def test_monotonicity_of_expansion():
    qs = [Fraction(n, 10) for n in range(11, 20)]
    prev = None
    for qv in qs:
        w = quasi_greedy(BaseSpec.from_rational(qv, 1), 24)
        if prev is not None:
            assert prev.digits <= w.digits
        prev = w


def test_roundtrip_small_random():
    from univoque.words import Alphabet, DigitSeq

    rng = random.Random(5)
    done = 0
    while done < 40:
        M = rng.randint(1, 3)
        pre = [rng.randint(0, M) for _ in range(rng.randint(0, 2))]
        per = [rng.randint(0, M) for _ in range(rng.randint(1, 4))]
        a = DigitSeq(pre, per, Alphabet(M))
        if not is_quasi_greedy_admissible(a):
            continue
        q = solve_base(a)
        n = 4 * a.descriptor_len
        assert quasi_greedy(q, n).digits == a.prefix(n).digits
        done += 1


def test_periodic_detection():
    q = solve_base(parse_seq("5(43)", 8))
    assert quasi_greedy_digitseq(q) == parse_seq("5(43)", 8)
    # rational non-integer bases typically have aperiodic expansions
    assert quasi_greedy_digitseq(BaseSpec.from_rational(Fraction(3, 2), 1), 64) is None


def test_prefix_value_converges_to_one():
    q = solve_base(parse_seq("(543)", 8))
    for n in (8, 16, 32):
        v = pi_q(quasi_greedy(q, n), q, Fraction(1, 10**20))
        lo, hi = q.interval(Fraction(1, 10**6))
        tail = Fraction(8) * (Fraction(1) / lo) ** n / (lo - 1)
        assert v.lo <= 1 <= v.hi + tail


def test_interval_shrinks_below_1e30():
    q = solve_base(parse_seq("(543)", 8))
    lo, hi = q.interval(Fraction(1, 10**30))
    assert hi - lo <= Fraction(1, 10**30)


def test_base_domain_validation():
    with pytest.raises(OutOfRange):
        BaseSpec.from_rational(1, 2)
    with pytest.raises(OutOfRange):
        BaseSpec.from_rational(4, 2)


def test_base_json_roundtrip():
    for q in (GOLDEN, BaseSpec.from_rational(Fraction(5, 2), 8)):
        data = q.to_json()
        q2 = BaseSpec.from_json(data, q.alphabet)
        assert q2.to_json() == data
        assert q.cmp(q2) == 0


def test_decimal_rendering():
    assert BaseSpec.from_rational(Fraction(5, 2), 8).decimal(3) == "2.500"
    assert GOLDEN.decimal(10) == "1.6180339887"
