import random

import pytest

from univoque.errors import AlphabetMismatch, EmptyPeriod, OutOfRange
from univoque.words import (
    Alphabet,
    DigitSeq,
    Word,
    append_periodic,
    lex_cmp,
    parse_seq,
    parse_word,
    periodize,
    word,
)


def test_reflect_example_binary():
    assert parse_word("111001", 1).reflect().text() == "000110"


def test_reflect_involution():
    w = parse_word("543", 8)
    assert w.reflect().reflect() == w
    s = parse_seq("5(43)", 8)
    assert s.reflect().reflect() == s


def test_reflect_periodic():
    assert parse_seq("(01)", 2).reflect() == parse_seq("(21)", 2)


def test_plus_minus():
    assert parse_word("543", 8).minus().text() == "542"
    assert parse_word("110", 1).plus().text() == "111"
    assert parse_word("5434", 8).plus().text() == "5435"
    with pytest.raises(OutOfRange):
        parse_word("540", 8).minus()
    with pytest.raises(OutOfRange):
        parse_word("548", 8).plus()


def test_lex_cmp_examples():
    assert lex_cmp(parse_seq("(10)", 2), parse_seq("(1)", 2)) < 0
    # Thue-Morse prefix 5435... against 5(4): first difference at index 2
    assert lex_cmp(parse_seq("5435(4)", 8), parse_seq("5(4)", 8)) < 0
    x = parse_seq("5(43)", 8)
    assert lex_cmp(x, x) == 0


def test_lex_cmp_total_order_sampled():
    rng = random.Random(7)
    seqs = []
    for _ in range(60):
        pre = [rng.randint(0, 2) for _ in range(rng.randint(0, 3))]
        per = [rng.randint(0, 2) for _ in range(rng.randint(1, 4))]
        seqs.append(DigitSeq(pre, per, Alphabet(2)))
    for a in seqs:
        for b in seqs:
            ab, ba = lex_cmp(a, b), lex_cmp(b, a)
            assert ab == -ba
            if ab == 0:
                assert a == b
            # order reverses under reflection
            assert lex_cmp(b.reflect(), a.reflect()) == ab
    for a in seqs:
        for b in seqs:
            for c in seqs:
                if lex_cmp(a, b) <= 0 <= lex_cmp(c, b) and lex_cmp(a, c) > 0:
                    raise AssertionError("transitivity violated")


def test_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        lex_cmp(parse_seq("(1)", 1), parse_seq("(1)", 2))


def test_shift_examples():
    assert parse_seq("(10)", 1).shift(1) == parse_seq("(01)", 1)
    s = parse_seq("54(32)", 8)
    assert s.shift(2).is_purely_periodic()
    for a in range(4):
        for b in range(4):
            assert s.shift(a + b) == s.shift(a).shift(b)


def test_periodize_canonical():
    assert periodize(parse_word("543", 8)) == periodize(parse_word("543543", 8))
    # absorbing the preperiod into a rotated period
    assert parse_seq("4(34)", 8) == parse_seq("(43)", 8)
    with pytest.raises(EmptyPeriod):
        periodize(word([], 3))


def test_rotation_identity_random():
    rng = random.Random(11)
    for _ in range(200):
        M = rng.randint(1, 4)
        w = [rng.randint(0, M) for _ in range(rng.randint(1, 4))]
        v = [rng.randint(0, M) for _ in range(rng.randint(1, 4))]
        wv = periodize(word(w + v, M))
        vw = periodize(word(v + w, M))
        assert wv.shift(len(w)) == vw


def test_digit_and_prefix():
    s = parse_seq("5(43)", 8)
    assert [s.digit(i) for i in range(6)] == [5, 4, 3, 4, 3, 4]
    assert s.prefix(4).text() == "5434"


def test_text_roundtrip():
    for text, M in [("5(43)", 8), ("(10)", 1), ("0(21)", 2), ("(8)", 8)]:
        s = parse_seq(text, M)
        assert parse_seq(s.text(), M) == s


def test_wide_alphabet_comma_encoding():
    s = parse_seq("10,2(3,11)", 11)
    assert s.preperiod == (10, 2) and s.period == (3, 11)
    assert parse_seq(s.text(), 11) == s


def test_word_indexing_and_concat():
    w = parse_word("5434", 8)
    assert w[1:3].text() == "43"
    assert (w + parse_word("5", 8)).text() == "54345"
    assert (parse_word("54", 8) * 2).text() == "5454"
