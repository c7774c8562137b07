import pytest

from univoque import classify, constants
from univoque.bases import BaseSpec, solve_base
from univoque.errors import NotInXiRange, NotPrimitive, OutOfRange
from univoque.words import parse_seq, parse_word, periodize, word


def test_in_V_tilde_examples():
    assert classify.in_V_tilde(parse_seq("(4)", 8))
    assert classify.in_V_tilde(parse_seq("(10)", 1))
    assert not classify.in_V_tilde(parse_seq("1(0)", 1))
    assert classify.in_V_tilde(parse_seq("(543)", 8))
    wit = []
    assert not classify.in_V_tilde(parse_seq("(201)", 2), wit)
    assert wit  # a witness shift is reported


def test_base_class_top():
    cls = classify.sequence_class(parse_seq("(8)", 8))
    assert cls.in_U and cls.in_U_bar and cls.in_V
    assert cls.irreducible is True


def test_base_class_nontransitive_base():
    cls = classify.sequence_class(parse_seq("(53)", 8))
    assert cls.in_V and not cls.in_U_bar and not cls.in_U
    assert cls.irreducible is False


def test_base_class_transitive_base():
    cls = classify.sequence_class(parse_seq("5(4)", 8))
    assert cls.in_U and cls.in_U_bar and cls.in_V
    assert cls.irreducible is False  # transitive without being irreducible


def test_class_chain_on_catalog():
    for M in (1, 2, 3, 8):
        cat = constants.ConstantCatalog(M)
        for a in (
            constants.step_expansion(M, 1),
            constants.step_expansion(M, 2),
            periodize(constants.thue_morse_lambda(M, 4).minus()),
        ):
            cls = classify.sequence_class(a)
            if cls.in_U:
                assert cls.in_U_bar
            if cls.in_U_bar:
                assert cls.in_V
            assert cls.in_V == cls.in_V_tilde


def test_base_class_from_base():
    cls = classify.base_class(solve_base(parse_seq("5(4)", 8)))
    assert cls.in_U and not cls.prefix_certified
    from fractions import Fraction

    cls = classify.base_class(BaseSpec.from_rational(Fraction("8.993"), 8), depth=48)
    assert cls.prefix_certified and cls.in_V_tilde


def test_primitive_examples():
    assert classify.is_primitive(parse_word("111001000111", 1))
    assert not classify.is_primitive(parse_word("0", 1))
    assert classify.is_primitive(parse_word("1", 1))
    for n in range(0, 6):
        assert classify.is_primitive(constants.thue_morse_lambda(8, 2**n))
        assert classify.is_primitive(constants.thue_morse_lambda(5, 2**n))


def test_reflection_recurrence_chain():
    chain = classify.rr_chain(parse_word("111001000111", 1))
    assert [c.text() for c in chain] == ["111001000111", "111001", "111", "11", "1", ""]


def test_reflection_recurrence_fixpoint():
    # no recurrence point: the word is its own reflection recurrence word
    w = parse_word("76", 8)
    assert classify.is_primitive(w)
    assert classify.reflection_recurrence(w) == w
    assert classify.rr_chain(w) == [w]


def test_reflection_recurrence_requires_primitive():
    with pytest.raises(NotPrimitive):
        classify.reflection_recurrence(parse_word("01", 1))


def test_irreducible_table_families():
    # (s^j sbar)^oo irreducible, (s^j sbar^j)^oo not, for s above the middle
    for M in (2, 4, 8):
        for s in range(M // 2 + 1, M + 1):
            for j in (2, 3):
                good = periodize(word([s] * j + [M - s], M))
                bad = periodize(word([s] * j + [M - s] * j, M))
                assert classify.is_irreducible(good), (M, s, j)
                assert not classify.is_irreducible(bad), (M, s, j)
    # (s^j t^l)^oo with a middle digit t
    assert classify.is_irreducible(periodize(parse_word("887", 8)))
    assert classify.is_irreducible(periodize(parse_word("2211", 2)))


def test_irreducible_witness_in_window():
    ok, j = classify.is_irreducible(parse_seq("(53)", 8), with_witness=True)
    assert not ok and j == 1
    ok, j = classify.is_irreducible(parse_seq("5(4)", 8), with_witness=True)
    assert not ok and j == 1


def test_irreducible_requires_admissible():
    with pytest.raises(OutOfRange):
        classify.is_irreducible(parse_seq("(201)", 2))


def test_doubling_stability_regression():
    # the default truncation bound is validated by doubling it
    seqs = [
        parse_seq("(543)", 8),
        parse_seq("(220)", 2),
        parse_seq("(2211)", 2),
        parse_seq("(887)", 8),
        parse_seq("(53)", 8),
        constants.step_expansion(8, 2),
        constants.step_expansion(2, 3),
    ]
    for a in seqs:
        J = 4 * a.descriptor_len
        assert classify.is_irreducible(a, J) == classify.is_irreducible(a, 2 * J)
        try:
            s1 = classify.is_star_irreducible(a, None)
            s2 = classify.is_star_irreducible(a, 8 * a.descriptor_len)
        except NotInXiRange:
            continue
        assert s1 == s2


def test_star_irreducible_examples():
    assert classify.is_star_irreducible(parse_seq("(543)", 8)) == 1
    for n in (2, 3, 4):
        level = classify.is_star_irreducible(constants.step_expansion(8, n))
        assert level == n - 1
    # block families sit one level deeper than their block exponent
    for n in (1, 2):
        blk = constants.thue_morse_lambda(8, 2**n)
        w2 = blk + blk.reflect().plus() * 2 + blk.reflect()
        assert classify.is_star_irreducible(periodize(w2)) == n + 1


def test_star_range_errors():
    with pytest.raises(NotInXiRange):
        classify.is_star_irreducible(parse_seq("(76)", 8))  # above the window
    with pytest.raises(NotInXiRange):
        classify.is_star_irreducible(parse_seq("(4)", 8))  # below the window


def test_never_both_kinds():
    for text in ("(543)", "(5435345434)", "(76)", "(887)", "(53)"):
        a = parse_seq(text, 8)
        cls = classify.sequence_class(a)
        assert not (cls.irreducible and cls.star_irreducible)
