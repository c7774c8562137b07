from fractions import Fraction

import pytest

from univoque import constants
from univoque.bases import is_quasi_greedy_admissible, quasi_greedy
from univoque.classify import in_V_tilde
from univoque.errors import OutOfRange
from univoque.words import lex_cmp, parse_word


def test_tau_prefix():
    assert "".join(map(str, constants.tau_prefix(8))) == "01101001"


def test_lambda_m8():
    assert constants.thue_morse_lambda(8, 12).text() == "543534543453"


def test_lambda_generic_even():
    for k in (1, 2, 3, 4):
        M = 2 * k
        got = tuple(constants.thue_morse_lambda(M, 8).digits)
        want = (k + 1, k, k - 1, k + 1, k - 1, k, k + 1, k)
        assert got == want, (M, got)


def test_lambda_generic_odd():
    for k in (0, 1, 2):
        M = 2 * k + 1
        got = tuple(constants.thue_morse_lambda(M, 8).digits)
        want = (k + 1, k + 1, k, k + 1, k, k, k + 1, k + 1)
        assert got == want, (M, got)


def test_golden_base_values():
    assert constants.golden_base(8).value == 5  # k + 1 for even M
    g1 = constants.golden_base(1)
    assert abs(float(g1) - 1.61803) < 1e-5
    # odd M: root of q^2 - (k+1) q - (k+1)
    for k in (0, 1, 2, 3):
        M = 2 * k + 1
        q = constants.golden_base(M)
        want = (k + 1 + (k * k + 6 * k + 5) ** 0.5) / 2
        assert abs(float(q) - want) < 1e-9
    # and its expansion comes back out
    q = constants.golden_base(6)
    assert quasi_greedy(q, 3).text() == "333"


def test_transitive_base_expansions():
    assert constants.step_expansion(8, 1).text() == "5(4)"
    assert constants.step_expansion(1, 1).text() == "1(10)"
    assert constants.step_expansion(3, 1).text() == "2(21)"


def test_nontransitive_base():
    q = constants.nontransitive_base(8)
    assert quasi_greedy(q, 4).text() == "5353"
    assert quasi_greedy(constants.nontransitive_base(1), 8).text() == "11001100"


def test_step_expansions_admissible_and_decreasing():
    for M in (1, 2, 3, 8):
        prev = None
        for n in range(1, 7):
            x = constants.step_expansion(M, n)
            assert is_quasi_greedy_admissible(x)
            assert in_V_tilde(x)
            if prev is not None:
                assert lex_cmp(x, prev) < 0
            prev = x


def test_ordering_chain():
    for M in range(1, 11):
        qg = constants.golden_base(M)
        qnt = constants.nontransitive_base(M)
        qt = constants.transitive_base(M)
        assert qg.cmp(qnt) < 0 < qt.cmp(qnt)
        qc = constants.komornik_loreti(M, Fraction(1, 10**8))
        assert qnt.cmp_fraction(qc.lo) < 0
        prev = None
        for n in range(1, 5):
            qn = constants.step_base(M, n)
            assert qn.cmp_fraction(qc.lo) > 0
            if prev is not None:
                assert qn.cmp(prev) < 0
            prev = qn


def test_komornik_loreti_values():
    qc8 = constants.komornik_loreti(8, Fraction(1, 10**6))
    assert abs(float(qc8) - 5.80676) < 1e-5
    qc1 = constants.komornik_loreti(1, Fraction(1, 10**6))
    assert abs(float(qc1) - 1.78723) < 1e-5  # the classical constant
    qc2 = constants.komornik_loreti(2, Fraction(1, 10**6))
    assert 2 < float(qc2) < 3


def test_block_len_parity_split():
    assert [constants.step_block_len(8, n) for n in (1, 2, 3)] == [1, 2, 4]
    assert [constants.step_block_len(1, n) for n in (1, 2, 3)] == [2, 4, 8]
    assert constants.star_j_threshold(8, 2) == 4
    assert constants.star_j_threshold(1, 2) == 8


def test_catalog_caches_and_serializes():
    cat = constants.ConstantCatalog(8)
    assert cat.q_T() is cat.q_T()
    data = cat.entries(n_steps=2, digits=8)
    assert data["q_G"]["value"] == "5"
    assert data["q_T"]["coeffs"] == [1, -6, 1]
    assert data["q_T1"]["expansion"] == "5(4)"
    assert data["q_c"]["decimal"].startswith("5.8067")


def test_bad_args():
    with pytest.raises(OutOfRange):
        constants.step_block_len(8, 0)
    with pytest.raises(OutOfRange):
        constants.thue_morse_lambda(8, -1)
