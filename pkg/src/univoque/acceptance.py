"""Acceptance criteria: one callable per criterion, with stated tolerances.

Each check returns a detail string and raises AssertionError on failure;
``run_all`` wraps them with timing for the CLI ``verify`` table, and the
test suite parametrizes over the same registry.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import classify, constants, dims, oracle, plateaus, subshift
from .bases import BaseSpec, is_quasi_greedy_admissible, quasi_greedy, solve_base
from .words import Alphabet, DigitSeq, Word, lex_cmp, parse_word, periodize

LN = math.log


def _assert_close(got: float, want: float, tol: float, what: str) -> None:
    assert abs(got - want) <= tol, f"{what}: got {got!r}, want {want!r} (tol {tol})"


def _entropy_of(alpha, mode="V", tol=1e-12):
    return subshift.entropy(subshift.build_automaton(subshift.spec_for(alpha, mode)), tol)


def _bracket_ok(e, want: float, tol: float, what: str) -> None:
    assert e.h_hi - e.h_lo <= tol, f"{what}: bracket width {e.h_hi - e.h_lo} > {tol}"
    assert e.h_lo - tol <= want <= e.h_hi + tol, f"{what}: {want} outside [{e.h_lo}, {e.h_hi}]"


def criterion_1_constants() -> str:
    cat = constants.ConstantCatalog(8)
    qg = cat.q_G()
    assert qg.kind == "rational" and qg.value == 5, "q_G(8) must be exactly 5"
    qt = cat.q_T()
    assert qt.to_json()["coeffs"] == [1, -6, 1], "q_T(8) polynomial"
    lo, hi = qt.interval(Fraction(1, 10**8))
    want = 3 + 2 * math.sqrt(2)
    assert abs(float((lo + hi) / 2) - want) < 1e-5, "q_T decimal"
    assert qt.cmp_fraction(5) > 0 and qt.cmp_fraction(6) <= 0, "q_T in (5,6]"
    qc = cat.q_c(Fraction(1, 10**5))
    assert qc.width <= Fraction(1, 10**5), "q_c bracket width"
    assert abs(float(qc.mid) - 5.80676) <= 1e-5, "q_c must match 5.80676 to 1e-5"
    tight = cat.q_c(Fraction(1, 10**8))
    assert round(float(tight.mid), 5) == 5.80676, "q_c rounds to 5.80676"
    return f"q_G=5, q_T~{float(qt):.6f} (q^2-6q+1), q_c~{float(qc):.7f}"


def criterion_2_thue_morse() -> str:
    assert constants.thue_morse_lambda(8, 12).text() == "543534543453"
    for M in range(1, 7):
        for n in range(0, 8):
            if 2 ** (n + 1) > 256:
                break
            a = constants.thue_morse_lambda(M, 2 ** (n + 1))
            b = constants.thue_morse_lambda(M, 2**n)
            assert a.digits == (b + b.reflect().plus()).digits, (M, n)
    return "prefix(8,12) ok; doubling rule holds to length 256 for M=1..6"


def _primitive_words(M: int, m_max: int):
    """Exhaustive primitive words of length <= m_max.

    Depth-first over digits, carrying for each shift offset whether its
    comparison against the prefix (upper) or the reflected prefix (lower)
    is still tied; a word is primitive exactly when no lower comparison is
    left tied.  Cross-checked against naive enumeration in the test suite.
    """
    alphabet = Alphabet(M)
    # node: digits, tied upper shifts, tied lower shifts (i >= 1), and
    # whether shift 0 (word vs its own reflection) is still tied
    stack = [((d,), (), (), d == M - d) for d in range(M + 1) if d >= M - d]
    while stack:
        digits, up_tied, lo_tied, mid_tied = stack.pop()
        if not lo_tied and not mid_tied:
            yield Word(digits, alphabet)
        t = len(digits)
        if t >= m_max:
            continue
        for d in range(M + 1):
            if mid_tied and d < M - d:
                continue  # word would drop below its reflection
            nxt_mid = mid_tied and d == M - d
            ok = True
            nu, nl = [], []
            for i in (*up_tied, t):  # i = t is the fresh length-1 suffix
                ref = digits[t - i]
                if d > ref:
                    ok = False
                    break
                if d == ref:
                    nu.append(i)
            if not ok:
                continue
            for i in (*lo_tied, t):
                ref = M - digits[t - i]
                if d < ref:
                    ok = False
                    break
                if d == ref:
                    nl.append(i)
            if ok:
                stack.append((digits + (d,), tuple(nu), tuple(nl), nxt_mid))


def criterion_3_reflection_recurrence() -> str:
    w = parse_word("111001000111", 1)
    chain = [c.text() for c in classify.rr_chain(w)]
    assert chain == ["111001000111", "111001", "111", "11", "1", ""], chain
    total = 0
    for M in (1, 2):
        for word_ in _primitive_words(M, 14):
            if len(word_) < 2:
                continue
            total += 1
            r = classify.reflection_recurrence(word_)
            assert len(word_) / 2 <= len(r) <= len(word_), (M, word_.text(), r.text())
            assert classify.is_primitive(r), (M, word_.text())
            # the chain terminates within |word| iterations
            chain = classify.rr_chain(word_)
            assert len(chain) <= len(word_) + 1
    return f"example chain ok; length bounds and primitivity on {total} primitive words"


def criterion_4_entropy_constants() -> str:
    for M in range(1, 9):
        e = _entropy_of(constants.step_expansion(M, 1))
        want = LN(2) if M % 2 == 0 else LN(2) / 2
        _bracket_ok(e, want, 1e-9, f"H(q_T) M={M}")
    for M in (2, 4, 8):
        for n in range(1, 6):
            e = _entropy_of(constants.step_expansion(M, n))
            _bracket_ok(e, LN(2) / 2 ** (n - 1), 1e-9, f"H(q_T{n}) M={M}")
    return "H(q_T) for M=1..8 and H(q_Tn) n<=5 for even M, within 1e-9"


def criterion_5_example_suite() -> str:
    ln9 = LN(9)
    e = plateaus.make_interval(parse_word("543", 8)).entropy()
    _bracket_ok(e, LN((1 + math.sqrt(5)) / 2), 1e-9, "I*(543)")
    for a in (5, 6, 7, 8):
        alpha = periodize(parse_word(str(a), 8))
        e = _entropy_of(alpha)
        _bracket_ok(e, LN(2 * a - 7), 1e-9, f"I({a})")
    pairs = 0
    for a in (5, 6, 7, 8):
        for b in range(9 - a, a):
            e = plateaus.make_interval(parse_word(f"{a}{b}", 8)).entropy()
            want = LN(a - 4 + math.sqrt((a - 4) ** 2 + 2 * b - 7))
            _bracket_ok(e, want, 1e-9, f"I({a}{b})")
            pairs += 1
    return f"I*(543), I(a) for a=5..8, and {pairs} I(ab) entropies within 1e-9"


def criterion_6_transitivity() -> str:
    checked = 0
    for M in (1, 2, 3, 8):
        for p in plateaus.enumerate_plateaus(M, 6):
            aut = subshift.build_automaton(subshift.spec_for(p.alpha_L, "V"))
            trans = subshift.is_transitive(aut)
            want = p.kind == "irreducible"
            assert trans == want, (M, p.generator.text(), p.kind, trans)
            checked += 1
    # periodic expansions inside the non-transitive window [q_NT, q_T)
    sampled = 0
    for M in (1, 2, 3, 8):
        alphabet = Alphabet(M)
        k = alphabet.k
        if M % 2 == 0:
            lo_seq = periodize(Word([k + 1, k - 1], alphabet))
        else:
            lo_seq = periodize(Word([k + 1, k + 1, k, k], alphabet))
        hi_seq = constants.step_expansion(M, 1)
        for size in range(2, 6):
            for digits in plateaus._generator_candidates(M, size):
                if len(digits) != size:
                    continue
                a = periodize(Word(digits, alphabet))
                if not classify.in_V_tilde(a):
                    continue
                if lex_cmp(a, lo_seq) < 0 or lex_cmp(a, hi_seq) >= 0:
                    continue
                aut = subshift.build_automaton(subshift.spec_for(a, "V"))
                assert not subshift.is_transitive(aut), (M, a.text())
                sampled += 1
    assert sampled > 0, "window sampling found no periodic expansions"
    return (
        f"{checked} plateau endpoints agree with their kind; "
        f"{sampled} window samples non-transitive"
    )


def quasi_greedy_seq_of(q: BaseSpec) -> DigitSeq:
    from .bases import quasi_greedy_digitseq

    a = quasi_greedy_digitseq(q)
    assert a is not None
    return a


def criterion_7_oracle_equivalence() -> str:
    cases = 0
    for M in (1, 2):
        cat = constants.ConstantCatalog(M)
        bases = [cat.q_G(), cat.q_NT(), cat.q_T()]
        for n in range(2, 6):
            if constants.step_expansion(M, n).descriptor_len > 6:
                break
            bases.append(cat.q_Tn(n))
        for q in bases:
            alpha = quasi_greedy_seq_of(q)
            if alpha.descriptor_len > 6:
                continue
            for mode in ("V", "W", "U"):
                spec = subshift.spec_for(alpha, mode)
                aut = subshift.build_automaton(spec)
                bf = oracle.BruteForce(spec)
                for n in range(0, 11):
                    got, want = aut.count_words(n), bf.count(n)
                    assert got == want, (M, alpha.text(), mode, n, got, want)
                    cases += 1
    cat = constants.ConstantCatalog(8)
    for q in (cat.q_G(), cat.q_NT(), cat.q_T()):
        alpha = quasi_greedy_seq_of(q)
        for mode in ("V", "W", "U"):
            spec = subshift.spec_for(alpha, mode)
            aut = subshift.build_automaton(spec)
            bf = oracle.BruteForce(spec)
            for n in range(0, 7):
                got, want = aut.count_words(n), bf.count(n)
                assert got == want, (8, alpha.text(), mode, n, got, want)
                cases += 1
    return f"{cases} (base, mode, n) word counts match the brute force"


def criterion_8_plateau_structure() -> str:
    ps = plateaus.enumerate_plateaus(2, 10)
    plateaus.assert_pairwise_disjoint(ps)
    prev_h = -1.0
    for p in ps:
        cl = classify.sequence_class(p.alpha_L, classify_kind=False)
        assert cl.in_U_bar and not cl.in_U, ("p_L class", p.generator.text())
        cr = classify.sequence_class(p.alpha_R, classify_kind=False)
        assert cr.in_U, ("p_R class", p.generator.text())
        eL = _entropy_of(p.alpha_L)
        eR = _entropy_of(p.alpha_R)
        assert abs(eL.h_mid - eR.h_mid) <= 1e-6, ("entropy constancy", p.generator.text())
        assert eL.h_mid > prev_h + 1e-9, ("strict growth", p.generator.text())
        prev_h = eL.h_mid
    return f"{len(ps)} plateaus (M=2, m<=10): disjoint, endpoint classes, flat, increasing"


def criterion_9_dimensions() -> str:
    r = dims.dim_H_U(BaseSpec.from_rational(9, 8))
    assert r.dim_lo == 1.0 == r.dim_hi, "dim at M+1 must be exactly 1"
    r = dims.dim_H_U(BaseSpec.from_rational(Fraction("5.5"), 8))
    assert r.dim_lo == 0.0 == r.dim_hi, "dim below q_c must be 0"
    star = plateaus.make_interval(parse_word("543", 8))
    mid = (
        star.p_L.interval(Fraction(1, 10**20))[0]
        + star.p_R.interval(Fraction(1, 10**20))[1]
    ) / 2
    r = dims.dim_H_U(BaseSpec.from_rational(mid, 8))
    want = LN((1 + math.sqrt(5)) / 2) / LN(float(mid))
    assert r.dim_hi - r.dim_lo <= 1e-6 and r.dim_lo - 1e-6 <= want <= r.dim_hi + 1e-6
    box = dims.box_count_check(BaseSpec.from_rational(9, 8), 12)
    assert all(ratio == 1.0 for _, _, _, ratio in box.box_estimates), "full-shift box ratios"
    drifts = []
    for gen in ("5", "54", "543"):
        p = plateaus.make_interval(parse_word(gen, 8))
        r = dims.box_count_check(p.p_L, 14)
        n, _, _, ratio = r.box_estimates[-1]
        assert n == 14 and abs(ratio - r.dim_mid) <= 0.1, (gen, ratio, r.dim_mid)
        drifts.append(abs(ratio - r.dim_mid))
    return f"exact 1 and 0 cases ok; box@14 drifts {['%.3f' % d for d in drifts]} <= 0.1"


def criterion_10_E_dim_bound() -> str:
    d = plateaus.E_dim_lower_bound(1, 2)
    assert d["log_argument"] == 2 and d["value"] == 0.5
    for M in (1, 2, 8):
        prev = 0.0
        for N in range(2, 21):
            d = plateaus.E_dim_lower_bound(M, N)
            assert d["log_argument"] == (M + 1) ** N - 2, "formula shape"
            assert d["value"] == LN((M + 1) ** N - 2) / (N * LN(M + 1))
            # monotone toward 1; comparisons wobble by an ulp at saturation
            assert prev - 1e-12 <= d["value"] <= 1.0, (M, N)
            assert d["value"] > prev or d["value"] >= 1.0 - 1e-12, (M, N)
            prev = d["value"]
        assert prev >= 1.0 - 1e-6, f"M={M}: bound did not approach 1"
    return "formula symbolic, value(1,2)=0.5 exactly, monotone toward 1 for N<=20"


def _random_admissible(rng: random.Random, M: int, max_desc: int) -> DigitSeq:
    while True:
        per_len = rng.randint(1, max_desc)
        pre_len = rng.randint(0, max_desc - per_len)
        pre = [rng.randint(0, M) for _ in range(pre_len)]
        per = [rng.randint(0, M) for _ in range(per_len)]
        try:
            a = DigitSeq(pre, per, Alphabet(M))
        except Exception:
            continue
        if a.descriptor_len <= max_desc and is_quasi_greedy_admissible(a):
            return a


def criterion_11_roundtrip() -> str:
    rng = random.Random(20260810)
    for i in range(500):
        M = rng.randint(1, 3)
        a = _random_admissible(rng, M, 8)
        q = solve_base(a)
        n = 4 * a.descriptor_len
        got = quasi_greedy(q, n)
        assert got.digits == a.prefix(n).digits, (i, M, a.text(), got.text())
    return "500 random admissible expansions invert and re-expand exactly"


@dataclass
class CriterionResult:
    number: int
    name: str
    ok: bool
    seconds: float
    detail: str


CRITERIA = [
    (1, "constants-M8", criterion_1_constants),
    (2, "thue-morse", criterion_2_thue_morse),
    (3, "reflection-recurrence", criterion_3_reflection_recurrence),
    (4, "entropy-constants", criterion_4_entropy_constants),
    (5, "example-plateau-suite", criterion_5_example_suite),
    (6, "transitivity-classification", criterion_6_transitivity),
    (7, "oracle-equivalence", criterion_7_oracle_equivalence),
    (8, "plateau-structure", criterion_8_plateau_structure),
    (9, "dimension-formula", criterion_9_dimensions),
    (10, "bifurcation-dim-bound", criterion_10_E_dim_bound),
    (11, "quasi-greedy-roundtrip", criterion_11_roundtrip),
]

BUDGET_SECONDS = {1: 1, 2: 1, 3: 30, 4: 10, 5: 30, 6: 120, 7: 300, 8: 300, 11: 120}


def run_one(number: int) -> CriterionResult:
    for num, name, fn in CRITERIA:
        if num == number:
            t0 = time.time()
            try:
                detail = fn()
                ok = True
            except AssertionError as exc:
                detail, ok = f"assertion failed: {exc}", False
            dt = time.time() - t0
            budget = BUDGET_SECONDS.get(number)
            if ok and budget is not None and dt > budget:
                ok, detail = False, f"exceeded {budget}s budget ({dt:.1f}s); {detail}"
            return CriterionResult(num, name, ok, dt, detail)
    raise KeyError(f"no criterion {number}")


def run_all(only: int | None = None) -> list[CriterionResult]:
    numbers = [only] if only is not None else [n for n, _, _ in CRITERIA]
    return [run_one(n) for n in numbers]
