"""Entropy plateaus: maximal intervals where the entropy function is flat.

A plateau is generated by a word a_1..a_m (last digit below M): the left
endpoint's expansion of 1 is (a_1..a_m)^oo and the right endpoint's is
a_1..a_m+ (reflect(a_1..a_m))^oo.  The generating word must repeat into a
two-sided admissible sequence with least period m, classify as irreducible
or star-irreducible, and sit strictly above the Komornik-Loreti expansion
(otherwise the construction degenerates to the golden base, below the
positive-entropy region, and generates nothing).

Enumeration walks the digit tree, pruning with the prefix consequences of
the suffix inequalities  reflect(prefix) <= suffix < prefix  that every
generating word satisfies; the surviving tree is thin, so word lengths
beyond ten are cheap even for large alphabets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import classify as _classify
from . import constants
from .bases import BaseSpec, quasi_greedy, solve_base
from .errors import NotGenerating, OutOfRange, PrecisionExhausted
from .subshift import EntropyResult, build_automaton, entropy, spec_for
from .words import (
    Alphabet,
    DigitSeq,
    Word,
    append_periodic,
    lex_cmp,
    periodize,
    seq_le,
    word_vs_seq,
)


@dataclass(frozen=True)
class PlateauInterval:
    generator: Word
    kind: str  # "irreducible" | "star"
    level: int | None
    p_L: BaseSpec
    p_R: BaseSpec
    alpha_L: DigitSeq
    alpha_R: DigitSeq

    def entropy(self, tol: float = 1e-12) -> EntropyResult:
        return entropy(build_automaton(spec_for(self.alpha_L, "V")), tol)

    def contains(self, q: BaseSpec) -> bool:
        return self.p_L.cmp(q) <= 0 <= self.p_R.cmp(q)

    def to_json(self, digits: int = 12) -> dict:
        e = self.entropy()
        return {
            "generator": self.generator.text(),
            "kind": self.kind,
            "level": self.level,
            "pL": self.p_L.to_json(),
            "pL_dec": self.p_L.decimal(digits),
            "pR": self.p_R.to_json(),
            "pR_dec": self.p_R.decimal(digits),
            "H_norm": (e.h_norm_lo + e.h_norm_hi) / 2,
        }


@dataclass(frozen=True)
class Bifurcation:
    """Verdict that a base is (to the inspected depth) a bifurcation base."""

    alpha_prefix: Word
    depth: int
    prefix_certified: bool = True

    def to_json(self) -> dict:
        return {
            "bifurcation": True,
            "prefix_certified": self.prefix_certified,
            "depth": self.depth,
            "alpha_prefix": self.alpha_prefix.text(),
        }


def _check_generator_shape(w: Word) -> DigitSeq:
    m = len(w)
    if m == 0:
        raise NotGenerating("empty generator")
    if w.digits[-1] >= w.alphabet.M:
        raise NotGenerating("last digit must be below M")
    a = periodize(w)
    if len(a.period) != m or a.preperiod:
        raise NotGenerating(f"{w.text()} is not the least period of its orbit")
    d = w.digits
    rd = w.reflect().digits
    for i in range(1, m):
        suf = d[i:]
        if not suf < d[: m - i]:
            raise NotGenerating(f"suffix at {i} not strictly below the prefix")
        if not rd[: m - i] <= suf:
            raise NotGenerating(f"suffix at {i} below the reflected prefix")
    if not _classify.in_V_tilde(a):
        raise NotGenerating(f"({w.text()})^oo is not two-sided admissible")
    if _classify._compare_with_thue_morse(a) <= 0:
        raise NotGenerating("orbit at or below the Komornik-Loreti expansion")
    return a


def make_interval(generator: Word, j_max: int | None = None) -> PlateauInterval:
    """Construct the plateau generated by a word, classifying its kind."""
    a = _check_generator_shape(generator)
    kind: str
    level: int | None = None
    if _classify.is_irreducible(a, j_max):
        kind = "irreducible"
    else:
        try:
            star = _classify.is_star_irreducible(a, j_max)
        except _classify.NotInXiRange:
            star = False
        if star is False:
            raise NotGenerating(
                f"({generator.text()})^oo is neither irreducible nor star-irreducible"
            )
        kind, level = "star", star
    alpha_R = append_periodic(generator.plus(), generator.reflect())
    return PlateauInterval(
        generator=generator,
        kind=kind,
        level=level,
        p_L=solve_base(a),
        p_R=solve_base(alpha_R),
        alpha_L=a,
        alpha_R=alpha_R,
    )


def _generator_candidates(M: int, m_max: int):
    """Words satisfying the prefix consequences of the generator inequalities."""
    alphabet = Alphabet(M)

    def ok_partial(d: tuple) -> bool:
        t = len(d)
        for i in range(1, t):
            suf = d[i:]
            pre = d[: t - i]
            if suf > pre:
                return False
            if suf < tuple(M - x for x in pre):
                return False
        return True

    stack = [(d,) for d in range(M, -1, -1)]
    while stack:
        d = stack.pop()
        if len(d) <= m_max:
            yield d
        if len(d) < m_max:
            for nxt in range(M, -1, -1):
                cand = d + (nxt,)
                if ok_partial(cand):
                    stack.append(cand)


def enumerate_plateaus(M: int, m_max: int, j_max: int | None = None) -> list[PlateauInterval]:
    """All plateaus with generator length <= m_max, sorted by left endpoint."""
    if m_max < 1:
        raise OutOfRange("m_max must be >= 1")
    alphabet = Alphabet(M)
    out: list[PlateauInterval] = []
    for digits in _generator_candidates(M, m_max):
        w = Word(digits, alphabet)
        try:
            out.append(make_interval(w, j_max))
        except NotGenerating:
            continue
    # base order is the lexicographic order of the expansions; a window of
    # lcm(period lengths) digits separates any two distinct orbits
    window = m_max * m_max + 1
    out.sort(key=lambda p: tuple(p.alpha_L.digit(i) for i in range(window)))
    return out


def assert_pairwise_disjoint(plateaus: list[PlateauInterval]) -> None:
    for a, b in zip(plateaus, plateaus[1:]):
        if not a.p_R.cmp(b.p_L) < 0:
            raise OutOfRange(
                f"plateaus I({a.generator.text()}) and I({b.generator.text()}) overlap"
            )


# ---------------------------------------------------------------------------
# locating the plateau containing a base


def _locator_condition(prefix: Word, m: int) -> bool:
    """Does the truncation at m satisfy the locator inequality on the prefix?

    Checks (prefix_m minus)^oo two-sided admissible and the expansion at
    most  prefix_m (reflect(prefix_m) plus)^oo; comparisons undecided
    within the window count as satisfied (they correspond to equality,
    which keeps the base inside the closed interval).
    """
    head = prefix[:m]
    if head.digits[-1] == 0:
        return False
    if not _classify.in_V_tilde(periodize(head.minus())):
        return False
    competitor = append_periodic(head, head.reflect().plus())
    return word_vs_seq(prefix, competitor) <= 0


def locate_plateau(
    q: BaseSpec, depth: int = 64, j_max: int | None = None
) -> PlateauInterval | Bifurcation:
    """Find the entropy plateau containing q, or certify a bifurcation base.

    Scans truncation lengths m of the expansion of 1 for the smallest one
    whose decremented repetition is admissible and dominates the expansion;
    in the region below the transitive base the scan starts above the
    star-level threshold (shorter truncations are waived there, mirroring
    the star-irreducibility definition).
    """
    M = q.alphabet.M
    cat = constants.ConstantCatalog(M)
    qc = cat.q_c(Fraction(1, 10**12))
    if q.cmp_fraction(qc.hi) <= 0 and q.cmp_fraction(qc.lo) <= 0:
        raise OutOfRange("base at or below the Komornik-Loreti bracket")
    prefix = quasi_greedy(q, depth)
    m_lo = 1
    if q.cmp(cat.q_T()) <= 0:
        # star region: find the bracket level from the expansion prefix
        level = None
        for n in range(1, 24):
            xi_n = cat.xi(n)
            if 2 * constants.step_block_len(M, n) >= depth:
                break
            if word_vs_seq(prefix, xi_n) < 0:
                continue
            level = n - 1 if word_vs_seq(prefix, xi_n) > 0 else n
            # prefix >= xi(n): bracket level is n-1 if strictly above,
            # else the level of xi(n) itself
            break
        if level is None or level == 0:
            return Bifurcation(prefix[: min(depth, 32)], depth)
        m_lo = constants.star_j_threshold(M, level) + 1
    for m in range(m_lo, depth):
        if _locator_condition(prefix, m):
            # the generator is the primitive root of the decremented head
            # (the head may be several turns of the period)
            root = Word(periodize(prefix[:m].minus()).period, q.alphabet)
            try:
                return make_interval(root, j_max)
            except NotGenerating:
                continue
    return Bifurcation(prefix[: min(depth, 32)], depth)


# ---------------------------------------------------------------------------
# bifurcation set approximation and its dimension bound


@dataclass(frozen=True)
class BifurcationApprox:
    M: int
    m_max: int
    plateaus: list
    complement: list  # closed intervals [lo, hi] as Fractions
    covered_length: Fraction
    total_length: Fraction

    def to_json(self, digits: int = 12) -> dict:
        return {
            "M": self.M,
            "m_max": self.m_max,
            "plateau_count": len(self.plateaus),
            "covered_length": float(self.covered_length),
            "total_length": float(self.total_length),
            "covered_fraction": float(self.covered_length / self.total_length),
            "complement": [[str(a), str(b)] for a, b in self.complement],
        }


def bifurcation_approx(M: int, m_max: int, endpoint_width=Fraction(1, 10**12)) -> BifurcationApprox:
    """Cover of the bifurcation set: the window above the Komornik-Loreti
    constant minus the enumerated plateau interiors."""
    plateaus = enumerate_plateaus(M, m_max)
    assert_pairwise_disjoint(plateaus)
    qc = constants.komornik_loreti(M, endpoint_width)
    cursor = qc.lo
    complement: list[tuple[Fraction, Fraction]] = []
    covered = Fraction(0)
    for p in plateaus:
        llo, lhi = p.p_L.interval(endpoint_width)
        rlo, rhi = p.p_R.interval(endpoint_width)
        complement.append((cursor, lhi))
        covered += (rlo + rhi - llo - lhi) / 2
        cursor = rlo
    complement.append((cursor, Fraction(M + 1)))
    total = Fraction(M + 1) - qc.mid
    return BifurcationApprox(M, m_max, plateaus, complement, covered, total)


def E_dim_lower_bound(M: int, N: int):
    """Closed-form Hausdorff-dimension lower bound for the bifurcation set.

    Value: log((M+1)^N - 2) / (N log(M+1)); the symbolic pieces are
    returned alongside the float so callers can verify the formula shape.
    """
    if N < 2:
        raise OutOfRange("N must be >= 2")
    arg = (M + 1) ** N - 2
    return {
        "M": M,
        "N": N,
        "log_argument": arg,
        "log_base_power": (M + 1) ** N,
        "value": math.log(arg) / (N * math.log(M + 1)),
    }
