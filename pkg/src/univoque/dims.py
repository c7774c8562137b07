"""Fractal dimensions of the set of points with unique expansions.

The Hausdorff dimension is entropy over log base:  h(U-mode shift) / log q.
The box-counting side is a finite-scale diagnostic: words of length n in
the strict (W-mode) shift are cylinder covers at scale
delta_n = M / (q^n (q-1)), and the ratios log(count)/(-log delta_n) drift
toward the Hausdorff value; only the trend is reported, never a limit
claim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import constants, plateaus
from .bases import BaseSpec, quasi_greedy_digitseq
from .errors import OutOfRange, PrecisionExhausted
from .subshift import build_automaton, entropy, entropy_of_expansion, spec_for


@dataclass
class DimResult:
    M: int
    q_decimal: str
    dim_lo: float
    dim_hi: float
    method: str
    box_estimates: list = field(default_factory=list)  # (n, delta_n, count, ratio)

    @property
    def dim_mid(self) -> float:
        return (self.dim_lo + self.dim_hi) / 2

    def to_json(self) -> dict:
        return {
            "M": self.M,
            "q": self.q_decimal,
            "dim_H": [self.dim_lo, self.dim_hi],
            "method": self.method,
            "box_estimates": [
                {"n": n, "delta": d, "count": c, "log_ratio": r}
                for n, d, c, r in self.box_estimates
            ],
        }


def _entropy_interval_for(q: BaseSpec, tol: float, depth: int, max_steps: int):
    """(h_lo, h_hi, method): exact when the expansion closes up or a plateau
    is located; raises when neither identification succeeds."""
    a = quasi_greedy_digitseq(q, max_steps=max_steps)
    if a is not None:
        e = entropy_of_expansion(a, "U", tol)
        return e.h_lo, e.h_hi, "spectral"
    hit = plateaus.locate_plateau(q, depth)
    if isinstance(hit, plateaus.PlateauInterval):
        e = entropy_of_expansion(hit.alpha_L, "U", tol)
        return e.h_lo, e.h_hi, f"plateau:{hit.generator.text()}"
    raise PrecisionExhausted(
        "base is (to the inspected depth) a bifurcation base; "
        "no exact entropy identification"
    )


def dim_H_U(
    q: BaseSpec, tol: float = 1e-9, depth: int = 64, max_steps: int = 256
) -> DimResult:
    """Hausdorff dimension of the unique-expansion set in base q."""
    M = q.alphabet.M
    qc = constants.komornik_loreti(M, Fraction(1, 10**10))
    if q.cmp_fraction(qc.lo) < 0:
        # zero-entropy region below the Komornik-Loreti constant
        return DimResult(M, q.decimal(12), 0.0, 0.0, "zero-region")
    h_lo, h_hi, method = _entropy_interval_for(q, tol, depth, max_steps)
    lnq_lo, lnq_hi = _log_interval(q)
    lo = max(0.0, h_lo / lnq_hi)
    hi = min(1.0, h_hi / lnq_lo) if h_hi > 0 else 0.0
    return DimResult(M, q.decimal(12), lo, hi, method)


def _log_interval(q: BaseSpec) -> tuple[float, float]:
    lo, hi = q.interval(Fraction(1, 10**14))
    if lo == hi:
        v = math.log(lo)
        return v, v
    return math.log(lo), math.log(hi)


def box_count_check(
    q: BaseSpec, n_max: int = 14, tol: float = 1e-9, max_steps: int = 256
) -> DimResult:
    """Cylinder-cover counts of the strict shift at dyadic-in-n scales.

    Requires a base whose expansion of 1 is eventually periodic (exact
    word counts are then available for both the strict and the
    unique-expansion shift; the strict one can never be larger).
    """
    if n_max < 2:
        raise OutOfRange("n_max must be >= 2")
    a = quasi_greedy_digitseq(q, max_steps=max_steps)
    if a is None:
        raise PrecisionExhausted("box counts need an eventually periodic expansion")
    M = q.alphabet.M
    aut_w = build_automaton(spec_for(a, "W"))
    aut_u = build_automaton(spec_for(a, "U"))
    counts_w = aut_w.count_words_upto(n_max)
    counts_u = aut_u.count_words_upto(n_max)
    for n in range(n_max + 1):
        if counts_w[n] > counts_u[n]:
            raise OutOfRange("strict-shift words exceeded unique-expansion words")
    result = dim_H_U(q, tol)
    qlo, qhi = q.interval(Fraction(1, 10**14))
    qf = float((qlo + qhi) / 2)
    for n in range(2, n_max + 1):
        delta = M / (qf**n * (qf - 1))
        c = counts_w[n]
        ratio = math.log(c) / -math.log(delta) if c > 0 else 0.0
        result.box_estimates.append((n, delta, c, ratio))
    return result
