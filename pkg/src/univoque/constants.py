"""Named bases and sequences: golden/transitive/non-transitive bases, the
Komornik-Loreti constant, and the descending chain of step bases between it
and the transitive base.

The generalized Thue-Morse sequence drives everything here.  With
tau = 0110100110010110... (tau_i = parity of the bit count of i), the digit
sequence lam over {0..M} is

    lam_i = k + tau_i - tau_(i-1)   if M = 2k,
    lam_i = k + tau_i               if M = 2k + 1,

and its power-of-two prefixes satisfy the doubling rule
``lam[1..2^(n+1)] = lam[1..2^n] + reflect(lam[1..2^n]).plus()``.  The step
expansions are ``lam-prefix (reflect(lam-prefix).plus())^oo`` with prefix
length 2^(n-1) for even M and 2^n for odd M; solving them for the base
gives a strictly decreasing chain converging to the Komornik-Loreti
constant from above, while the reflected-block words
``(lam-prefix + reflect(lam-prefix))^oo`` converge to it from below.
"""

from __future__ import annotations

from fractions import Fraction

from .bases import BaseSpec, RealApprox, solve_base
from .errors import OutOfRange, PrecisionExhausted
from .words import Alphabet, DigitSeq, Word, append_periodic, periodize, word


def tau_prefix(n: int) -> tuple[int, ...]:
    """tau_0 .. tau_(n-1) of the classical Thue-Morse sequence."""
    return tuple(bin(i).count("1") & 1 for i in range(n))


def thue_morse_lambda(M: int, n: int) -> Word:
    """First n digits of the generalized Thue-Morse expansion for M."""
    if n < 0:
        raise OutOfRange("n must be >= 0")
    alphabet = Alphabet(M)
    k = alphabet.k
    tau = tau_prefix(n + 1)
    if alphabet.even:
        digits = tuple(k + tau[i] - tau[i - 1] for i in range(1, n + 1))
    else:
        digits = tuple(k + tau[i] for i in range(1, n + 1))
    return Word(digits, alphabet)


def step_block_len(M: int, n: int) -> int:
    """Prefix length used by the n-th step expansion."""
    if n < 1:
        raise OutOfRange("n must be >= 1")
    return 2 ** (n - 1) if M % 2 == 0 else 2**n


def star_j_threshold(M: int, n: int) -> int:
    """Index below which the star-irreducibility condition is waived."""
    return 2 * step_block_len(M, n)


def step_expansion(M: int, n: int) -> DigitSeq:
    """The n-th step expansion; its base decreases strictly with n."""
    block = thue_morse_lambda(M, step_block_len(M, n))
    return append_periodic(block, block.reflect().plus())


def golden_base(M: int) -> BaseSpec:
    """The smallest base whose pinched shift space is nonempty."""
    k = Alphabet(M).k
    if M % 2 == 0:
        return solve_base(periodize(word([k], M)))
    return solve_base(periodize(word([k + 1, k], M)))


def transitive_base(M: int) -> BaseSpec:
    """The smallest base with a transitive pinched shift of positive entropy."""
    return step_base(M, 1)


def step_base(M: int, n: int) -> BaseSpec:
    return solve_base(step_expansion(M, n))


def nontransitive_base(M: int) -> BaseSpec:
    """The smallest base whose pinched shift is not transitive."""
    k = Alphabet(M).k
    if M % 2 == 0:
        return solve_base(periodize(word([k + 1, k - 1], M)))
    return solve_base(periodize(word([k + 1, k + 1, k, k], M)))


def komornik_loreti_lower(M: int, n: int) -> BaseSpec:
    """A base strictly below the Komornik-Loreti constant, increasing in n.

    The expansion is the power-of-two Thue-Morse prefix with its last digit
    decremented, repeated; by the doubling rule this equals
    prefix(2^(n-1)) + reflect(prefix(2^(n-1))) repeated.
    """
    block = thue_morse_lambda(M, 2**n).minus()
    return solve_base(periodize(block))


def komornik_loreti(M: int, width=Fraction(1, 10**6), n_max: int = 12) -> RealApprox:
    """Bracket the Komornik-Loreti constant to the requested width.

    Lower bounds come from decremented-prefix periodic expansions, upper
    bounds from the step bases; both converge doubly exponentially.
    """
    width = Fraction(width)
    best_lo, best_hi = Fraction(1), Fraction(M + 1)
    for n in range(1, n_max + 1):
        hi = step_base(M, n).interval(width / 4)[1]
        lo = komornik_loreti_lower(M, max(1, n)).interval(width / 4)[0]
        best_lo, best_hi = max(best_lo, lo), min(best_hi, hi)
        if best_hi - best_lo <= width:
            return RealApprox(best_lo, best_hi)
    raise PrecisionExhausted(
        f"Komornik-Loreti bracket stuck at width {float(best_hi - best_lo)}"
    )


class ConstantCatalog:
    """Lazy, content-addressed cache of the named constants for one M."""

    def __init__(self, M: int):
        self.alphabet = Alphabet(M)
        self._cache: dict = {}

    def _get(self, key, builder):
        if key not in self._cache:
            self._cache[key] = builder()
        return self._cache[key]

    @property
    def M(self) -> int:
        return self.alphabet.M

    def q_G(self) -> BaseSpec:
        return self._get("q_G", lambda: golden_base(self.M))

    def q_T(self) -> BaseSpec:
        return self._get("q_T", lambda: transitive_base(self.M))

    def q_NT(self) -> BaseSpec:
        return self._get("q_NT", lambda: nontransitive_base(self.M))

    def q_Tn(self, n: int) -> BaseSpec:
        return self._get(("q_Tn", n), lambda: step_base(self.M, n))

    def xi(self, n: int) -> DigitSeq:
        return self._get(("xi", n), lambda: step_expansion(self.M, n))

    def lambda_prefix(self, n: int) -> Word:
        return thue_morse_lambda(self.M, n)

    def q_c(self, width=Fraction(1, 10**6)) -> RealApprox:
        key = ("q_c", Fraction(width))
        return self._get(key, lambda: komornik_loreti(self.M, width))

    def entries(self, n_steps: int = 4, digits: int = 12, qc_width=Fraction(1, 10**8)):
        """All catalog entries rendered for serialization."""
        out = {
            "M": self.M,
            "q_G": {**self.q_G().to_json(), "decimal": self.q_G().decimal(digits)},
            "q_NT": {**self.q_NT().to_json(), "decimal": self.q_NT().decimal(digits)},
            "q_T": {**self.q_T().to_json(), "decimal": self.q_T().decimal(digits)},
        }
        qc = self.q_c(qc_width)
        out["q_c"] = {
            "kind": "bracket",
            "low": str(qc.lo),
            "high": str(qc.hi),
            "decimal": f"{float(qc):.{digits}f}",
        }
        for n in range(1, n_steps + 1):
            q = self.q_Tn(n)
            out[f"q_T{n}"] = {
                **q.to_json(),
                "decimal": q.decimal(digits),
                "expansion": self.xi(n).text(),
            }
        return out
