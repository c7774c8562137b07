"""Finite-state presentations of lexicographically pinched shift spaces.

A shift spec pins every tail of a sequence between a lower and an upper
eventually periodic bound, in one of three modes:

* ``V``: reflect-bound <= tail <= bound at every position (a closed
  subshift; equality may ride forever);
* ``W``: strictly between at every position;
* ``U``: strict, but the upper condition applies only after a digit < M
  and the lower one only after a digit > 0 (the unique-expansion space).

The automaton construction exploits one structural fact: a quasi-greedy
bound u satisfies shift^n(u) <= u for every n.  Consequently, among all
suffix matches of the read word against prefixes of u, the longest match
imposes the strongest constraint on the future, and when it is broken by
reading a digit strictly below the bound digit, every shorter match is
broken strictly at the same moment (their next bound digits are at least
as large).  So a state needs to remember only one "binding tail" per side
-- the bound shifted by the current longest match -- and there are only
finitely many tails.  Transitions: reading the tail's next digit extends
the match (shift the tail); reading a strictly smaller digit resolves
every active upper constraint strictly and resets the side to the full
bound; reading a larger digit is forbidden.  The lower side is the mirror
image, and in U mode a side can also be empty when no condition has been
triggered yet.

Strictness (W and U) is not a property of finite words: a word riding a
bound may still be completed strictly.  A word belongs to the language
exactly when some infinite continuation breaks away from each bound
infinitely often; on the automaton this means reaching a strongly
connected component containing both an upper-resolving and a
lower-resolving edge.  Word counts and entropy restrict to states from
which such a component is reachable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bases import BaseSpec, RealApprox, quasi_greedy, quasi_greedy_digitseq
from .errors import BoundsInverted, NotAdmissible, OutOfRange
from .words import DigitSeq, Word, lex_cmp, seq_le

TOP = None  # sentinel: no active constraint on a side (U mode only)

MODES = ("V", "W", "U")


@dataclass(frozen=True)
class ShiftSpec:
    """Bounds and strictness mode for a pinched shift space."""

    upper: DigitSeq
    lower: DigitSeq
    mode: str = "V"

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise OutOfRange(f"mode must be one of {MODES}")
        if self.upper.alphabet != self.lower.alphabet:
            raise BoundsInverted("bounds live over different alphabets")
        if lex_cmp(self.upper, self.lower) < 0:
            raise BoundsInverted("upper bound below lower bound")
        # the binding-tail construction needs self-admissible bounds
        for n in range(self.upper.descriptor_len + 1):
            if not seq_le(self.upper.shift(n), self.upper):
                raise NotAdmissible("upper bound must dominate its own shifts")
        for n in range(self.lower.descriptor_len + 1):
            if not seq_le(self.lower, self.lower.shift(n)):
                raise NotAdmissible("lower bound must undercut its own shifts")

    @property
    def alphabet(self):
        return self.upper.alphabet


def spec_for(alpha: DigitSeq, mode: str = "V", lower: DigitSeq | None = None) -> ShiftSpec:
    return ShiftSpec(alpha, alpha.reflect() if lower is None else lower, mode)


class MatchAutomaton:
    """Deterministic presentation of a ShiftSpec's language.

    States are pairs of binding tails (match descriptors collapsed through
    the bounds' periodicity); ``trans[s][d]`` is the target state or absent
    when the digit is forbidden.  Masks:

    * ``live``: an infinite continuation exists (co-accessible states);
    * ``accept``: a mode-valid infinite continuation exists -- for V this
      is ``live``, for W/U it also requires strict resolution of both
      sides infinitely often;
    * ``essential``: states on bi-infinite paths.
    """

    def __init__(self, spec: ShiftSpec):
        self.spec = spec
        self.M = spec.alphabet.M
        self._build()
        self._compute_masks()

    # -- construction ------------------------------------------------------

    def _build(self) -> None:
        spec, M = self.spec, self.M
        u, low = spec.upper, spec.lower
        u_next: dict[DigitSeq, DigitSeq] = {}
        l_next: dict[DigitSeq, DigitSeq] = {}
        start = (TOP, TOP) if spec.mode == "U" else (u, low)
        index: dict = {start: 0}
        states: list = [start]
        trans: list[dict[int, int]] = [dict()]
        todo = [start]
        while todo:
            st = todo.pop()
            si = index[st]
            fu, gl = st
            for d in range(M + 1):
                if fu is not None:
                    cu = fu.digit(0)
                    if d > cu:
                        continue
                if gl is not None:
                    cl = gl.digit(0)
                    if d < cl:
                        continue
                if spec.mode == "U":
                    if fu is not None and d == fu.digit(0):
                        nf = u_next.setdefault(fu, fu.shift(1))
                    else:
                        nf = u if d < M else TOP
                    if gl is not None and d == gl.digit(0):
                        ng = l_next.setdefault(gl, gl.shift(1))
                    else:
                        ng = low if d > 0 else TOP
                else:
                    nf = u_next.setdefault(fu, fu.shift(1)) if d == fu.digit(0) else u
                    ng = l_next.setdefault(gl, gl.shift(1)) if d == gl.digit(0) else low
                nxt = (nf, ng)
                if nxt not in index:
                    index[nxt] = len(states)
                    states.append(nxt)
                    trans.append(dict())
                    todo.append(nxt)
                trans[si][d] = index[nxt]

        self.states = states
        self.trans = trans
        self.start = 0

    def edge_resolves(self, si: int, d: int) -> tuple[bool, bool]:
        """(upper, lower) strict-resolution flags of the edge on digit d."""
        fu, gl = self.states[si]
        up = fu is None or d < fu.digit(0)
        lo = gl is None or d > gl.digit(0)
        return up, lo

    # -- masks -------------------------------------------------------------

    def _compute_masks(self) -> None:
        n = len(self.states)
        live = [True] * n
        changed = True
        while changed:
            changed = False
            for s in range(n):
                if live[s] and not any(live[t] for t in self.trans[s].values()):
                    live[s] = False
                    changed = True
        self.live = live

        sccs = strongly_connected_components(
            range(n), lambda s: self.trans[s].values()
        )
        self.scc_id = [0] * n
        for i, comp in enumerate(sccs):
            for s in comp:
                self.scc_id[s] = i
        self._sccs = sccs

        if self.spec.mode == "V":
            self.accept = list(live)
        else:
            good_scc = set()
            for i, comp in enumerate(sccs):
                cset = set(comp)
                has_up = has_lo = has_cycle = False
                for s in comp:
                    for d, t in self.trans[s].items():
                        if t in cset:
                            has_cycle = True
                            up, lo = self.edge_resolves(s, d)
                            has_up = has_up or up
                            has_lo = has_lo or lo
                if has_cycle and has_up and has_lo:
                    good_scc.add(i)
            accept = [self.scc_id[s] in good_scc for s in range(n)]
            changed = True
            while changed:
                changed = False
                for s in range(n):
                    if not accept[s] and any(accept[t] for t in self.trans[s].values()):
                        accept[s] = True
                        changed = True
            self.accept = accept

        # essential: trims to states on bi-infinite paths
        ess = [True] * n
        changed = True
        while changed:
            changed = False
            indeg = [0] * n
            for s in range(n):
                if not ess[s]:
                    continue
                for t in self.trans[s].values():
                    if ess[t]:
                        indeg[t] += 1
            for s in range(n):
                if ess[s]:
                    out = any(ess[t] for t in self.trans[s].values())
                    if not out or indeg[s] == 0:
                        ess[s] = False
                        changed = True
        self.essential = ess

    # -- language ----------------------------------------------------------

    def count_words(self, n: int) -> int:
        """Exact number of admissible words of length n."""
        return self.count_words_upto(n)[n]

    def count_words_upto(self, n: int) -> list[int]:
        counts = [0] * (n + 1)
        vec = {self.start: 1}
        counts[0] = 1 if self.accept[self.start] else 0
        for step in range(1, n + 1):
            nxt: dict[int, int] = {}
            for s, c in vec.items():
                for t in self.trans[s].values():
                    nxt[t] = nxt.get(t, 0) + c
            vec = nxt
            counts[step] = sum(c for s, c in vec.items() if self.accept[s])
        return counts

    def accepts(self, digits) -> bool:
        s = self.start
        for d in digits:
            if d not in self.trans[s]:
                return False
            s = self.trans[s][d]
        return self.accept[s]

    def to_json(self) -> dict:
        def tail_text(t):
            return None if t is None else t.text()

        return {
            "mode": self.spec.mode,
            "M": self.M,
            "upper": self.spec.upper.text(),
            "lower": self.spec.lower.text(),
            "start": self.start,
            "states": [
                {"upper_tail": tail_text(f), "lower_tail": tail_text(g)}
                for f, g in self.states
            ],
            "transitions": [
                {str(d): t for d, t in sorted(tr.items())} for tr in self.trans
            ],
            "live": self.live,
            "accept": self.accept,
            "essential": self.essential,
        }


def build_automaton(spec: ShiftSpec) -> MatchAutomaton:
    return MatchAutomaton(spec)


# ---------------------------------------------------------------------------
# graphs


def strongly_connected_components(vertices, successors) -> list[list]:
    """Tarjan's algorithm, iterative."""
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    sccs: list[list] = []
    counter = [0]

    for v0 in vertices:
        if v0 in index:
            continue
        work = [(v0, iter(successors(v0)))]
        index[v0] = low[v0] = counter[0]
        counter[0] += 1
        stack.append(v0)
        on_stack.add(v0)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(successors(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(comp)
    return sccs


# ---------------------------------------------------------------------------
# entropy


@dataclass
class EntropyResult:
    h_lo: float
    h_hi: float
    method: str
    n_used: int | None = None
    empty: bool = False
    M: int = 0

    @property
    def h_norm_lo(self) -> float:
        return self.h_lo / math.log(self.M + 1)

    @property
    def h_norm_hi(self) -> float:
        return self.h_hi / math.log(self.M + 1)

    @property
    def h_mid(self) -> float:
        return (self.h_lo + self.h_hi) / 2

    def to_json(self) -> dict:
        return {
            "h_nat": [self.h_lo, self.h_hi],
            "h_norm": [self.h_norm_lo, self.h_norm_hi],
            "method": self.method,
            "n_used": self.n_used,
            "empty": self.empty,
        }


def _scc_spectral_bracket(A: np.ndarray, tol: float) -> tuple[float, float]:
    """Collatz-Wielandt bracket for an irreducible nonnegative matrix.

    Power iteration runs on A + I (primitive, so the positive eigenvector
    is attracting); every iterate yields rigorous two-sided bounds
    min (Bv/v) - 1 <= lambda <= max (Bv/v) - 1, which tighten monotonically
    as the best-so-far is kept.
    """
    n = A.shape[0]
    B = A + np.eye(n)
    v = np.ones(n)
    best_lo, best_hi = 0.0, float("inf")
    stall = 0
    for _ in range(100000):
        w = B @ v
        ratios = w / v
        lo, hi = ratios.min() - 1.0, ratios.max() - 1.0
        improved = lo > best_lo or hi < best_hi
        best_lo, best_hi = max(best_lo, lo), min(best_hi, hi)
        if best_hi - best_lo <= tol:
            break
        stall = 0 if improved else stall + 1
        if stall >= 64:  # float roundoff floor reached
            break
        v = w / w.max()
    return best_lo, best_hi


def spectral_radius_bracket(
    adj: list[dict[int, int]], nodes: list[int], tol: float = 1e-12
) -> tuple[float, float]:
    """Spectral radius of the subgraph induced by ``nodes`` (with edge
    multiplicities), as the max over its strongly connected components."""
    nodeset = set(nodes)
    sccs = strongly_connected_components(
        nodes, lambda s: (t for t in adj[s].values() if t in nodeset)
    )
    lo = hi = 0.0
    for comp in sccs:
        cset = set(comp)
        pos = {s: i for i, s in enumerate(comp)}
        A = np.zeros((len(comp), len(comp)))
        ecount = 0
        for s in comp:
            for t in adj[s].values():
                if t in cset:
                    A[pos[s], pos[t]] += 1
                    ecount += 1
        if ecount == 0:
            continue
        clo, chi = _scc_spectral_bracket(A, tol)
        if chi > hi:
            lo, hi = max(lo, clo), chi
        else:
            lo = max(lo, clo)
    return lo, hi


def entropy(automaton: MatchAutomaton, tol: float = 1e-12) -> EntropyResult:
    """Topological entropy (natural log) of the presented language."""
    nodes = [s for s in range(len(automaton.states)) if automaton.accept[s]]
    M = automaton.M
    if not nodes or not automaton.accept[automaton.start]:
        reachable_nodes = []
    else:
        seen = {automaton.start}
        todo = [automaton.start]
        while todo:
            s = todo.pop()
            for t in automaton.trans[s].values():
                if automaton.accept[t] and t not in seen:
                    seen.add(t)
                    todo.append(t)
        reachable_nodes = [s for s in nodes if s in seen]
    if not reachable_nodes:
        return EntropyResult(0.0, 0.0, "spectral", empty=True, M=M)
    lo, hi = spectral_radius_bracket(automaton.trans, reachable_nodes, tol)
    if hi < 1.0:
        return EntropyResult(0.0, 0.0, "spectral", empty=False, M=M)
    return EntropyResult(math.log(max(lo, 1.0)), math.log(hi), "spectral", M=M)


# ---------------------------------------------------------------------------
# transitivity


def _trimmed_reachable(automaton: MatchAutomaton):
    keep = [automaton.live[s] for s in range(len(automaton.states))]
    if not keep[automaton.start]:
        return [], {}, None
    seen = {automaton.start}
    todo = [automaton.start]
    while todo:
        s = todo.pop()
        for t in automaton.trans[s].values():
            if keep[t] and t not in seen:
                seen.add(t)
                todo.append(t)
    nodes = sorted(seen)
    trans = {
        s: {d: t for d, t in automaton.trans[s].items() if t in seen} for s in nodes
    }
    return nodes, trans, automaton.start


def _minimize(nodes, trans, start):
    """Moore partition refinement on a partial DFA (language-equivalence)."""
    rename: dict = {}
    block = {}
    for s in nodes:
        key = frozenset(trans[s].keys())
        rename.setdefault(key, len(rename))
        block[s] = rename[key]
    n_blocks = len(rename)
    while True:
        rename = {}
        sig = {}
        for s in nodes:
            key = (block[s], tuple(sorted((d, block[t]) for d, t in trans[s].items())))
            rename.setdefault(key, len(rename))
            sig[s] = rename[key]
        if len(rename) == n_blocks:
            block = sig
            break
        block, n_blocks = sig, len(rename)
    reps: dict = {}
    for s in nodes:
        reps.setdefault(block[s], s)
    qnodes = sorted(reps)
    qtrans = {b: {d: block[t] for d, t in trans[reps[b]].items()} for b in qnodes}
    return qnodes, qtrans, block[start]


def is_transitive(automaton: MatchAutomaton) -> bool:
    """Is the presented (V-mode) shift topologically transitive?

    After trimming to reachable co-accessible states and merging
    language-equivalent ones, the shift is transitive exactly when the
    graph has a unique terminal strongly connected component and every
    admissible word can be read from inside it (transient loops near the
    start, which do not survive arbitrary extension, are thereby ignored).
    """
    if automaton.spec.mode != "V":
        raise OutOfRange("transitivity applies to the closed (V-mode) shift")
    nodes, trans, start = _trimmed_reachable(automaton)
    if not nodes:
        return False
    nodes, trans, start = _minimize(nodes, trans, start)
    sccs = strongly_connected_components(nodes, lambda s: trans[s].values())
    comp_of = {}
    for i, comp in enumerate(sccs):
        for s in comp:
            comp_of[s] = i
    terminal = []
    for i, comp in enumerate(sccs):
        if all(comp_of[t] == i for s in comp for t in trans[s].values()):
            terminal.append(i)
    if len(terminal) != 1:
        return False
    T = set(sccs[terminal[0]])
    # language inclusion: every word readable from the start must be
    # readable from somewhere inside T
    seen = set()
    todo = [(start, frozenset(T))]
    while todo:
        s, live_set = todo.pop()
        if (s, live_set) in seen:
            continue
        seen.add((s, live_set))
        if len(seen) > 200000:
            raise OutOfRange("transitivity inclusion check exploded")
        for d, t in trans[s].items():
            nxt = frozenset(trans[r][d] for r in live_set if d in trans[r])
            if not nxt:
                return False
            todo.append((t, nxt))
    return True


# ---------------------------------------------------------------------------
# prefix-only word counts (for bases whose expansion is not eventually
# periodic: admissibility of words of length n only consults the first n
# digits of the bounds)


def count_words_prefix(upper: Word, n: int, mode: str = "V", lower: Word | None = None):
    """Word counts for lengths 0..n against finite prefix bounds.

    Exact for V mode whenever the underlying bound is two-sided admissible
    (then no finite word is a dead end); for W/U modes this counts words
    with no visible violation, an upper proxy used only for diagnostics.
    """
    if lower is None:
        lower = upper.reflect()
    if len(upper) < n or len(lower) < n:
        raise OutOfRange("prefix bounds shorter than the requested length")
    M = upper.alphabet.M
    ud, ld = upper.digits, lower.digits
    TOPI = -1
    start = (TOPI, TOPI) if mode == "U" else (0, 0)
    vec = {start: 1}
    counts = [1]
    for _ in range(n):
        nxt: dict = {}
        for (t, s), c in vec.items():
            for d in range(M + 1):
                if t >= 0 and d > ud[t]:
                    continue
                if s >= 0 and d < ld[s]:
                    continue
                if mode == "U":
                    nt = t + 1 if (t >= 0 and d == ud[t]) else (0 if d < M else TOPI)
                    ns = s + 1 if (s >= 0 and d == ld[s]) else (0 if d > 0 else TOPI)
                else:
                    nt = t + 1 if d == ud[t] else 0
                    ns = s + 1 if d == ld[s] else 0
                key = (nt, ns)
                nxt[key] = nxt.get(key, 0) + c
        vec = nxt
        counts.append(sum(vec.values()))
    return counts


# ---------------------------------------------------------------------------
# entropy of arbitrary bases


def entropy_of_expansion(alpha: DigitSeq, mode: str = "V", tol: float = 1e-12) -> EntropyResult:
    return entropy(build_automaton(spec_for(alpha, mode)), tol)


def entropy_brackets(
    q: BaseSpec | RealApprox,
    n: int = 16,
    anchors: list[tuple[BaseSpec, float]] | None = None,
    max_steps: int = 256,
    tol: float = 1e-12,
) -> EntropyResult:
    """An interval guaranteed to contain H(q) (natural log).

    If the expansion of 1 is detected to be eventually periodic the exact
    spectral value is returned.  Otherwise the upper bound is the
    subadditive estimate log(#B_n)/n from prefix counts, and the lower
    bound is the largest known exact entropy among anchor bases below q
    (entropy is nondecreasing in the base).
    """
    if n < 2:
        raise OutOfRange("n must be >= 2")
    if isinstance(q, BaseSpec):
        a = quasi_greedy_digitseq(q, max_steps=max_steps)
        if a is not None:
            return entropy_of_expansion(a, "V", tol)
        prefix = quasi_greedy(q, n)
        M = q.alphabet.M
    else:
        raise OutOfRange("entropy_brackets needs a BaseSpec")
    counts = count_words_prefix(prefix, n, "V")
    hi = math.log(counts[n]) / n
    lo = 0.0
    if anchors:
        for base, h in anchors:
            if base.cmp(q) <= 0:
                lo = max(lo, h)
    return EntropyResult(min(lo, hi), hi, "bracket", n_used=n, M=M)
