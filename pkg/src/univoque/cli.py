"""Command-line interface.

Bases are accepted in three forms, mirroring how a base is usually pinned
down: ``dec:5.802`` (exact decimal), ``poly:[1,-6,1];(5,6]`` (integer
polynomial with an isolating interval), and ``alpha:5(43)`` (an expansion
of 1, inverted exactly).  Output is JSON (stable key order) or CSV; domain
errors exit with code 2 and carry the error name, usage errors exit 1.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction

from . import acceptance, classify, constants, dims, plateaus, subshift
from .bases import BaseSpec, quasi_greedy, solve_base
from .errors import OutOfRange, UnivoqueError
from .words import parse_seq, parse_word

DEFAULT_PRECISION_ENV = "UNIVOQUE_PRECISION_BITS"


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(1)


def parse_base(text: str, M: int) -> BaseSpec:
    text = text.strip()
    if text.startswith("dec:"):
        return BaseSpec.from_rational(Fraction(text[4:]), M)
    if text.startswith("alpha:"):
        return solve_base(parse_seq(text[6:], M))
    if text.startswith("poly:"):
        body = text[5:]
        coeff_part, _, iv_part = body.partition(";")
        coeffs = json.loads(coeff_part)
        iv = iv_part.strip()
        if not (iv.startswith("(") and iv.endswith("]")):
            raise OutOfRange(f"interval must look like (lo,hi], got {iv!r}")
        lo, hi = iv[1:-1].split(",")
        return BaseSpec.from_poly(coeffs, Fraction(lo), Fraction(hi), M)
    raise OutOfRange(f"base must start with dec:, poly: or alpha: (got {text!r})")


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _emit_csv(rows, header) -> None:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    sys.stdout.write(out.getvalue())


def cmd_expand(args) -> int:
    q = parse_base(args.q, args.M)
    w = quasi_greedy(q, args.n, precision_bits=args.precision_bits)
    _emit_json({"M": args.M, "n": args.n, "digits": w.text()})
    return 0


def cmd_solve(args) -> int:
    a = parse_seq(args.seq, args.M)
    q = solve_base(a)
    _emit_json({"M": args.M, "seq": a.text(), "base": q.to_json(),
                "decimal": q.decimal(args.digits)})
    return 0


def cmd_constants(args) -> int:
    cat = constants.ConstantCatalog(args.M)
    _emit_json(cat.entries(n_steps=args.n, digits=args.digits))
    return 0


def cmd_classify(args) -> int:
    if args.word is not None:
        w = parse_word(args.word, args.M)
        payload = {"M": args.M, "word": w.text(), "primitive": classify.is_primitive(w)}
        if args.rr_chain:
            chain = classify.rr_chain(w)
            payload["rr_chain"] = [c.text() for c in chain[1:]]
        _emit_json(payload)
        return 0
    a = parse_seq(args.seq, args.M)
    cls = classify.sequence_class(a, j_max=args.jmax)
    _emit_json({"M": args.M, "seq": a.text(), **cls.to_json()})
    return 0


def cmd_entropy(args) -> int:
    q = parse_base(args.q, args.M)
    e = subshift.entropy_brackets(q, n=args.n, tol=args.tol)
    _emit_json({"M": args.M, "q": q.decimal(12), **e.to_json()})
    return 0


def cmd_transitive(args) -> int:
    if args.alpha is not None:
        a = parse_seq(args.alpha, args.M)
    else:
        from .bases import quasi_greedy_digitseq

        q = parse_base(args.q, args.M)
        a = quasi_greedy_digitseq(q)
        if a is None:
            raise OutOfRange("expansion of 1 not detected eventually periodic")
    aut = subshift.build_automaton(subshift.spec_for(a, "V"))
    _emit_json({
        "M": args.M,
        "alpha": a.text(),
        "transitive": subshift.is_transitive(aut),
        "states": len(aut.states),
    })
    return 0


def cmd_plateaus(args) -> int:
    ps = plateaus.enumerate_plateaus(args.M, args.mmax)
    plateaus.assert_pairwise_disjoint(ps)
    if args.format == "json":
        _emit_json({"M": args.M, "m_max": args.mmax,
                    "plateaus": [p.to_json() for p in ps]})
        return 0
    rows = []
    for p in ps:
        e = p.entropy()
        rows.append([
            p.generator.text(), p.kind, p.level if p.level is not None else "",
            json.dumps(_poly_of(p.p_L)), p.p_L.decimal(12),
            json.dumps(_poly_of(p.p_R)), p.p_R.decimal(12),
            f"{(e.h_norm_lo + e.h_norm_hi) / 2:.12f}",
        ])
    _emit_csv(rows, ["generator", "kind", "level", "pL_poly", "pL_dec",
                     "pR_poly", "pR_dec", "H_norm"])
    return 0


def _poly_of(q: BaseSpec):
    data = q.to_json()
    if data["kind"] == "rational":
        f = Fraction(data["value"])
        return [-f.numerator, f.denominator]
    return data["coeffs"]


def cmd_locate(args) -> int:
    q = parse_base(args.q, args.M)
    hit = plateaus.locate_plateau(q, depth=args.depth)
    if isinstance(hit, plateaus.PlateauInterval):
        _emit_json({"M": args.M, "q": q.decimal(12), "plateau": hit.to_json()})
    else:
        _emit_json({"M": args.M, "q": q.decimal(12), **hit.to_json()})
    return 0


def cmd_dims(args) -> int:
    q = parse_base(args.q, args.M)
    r = dims.box_count_check(q, n_max=args.nmax) if args.box else dims.dim_H_U(q)
    _emit_json(r.to_json())
    return 0


def cmd_staircase(args) -> int:
    M = args.M
    cat = constants.ConstantCatalog(M)
    qc_hi = cat.q_c(Fraction(1, 10**8)).hi
    q_lo = Fraction(args.qlo) if args.qlo else qc_hi + Fraction(1, 10**6)
    q_hi = Fraction(args.qhi) if args.qhi else Fraction(M + 1)
    if not (qc_hi <= q_lo < q_hi <= M + 1):
        raise OutOfRange("need q_c <= q_lo < q_hi <= M+1")
    ps = plateaus.enumerate_plateaus(M, args.mmax)
    anchors = [(p.p_L, p.entropy().h_lo) for p in ps]
    anchors.append((cat.q_T(), math.log(2) if M % 2 == 0 else math.log(2) / 2))
    samples = [q_lo + (q_hi - q_lo) * i / (args.samples - 1) for i in range(args.samples)]
    for p in ps:
        for endpoint in (p.p_L, p.p_R):
            lo, hi = endpoint.interval(Fraction(1, 10**12))
            v = (lo + hi) / 2
            if q_lo <= v <= q_hi:
                samples.append(v)
    rows = []
    lnM1 = math.log(M + 1)
    for qv in sorted(set(samples)):
        q = BaseSpec.from_rational(qv, M)
        e = subshift.entropy_brackets(q, n=args.n, anchors=anchors)
        rows.append([f"{float(qv):.12f}", f"{e.h_lo / lnM1:.9f}", f"{e.h_hi / lnM1:.9f}"])
    _emit_csv(rows, ["q", "H_lo", "H_hi"])
    return 0


def cmd_verify(args) -> int:
    results = acceptance.run_all(only=args.only)
    width = max(len(r.name) for r in results)
    failed = 0
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        if not r.ok:
            failed += 1
        print(f"{status}  {r.name:<{width}}  [{r.seconds:7.2f}s]  {r.detail}")
    print(f"{len(results) - failed}/{len(results)} criteria passed")
    return 0 if failed == 0 else 2


def build_parser() -> _Parser:
    p = _Parser(prog="univoque", description=__doc__)
    p.add_argument("--precision-bits", type=int,
                   default=int(os.environ.get(DEFAULT_PRECISION_ENV, "256")))
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--M", type=int, required=True)

    sp = sub.add_parser("expand", help="quasi-greedy expansion of 1")
    common(sp)
    sp.add_argument("--q", required=True)
    sp.add_argument("--n", type=int, default=16)
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("solve", help="invert an expansion of 1 to its base")
    common(sp)
    sp.add_argument("--seq", required=True)
    sp.add_argument("--digits", type=int, default=10)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("constants", help="named bases catalog")
    common(sp)
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--digits", type=int, default=12)
    sp.set_defaults(func=cmd_constants)

    sp = sub.add_parser("classify", help="sequence/word predicates")
    common(sp)
    sp.add_argument("--seq")
    sp.add_argument("--word")
    sp.add_argument("--rr-chain", action="store_true")
    sp.add_argument("--jmax", type=int, default=None)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("entropy", help="entropy bracket for a base")
    common(sp)
    sp.add_argument("--q", required=True)
    sp.add_argument("--n", type=int, default=16)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.set_defaults(func=cmd_entropy)

    sp = sub.add_parser("transitive", help="transitivity of the pinched shift")
    common(sp)
    sp.add_argument("--alpha")
    sp.add_argument("--q")
    sp.set_defaults(func=cmd_transitive)

    sp = sub.add_parser("plateaus", help="enumerate entropy plateaus")
    common(sp)
    sp.add_argument("--mmax", type=int, required=True)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=cmd_plateaus)

    sp = sub.add_parser("locate", help="plateau containing a base")
    common(sp)
    sp.add_argument("--q", required=True)
    sp.add_argument("--depth", type=int, default=64)
    sp.set_defaults(func=cmd_locate)

    sp = sub.add_parser("dims", help="dimension of the unique-expansion set")
    common(sp)
    sp.add_argument("--q", required=True)
    sp.add_argument("--nmax", type=int, default=14)
    sp.add_argument("--box", action="store_true")
    sp.set_defaults(func=cmd_dims)

    sp = sub.add_parser("staircase", help="entropy staircase plot data (CSV)")
    common(sp)
    sp.add_argument("--qlo")
    sp.add_argument("--qhi")
    sp.add_argument("--samples", type=int, default=50)
    sp.add_argument("--n", type=int, default=14)
    sp.add_argument("--mmax", type=int, default=4)
    sp.set_defaults(func=cmd_staircase)

    sp = sub.add_parser("verify", help="run the acceptance criteria")
    sp.add_argument("--only", type=int, default=None,
                    help="run a single criterion by number")
    sp.set_defaults(func=cmd_verify)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnivoqueError as exc:
        _emit_json({"error": exc.code, "message": str(exc)})
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
