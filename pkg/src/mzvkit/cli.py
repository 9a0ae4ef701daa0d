"""Batch harness: build and check the relation database, run verification
suites, reduce expressions against chosen moduli, evaluate symbols
numerically.  Reports are emitted as deterministic JSON (byte-identical for
identical inputs; wall-clock timings only with --timings) or as text."""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import numeric, suites, symbols
from .regularize import SymCombo

_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?:(?P<coeff>\d+(?:/\d+)?)\s*[·*]\s*)?z\((?P<idx>\d+(?:\s*,\s*\d+)*)\)"
)


def parse_sym_combo(text: str) -> SymCombo:
    """Parse "a·z(...) + b·z(...)" with rational coefficients (also accepts *)."""
    terms = {}
    pos = 0
    weight = None
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m:
            raise ValueError("cannot parse %r at offset %d" % (text, pos))
        coeff = Fraction(m.group("coeff") or 1)
        if m.group("sign") == "-":
            coeff = -coeff
        comp = tuple(int(p) for p in m.group("idx").replace(" ", "").split(","))
        if weight is None:
            weight = sum(comp)
        terms[comp] = terms.get(comp, 0) + coeff
        pos = m.end()
    if weight is None:
        raise ValueError("empty expression %r" % (text,))
    return SymCombo(weight, terms)


def parse_modulus(spec: str) -> list:
    """Parse modulus tokens "Zd:2,Z<:3,P,R,Rdual" into suite tokens."""
    tokens = []
    for raw in spec.split(","):
        raw = raw.strip()
        if raw.startswith("Zd:"):
            tokens.append(("Zd", int(raw[3:])))
        elif raw.startswith("Z<:"):
            tokens.append(("Z<", int(raw[3:])))
        elif raw in ("P", "R", "Rdual"):
            tokens.append(raw)
        else:
            raise ValueError("unknown modulus token %r" % (raw,))
    return tokens


def _emit(payload, fmt: str, text_fn) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, default=str))
    else:
        print(text_fn())


def _cmd_db(args) -> int:
    if args.db_cmd == "build":
        symbols.db_build(args.max_weight, args.out)
        print("wrote %s (weights 2..%d)" % (args.out, args.max_weight))
        return 0
    # db check
    with open(args.file) as fh:
        doc = json.load(fh)
    problems = symbols.db_check(doc)
    for p in problems:
        print("problem: %s" % p)
    if problems:
        return 1
    print("%s: format ok (%d weights)" % (args.file, len(doc.get("weights", []))))
    if args.numeric:
        symbols.db_load(args.file)
        bad = 0
        top = min(args.max_weight, doc.get("maxWeight", args.max_weight))
        for l in range(3, top + 1):
            for info, combo in symbols.relation_subspace(l).generator_combos():
                ok = numeric.check_relation_numeric(combo, args.numeric_tol, args.numeric_n)
                if not ok:
                    bad += 1
                    print("numeric-fail: weight %d generator %r" % (l, info))
        print("numeric check %s" % ("failed (%d bad)" % bad if bad else "passed"))
        return 1 if bad else 0
    return 0


def _cmd_verify(args) -> int:
    if args.db:
        symbols.db_load(args.db)
    reports = suites.run_suite(args.suite, args.max_weight, args.n_max, args.flavor)
    payload = [r.to_json_dict(include_timings=args.timings) for r in reports]
    _emit(payload, args.format, lambda: "\n".join(r.to_text(args.verbose) for r in reports))
    return 0 if all(r.ok for r in reports) else 1


def _cmd_reduce(args) -> int:
    v = parse_sym_combo(args.expr)
    weight = args.weight if args.weight is not None else v.weight
    if v.terms and weight != v.weight:
        print("expression has weight %d, not %d" % (v.weight, weight), file=sys.stderr)
        return 2
    tokens = parse_modulus(args.mod)
    parts, name = suites._modulus(weight, tokens)
    cert = symbols.membership(v, parts)
    residue = v
    for p in parts:
        residue = p.reduce(residue)
    payload = {
        "expr": v.to_text() or "0",
        "modulus": name,
        "verdict": "certified" if cert.certified else "not-certified",
        "residue": residue.to_text() or "0",
    }
    _emit(payload, args.format,
          lambda: "%(expr)s  mod %(modulus)s: %(verdict)s, residue %(residue)s" % payload)
    return 0 if cert.certified else 1


def _cmd_eval(args) -> int:
    v = parse_sym_combo(args.numeric)
    total = 0.0
    bound = 0.0
    for comp, coeff in v.items():
        nv = numeric.mzv_numeric(comp, args.N)
        total += float(coeff) * float(nv.value)
        bound += abs(float(coeff)) * nv.error_bound
    payload = {"expr": v.to_text(), "N": args.N, "value": total, "errorBound": bound}
    _emit(payload, args.format, lambda: "%s = %.12g ± %.3g  (N=%d)" % (
        v.to_text(), total, bound, args.N))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mzvkit",
        description="exact certification of congruence identities of (regularized) "
        "multiple zeta values",
    )
    ap.add_argument("--format", choices=("json", "text"), default="text")
    sub = ap.add_subparsers(dest="cmd", required=True)

    db = sub.add_parser("db", help="build or check the relation database")
    dbsub = db.add_subparsers(dest="db_cmd", required=True)
    b = dbsub.add_parser("build")
    b.add_argument("--max-weight", type=int, default=8)
    b.add_argument("--out", required=True)
    c = dbsub.add_parser("check")
    c.add_argument("file")
    c.add_argument("--numeric", action="store_true",
                   help="also test every relation generator against the nested-sum oracle")
    c.add_argument("--numeric-tol", type=float, default=1e-3)
    c.add_argument("--numeric-N", dest="numeric_n", type=int, default=100_000)
    c.add_argument("--max-weight", type=int, default=5)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", default="all",
                   choices=sorted(suites.SUITES) + ["all"])
    v.add_argument("--max-weight", type=int, default=7)
    v.add_argument("--n-max", type=int, default=6)
    v.add_argument("--flavor", choices=("star", "sh", "both"), default="both")
    v.add_argument("--db", help="load a prebuilt relation database first")
    v.add_argument("--timings", action="store_true", help="include wall-clock times in JSON")
    v.add_argument("--verbose", action="store_true", help="list every case in text output")

    r = sub.add_parser("reduce", help="reduce an expression against a modulus")
    r.add_argument("expr", help='e.g. "z(2,1) - z(3)"')
    r.add_argument("--weight", type=int)
    r.add_argument("--mod", default="R", help='e.g. "Zd:2,P,R"')

    e = sub.add_parser("eval", help="evaluate an expression numerically")
    e.add_argument("--numeric", required=True, help='e.g. "z(2,1)"')
    e.add_argument("--N", type=int, default=100_000)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.cmd == "db":
        return _cmd_db(args)
    if args.cmd == "verify":
        return _cmd_verify(args)
    if args.cmd == "reduce":
        return _cmd_reduce(args)
    if args.cmd == "eval":
        return _cmd_eval(args)
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
