"""Command-line front end: polynomials, operators, identity suites, goldens.

Exit codes follow the CI contract: 0 all good, 1 an identity or golden
comparison failed, 2 usage or I/O trouble.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import macdonald as mac
from . import qbinomial as qb
from . import raising as rs
from . import serialize as ser
from .partitions import parse_partition, partitions_of
from .suites import build_suite, default_threads, run_cases

DESK_N, DESK_M, DESK_WEIGHT = 4, 4, 5


@dataclass
class RunConfig:
    """Resolved limits and output options for one CLI invocation."""

    n: int | None = None
    m: int | None = None
    max_weight: int | None = None
    fmt: str = "text"
    suite: str = "all"
    seed: int | None = None
    out: str | None = None
    unsafe: bool = False

    def check_limits(self):
        if self.unsafe:
            return
        if self.n is not None and self.n > DESK_N:
            raise ValueError("n > %d needs --unsafe-limits" % DESK_N)
        if self.m is not None and self.m > DESK_M:
            raise ValueError("m > %d needs --unsafe-limits" % DESK_M)
        if self.max_weight is not None and self.max_weight > DESK_WEIGHT:
            raise ValueError("max weight > %d needs --unsafe-limits" % DESK_WEIGHT)


def _parse_mi(s: str) -> tuple:
    return tuple(int(p) for p in s.split(","))


def _out_stream(path):
    return open(path, "w", encoding="utf-8") if path else sys.stdout


def cmd_poly(args) -> int:
    lam = parse_partition(args.lam)
    cfg = RunConfig(n=args.n, max_weight=lam.weight(), unsafe=args.unsafe_limits)
    cfg.check_limits()
    if lam.length() > args.n:
        print("error: partition %r needs more than %d variables" % (lam, args.n),
              file=sys.stderr)
        return 2
    sp = (mac.macdonald_p if args.kind == "P" else mac.macdonald_j)(lam, args.n)
    if args.format == "json":
        sys.stdout.write(ser.dumps(ser.sympoly_to_obj(sp, lam, args.kind)))
        return 0
    chunks = []
    for mu in sorted(sp.expansion, reverse=True):
        c = sp.expansion[mu]
        chunks.append("(%s)*m[%s]" % (c.text(), mu.to_string() or "0"))
    print(" + ".join(chunks) if chunks else "0")
    return 0


def cmd_operator(args) -> int:
    cfg = RunConfig(n=args.n, m=args.m, unsafe=args.unsafe_limits)
    cfg.check_limits()
    op = rs.row_raising_op(args.m, args.n)
    if args.format == "json":
        sys.stdout.write(ser.dumps(ser.op_to_obj(op, args.m)))
        return 0
    for gamma in op.keys_canonical():
        print("T^%s: %s" % (list(gamma), op.coeffs[gamma].text()))
    return 0


_IDENTITIES = {
    "qbinom": ("alpha",),
    "chu": ("alpha", "k"),
    "chu2": ("alpha", "beta", "k"),
    "interp": ("gamma", "alpha"),
    "product-rule": ("alpha", "gamma", "beta"),
    "keyid": ("m", "n"),
}


def cmd_identity(args) -> int:
    name = args.name
    if name not in _IDENTITIES:
        print("error: unknown identity %r (choose from %s)"
              % (name, ", ".join(sorted(_IDENTITIES))), file=sys.stderr)
        return 2
    need = _IDENTITIES[name]
    params = {}
    for p in need:
        v = getattr(args, p if p != "lambda" else "lam", None)
        if v is None:
            print("error: identity %s needs --%s" % (name, p), file=sys.stderr)
            return 2
        params[p] = v
    if name == "qbinom":
        diff = qb.qbinom_theorem_diff(_parse_mi(params["alpha"]))
    elif name == "chu":
        diff = qb.chu_vandermonde_diff(_parse_mi(params["alpha"]), params["k"])
    elif name == "chu2":
        diff = qb.chu_vandermonde2_diff(_parse_mi(params["alpha"]),
                                        _parse_mi(params["beta"]), params["k"])
    elif name == "interp":
        diff = qb.interp_product_eval(_parse_mi(params["gamma"]), _parse_mi(params["alpha"]))
        ok = diff.is_zero() == (not all(
            x >= y for x, y in zip(_parse_mi(params["gamma"]),
                                   _parse_mi(params["alpha"]))))
        rec = {"identity": name, "params": params, "pass": bool(ok)}
        print(json.dumps(rec, sort_keys=True))
        return 0 if ok else 1
    elif name == "product-rule":
        diff = qb.qbinom_product_rule_diff(_parse_mi(params["alpha"]),
                                           _parse_mi(params["gamma"]),
                                           _parse_mi(params["beta"]))
    else:
        diff = rs.key_identity_diff(params["m"], params["n"])
    ok = diff.is_zero()
    rec = {"identity": name, "params": params, "pass": bool(ok)}
    if not ok:
        rec["detail"] = ser.diff_text(diff)
    print(json.dumps(rec, sort_keys=True))
    return 0 if ok else 1


def cmd_verify(args) -> int:
    cfg = RunConfig(n=args.n, m=args.m, max_weight=args.max_weight,
                    suite=args.suite, seed=args.seed, out=args.out,
                    unsafe=args.unsafe_limits)
    cfg.check_limits()
    try:
        cases = build_suite(args.suite, max_n=args.n, max_m=args.m,
                            max_weight=args.max_weight)
    except KeyError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    reports, ok = run_cases(cases, threads=default_threads(),
                            shuffle_seed=args.seed)
    stream = _out_stream(args.out)
    try:
        for rec in reports:
            rec = {k: v for k, v in rec.items() if k != "ms"}
            stream.write(json.dumps(rec, sort_keys=True) + "\n")
    finally:
        if stream is not sys.stdout:
            stream.close()
    passed = sum(r["pass"] for r in reports)
    print("%d/%d cases passed" % (passed, len(reports)), file=sys.stderr)
    return 0 if ok else 1


def _golden_items():
    """The golden corpus: J tables for |lam| <= 4, n <= 3; B_m for m,n <= 2."""
    for n in (1, 2, 3):
        for d in range(5):
            for lam in partitions_of(d, max_len=n):
                name = "J_n%d_lam%s.json" % (n, lam.to_string().replace(",", "-") or "0")
                yield name, lambda lam=lam, n=n: ser.dumps(
                    ser.sympoly_to_obj(mac.macdonald_j(lam, n), lam, "J"))
    for n in (1, 2):
        for m in (0, 1, 2):
            name = "B_m%d_n%d.json" % (m, n)
            yield name, lambda m=m, n=n: ser.dumps(
                ser.op_to_obj(rs.row_raising_op(m, n), m))


def cmd_golden(args) -> int:
    path = args.path
    if args.mode == "write":
        try:
            os.makedirs(path, exist_ok=True)
            for name, gen in _golden_items():
                with open(os.path.join(path, name), "w", encoding="utf-8") as fh:
                    fh.write(gen())
        except OSError as exc:
            print("error: %s" % exc, file=sys.stderr)
            return 2
        return 0
    bad = 0
    for name, gen in _golden_items():
        fp = os.path.join(path, name)
        try:
            with open(fp, "r", encoding="utf-8") as fh:
                on_disk = fh.read()
        except OSError as exc:
            print("error: %s" % exc, file=sys.stderr)
            return 2
        if on_disk != gen():
            print("golden mismatch: %s" % name, file=sys.stderr)
            bad += 1
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="macdo",
        description="Exact Macdonald polynomials, row raising operators, "
                    "and q-binomial identity verification.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", help="print P or J in the monomial basis")
    p.add_argument("kind", choices=("P", "J"))
    p.add_argument("--lambda", dest="lam", required=True,
                   help="comma-joined partition; '' or '0' for empty")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--unsafe-limits", action="store_true")
    p.set_defaults(fn=cmd_poly)

    p = sub.add_parser("operator", help="print the raising operator B_m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--unsafe-limits", action="store_true")
    p.set_defaults(fn=cmd_operator)

    p = sub.add_parser("identity", help="run one identity check, JSON report")
    p.add_argument("--name", required=True,
                   help="|".join(sorted(_IDENTITIES)))
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.add_argument("--gamma")
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.set_defaults(fn=cmd_identity)

    p = sub.add_parser("verify", help="run an identity suite, JSON-lines report")
    p.add_argument("--suite", default="all",
                   help="raising|qbinom|chu|keyid|oracles|cauchy|hl|all")
    p.add_argument("--n", type=int, default=None, help="cap on variable count")
    p.add_argument("--m", type=int, default=None, help="cap on operator weight")
    p.add_argument("--max-weight", type=int, default=None)
    p.add_argument("--seed", type=int, default=None,
                   help="shuffle execution order (math stays exact)")
    p.add_argument("--out", default=None, help="write the report here")
    p.add_argument("--unsafe-limits", action="store_true")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("golden", help="write or byte-check the golden tables")
    p.add_argument("mode", choices=("write", "check"))
    p.add_argument("path")
    p.set_defaults(fn=cmd_golden)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
