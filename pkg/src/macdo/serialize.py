"""Deterministic JSON and text serialization for polynomials and operators.

Coefficients travel as decimal strings (arbitrary precision survives JSON),
terms in the canonical monomial order, and every dump is byte-reproducible:
golden files are compared verbatim.
"""

from __future__ import annotations

import json

from .algebra import Frac, MPoly, universe_of_names
from .macdonald import QDiffOp, SymPoly
from .partitions import Partition


def poly_to_obj(p: MPoly) -> dict:
    terms = [{"c": str(c), "e": list(p.u.unpack(k))} for k, c in p.sort_key()]
    return {"vars": list(p.u.names), "terms": terms}


def poly_from_obj(obj: dict) -> MPoly:
    u = universe_of_names(obj["vars"])
    out = {}
    for tm in obj["terms"]:
        c = int(tm["c"])
        if c == 0:
            raise ValueError("serialized polynomial carries a zero coefficient")
        e = tm["e"]
        if len(e) != u.nvars:
            raise ValueError("exponent vector length mismatch")
        u._check_exps(e)
        k = u.pack(e)
        if k in out:
            raise ValueError("duplicate exponent vector in serialized polynomial")
        out[k] = c
    return MPoly(u, out)


def frac_to_obj(fr: Frac) -> dict:
    return {"num": poly_to_obj(fr.num), "den": poly_to_obj(fr.den)}


def frac_from_obj(obj: dict) -> Frac:
    return Frac.over(poly_from_obj(obj["num"]), poly_from_obj(obj["den"]))


def sympoly_to_obj(sp: SymPoly, lam: Partition, kind: str) -> dict:
    """Monomial-basis table for a P or J polynomial.

    J coefficients are certified polynomials and serialize bare; P
    coefficients keep their num/den split.
    """
    coeffs = {}
    for mu in sorted(sp.expansion):
        c = sp.expansion[mu]
        key = mu.to_string()
        if kind == "J":
            coeffs[key] = poly_to_obj(c.as_poly())
        else:
            coeffs[key] = frac_to_obj(c)
    return {"n": sp.n, "lambda": lam.to_string(), "basis": "monomial",
            "kind": kind, "coeffs": coeffs}


def op_to_obj(op: QDiffOp, m: int) -> dict:
    coeffs = []
    for gamma in op.keys_canonical():
        c = op.coeffs[gamma]
        coeffs.append({"gamma": list(gamma),
                       "num": poly_to_obj(c.num),
                       "den": poly_to_obj(c.den)})
    return {"m": m, "n": op.nvars(), "coeffs": coeffs}


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, one trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def diff_text(diff: Frac) -> str:
    """Failure artifact: the cross-multiplied difference, display-normalized."""
    return diff.num.content_normalized().text()
