"""Canonical JSON encodings for exact values, matrices and reports.

Rationals encode as {"q": "num/den"}; an extension element a + b*t with
t^2 = p*t + s encodes as {"a": ..., "b": ..., "min": [p, s]} where p and
s are themselves encoded one level down.  Encoding then decoding is the
identity, and identical inputs produce byte-identical files (sorted
keys, no locale-dependent formatting).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .exactfield import TowerDescriptor, TowerElement
from .intervals import complex_embed

FORMAT_VERSION = "bmhadamard/1"


def _encode_rep(rep, levels, depth):
    if depth == 0:
        return {"q": f"{rep.numerator}/{rep.denominator}"}
    a, b = rep
    p, s = levels[depth - 1]
    return {
        "a": _encode_rep(a, levels, depth - 1),
        "b": _encode_rep(b, levels, depth - 1),
        "min": [_encode_rep(p, levels, depth - 1),
                _encode_rep(s, levels, depth - 1)],
    }


def encode_element(el):
    return _encode_rep(el.rep, el.desc.levels, el.desc.depth)


def _decode_rep(obj):
    if "q" in obj:
        num, den = obj["q"].split("/")
        return Fraction(int(num), int(den)), 0, []
    a, da, la = _decode_rep(obj["a"])
    b, db, lb = _decode_rep(obj["b"])
    p, dp, lp = _decode_rep(obj["min"][0])
    s, ds, ls = _decode_rep(obj["min"][1])
    if not (da == db == dp == ds and la == lb == lp == ls):
        raise ValueError("ragged element encoding")
    return (a, b), da + 1, la + [(p, s)]


def decode_element(obj):
    rep, depth, levels = _decode_rep(obj)
    return TowerElement(TowerDescriptor(tuple(levels)), rep)


def encode_descriptor(desc):
    return [[_encode_rep(p, desc.levels, i), _encode_rep(s, desc.levels, i)]
            for i, (p, s) in enumerate(desc.levels)]


def family_payload(family):
    return {
        "format": FORMAT_VERSION,
        "kind": "weight_family",
        "case": family.case,
        "q": str(family.q),
        "branch": family.branch,
        "r_sign": family.r_sign if family.case == "vi" else None,
        "tower": encode_descriptor(family.desc),
        "weights": [encode_element(w) for w in family.weights],
        "r_value": (encode_element(family.r_value)
                    if family.r_value is not None else None),
    }


def matrix_payload(mat):
    fam = mat.family
    payload = family_payload(fam)
    payload["kind"] = "dense_matrix"
    payload["n"] = mat.scheme.n
    payload["entries"] = [[encode_element(e) for e in row]
                          for row in mat.dense()]
    return payload


def complex_csv(dense, precision=30):
    """CSV of midpoint approximations at the requested precision."""
    lines = []
    for row in dense:
        cells = []
        for e in row:
            z = complex_embed(e, precision)
            m = z.mid()
            cells.append(f"{float(m.real):.{min(precision, 17)}g}"
                         f"{float(m.imag):+.{min(precision, 17)}g}j")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def dump_json(payload):
    return json.dumps(payload, sort_keys=True, indent=1,
                      separators=(",", ": ")) + "\n"


def haagerup_payload(data):
    return {
        "format": FORMAT_VERSION,
        "kind": "haagerup",
        "provenance": data.provenance,
        "h_set": [encode_element(x) for x in data.h_set],
        "k_set": [encode_element(x) for x in data.k_set],
    }


def check_record(check_id, status, witness=None, q_range=None):
    rec = {"check_id": check_id, "status": bool(status)}
    if witness is not None:
        rec["witness"] = witness
    if q_range is not None:
        rec["q_range"] = list(q_range)
    return rec
