import json

from bmhadamard.exactfield import QQ, TowerElement, adjoin_radical, adjoin_root
from bmhadamard.invariants import haagerup_formula
from bmhadamard.serialize import (
    complex_csv,
    decode_element,
    dump_json,
    encode_element,
    family_payload,
    haagerup_payload,
    matrix_payload,
)
from bmhadamard.typeii import TypeIIMatrix, family_coefficients


def test_rational_encoding():
    x = TowerElement.rational(-7) / 8
    assert encode_element(x) == {"q": "-7/8"}
    assert decode_element({"q": "-7/8"}) == x


def test_quadratic_roundtrip():
    d, s = adjoin_radical(QQ, -15)
    x = (TowerElement.rational(-7, d) + s) / 8
    enc = encode_element(x)
    assert enc["a"] == {"q": "-7/8"} and enc["b"] == {"q": "1/8"}
    assert enc["min"] == [{"q": "0/1"}, {"q": "-15/1"}]
    assert decode_element(enc) == x


def test_depth_two_roundtrip():
    d201, s201 = adjoin_radical(QQ, 201)
    z_trace = (TowerElement.rational(53, d201) - 3 * s201) / 10
    dz = adjoin_root(d201, z_trace, -1)
    z = TowerElement.generator(dz)
    x = z * z - z + 1
    assert decode_element(encode_element(x)) == x


def test_family_and_matrix_payloads(families_q4):
    fam = families_q4[("vi", 1, 1)]
    pay = family_payload(fam)
    assert pay["case"] == "vi" and len(pay["tower"]) == 2
    assert len(pay["weights"]) == 4
    back = [decode_element(w) for w in pay["weights"]]
    assert back == list(fam.weights)
    mat = matrix_payload(TypeIIMatrix(families_q4[("iv", 1, 1)]))
    assert mat["n"] == 15 and len(mat["entries"]) == 15
    assert decode_element(mat["entries"][0][0]) == TowerElement.rational(
        1, families_q4[("iv", 1, 1)].desc)


def test_dump_is_deterministic(families_q4):
    fam = families_q4[("iii", 1, 1)]
    a = dump_json(family_payload(fam))
    b = dump_json(family_payload(family_coefficients("iii", 4, 1, 1)))
    assert a == b
    json.loads(a)  # well-formed


def test_complex_csv(families_q4):
    mat = TypeIIMatrix(families_q4[("iv", 1, 1)])
    text = complex_csv(mat.dense(), 12)
    lines = text.strip().split("\n")
    assert len(lines) == 15
    first = lines[0].split(",")
    assert len(first) == 15
    assert first[0].startswith("1")


def test_haagerup_payload(families_q4):
    data = haagerup_formula(families_q4[("i", 1, 1)])
    pay = haagerup_payload(data)
    assert pay["provenance"] == "formula"
    assert len(pay["h_set"]) == 5 and len(pay["k_set"]) == 2
