import json
from fractions import Fraction

import pytest

from simspec.errors import InputFormatError
from simspec.fields import QQ, PrimeField
from simspec.matrices import Mat
from simspec.canonical import canonicalize
from simspec.sampling import random_matrix, random_simple_spectrum_pair
from simspec.serialize import (
    canon_result_to_json,
    canon_to_json,
    digraph_from_json,
    digraph_to_json,
    dumps,
    mat_from_json,
    mat_to_json,
    pair_from_json,
    pair_to_json,
    star_from_json,
    star_to_json,
)
from simspec.stargraph import Digraph, star_from_forest


def test_mat_roundtrip_bit_exact(rng, field):
    for _ in range(25):
        M = random_matrix(field, rng.choice([1, 2, 4]), rng)
        doc = mat_to_json(M)
        assert mat_from_json(json.loads(dumps(doc))) == M
        assert dumps(mat_to_json(mat_from_json(doc))) == dumps(doc)


def test_mat_formats():
    M = Mat(QQ, [[Fraction(1, 2), -3], [0, Fraction(7)]])
    doc = mat_to_json(M)
    assert doc == {"field": "Q", "rows": [["1/2", "-3"], ["0", "7"]]}
    F7 = PrimeField(7)
    doc = mat_to_json(Mat(F7, [[6, 0], [1, 3]]))
    assert doc == {"field": {"Fp": 7}, "rows": [[6, 0], [1, 3]]}
    # forgiving parse: ints for rationals, strings for residues
    assert mat_from_json({"field": "Q", "rows": [[1, 2]]}) == Mat(QQ, [[1, 2]])
    assert mat_from_json({"field": {"Fp": 7}, "rows": [["6", "8"]]}) == Mat(F7, [[6, 1]])


def test_mat_errors():
    with pytest.raises(InputFormatError):
        mat_from_json({"rows": [[1]]})
    with pytest.raises(InputFormatError):
        mat_from_json({"field": "Q", "rows": []})
    with pytest.raises(InputFormatError):
        mat_from_json({"field": "Q", "rows": [["1/0"]]})


def test_pair_roundtrip(rng, field):
    for _ in range(10):
        n = rng.choice([2, 3])
        if not field.is_rationals and field.p < n:
            continue
        P = random_simple_spectrum_pair(field, n, rng)
        doc = json.loads(dumps(pair_to_json(P)))
        assert pair_from_json(doc) == P


def test_pair_default_field():
    doc = {"A1": [[0, 0], [0, 1]], "A2": [[1, 0], [0, 0]]}
    with pytest.raises(InputFormatError):
        pair_from_json(doc)
    P = pair_from_json(doc, default_field=PrimeField(5))
    assert P.field is PrimeField(5)
    # explicit field wins over the default
    doc["field"] = "Q"
    assert pair_from_json(doc, default_field=PrimeField(5)).field is QQ


def test_digraph_roundtrip():
    G = Digraph(4, [(4, 1), (2, 1), (2, 3)])
    doc = digraph_to_json(G)
    assert doc == {"n": 4, "arrows": [[2, 1], [2, 3], [4, 1]]}
    assert digraph_from_json(json.loads(dumps(doc))) == G
    with pytest.raises(InputFormatError):
        digraph_from_json({"n": 2, "arrows": [[1, 1]]})
    with pytest.raises(InputFormatError):
        digraph_from_json({"arrows": []})


def test_star_roundtrip():
    S = star_from_forest(Digraph(4, [(4, 1), (2, 1), (2, 3)]))
    assert star_from_json(star_to_json(S)) == S
    with pytest.raises(InputFormatError):
        star_from_json(["*x", "**"])


def test_canon_json_shape(rng):
    P = random_simple_spectrum_pair(PrimeField(7), 3, rng)
    res = canonicalize(P)
    doc = canon_result_to_json(res)
    assert list(doc) == ["field", "n", "eigs", "arrows", "star", "params", "g", "pair"]
    assert doc["n"] == 3 and len(doc["eigs"]) == 3
    assert all(set(item) == {"pos", "val"} for item in doc["params"])
    # deterministic output
    assert dumps(doc) == dumps(canon_result_to_json(canonicalize(P)))
    # params listed in lexicographic cell order
    poss = [tuple(item["pos"]) for item in doc["params"]]
    assert poss == sorted(poss)
    recon = pair_from_json(doc["pair"])
    assert canonicalize(recon).canon == res.canon
    assert canon_to_json(res.canon) == {k: doc[k] for k in
                                        ("field", "n", "eigs", "arrows", "star", "params")}
