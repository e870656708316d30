"""JSON forms for matrices, pairs, canonical data and certificates.

Scalars travel as text: "a" or "a/b" over Q (b > 0, reduced), decimal
residues over F_p (emitted as ints).  parse(print(x)) = x on canonical
representatives.  All emitters build dicts in a fixed key order so equal
inputs give byte-identical dumps.
"""

from __future__ import annotations

import json

from .canonical import CanonicalPair, CanonResult, MatrixPair
from .errors import InputFormatError
from .fields import Field, field_to_json, parse_field
from .matrices import Mat
from .stargraph import Digraph, StarMatrix


def scalar_to_json(e):
    if e.field.is_rationals:
        return str(e.value)
    return int(e.value)


def _rows_to_json(M: Mat):
    return [[scalar_to_json(e) for e in row] for row in M.rows]


def _rows_from_json(field: Field, rows):
    if not isinstance(rows, list) or not rows:
        raise InputFormatError("matrix rows must be a non-empty list")
    try:
        return Mat(field, [[field.parse(str(x)) for x in row] for row in rows])
    except (TypeError, ValueError) as exc:
        raise InputFormatError("bad matrix rows: %s" % exc) from exc


def mat_to_json(M: Mat) -> dict:
    return {"field": field_to_json(M.field), "rows": _rows_to_json(M)}


def mat_from_json(obj) -> Mat:
    if not isinstance(obj, dict) or "field" not in obj or "rows" not in obj:
        raise InputFormatError("matrix object needs 'field' and 'rows'")
    return _rows_from_json(parse_field(obj["field"]), obj["rows"])


def pair_to_json(P: MatrixPair) -> dict:
    return {"field": field_to_json(P.field),
            "A1": _rows_to_json(P.A1),
            "A2": _rows_to_json(P.A2)}


def pair_from_json(obj, default_field: Field | None = None) -> MatrixPair:
    if not isinstance(obj, dict):
        raise InputFormatError("pair object must be a JSON object")
    if "field" in obj:
        field = parse_field(obj["field"])
    elif default_field is not None:
        field = default_field
    else:
        raise InputFormatError("pair object needs a 'field' entry")
    for key in ("A1", "A2"):
        if key not in obj:
            raise InputFormatError("pair object needs %r rows" % key)
    try:
        return MatrixPair(_rows_from_json(field, obj["A1"]),
                          _rows_from_json(field, obj["A2"]))
    except ValueError as exc:
        raise InputFormatError(str(exc)) from exc


def digraph_to_json(G: Digraph) -> dict:
    return {"n": G.n, "arrows": [list(a) for a in G.sorted_arrows()]}


def digraph_from_json(obj) -> Digraph:
    if not isinstance(obj, dict) or "n" not in obj or "arrows" not in obj:
        raise InputFormatError("digraph object needs 'n' and 'arrows'")
    try:
        return Digraph(int(obj["n"]), [tuple(a) for a in obj["arrows"]])
    except (TypeError, ValueError) as exc:
        raise InputFormatError("bad digraph: %s" % exc) from exc


def star_to_json(S: StarMatrix) -> list:
    return S.text_rows()


def star_from_json(rows) -> StarMatrix:
    try:
        return StarMatrix.from_text_rows(list(rows))
    except (TypeError, ValueError) as exc:
        raise InputFormatError("bad star matrix: %s" % exc) from exc


def canon_to_json(C: CanonicalPair) -> dict:
    return {
        "field": field_to_json(C.field),
        "n": C.n,
        "eigs": [scalar_to_json(e) for e in C.eigs],
        "arrows": [list(a) for a in C.type_graph.sorted_arrows()],
        "star": C.star.text_rows(),
        "params": [{"pos": list(pos), "val": scalar_to_json(v)}
                   for pos, v in C.params],
    }


def canon_result_to_json(res: CanonResult) -> dict:
    out = canon_to_json(res.canon)
    out["g"] = _rows_to_json(res.g)
    out["pair"] = pair_to_json(res.canon.reconstituted())
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2)
