"""JSON documents for algebras, subspaces and endomorphism spaces.

Algebra document::

    {"arity": n, "dim": d, "field": "Q" | {"Fp": p},
     "bracket": [{"args": [i_1, .., i_n], "value": ["c_1", .., "c_d"]}, ..],
     "alpha": [[..], ..], "beta": [[..], ..]}

Matrices are lists of rows (``alpha[i][j]`` is the ``e_i`` coefficient of
``alpha(e_j)``).  Scalars are strings: ``"p/q"`` or ``"p"`` over Q, decimal
residues over F_p.  Omitted bracket tuples are zero.
"""

from __future__ import annotations

import json

from .algebra import NAryBiHomAlgebra
from .errors import DimensionMismatch, ParseError
from .linalg import Matrix, Subspace
from .scalars import Field


def matrix_to_json(M: Matrix) -> list:
    return [[M.field.format(x) for x in row] for row in M.data]


def matrix_from_json(doc, field: Field, d: int, name: str = "matrix") -> Matrix:
    if not isinstance(doc, list) or len(doc) != d or any(not isinstance(r, list) or len(r) != d for r in doc):
        raise DimensionMismatch("%s must be a %dx%d list of rows" % (name, d, d))
    return Matrix(field, [[_scalar(field, x) for x in row] for row in doc], d)


def _scalar(field: Field, x):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise ParseError("scalars must be strings or integers, got %r" % (x,))
    return field(x)


def algebra_to_json(A: NAryBiHomAlgebra, **extra) -> dict:
    F = A.field
    doc = {
        "arity": A.arity,
        "dim": A.dim,
        "field": F.to_json(),
        "bracket": [{"args": list(idx), "value": [F.format(x) for x in v]} for idx, v in A.bracket.items()],
        "alpha": matrix_to_json(A.alpha),
        "beta": matrix_to_json(A.beta),
    }
    doc.update(extra)
    return doc


def algebra_from_json(doc) -> NAryBiHomAlgebra:
    if not isinstance(doc, dict):
        raise ParseError("algebra document must be a JSON object")
    for key in ("arity", "dim", "field", "alpha", "beta"):
        if key not in doc:
            raise ParseError("missing key %r" % key)
    n, d = doc["arity"], doc["dim"]
    if isinstance(n, bool) or isinstance(d, bool) or not isinstance(n, int) or not isinstance(d, int):
        raise ParseError("arity and dim must be integers")
    if n < 2 or d < 1:
        raise DimensionMismatch("need arity >= 2 and dim >= 1, got arity=%r dim=%r" % (n, d))
    F = Field.from_json(doc["field"])
    bracket = {}
    entries = doc.get("bracket", [])
    if not isinstance(entries, list):
        raise ParseError("bracket must be a list")
    for e in entries:
        if not isinstance(e, dict) or "args" not in e or "value" not in e:
            raise ParseError("bracket entries need \"args\" and \"value\"")
        args, value = e["args"], e["value"]
        if not isinstance(args, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in args):
            raise ParseError("bracket args must be a list of integers")
        if not isinstance(value, list):
            raise ParseError("bracket value must be a list")
        if len(args) != n or not all(0 <= i < d for i in args):
            raise DimensionMismatch("bad bracket args %r" % (args,))
        if len(value) != d:
            raise DimensionMismatch("bracket value at %r has length %d, expected %d" % (args, len(value), d))
        if tuple(args) in bracket:
            raise ParseError("duplicate bracket entry for %r" % (args,))
        bracket[tuple(args)] = [_scalar(F, x) for x in value]
    alpha = matrix_from_json(doc["alpha"], F, d, "alpha")
    beta = matrix_from_json(doc["beta"], F, d, "beta")
    return NAryBiHomAlgebra(n, d, bracket, alpha, beta, F)


def subspace_to_json(S: Subspace, kind: str | None = None) -> dict:
    doc = {} if kind is None else {"kind": kind}
    doc.update({
        "ambient_dim": S.ambient_dim,
        "dim": S.dim,
        "basis": [[S.field.format(x) for x in row] for row in S.basis],
    })
    return doc


def space_to_json(E) -> dict:
    """EndoSubspace dump; each basis element is a ``d x d`` matrix of strings."""
    return {
        "kind": E.kind,
        "s": E.sr.s,
        "r": E.sr.r,
        "dim": E.dim,
        "basis": [matrix_to_json(M) for M in E.matrices()],
    }


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def loads_algebra(text: str) -> NAryBiHomAlgebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON: %s" % exc) from None
    return algebra_from_json(doc)


def load_algebra(path) -> NAryBiHomAlgebra:
    with open(path, encoding="utf-8") as fh:
        return loads_algebra(fh.read())


def save_algebra(A: NAryBiHomAlgebra, path, **extra):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(algebra_to_json(A, **extra)))
