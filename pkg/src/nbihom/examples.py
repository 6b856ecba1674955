"""Built-in algebras.

``example-3lie-dim4``
    The 4-dimensional 3-Lie algebra ``[e1,e2,e3] = -e4``, ``[e1,e2,e4] = e3``,
    ``[e1,e3,e4] = -e2``, ``[e2,e3,e4] = e1`` with identity twists.
``example-3bihom-dim4``
    The same bracket twisted by ``alpha(e1) = -e2, alpha(e2) = -e1,
    alpha(e3) = -e4, alpha(e4) = -e3`` and ``beta = -alpha``.
``example-bihom-dim2``
    A two-parameter family of binary BiHom-Lie algebras with ``beta = id``;
    needs nonzero ``m`` and ``n``.

Indices in code are 0-based, so ``e1`` is coordinate 0.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .algebra import NAryBiHomAlgebra, permutation_sign
from .constructions import induce_from_nlie
from .errors import InvalidParams
from .linalg import Matrix
from .scalars import QQ, Field


def skew_bracket(arity: int, generators: dict) -> dict:
    """Extend brackets given on increasing index tuples by full skew-symmetry."""
    table = {}
    for idx, value in generators.items():
        for p in itertools.permutations(range(arity)):
            sgn = permutation_sign(p)
            table[tuple(idx[k] for k in p)] = [sgn * x for x in value]
    return table


def example_3lie_dim4(field: Field = QQ) -> NAryBiHomAlgebra:
    gens = {
        (0, 1, 2): [0, 0, 0, -1],
        (0, 1, 3): [0, 0, 1, 0],
        (0, 2, 3): [0, -1, 0, 0],
        (1, 2, 3): [1, 0, 0, 0],
    }
    I = Matrix.identity(4, field)
    return NAryBiHomAlgebra(3, 4, skew_bracket(3, gens), I, I, field)


def example_alpha_dim4(field: Field = QQ) -> Matrix:
    return Matrix.from_columns([[0, -1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]], field)


def example_3bihom_dim4(field: Field = QQ) -> NAryBiHomAlgebra:
    alpha = example_alpha_dim4(field)
    return induce_from_nlie(example_3lie_dim4(field), alpha, -alpha)


def _param(x, name) -> Fraction:
    try:
        x = Fraction(x)
    except (TypeError, ValueError):
        raise InvalidParams("%s must be a rational number, got %r" % (name, x)) from None
    if x == 0:
        raise InvalidParams("%s must be nonzero" % name)
    return x


def example_bihom_dim2(m=1, n=1, field: Field = QQ) -> NAryBiHomAlgebra:
    """``[e1,e2] = m e2 - n e1``, ``[e2,e1] = (n-1) e1 - m(n-1)/n e2``,
    ``[e2,e2] = -(n/m) e1 + e2``; ``alpha(e1) = e1``,
    ``alpha(e2) = (1/m) e1 + ((n-1)/n) e2``, ``beta = id``."""
    m, n = _param(m, "m"), _param(n, "n")
    bracket = {
        (0, 1): [-n, m],
        (1, 0): [n - 1, -m * (n - 1) / n],
        (1, 1): [-n / m, 1],
    }
    try:
        alpha = Matrix.from_columns([[1, 0], [1 / m, (n - 1) / n]], field)
        return NAryBiHomAlgebra(2, 2, bracket, alpha, Matrix.identity(2, field), field)
    except Exception as exc:
        raise InvalidParams("parameters m=%s, n=%s do not live in %s: %s" % (m, n, field, exc)) from None


BUILTINS = {
    "example-3lie-dim4": example_3lie_dim4,
    "example-3bihom-dim4": example_3bihom_dim4,
    "example-bihom-dim2": example_bihom_dim2,
}


def builtin(name: str, field: Field = QQ, **params) -> NAryBiHomAlgebra:
    if name not in BUILTINS:
        raise InvalidParams("unknown example %r (choose from %s)" % (name, ", ".join(BUILTINS)))
    if name == "example-bihom-dim2":
        return example_bihom_dim2(params.get("m", 1), params.get("n", 1), field)
    if params:
        raise InvalidParams("%s takes no parameters" % name)
    return BUILTINS[name](field)
