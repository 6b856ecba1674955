"""Independent reference computations for the tests.

Spaces are recomputed here by a different route than the library: each
defining identity is evaluated with ``bracket_eval`` on elementary matrices
to get a dense linear map in the unknowns, and sympy supplies the
nullspace.  Only the bracket evaluator is shared with the code under test.
"""

import itertools
from fractions import Fraction

import sympy

from nbihom.algebra import bracket_eval
from nbihom.linalg import Matrix


def _elementary(d, a, b):
    return [[1 if (i, j) == (a, b) else 0 for j in range(d)] for i in range(d)]


def _mul(M, v):
    return [sum(Fraction(M[i][k]) * v[k] for k in range(len(v))) for i in range(len(M))]


def _mm(M, N):
    d = len(M)
    return [[sum(Fraction(M[i][k]) * N[k][j] for k in range(d)) for j in range(d)] for i in range(d)]


def _dense_matrix(M):
    return [[Fraction(M[i, j]) for j in range(M.ncols)] for i in range(M.nrows)]


def _power(A, s, r):
    d = A.dim
    P = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    al, be = _dense_matrix(A.alpha), _dense_matrix(A.beta)
    for _ in range(s):
        P = _mm(P, al)
    for _ in range(r):
        P = _mm(P, be)
    return P


def _basis(d, i):
    return [Fraction(int(k == i)) for k in range(d)]


def equations(A, kind, sr, n_maps):
    """Rows of the defining system in the unknowns ``(M_0, .., M_{n_maps-1})``,
    each ``M_m`` vectorised row-major."""
    d, n = A.dim, A.arity
    P = _power(A, *sr)
    al, be = _dense_matrix(A.alpha), _dense_matrix(A.beta)
    nvars = n_maps * d * d
    columns = []  # one column (list of equation values) per unknown
    for m in range(n_maps):
        for a, b in itertools.product(range(d), repeat=2):
            E = _elementary(d, a, b)
            maps = [None] * n_maps
            maps[m] = E
            col = []
            # commuting with alpha and beta, for every map
            for M in maps:
                for T in (al, be):
                    if M is None:
                        col += [0] * (d * d)
                    else:
                        MT, TM = _mm(M, T), _mm(T, M)
                        col += [MT[i][j] - TM[i][j] for i in range(d) for j in range(d)]
            for idx in itertools.product(range(d), repeat=n):
                xs = [_basis(d, i) for i in idx]
                br = list(bracket_eval(A, *xs))

                def ins(M, k):
                    if M is None:
                        return [0] * d
                    args = [_mul(P, x) for x in xs]
                    args[k] = _mul(M, xs[k])
                    return list(bracket_eval(A, *args))

                def app(M, v):
                    return [0] * d if M is None else _mul(M, v)

                if kind == "der":
                    lhs = app(maps[0], br)
                    rhs = [sum(t) for t in zip(*[ins(maps[0], k) for k in range(n)])]
                    col += [x - y for x, y in zip(lhs, rhs)]
                elif kind == "qder":
                    lhs = app(maps[1], br)
                    rhs = [sum(t) for t in zip(*[ins(maps[0], k) for k in range(n)])]
                    col += [x - y for x, y in zip(lhs, rhs)]
                elif kind == "gder":
                    lhs = app(maps[n], br)
                    rhs = [sum(t) for t in zip(*[ins(maps[k], k) for k in range(n)])]
                    col += [x - y for x, y in zip(lhs, rhs)]
                elif kind == "c":
                    Db = app(maps[0], br)
                    for k in range(n):
                        col += [x - y for x, y in zip(Db, ins(maps[0], k))]
                elif kind == "qc":
                    first = ins(maps[0], 0)
                    for k in range(1, n):
                        col += [x - y for x, y in zip(first, ins(maps[0], k))]
                elif kind == "zder":
                    col += app(maps[0], br)
                    for k in range(n):
                        col += ins(maps[0], k)
            columns.append(col)
    rows = len(columns[0])
    return sympy.Matrix(rows, nvars, lambda i, j: sympy.Rational(columns[j][i]))


N_MAPS = {"der": 1, "c": 1, "qc": 1, "zder": 1, "qder": 2}


def space_dim(A, kind, sr=(0, 0)):
    """Dimension of the projection onto the first map of the solution space."""
    n_maps = A.arity + 1 if kind == "gder" else N_MAPS[kind]
    M = equations(A, kind, sr, n_maps)
    null = M.nullspace()
    d2 = A.dim ** 2
    if not null:
        return 0
    proj = sympy.Matrix.hstack(*[v[:d2, 0] for v in null])
    return proj.rank()


def space_basis_rref(A, kind, sr=(0, 0)):
    """Canonical RREF basis (as tuples of Fractions) of the first-map projection."""
    n_maps = A.arity + 1 if kind == "gder" else N_MAPS[kind]
    M = equations(A, kind, sr, n_maps)
    d2 = A.dim ** 2
    null = M.nullspace()
    if not null:
        return ()
    R, piv = sympy.Matrix.vstack(*[v[:d2, 0].T for v in null]).rref()
    return tuple(tuple(Fraction(int(x.p), int(x.q)) for x in R.row(i)) for i in range(len(piv)))


def to_fraction_rows(S):
    return tuple(tuple(Fraction(x) for x in row) for row in S.basis)


# -- random twists of the 4-dim 3-Lie algebra over F_p ---------------------

def is_morphism(L, M):
    """``M [x,y,z] = [Mx, My, Mz]`` on basis triples, via bracket_eval."""
    d = L.dim
    es = [tuple(L.field.one if k == i else L.field.zero for k in range(d)) for i in range(d)]
    for idx in itertools.product(range(d), repeat=L.arity):
        lhs = M.apply(bracket_eval(L, *[es[i] for i in idx]))
        rhs = bracket_eval(L, *[M.apply(es[i]) for i in idx])
        if lhs != rhs:
            return False
    return True


def _unit_circle(p):
    return [(c, s) for c in range(p) for s in range(p) if (c * c + s * s) % p == 1]


def _rotation(F, d, i, j, c, s):
    rows = [[1 if a == b else 0 for b in range(d)] for a in range(d)]
    rows[i][i], rows[i][j], rows[j][i], rows[j][j] = c, -s, s, c
    return Matrix(F, rows)


def random_commuting_twists(rng, F):
    """A pair of commuting elements of +-SO(4) (or zero) over ``F``.

    Both are ``C T C^-1`` for block rotations ``T`` in the planes (1,2) and
    (3,4), which commute, conjugated by one random rotation ``C``.
    """
    p = F.characteristic
    circle = _unit_circle(p)
    C = Matrix.identity(4, F)
    for _ in range(6):
        i, j = rng.sample(range(4), 2)
        C = C @ _rotation(F, 4, i, j, *rng.choice(circle))
    Ci = C.inverse()

    def torus():
        T = _rotation(F, 4, 0, 1, *rng.choice(circle)) @ _rotation(F, 4, 2, 3, *rng.choice(circle))
        M = C @ T @ Ci
        return M if rng.random() < 0.5 else -M

    alpha = torus()
    beta = torus() if rng.random() < 0.9 else Matrix.zeros(4, 4, F)
    return alpha, beta
