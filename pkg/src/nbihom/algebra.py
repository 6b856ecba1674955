"""n-ary BiHom-Lie algebras given by structure constants.

An :class:`NAryBiHomAlgebra` is a raw multilinear structure: an ``n``-linear
bracket on ``K^d`` stored on basis tuples, plus two ``d x d`` twist
matrices.  Nothing is assumed about it; the ``check_*`` functions diagnose
the axioms and return concrete witnesses.

Conventions: basis vectors are ``e_0 .. e_{d-1}``; a matrix ``M`` acts on
column vectors, so ``M e_j`` is column ``j`` of ``M``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

from .errors import AmbientMismatch, DimensionMismatch
from .linalg import Matrix, Subspace, contains, coordinates
from .scalars import QQ, Field


def _add_into(acc: dict, vec: Mapping, coeff=1):
    for k, v in vec.items():
        x = acc.get(k, 0) + coeff * v
        if x:
            acc[k] = x
        else:
            acc.pop(k, None)


def _col(m: Matrix, j: int) -> dict:
    return {i: row[j] for i, row in enumerate(m.data) if row[j]}


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class NAryBiHomAlgebra:
    """Structure constants of an ``arity``-linear bracket with twists alpha, beta.

    ``bracket`` maps index tuples ``(i_1, .., i_n)`` to coefficient vectors of
    length ``dim``; missing tuples are zero.  Instances are immutable.
    """

    def __init__(self, arity: int, dim: int, bracket: Mapping, alpha: Matrix, beta: Matrix, field: Field = QQ):
        if arity < 2:
            raise DimensionMismatch("arity must be at least 2, got %d" % arity)
        if dim < 1:
            raise DimensionMismatch("dimension must be at least 1, got %d" % dim)
        for name, m in (("alpha", alpha), ("beta", beta)):
            if (m.nrows, m.ncols) != (dim, dim):
                raise DimensionMismatch("%s must be %dx%d" % (name, dim, dim))
            if m.field != field:
                raise DimensionMismatch("%s is over %s, algebra over %s" % (name, m.field, field))
        table = {}
        for idx, value in bracket.items():
            idx = tuple(idx)
            if len(idx) != arity or not all(0 <= i < dim for i in idx):
                raise DimensionMismatch("bad bracket index %r" % (idx,))
            if isinstance(value, Mapping):
                vec = {k: field(v) for k, v in value.items()}
                if not all(0 <= k < dim for k in vec):
                    raise DimensionMismatch("bracket value index out of range at %r" % (idx,))
            else:
                if len(value) != dim:
                    raise DimensionMismatch("bracket value at %r has length %d, expected %d" % (idx, len(value), dim))
                vec = {k: field(v) for k, v in enumerate(value)}
            vec = {k: v for k, v in vec.items() if v}
            if vec:
                table[idx] = vec
        self.arity = arity
        self.dim = dim
        self.field = field
        self.alpha = alpha
        self.beta = beta
        self._table = table
        self._cache: dict = {}

    # -- basic access -------------------------------------------------------

    @property
    def bracket(self) -> dict:
        """Dense view ``{index tuple: coefficient tuple}`` of the nonzero constants."""
        zero = self.field.zero
        out = {}
        for idx in sorted(self._table):
            v = [zero] * self.dim
            for k, x in self._table[idx].items():
                v[k] = x
            out[idx] = tuple(v)
        return out

    def table(self) -> dict:
        """Sparse structure constants ``{index tuple: {k: c}}`` (read-only by convention)."""
        return self._table

    def constant(self, idx: Sequence[int]) -> tuple:
        vec = self._table.get(tuple(idx), {})
        return tuple(vec.get(k, self.field.zero) for k in range(self.dim))

    def basis_vector(self, i: int) -> tuple:
        zero, one = self.field.zero, self.field.one
        return tuple(one if k == i else zero for k in range(self.dim))

    def index_tuples(self, length: int | None = None):
        return itertools.product(range(self.dim), repeat=self.arity if length is None else length)

    def is_zero_bracket(self) -> bool:
        return not self._table

    def __eq__(self, other):
        if not isinstance(other, NAryBiHomAlgebra):
            return NotImplemented
        return (self.arity, self.dim, self.field, self.alpha, self.beta, self._table) == (
            other.arity, other.dim, other.field, other.alpha, other.beta, other._table)

    def __hash__(self):
        return hash((self.arity, self.dim, self.field, self.alpha, self.beta))

    def __repr__(self):
        return "NAryBiHomAlgebra(arity=%d, dim=%d, field=%s, %d nonzero brackets)" % (
            self.arity, self.dim, self.field, len(self._table))

    def replace(self, *, bracket=None, alpha=None, beta=None) -> "NAryBiHomAlgebra":
        return NAryBiHomAlgebra(
            self.arity, self.dim,
            self._table if bracket is None else bracket,
            self.alpha if alpha is None else alpha,
            self.beta if beta is None else beta,
            self.field,
        )

    # -- evaluation ---------------------------------------------------------

    def twisted(self, mats: Sequence[Matrix | None]) -> dict:
        """Sparse tensor of ``[m_1 e_{i_1}, .., m_n e_{i_n}]`` over all index tuples.

        ``None`` in ``mats`` stands for the identity.  Results are cached per
        instance, keyed by the matrices.
        """
        key = ("tw",) + tuple(mats)
        if key in self._cache:
            return self._cache[key]
        if len(mats) != self.arity:
            raise DimensionMismatch("need %d slot matrices" % self.arity)
        cur = self._table
        for slot, m in enumerate(mats):
            if m is None:
                continue
            # m e_b = sum_c m[c][b] e_c, so old slot value c feeds new slot value b
            rows = [{b: x for b, x in enumerate(m.data[c]) if x} for c in range(self.dim)]
            nxt: dict = {}
            for idx, vec in cur.items():
                for b, coeff in rows[idx[slot]].items():
                    new = idx[:slot] + (b,) + idx[slot + 1:]
                    acc = nxt.setdefault(new, {})
                    _add_into(acc, vec, coeff)
                    if not acc:
                        del nxt[new]
            cur = nxt
        self._cache[key] = cur
        return cur

    def eval_sparse(self, args: Sequence[Mapping]) -> dict:
        """Multilinear expansion on sparse argument vectors ``{k: x_k}``."""
        out: dict = {}
        supports = [list(a.items()) for a in args]
        for combo in itertools.product(*supports):
            vec = self._table.get(tuple(k for k, _ in combo))
            if not vec:
                continue
            c = 1
            for _, x in combo:
                c = c * x
            _add_into(out, vec, c)
        return out

    def morphism_power(self, s: int, r: int) -> Matrix:
        """The matrix ``alpha^s beta^r``."""
        if s < 0 or r < 0:
            raise ValueError("exponents must be non-negative")
        key = ("pow", s, r)
        if key not in self._cache:
            self._cache[key] = (self.alpha ** s) @ (self.beta ** r)
        return self._cache[key]


def dense(vec: Mapping, dim: int, field: Field) -> tuple:
    zero = field.zero
    return tuple(vec.get(k, zero) for k in range(dim))


def bracket_eval(A: NAryBiHomAlgebra, *xs: Sequence) -> tuple:
    """Evaluate the bracket on ``n`` coordinate vectors by multilinearity."""
    if len(xs) != A.arity:
        raise DimensionMismatch("bracket takes %d arguments, got %d" % (A.arity, len(xs)))
    args = []
    for x in xs:
        if len(x) != A.dim:
            raise DimensionMismatch("argument of length %d in a %d-dimensional algebra" % (len(x), A.dim))
        args.append({k: A.field(v) for k, v in enumerate(x) if v})
    return dense(A.eval_sparse(args), A.dim, A.field)


def morphism_power(A: NAryBiHomAlgebra, s: int, r: int) -> Matrix:
    return A.morphism_power(s, r)


# -- axiom checks -----------------------------------------------------------

@dataclass
class AxiomReport:
    commuting: bool
    skew_failures: list = dc_field(default_factory=list)
    jacobi_failures: list = dc_field(default_factory=list)
    multiplicative: bool = True
    multiplicative_witness: tuple | None = None
    regular: bool = True

    @property
    def is_bihom_lie(self) -> bool:
        """Conditions 1-3 of the definition hold."""
        return self.commuting and not self.skew_failures and not self.jacobi_failures

    def to_json(self) -> dict:
        return {
            "bihom_lie": self.is_bihom_lie,
            "commuting": self.commuting,
            "skew_failures": [{"args": list(t), "perm": list(p)} for t, p in self.skew_failures],
            "jacobi_failures": [{"x": list(x), "y": list(y)} for x, y in self.jacobi_failures],
            "multiplicative": self.multiplicative,
            "multiplicative_witness": None if self.multiplicative_witness is None else {
                "map": self.multiplicative_witness[0], "args": list(self.multiplicative_witness[1])},
            "regular": self.regular,
        }


def check_commuting(A: NAryBiHomAlgebra) -> bool:
    return A.alpha @ A.beta == A.beta @ A.alpha


def _skew_tensor(A):
    n = A.arity
    return A.twisted([A.beta] * (n - 1) + [A.alpha])


def check_bihom_skew(A: NAryBiHomAlgebra) -> list:
    """All ``(basis tuple, sigma)`` where twisted skew-symmetry fails."""
    S = _skew_tensor(A)
    n = A.arity
    perms = [(p, permutation_sign(p)) for p in itertools.permutations(range(n))]
    failures = []
    for idx in A.index_tuples():
        lhs = S.get(idx, {})
        for p, sgn in perms:
            permuted = tuple(idx[p[k]] for k in range(n))
            rhs = S.get(permuted, {})
            if lhs.keys() != rhs.keys() or any(lhs[k] != sgn * rhs[k] for k in lhs):
                failures.append((idx, p))
    return failures


def jacobi_sides(A: NAryBiHomAlgebra) -> tuple[dict, dict]:
    """Both sides of the n-ary BiHom-Jacobi identity on all basis choices.

    Returns two sparse dicts keyed by ``(x, y)`` with ``x`` an
    ``(n-1)``-tuple and ``y`` an ``n``-tuple of basis indices.
    """
    n = A.arity
    S = _skew_tensor(A)
    b2 = A.beta @ A.beta
    B2 = A.twisted([b2] * (n - 1) + [None])
    by_last: dict = {}
    for idx, vec in B2.items():
        by_last.setdefault(idx[-1], []).append((idx[:-1], vec))

    lhs: dict = {}
    for y, inner in S.items():
        for k, a in inner.items():
            for x, vec in by_last.get(k, ()):
                acc = lhs.setdefault((x, y), {})
                _add_into(acc, vec, a)
    rhs: dict = {}
    for xy, inner in S.items():
        x, yk = xy[:-1], xy[-1]
        for j, a in inner.items():
            for rest, vec in by_last.get(j, ()):
                for pos in range(n):
                    y = rest[:pos] + (yk,) + rest[pos:]
                    sign = -1 if (n - pos - 1) % 2 else 1
                    acc = rhs.setdefault((x, y), {})
                    _add_into(acc, vec, sign * a)
    return lhs, rhs


def check_bihom_jacobi(A: NAryBiHomAlgebra) -> list:
    """All ``(x, y)`` basis choices where the BiHom-Jacobi identity fails."""
    lhs, rhs = jacobi_sides(A)
    failures = []
    for key in set(lhs) | set(rhs):
        a, b = lhs.get(key, {}), rhs.get(key, {})
        if any(a.get(k, 0) != b.get(k, 0) for k in set(a) | set(b)):
            failures.append(key)
    failures.sort()
    return failures


def multiplicative_witness(A: NAryBiHomAlgebra) -> tuple | None:
    """First ``(map name, basis tuple)`` where alpha or beta fails to be a morphism."""
    n = A.arity
    for name, m in (("alpha", A.alpha), ("beta", A.beta)):
        image = A.twisted([m] * n)
        for idx in A.index_tuples():
            lhs = {i: x for i, x in enumerate(m.apply(A.constant(idx))) if x}
            rhs = image.get(idx, {})
            if lhs.keys() != rhs.keys() or any(lhs[k] != rhs[k] for k in lhs):
                return (name, idx)
    return None


def check_multiplicative(A: NAryBiHomAlgebra) -> bool:
    return multiplicative_witness(A) is None


def check_regular(A: NAryBiHomAlgebra) -> bool:
    return check_multiplicative(A) and A.alpha.is_invertible() and A.beta.is_invertible()


def check_axioms(A: NAryBiHomAlgebra) -> AxiomReport:
    w = multiplicative_witness(A)
    return AxiomReport(
        commuting=check_commuting(A),
        skew_failures=check_bihom_skew(A),
        jacobi_failures=check_bihom_jacobi(A),
        multiplicative=w is None,
        multiplicative_witness=w,
        regular=w is None and A.alpha.is_invertible() and A.beta.is_invertible(),
    )


# -- subalgebras and ideals -------------------------------------------------

def _stable(m: Matrix, S: Subspace) -> bool:
    return all(contains(S, m.apply(v)) for v in S.basis)


def _check_sub(A, S):
    if S.ambient_dim != A.dim:
        raise AmbientMismatch("subspace of %d-space in a %d-dimensional algebra" % (S.ambient_dim, A.dim))


def is_subalgebra(A: NAryBiHomAlgebra, S: Subspace) -> bool:
    _check_sub(A, S)
    if not (_stable(A.alpha, S) and _stable(A.beta, S)):
        return False
    sp = [{k: x for k, x in enumerate(v) if x} for v in S.basis]
    for args in itertools.product(sp, repeat=A.arity):
        if not contains(S, dense(A.eval_sparse(args), A.dim, A.field)):
            return False
    return True


def is_ideal(A: NAryBiHomAlgebra, S: Subspace, strong: bool = False) -> bool:
    """Twist-stable with ``[S, .., S, g, S, ..] in S`` for the ``g`` slot anywhere.

    With ``strong=True`` only one slot is taken from ``S`` and all others
    range over the whole algebra.
    """
    _check_sub(A, S)
    if not (_stable(A.alpha, S) and _stable(A.beta, S)):
        return False
    n = A.arity
    sp = [{k: x for k, x in enumerate(v) if x} for v in S.basis]
    full = [{i: A.field.one} for i in range(A.dim)]
    for pos in range(n):
        slots = [full if (j != pos) == strong else sp for j in range(n)]
        for args in itertools.product(*slots):
            if not contains(S, dense(A.eval_sparse(args), A.dim, A.field)):
                return False
    return True


def restrict(A: NAryBiHomAlgebra, S: Subspace) -> NAryBiHomAlgebra:
    """The algebra induced on a subalgebra ``S`` in the coordinates of its RREF basis."""
    _check_sub(A, S)
    basis = S.basis
    sp = [{k: x for k, x in enumerate(v) if x} for v in basis]
    table = {}
    for idx in itertools.product(range(S.dim), repeat=A.arity):
        value = dense(A.eval_sparse([sp[i] for i in idx]), A.dim, A.field)
        c = coordinates(S, value)
        if any(c):
            table[idx] = c
    def restricted(m):
        cols = [coordinates(S, m.apply(v)) for v in basis]
        return Matrix.from_columns(cols, A.field) if cols else Matrix.zeros(0, 0, A.field)
    return NAryBiHomAlgebra(A.arity, S.dim, table, restricted(A.alpha), restricted(A.beta), A.field)
