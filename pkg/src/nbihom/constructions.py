"""Algebra constructions: twist induction, derivation extension, t-extension,
trace induction of an (n+1)-ary bracket, and external direct sums."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import NAryBiHomAlgebra, check_axioms, check_commuting, dense, _add_into
from .errors import ArityMismatch, DimensionMismatch, InvalidTrace, NonCommutingTwists
from .linalg import Matrix, Subspace, contains, solve_homogeneous, span
from .spaces import EndoSubspace, WitnessedMap, derived_subalgebra, residual, _sr


def _block_diag(a: Matrix, b: Matrix) -> Matrix:
    zero = a.field.zero
    rows = [r + (zero,) * b.ncols for r in a.data]
    rows += [(zero,) * a.ncols + r for r in b.data]
    return Matrix(a.field, rows, a.ncols + b.ncols)


def is_nlie(L: NAryBiHomAlgebra) -> bool:
    """Skew-symmetry and the Filippov identity, i.e. the axioms with alpha = beta = id."""
    I = Matrix.identity(L.dim, L.field)
    return check_axioms(L.replace(alpha=I, beta=I)).is_bihom_lie


def induce_from_nlie(L: NAryBiHomAlgebra, alpha: Matrix, beta: Matrix) -> NAryBiHomAlgebra:
    """``[x_1..x_n]' = [alpha x_1, .., alpha x_{n-1}, beta x_n]`` with twists alpha, beta.

    Only the bracket of ``L`` is used.  The caller is responsible for ``L``
    being n-Lie and alpha, beta being morphisms of it (see :func:`is_nlie`).
    """
    if alpha @ beta != beta @ alpha:
        raise NonCommutingTwists("alpha and beta do not commute")
    n = L.arity
    bare = L.replace(alpha=Matrix.identity(L.dim, L.field), beta=Matrix.identity(L.dim, L.field))
    table = bare.twisted([alpha] * (n - 1) + [beta])
    return NAryBiHomAlgebra(n, L.dim, table, alpha, beta, L.field)


def derivation_extension(A: NAryBiHomAlgebra, D: Matrix) -> NAryBiHomAlgebra:
    """The algebra on ``g + K D`` (new last coordinate) with ``[u, D] = D(u)``.

    ``[D, v]`` is forced by twisted skew-symmetry: ``[D, alpha u] = -D(beta u)``,
    i.e. ``[D, v] = -D beta alpha^{-1} (v)``; this needs alpha invertible.
    ``[D, D] = 0`` and both twists fix the new coordinate.
    """
    if A.arity != 2:
        raise ArityMismatch("derivation extension is defined for binary algebras only")
    d, F = A.dim, A.field
    if (D.nrows, D.ncols) != (d, d):
        raise DimensionMismatch("D must be %dx%d" % (d, d))
    if not A.alpha.is_invertible():
        raise DimensionMismatch("derivation extension needs an invertible alpha")
    left = D @ A.beta @ A.alpha.inverse()
    zero = F.zero
    table = {idx: dense(v, d, F) + (zero,) for idx, v in A.table().items()}
    for u in range(d):
        col = D.column(u)
        if any(col):
            table[(u, d)] = col + (zero,)
        col = left.column(u)
        if any(col):
            table[(d, u)] = tuple(-x for x in col) + (zero,)
    one = Matrix(F, [[1]])
    return NAryBiHomAlgebra(2, d + 1, table, _block_diag(A.alpha, one), _block_diag(A.beta, one), F)


def direct_sum(A: NAryBiHomAlgebra, B: NAryBiHomAlgebra) -> NAryBiHomAlgebra:
    """External direct product: block-diagonal tensors and twists."""
    if A.arity != B.arity or A.field != B.field:
        raise ArityMismatch("direct sum needs equal arity and field")
    table = {}
    for idx, v in A.table().items():
        table[idx] = dict(v)
    for idx, v in B.table().items():
        table[tuple(i + A.dim for i in idx)] = {k + A.dim: x for k, x in v.items()}
    return NAryBiHomAlgebra(A.arity, A.dim + B.dim, table,
                            _block_diag(A.alpha, B.alpha), _block_diag(A.beta, B.beta), A.field)


# -- t-extension ------------------------------------------------------------

@dataclass(frozen=True)
class TExtension:
    """``g t + g t^n``: coordinates ``[0, d)`` carry ``t``, ``[d, 2d)`` carry ``t^n``.

    ``projection`` maps ``g`` onto the derived subalgebra along ``complement_U``.
    When ``invariant`` is set it commutes with alpha and beta, which is what
    makes ``phi(D)`` commute with the extended twists.
    """

    base: NAryBiHomAlgebra
    extended: NAryBiHomAlgebra
    derived: Subspace
    complement_U: Subspace
    projection: Matrix
    invariant: bool

    @property
    def t_block(self) -> range:
        return range(0, self.base.dim)

    @property
    def tn_block(self) -> range:
        return range(self.base.dim, 2 * self.base.dim)

    def grading_json(self) -> dict:
        d, F = self.base.dim, self.base.field
        return {"t_block": [0, d], "tn_block": [d, 2 * d],
                "U": [[F.format(x) for x in v] for v in self.complement_U.basis],
                "invariant_complement": self.invariant}


def _commutes(P: Matrix, A: NAryBiHomAlgebra) -> bool:
    return P @ A.alpha == A.alpha @ P and P @ A.beta == A.beta @ P


def coordinate_projection(B: Subspace) -> Matrix:
    """Projection onto ``B`` along the span of its non-pivot coordinate vectors."""
    d, F = B.ambient_dim, B.field
    zero = (F.zero,) * d
    by_pivot = dict(zip(B.pivots, B.basis))
    return Matrix.from_columns([by_pivot.get(j, zero) for j in range(d)], F)


def invariant_projection(A: NAryBiHomAlgebra, B: Subspace) -> Matrix | None:
    """A projection onto ``B`` commuting with alpha and beta, if one exists.

    Solves the linear system ``pi(b) = lam b`` on ``B``, ``im pi <= B``,
    ``pi alpha = alpha pi``, ``pi beta = beta pi`` in the unknowns
    ``(lam, pi)`` and normalises ``lam = 1``.  Column 0 is ``lam`` so the
    canonical basis makes the choice deterministic.
    """
    d, F = A.dim, A.field
    var = lambda a, b: 1 + a * d + b
    rows = []
    # annihilator of B: covectors c with c . b = 0
    ann = solve_homogeneous([{j: x for j, x in enumerate(b) if x} for b in B.basis], d, F)
    for c in ann.basis:
        for j in range(d):
            row = {var(a, j): c[a] for a in range(d) if c[a]}
            if row:
                rows.append(row)
    for b in B.basis:
        for a in range(d):
            row = {var(a, j): b[j] for j in range(d) if b[j]}
            if b[a]:
                row[0] = -b[a]
            if row:
                rows.append(row)
    for M in (A.alpha, A.beta):
        for a in range(d):
            for b in range(d):
                row: dict = {}
                for k in range(d):  # (pi M - M pi)[a][b]
                    if M.data[k][b]:
                        _add_into(row, {var(a, k): M.data[k][b]})
                    if M.data[a][k]:
                        _add_into(row, {var(k, b): -M.data[a][k]})
                if row:
                    rows.append(row)
    sol = solve_homogeneous(rows, 1 + d * d, F)
    if not sol.basis or not sol.basis[0][0]:
        return None
    v = sol.basis[0]
    return Matrix.from_vec(v[1:], d, F).scale(F.one / v[0])


def t_extension(A: NAryBiHomAlgebra) -> TExtension:
    d, F = A.dim, A.field
    table = {idx: {k + d: x for k, x in v.items()} for idx, v in A.table().items()}
    ext = NAryBiHomAlgebra(A.arity, 2 * d, table,
                           _block_diag(A.alpha, A.alpha), _block_diag(A.beta, A.beta), F)
    B = derived_subalgebra(A)
    proj = coordinate_projection(B)
    invariant = _commutes(proj, A)
    if not invariant:
        found = invariant_projection(A, B)
        if found is not None:
            proj, invariant = found, True
    I = Matrix.identity(d, F)
    U = span([(I - proj).column(j) for j in range(d)], d, F)
    return TExtension(A, ext, B, U, proj, invariant)


def phi_embed(T: TExtension, W: WitnessedMap) -> Matrix:
    """``phi(D)(a t + u t^n + b t^n) = D(a) t + D'(b) t^n`` with ``u`` in U, ``b`` in the derived part."""
    A = T.base
    d, F = A.dim, A.field
    D = W.D
    Dp = W.witnesses[0] if W.witnesses else Matrix.zeros(d, d, F)
    lower = Dp @ T.projection
    rows = [D.data[i] + (F.zero,) * d for i in range(d)]
    rows += [(F.zero,) * d + lower.data[i] for i in range(d)]
    return Matrix(F, rows, 2 * d)


# -- trace induction --------------------------------------------------------

def trace_constraints(A: NAryBiHomAlgebra) -> dict:
    """The four families of linear conditions on a covector ``tau``, as sparse rows.

    ``trace``: tau kills every ``[beta x_1, .., beta x_{n-1}, alpha x_n]``;
    ``alpha``/``beta``: ``tau o alpha = tau``, ``tau o beta = tau``;
    ``pair``: ``tau(alpha x) beta(y) = tau(beta x) alpha(y)`` on basis pairs.
    """
    n, d = A.arity, A.dim
    al, be = A.alpha, A.beta
    S = A.twisted([be] * (n - 1) + [al])
    out = {"trace": [dict(v) for v in S.values()]}
    for name, M in (("alpha", al), ("beta", be)):
        rows = []
        for j in range(d):
            row = {i: M.data[i][j] for i in range(d) if M.data[i][j]}
            _add_into(row, {j: A.field.one}, -1)
            if row:
                rows.append(row)
        out[name] = rows
    pair = []
    for i in range(d):
        for j in range(d):
            for c in range(d):
                row = {}
                for k in range(d):
                    x = al.data[k][i] * be.data[c][j] - be.data[k][i] * al.data[c][j]
                    if x:
                        row[k] = x
                if row:
                    pair.append(row)
    out["pair"] = pair
    return out


def twisted_trace_space(A: NAryBiHomAlgebra) -> Subspace:
    """Covectors satisfying all four constraint families."""
    rows = [r for fam in trace_constraints(A).values() for r in fam]
    return solve_homogeneous(rows, A.dim, A.field)


def trace_redundancy(A: NAryBiHomAlgebra) -> dict:
    """For each constraint family, whether it is implied by the other three."""
    fams = trace_constraints(A)
    d = A.dim
    def row_space(rows):
        return span([dense(r, d, A.field) for r in rows], d, A.field)
    out = {}
    for name, rows in fams.items():
        others = [r for k, fam in fams.items() if k != name for r in fam]
        out[name] = row_space(rows) <= row_space(others)
    return out


def tau_induce(A: NAryBiHomAlgebra, tau, override: bool = False) -> NAryBiHomAlgebra:
    """``[x_1..x_{n+1}]_tau = sum_i (-1)^(i-1) tau(x_i) [x_1..^x_i..x_{n+1}]``."""
    F = A.field
    tau = tuple(F(x) for x in tau)
    if len(tau) != A.dim:
        raise DimensionMismatch("tau has length %d, algebra has dimension %d" % (len(tau), A.dim))
    if not override and not contains(twisted_trace_space(A), tau):
        raise InvalidTrace("tau is not an (alpha, beta)-twisted trace satisfying the induction conditions")
    n = A.arity
    table: dict = {}
    for idx, vec in A.table().items():
        for pos in range(n + 1):
            sign = -1 if pos % 2 else 1
            for i, t in enumerate(tau):
                if t:
                    new = idx[:pos] + (i,) + idx[pos:]
                    acc = table.setdefault(new, {})
                    _add_into(acc, vec, sign * t)
                    if not acc:
                        del table[new]
    return NAryBiHomAlgebra(n + 1, A.dim, table, A.alpha, A.beta, F)


@dataclass
class TransferResult:
    condition_holds: bool
    is_induced_derivation: bool
    condition_witness: tuple | None = None
    derivation_witness: object = None


def derivation_transfer_check(A: NAryBiHomAlgebra, tau, D: Matrix, sr=(0, 0),
                              induced_der: EndoSubspace | None = None) -> TransferResult:
    """Check ``sum_i (-1)^(i-1) P(tau(D x_i) [x_1..^x_i..x_{n+1}]) = 0`` on basis tuples,
    and independently whether ``D`` is an (alpha^s, beta^r)-derivation of the
    tau-induced algebra.

    The second test re-evaluates the Leibniz rule tuple by tuple; pass the
    ``der`` space of the induced algebra as ``induced_der`` to use a
    membership test instead (much faster when checking many maps).
    """
    sr = _sr(sr)
    F = A.field
    tau = tuple(F(x) for x in tau)
    P = A.morphism_power(sr.s, sr.r)
    n, d = A.arity, A.dim
    tD = [sum((tau[k] * D.data[k][j] for k in range(d)), F.zero) for j in range(d)]  # tau o D
    witness = None
    for idx in itertools.product(range(d), repeat=n + 1):
        acc: dict = {}
        for pos in range(n + 1):
            c = tD[idx[pos]]
            if not c:
                continue
            vec = A.table().get(idx[:pos] + idx[pos + 1:])
            if vec:
                _add_into(acc, vec, -c if pos % 2 else c)
        if acc and any(P.apply(dense(acc, d, F))):
            witness = idx
            break
    if induced_der is not None:
        ok = induced_der.contains(D)
        return TransferResult(witness is None, ok, witness, None if ok else "not in der")
    induced = tau_induce(A, tau, override=True)
    res = residual(induced, "der", sr, D)
    return TransferResult(witness is None, res is None, witness, res)
