"""Derivation-type subspaces of End(g) as exact nullspaces.

An endomorphism ``D`` of a ``d``-dimensional algebra is vectorised row-major:
unknown ``a*d + b`` is the entry ``D[a][b]`` (so ``D e_b = sum_a D[a][b] e_a``).
Systems with witness maps (quasiderivations, generalized derivations) are
solved jointly over ``(D, D', ..)`` and then projected onto the ``D`` block.

Throughout, ``P`` denotes the twist ``alpha^s beta^r`` of the cell ``(s, r)``.
"""

from __future__ import annotations

import itertools
from functools import cached_property
from dataclasses import dataclass, field as dc_field
from typing import NamedTuple, Sequence

from .algebra import NAryBiHomAlgebra, _add_into, bracket_eval, dense
from .linalg import Matrix, Subspace, contains, solve_homogeneous, span, subspace_project

KINDS = ("der", "qder", "gder", "c", "qc", "zder")


class SRIndex(NamedTuple):
    s: int
    r: int

    def __add__(self, other):
        return SRIndex(self.s + other.s, self.r + other.r)


def _sr(sr) -> SRIndex:
    sr = SRIndex(*sr)
    if sr.s < 0 or sr.r < 0:
        raise ValueError("(s, r) must be non-negative, got %r" % (tuple(sr),))
    return sr


@dataclass(frozen=True)
class WitnessedMap:
    D: Matrix
    witnesses: tuple = ()


@dataclass(frozen=True)
class EndoSubspace:
    """A space of endomorphisms of kind ``der``, ``qder``, ``gder``, ``c``, ``qc`` or ``zder``.

    For ``qder``/``gder`` the joint solution space over ``(D, witnesses..)``
    is kept so that witnesses can be reconstructed for any member.
    """

    kind: str
    sr: SRIndex
    algebra_dim: int
    space: Subspace
    joint: Subspace | None = dc_field(default=None, compare=False, repr=False)
    n_witnesses: int = dc_field(default=0, compare=False, repr=False)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def field(self):
        return self.space.field

    @cached_property
    def _matrices(self) -> tuple:
        d = self.algebra_dim
        return tuple(Matrix.from_vec(v, d, self.field) for v in self.space.basis)

    def matrices(self) -> list[Matrix]:
        return list(self._matrices)

    def contains(self, D: Matrix) -> bool:
        return contains(self.space, D.vec())

    def witness(self, D: Matrix) -> WitnessedMap:
        """One compatible family of witness maps for a member ``D``."""
        if self.joint is None:
            return WitnessedMap(D, ())
        d2 = self.algebra_dim ** 2
        v = D.vec()
        if not contains(self.space, v):
            raise ValueError("map is not a member of this %s space" % self.kind)
        zero = self.field.zero
        total = [zero] * (d2 * self.n_witnesses)
        for row in self.joint.basis:
            p = next(k for k, x in enumerate(row) if x)
            if p >= d2:
                break
            c = v[p]
            if c:
                for k in range(d2, len(row)):
                    if row[k]:
                        total[k - d2] += c * row[k]
        ws = tuple(Matrix.from_vec(total[i * d2:(i + 1) * d2], self.algebra_dim, self.field)
                   for i in range(self.n_witnesses))
        return WitnessedMap(D, ws)


# -- system assembly --------------------------------------------------------

class _Assembler:
    """Shared per-(algebra, P) data for building the linear systems."""

    def __init__(self, A: NAryBiHomAlgebra, sr: SRIndex):
        self.A = A
        self.d = A.dim
        self.n = A.arity
        P = A.morphism_power(sr.s, sr.r)
        self.P = P
        # slot k carries the unknown map, every other slot carries P
        self.ins = [A.twisted([None if j == k else P for j in range(self.n)]) for k in range(self.n)]

    def bracket_term(self, idx, off: int) -> list[dict]:
        """Components of ``D[e_idx]`` for the map stored at ``off``."""
        d = self.d
        expr = [dict() for _ in range(d)]
        for b, x in self.A.table().get(idx, {}).items():
            for c in range(d):
                expr[c][off + c * d + b] = x
        return expr

    def insertion_term(self, idx, k: int, off: int) -> list[dict]:
        """Components of ``[P e_i1, .., D e_ik, .., P e_in]`` for the map at ``off``."""
        d = self.d
        expr = [dict() for _ in range(d)]
        T = self.ins[k]
        col = idx[k]
        for a in range(d):
            vec = T.get(idx[:k] + (a,) + idx[k + 1:])
            if vec:
                for c, x in vec.items():
                    expr[c][off + a * d + col] = x
        return expr

    def commute_rows(self, M: Matrix, off: int) -> list[dict]:
        """``D M - M D = 0`` for the map at ``off``."""
        d = self.d
        rows = []
        for i in range(d):
            for j in range(d):
                row: dict = {}
                for k in range(d):
                    if M.data[k][j]:
                        _add_into(row, {off + i * d + k: M.data[k][j]})
                    if M.data[i][k]:
                        _add_into(row, {off + k * d + j: M.data[i][k]}, -1)
                if row:
                    rows.append(row)
        return rows

    def commuting(self, offsets: Sequence[int]) -> list[dict]:
        rows = []
        for off in offsets:
            rows += self.commute_rows(self.A.alpha, off)
            rows += self.commute_rows(self.A.beta, off)
        return rows


def _combine(*terms) -> list[dict]:
    """Sum of ``(sign, expr)`` pairs, component-wise."""
    d = len(terms[0][1])
    out = [dict() for _ in range(d)]
    for sign, expr in terms:
        for c in range(d):
            _add_into(out[c], expr[c], sign)
    return out


def _nonzero(exprs):
    for expr in exprs:
        for row in expr:
            if row:
                yield row


def _solve(A, rows, nvars) -> Subspace:
    return solve_homogeneous(rows, nvars, A.field)


def der(A: NAryBiHomAlgebra, sr=(0, 0)) -> EndoSubspace:
    """(alpha^s, beta^r)-derivations."""
    sr = _sr(sr)
    asm = _Assembler(A, sr)
    n, d2 = A.arity, A.dim ** 2
    def exprs():
        for idx in A.index_tuples():
            yield _combine((1, asm.bracket_term(idx, 0)), *[(-1, asm.insertion_term(idx, k, 0)) for k in range(n)])
    rows = itertools.chain(asm.commuting([0]), _nonzero(exprs()))
    return EndoSubspace("der", sr, A.dim, _solve(A, rows, d2))


def qder(A: NAryBiHomAlgebra, sr=(0, 0)) -> EndoSubspace:
    """Quasiderivations: ``D'[x..] = sum_k [P x.., D x_k, .., P x..]`` for some ``D'``."""
    sr = _sr(sr)
    asm = _Assembler(A, sr)
    n, d2 = A.arity, A.dim ** 2
    def exprs():
        for idx in A.index_tuples():
            yield _combine((1, asm.bracket_term(idx, d2)), *[(-1, asm.insertion_term(idx, k, 0)) for k in range(n)])
    rows = itertools.chain(asm.commuting([0, d2]), _nonzero(exprs()))
    joint = _solve(A, rows, 2 * d2)
    return EndoSubspace("qder", sr, A.dim, subspace_project(joint, range(d2)), joint, 1)


def gder(A: NAryBiHomAlgebra, sr=(0, 0)) -> EndoSubspace:
    """Generalized derivations with witnesses ``D^(1) .. D^(n)``.

    ``D^(n)[x_1..x_n] = [D x_1, P x_2, ..] + sum_{k>=2} [P x_1, .., D^(k-1) x_k, ..]``.
    """
    sr = _sr(sr)
    asm = _Assembler(A, sr)
    n, d2 = A.arity, A.dim ** 2
    def exprs():
        for idx in A.index_tuples():
            terms = [(1, asm.bracket_term(idx, n * d2)), (-1, asm.insertion_term(idx, 0, 0))]
            terms += [(-1, asm.insertion_term(idx, k, k * d2)) for k in range(1, n)]
            yield _combine(*terms)
    rows = itertools.chain(asm.commuting([i * d2 for i in range(n + 1)]), _nonzero(exprs()))
    joint = _solve(A, rows, (n + 1) * d2)
    return EndoSubspace("gder", sr, A.dim, subspace_project(joint, range(d2)), joint, n)


def centroid(A: NAryBiHomAlgebra, sr=(0, 0), strict_commuting: bool = True) -> EndoSubspace:
    """Maps with ``D[x..] = [P x.., D x_k, .., P x..]`` for every slot ``k``."""
    sr = _sr(sr)
    asm = _Assembler(A, sr)
    def exprs():
        for idx in A.index_tuples():
            b = asm.bracket_term(idx, 0)
            for k in range(A.arity):
                yield _combine((1, b), (-1, asm.insertion_term(idx, k, 0)))
    rows = itertools.chain(asm.commuting([0]) if strict_commuting else [], _nonzero(exprs()))
    return EndoSubspace("c", sr, A.dim, _solve(A, rows, A.dim ** 2))


def qcentroid(A: NAryBiHomAlgebra, sr=(0, 0), strict_commuting: bool = True) -> EndoSubspace:
    """Maps whose first-slot insertion equals the insertion in every other slot."""
    sr = _sr(sr)
    asm = _Assembler(A, sr)
    def exprs():
        for idx in A.index_tuples():
            first = asm.insertion_term(idx, 0, 0)
            for k in range(1, A.arity):
                yield _combine((1, first), (-1, asm.insertion_term(idx, k, 0)))
    rows = itertools.chain(asm.commuting([0]) if strict_commuting else [], _nonzero(exprs()))
    return EndoSubspace("qc", sr, A.dim, _solve(A, rows, A.dim ** 2))


def zder(A: NAryBiHomAlgebra, sr=(0, 0), strict_commuting: bool = True) -> EndoSubspace:
    """Central derivations: ``D`` kills every bracket and every single-slot insertion."""
    sr = _sr(sr)
    asm = _Assembler(A, sr)
    def exprs():
        for idx in A.index_tuples():
            yield asm.bracket_term(idx, 0)
            for k in range(A.arity):
                yield asm.insertion_term(idx, k, 0)
    rows = itertools.chain(asm.commuting([0]) if strict_commuting else [], _nonzero(exprs()))
    return EndoSubspace("zder", sr, A.dim, _solve(A, rows, A.dim ** 2))


def compute(A: NAryBiHomAlgebra, kind: str, sr=(0, 0), strict_commuting: bool = True) -> EndoSubspace:
    if kind == "der":
        return der(A, sr)
    if kind == "qder":
        return qder(A, sr)
    if kind == "gder":
        return gder(A, sr)
    if kind == "c":
        return centroid(A, sr, strict_commuting)
    if kind == "qc":
        return qcentroid(A, sr, strict_commuting)
    if kind == "zder":
        return zder(A, sr, strict_commuting)
    raise ValueError("unknown space kind %r (expected one of %s)" % (kind, ", ".join(KINDS)))


class SpaceCache:
    """Memoises ``compute`` per ``(kind, sr)`` for one algebra."""

    def __init__(self, A: NAryBiHomAlgebra, strict_commuting: bool = True):
        self.A = A
        self.strict_commuting = strict_commuting
        self._spaces: dict = {}

    def __call__(self, kind: str, sr) -> EndoSubspace:
        key = (kind, _sr(sr))
        if key not in self._spaces:
            self._spaces[key] = compute(self.A, kind, key[1], self.strict_commuting)
        return self._spaces[key]


# -- element subspaces ------------------------------------------------------

def center(A: NAryBiHomAlgebra, strict_all_slots: bool = True) -> Subspace:
    """Elements ``u`` with ``[u, x_1, .., x_{n-1}] = 0``; with ``strict_all_slots``
    ``u`` must vanish in every slot position."""
    n, d = A.arity, A.dim
    T = A.table()
    rows = []
    for pos in range(n if strict_all_slots else 1):
        for rest in itertools.product(range(d), repeat=n - 1):
            expr = [dict() for _ in range(d)]
            for u in range(d):
                for c, x in T.get(rest[:pos] + (u,) + rest[pos:], {}).items():
                    expr[c][u] = x
            rows += [r for r in expr if r]
    return solve_homogeneous(rows, d, A.field)


def ab_center(A: NAryBiHomAlgebra) -> Subspace:
    """Elements ``u`` with ``[u, alpha beta x_1, .., alpha beta x_{n-1}] = 0``."""
    n, d = A.arity, A.dim
    ab = A.alpha @ A.beta
    T = A.twisted([None] + [ab] * (n - 1))
    rows = []
    for rest in itertools.product(range(d), repeat=n - 1):
        expr = [dict() for _ in range(d)]
        for u in range(d):
            for c, x in T.get((u,) + rest, {}).items():
                expr[c][u] = x
        rows += [r for r in expr if r]
    return solve_homogeneous(rows, d, A.field)


def derived_subalgebra(A: NAryBiHomAlgebra) -> Subspace:
    """Span of all brackets of basis vectors."""
    return span(A.bracket.values(), A.dim, A.field)


# -- graded grids -----------------------------------------------------------

def power_period(M: Matrix, limit: int = 64) -> tuple[int, int] | None:
    """``(start, period)`` with ``M^(start+period) == M^start``, if found within ``limit`` powers."""
    seen = {}
    P = Matrix.identity(M.nrows, M.field)
    for k in range(limit + 1):
        if P in seen:
            return seen[P], k - seen[P]
        seen[P] = k
        P = P @ M
    return None


@dataclass
class GradedGrid:
    kind: str
    cells: list
    alpha_period: tuple | None
    beta_period: tuple | None

    @property
    def exhaustive(self) -> bool:
        """True when every ``(s, r)`` has the same twist as some cell in the window."""
        if self.alpha_period is None or self.beta_period is None:
            return False
        s_max = max(c.sr.s for c in self.cells)
        r_max = max(c.sr.r for c in self.cells)
        return s_max >= sum(self.alpha_period) - 1 and r_max >= sum(self.beta_period) - 1


def graded_space(A: NAryBiHomAlgebra, kind: str, s_max: int, r_max: int,
                 strict_commuting: bool = True) -> GradedGrid:
    if s_max < 0 or r_max < 0:
        raise ValueError("window bounds must be non-negative")
    cells = [compute(A, kind, (s, r), strict_commuting) for s in range(s_max + 1) for r in range(r_max + 1)]
    return GradedGrid(kind, cells, power_period(A.alpha), power_period(A.beta))


# -- independent re-verification --------------------------------------------

def _vsum(vs, zero):
    return tuple(sum(col, zero) for col in zip(*vs))


def residual(A: NAryBiHomAlgebra, kind: str, sr, D: Matrix, witnesses: Sequence[Matrix] = (),
             strict_commuting: bool = True):
    """First basis tuple where ``D`` (with witnesses) violates its defining identity.

    Evaluates both sides by multilinear expansion of the bracket table and
    matrix application, independently of the system assembly above.  Returns ``None`` when the
    identity holds everywhere, ``"commuting"`` when a commutation fails.
    """
    sr = _sr(sr)
    P = A.morphism_power(sr.s, sr.r)
    n, d = A.arity, A.dim
    zero = A.field.zero
    maps = [D] + list(witnesses)
    needs_commuting = kind in ("der", "qder", "gder") or strict_commuting
    if needs_commuting:
        for M in maps:
            if M @ A.alpha != A.alpha @ M or M @ A.beta != A.beta @ M:
                return "commuting"
    if kind not in KINDS:
        raise ValueError("unknown space kind %r" % kind)
    # images of basis vectors (matrix columns), kept sparse for the bracket evaluator
    def sparse_cols(M):
        return [{k: x for k, x in enumerate(M.column(i)) if x} for i in range(d)]
    Pc = sparse_cols(P)
    cols = [sparse_cols(M) for M in maps]

    def insert(Mc, idx, k):
        args = [Pc[i] for i in idx]
        args[k] = Mc[idx[k]]
        return dense(A.eval_sparse(args), d, A.field)

    for idx in A.index_tuples():
        br = bracket_eval(A, *(A.basis_vector(i) for i in idx))
        if kind == "gder":
            terms = [insert(cols[0], idx, 0)] + [insert(cols[k], idx, k) for k in range(1, n)]
            ok = witnesses[n - 1].apply(br) == _vsum(terms, zero)
            if not ok:
                return idx
            continue
        ins = [insert(cols[0], idx, k) for k in range(n)]
        if kind == "der":
            ok = D.apply(br) == _vsum(ins, zero)
        elif kind == "qder":
            ok = witnesses[0].apply(br) == _vsum(ins, zero)
        elif kind == "c":
            Db = D.apply(br)
            ok = all(Db == t for t in ins)
        elif kind == "qc":
            ok = all(ins[0] == t for t in ins)
        else:  # zder
            ok = not any(D.apply(br)) and not any(x for t in ins for x in t)
        if not ok:
            return idx
    return None


def reverify(A: NAryBiHomAlgebra, space: EndoSubspace, strict_commuting: bool = True) -> list:
    """Basis elements of ``space`` failing :func:`residual`, as ``(index, failure)`` pairs."""
    bad = []
    for i, D in enumerate(space.matrices()):
        wm = space.witness(D)
        res = residual(A, space.kind, space.sr, D, wm.witnesses, strict_commuting)
        if res is not None:
            bad.append((i, res))
    return bad
