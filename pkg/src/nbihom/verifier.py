"""Machine checks of the structural results on concrete algebras.

Every check returns a :class:`TheoremReport`.  A check whose hypotheses fail
on the instance is ``skipped``; a ``fail`` with all hypotheses satisfied is
a genuine discrepancy and always carries a witness that reproduces it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from . import spaces as sp
from .algebra import NAryBiHomAlgebra, check_axioms, is_ideal, restrict
from .constructions import (derivation_extension, phi_embed, t_extension, tau_induce,
                            twisted_trace_space, derivation_transfer_check)
from .errors import NotAnIdeal, NotComplementary
from .linalg import Matrix, Subspace, coordinates, span
from .serialize import matrix_to_json
from .spaces import SRIndex


@dataclass
class TheoremReport:
    theorem_id: str
    hypotheses_checked: list = dc_field(default_factory=list)
    conclusion: str = "pass"
    witness: object = None
    details: dict = dc_field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return self.conclusion == "fail"

    def to_json(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "hypotheses_checked": [[name, ok] for name, ok in self.hypotheses_checked],
            "conclusion": self.conclusion,
            "witness": self.witness,
            "details": self.details,
        }


def window(s_max: int, r_max: int) -> list[SRIndex]:
    """All cells ``(s, r)`` with ``s <= s_max`` and ``r <= r_max`` (s-major)."""
    return [SRIndex(s, r) for s in range(s_max + 1) for r in range(r_max + 1)]


class Context:
    """Per-algebra cache of axiom results and computed spaces."""

    def __init__(self, A: NAryBiHomAlgebra, strict_commuting: bool = True, strict_all_slots: bool = True):
        self.A = A
        self.strict_commuting = strict_commuting
        self.strict_all_slots = strict_all_slots
        self.space = sp.SpaceCache(A, strict_commuting)
        self._axioms = None
        self._center = None

    @property
    def axioms(self):
        if self._axioms is None:
            self._axioms = check_axioms(self.A)
        return self._axioms

    @property
    def center(self) -> Subspace:
        if self._center is None:
            self._center = sp.center(self.A, self.strict_all_slots)
        return self._center

    def hyp(self, name: str) -> tuple[str, bool]:
        A = self.A
        char = A.field.characteristic
        value = {
            "bihom_lie": lambda: self.axioms.is_bihom_lie,
            "multiplicative": lambda: self.axioms.multiplicative,
            "regular": lambda: self.axioms.regular,
            "trivial_center": lambda: self.center.dim == 0,
            "char_coprime_to_n": lambda: char == 0 or A.arity % char != 0,
            "char_coprime_to_n_minus_1": lambda: char == 0 or (A.arity - 1) % char != 0,
            "binary": lambda: A.arity == 2,
            "alpha_invertible": lambda: A.alpha.is_invertible(),
        }[name]()
        return name, bool(value)


def _ctx(A, ctx) -> Context:
    return ctx if ctx is not None and ctx.A is A else Context(A)


def _cells(win) -> list[SRIndex]:
    return [SRIndex(*c) for c in win]


# Every space depends on its cell only through P = alpha^s beta^r, so cells
# (and cell pairs) with the same twist matrices are checked once.

def _distinct_cells(A, cells) -> list[SRIndex]:
    seen, out = set(), []
    for c in cells:
        key = A.morphism_power(*c)
        if key not in seen:
            seen.add(key)
            out.append(c)
    return out


def _distinct_pairs(A, cells) -> list[tuple[SRIndex, SRIndex]]:
    seen, out = set(), []
    for c1, c2 in itertools.product(cells, repeat=2):
        key = (A.morphism_power(*c1), A.morphism_power(*c2), A.morphism_power(*(c1 + c2)))
        if key not in seen:
            seen.add(key)
            out.append((c1, c2))
    return out


def _run(theorem_id: str, ctx: Context, hyps: Sequence, body) -> TheoremReport:
    """``hyps`` holds names known to :meth:`Context.hyp` or ready ``(name, bool)`` pairs."""
    checked = [h if isinstance(h, tuple) else ctx.hyp(h) for h in hyps]
    if not all(ok for _, ok in checked):
        return TheoremReport(theorem_id, checked, "skipped")
    witness, details = body()
    return TheoremReport(theorem_id, checked, "pass" if witness is None else "fail", witness, details)


def _bracket(D: Matrix, E: Matrix) -> Matrix:
    return D @ E - E @ D


def _mj(M: Matrix) -> list:
    return matrix_to_json(M)


def _membership(part, pairs, target_of, member_of) -> tuple | None:
    """First ``(D, E)`` whose combination misses its target space."""
    for c1, c2, D, E, X in pairs:
        target = target_of(c1, c2)
        if not member_of(target, X):
            return {"part": part, "cells": [list(c1), list(c2)], "D": _mj(D), "E": _mj(E),
                    "result": _mj(X), "target": [target.kind, list(target.sr)]}
    return None


# -- spaces-module invariants -----------------------------------------------

def check_tower(A, win, ctx=None) -> TheoremReport:
    """``Der <= QDer <= GDer`` in every cell."""
    ctx = _ctx(A, ctx)
    def body():
        for c in _distinct_cells(A, _cells(win)):
            for lo, hi in (("der", "qder"), ("qder", "gder")):
                a, b = ctx.space(lo, c), ctx.space(hi, c)
                for D in a.matrices():
                    if not b.contains(D):
                        return {"cell": list(c), "part": "%s<=%s" % (lo, hi), "D": _mj(D)}, {}
        return None, {}
    return _run("tower", ctx, ["bihom_lie"], body)


def check_der_commutator(A, win, ctx=None) -> TheoremReport:
    """``[Der_(s,r), Der_(s',r')] <= Der_(s+s',r+r')``."""
    ctx = _ctx(A, ctx)
    cells = _cells(win)
    def body():
        pairs = ((c1, c2, D, E, _bracket(D, E))
                 for c1, c2 in _distinct_pairs(A, cells)
                 for D in ctx.space("der", c1).matrices() for E in ctx.space("der", c2).matrices())
        w = _membership("[Der,Der]<=Der", pairs, lambda a, b: ctx.space("der", a + b), lambda t, X: t.contains(X))
        return w, {}
    return _run("der-commutator", ctx, ["bihom_lie"], body)


# -- first lemma: Der and the centroid --------------------------------------

def check_der_c_lemma(A, win, ctx=None) -> TheoremReport:
    """``[Der, C] <= C`` and ``C o Der <= Der`` (compositions ``D' D``)."""
    ctx = _ctx(A, ctx)
    cells = _cells(win)
    def body():
        def pairs(op):
            for c1, c2 in _distinct_pairs(A, cells):
                for D in ctx.space("der", c1).matrices():
                    for E in ctx.space("c", c2).matrices():
                        yield c1, c2, D, E, op(D, E)
        contains = lambda t, X: t.contains(X)
        w = _membership("[Der,C]<=C", pairs(_bracket), lambda a, b: ctx.space("c", a + b), contains)
        if w is None:
            w = _membership("C.Der<=Der", pairs(lambda D, E: E @ D), lambda a, b: ctx.space("der", a + b), contains)
        notes = {"note": "the second part is checked as closure of compositions D'D with D' in C, D in Der"}
        return w, notes
    return _run("lemma-der-c", ctx, ["bihom_lie"], body)


def check_qder_lemma(A, win, ctx=None) -> TheoremReport:
    """``[QDer, QC] <= QC``, ``C <= QDer``, ``[QC, QC] <= QDer``, ``QDer + QC <= GDer``."""
    ctx = _ctx(A, ctx)
    cells = _cells(win)
    def body():
        contains = lambda t, X: t.contains(X)
        def pairs(k1, k2, op):
            for c1, c2 in _distinct_pairs(A, cells):
                for D in ctx.space(k1, c1).matrices():
                    for E in ctx.space(k2, c2).matrices():
                        yield c1, c2, D, E, op(D, E)
        w = _membership("[QDer,QC]<=QC", pairs("qder", "qc", _bracket), lambda a, b: ctx.space("qc", a + b), contains)
        if w is None:
            w = _membership("[QC,QC]<=QDer", pairs("qc", "qc", _bracket), lambda a, b: ctx.space("qder", a + b), contains)
        if w is None:
            for c in _distinct_cells(A, cells):
                for lo, hi in (("c", "qder"), ("qder", "gder"), ("qc", "gder")):
                    for D in ctx.space(lo, c).matrices():
                        if not ctx.space(hi, c).contains(D):
                            return {"part": "%s<=%s" % (lo, hi), "cell": list(c), "D": _mj(D)}, {}
        return w, {}
    return _run("lemma-qder", ctx, ["bihom_lie", "multiplicative"], body)


def check_zder_identity(A, sr=(0, 0), ctx=None) -> TheoremReport:
    """``ZDer = Der & C`` in one cell, compared as canonical bases."""
    ctx = _ctx(A, ctx)
    sr = SRIndex(*sr)
    def body():
        z = ctx.space("zder", sr).space
        meet = ctx.space("der", sr).space & ctx.space("c", sr).space
        if z != meet:
            extra = [v for v in meet.basis if not z.contains(v)] or [v for v in z.basis if not meet.contains(v)]
            D = Matrix.from_vec(extra[0], A.dim, A.field)
            return {"cell": list(sr), "zder_dim": z.dim, "der_meet_c_dim": meet.dim, "D": _mj(D)}, {}
        return None, {"dim": z.dim}
    return _run("prop-zder", ctx, ["char_coprime_to_n"], body)


def check_trivial_center_sum(A, win, ctx=None) -> TheoremReport:
    """With trivial center: ``Der & C = 0`` and both lie in QDer."""
    ctx = _ctx(A, ctx)
    def body():
        for c in _cells(win):
            d, C, q = ctx.space("der", c), ctx.space("c", c), ctx.space("qder", c)
            meet = d.space & C.space
            if meet.dim:
                return {"cell": list(c), "part": "Der&C=0", "D": _mj(Matrix.from_vec(meet.basis[0], A.dim, A.field))}, {}
            for name, S in (("der", d), ("c", C)):
                for D in S.matrices():
                    if not q.contains(D):
                        return {"cell": list(c), "part": "%s<=qder" % name, "D": _mj(D)}, {}
        return None, {}
    return _run("prop-trivial-center-sum", ctx,
                ["bihom_lie", "trivial_center", "char_coprime_to_n_minus_1", _powers_invertible(A, win)], body)


def _powers_invertible(A, win) -> tuple[str, bool]:
    # passing from [D u, P y] = 0 for all y to "D u is central" needs P onto
    return ("twist_powers_invertible",
            all(A.morphism_power(c.s, c.r).is_invertible() for c in _cells(win)))


def _restrict_map(S: Subspace, D: Matrix) -> Matrix:
    cols = [coordinates(S, D.apply(v)) for v in S.basis]
    return Matrix.from_columns(cols, S.field)


def check_gder_direct_sum(A, I: Subspace, J: Subspace, win, ctx=None) -> TheoremReport:
    """``GDer(g) = GDer(I) + GDer(J)`` for a decomposition into ideals."""
    ctx = _ctx(A, ctx)
    if not (is_ideal(A, I, strong=True) and is_ideal(A, J, strong=True)):
        raise NotAnIdeal("I and J must both be ideals")
    if (I & J).dim or (I + J).dim != A.dim:
        raise NotComplementary("I and J do not form a direct sum decomposition")
    def body():
        parts = [(S, restrict(A, S)) for S in (I, J) if S.dim]
        dims = {}
        for c in _cells(win):
            g = ctx.space("gder", c)
            sub = [(S, B, sp.gder(B, c)) for S, B in parts]
            for D in g.matrices():
                for S, B, gs in sub:
                    if not all(S.contains(D.apply(v)) for v in S.basis):
                        return {"cell": list(c), "part": "D(ideal)<=ideal", "D": _mj(D)}, {}
                    if not gs.contains(_restrict_map(S, D)):
                        return {"cell": list(c), "part": "restriction in GDer(ideal)", "D": _mj(D)}, {}
            total = sum(gs.dim for _, _, gs in sub)
            dims[str(tuple(c))] = [g.dim, total]
            if g.dim != total:
                return {"cell": list(c), "part": "dimension", "gder": g.dim, "sum": total}, {}
        return None, {"dims": dims}
    return _run("prop-gder-direct-sum", ctx, ["bihom_lie", "regular", "trivial_center"], body)


def check_qder_embedding(A, win, ctx=None) -> TheoremReport:
    """On the t-extension: ``Der = phi(QDer) (+) ZDer`` with phi injective,
    witness-independent and landing in Der."""
    ctx = _ctx(A, ctx)
    T = t_extension(A)
    def body():
        ext = Context(T.extended, ctx.strict_commuting, ctx.strict_all_slots)
        d2 = (2 * A.dim) ** 2
        dims = {}
        for c in _cells(win):
            q = ctx.space("qder", c)
            dT = ext.space("der", c)
            zT = ext.space("zder", c)
            images = []
            kernel = [row[A.dim ** 2:] for row in q.joint.basis
                      if not any(row[:A.dim ** 2])]
            for D in q.matrices():
                W = q.witness(D)
                phi = phi_embed(T, W)
                if not dT.contains(phi):
                    return {"cell": list(c), "part": "phi(D) in Der", "D": _mj(D)}, {}
                for k in kernel:
                    alt = sp.WitnessedMap(D, (W.witnesses[0] + Matrix.from_vec(k, A.dim, A.field),))
                    if phi_embed(T, alt) != phi:
                        return {"cell": list(c), "part": "witness independence", "D": _mj(D)}, {}
                images.append(phi.vec())
            image = span(images, d2, A.field)
            if image.dim != q.dim:
                return {"cell": list(c), "part": "phi injective", "image_dim": image.dim, "qder_dim": q.dim}, {}
            if (image & zT.space).dim:
                return {"cell": list(c), "part": "phi(QDer)&ZDer=0"}, {}
            if image + zT.space != dT.space:
                return {"cell": list(c), "part": "phi(QDer)+ZDer=Der", "der_dim": dT.dim,
                        "image_dim": image.dim, "zder_dim": zT.dim}, {}
            dims[str(tuple(c))] = {"der_ext": dT.dim, "qder": q.dim, "zder_ext": zT.dim}
        return None, {"dims": dims}
    return _run("prop-t-extension", ctx, ["bihom_lie", "multiplicative", "trivial_center",
                                          _powers_invertible(A, win),
                                          ("invariant_complement", T.invariant)], body)


def check_derivation_extension(A, ctx=None) -> TheoremReport:
    """``g + K D`` is BiHom-Lie for every basis derivation ``D`` of ``Der_(alpha, beta^0)``,
    and not for a map just outside that space."""
    ctx = _ctx(A, ctx)
    def body():
        der = ctx.space("der", (1, 0))
        for D in der.matrices():
            rep = check_axioms(derivation_extension(A, D))
            if not rep.is_bihom_lie:
                return {"part": "derivation gives BiHom-Lie", "D": _mj(D)}, {}
        return None, {"der_dim": der.dim}
    return _run("prop-derivation-extension", ctx, ["bihom_lie", "binary", "alpha_invertible"], body)


def check_trace_induction(A, ctx=None) -> TheoremReport:
    """Every basis trace form induces an (n+1)-ary BiHom-Lie algebra."""
    ctx = _ctx(A, ctx)
    def body():
        taus = twisted_trace_space(A)
        for tau in taus.basis:
            rep = check_axioms(tau_induce(A, tau))
            if not rep.is_bihom_lie:
                return {"tau": [A.field.format(x) for x in tau], "axioms": rep.to_json()}, {}
        return None, {"trace_dim": taus.dim}
    return _run("thm-trace-induction", ctx, ["bihom_lie"], body)


def check_trace_derivations(A, win, ctx=None) -> TheoremReport:
    """For each basis trace and derivation: the alternating condition implies
    ``D`` is a derivation of the induced algebra."""
    ctx = _ctx(A, ctx)
    def body():
        taus = twisted_trace_space(A)
        counts = {"condition_holds": 0, "checked": 0}
        for tau in taus.basis:
            induced = tau_induce(A, tau)
            for c in _distinct_cells(A, _cells(win)):
                target = sp.der(induced, c)
                for D in ctx.space("der", c).matrices():
                    res = derivation_transfer_check(A, tau, D, c, target)
                    counts["checked"] += 1
                    counts["condition_holds"] += res.condition_holds
                    if res.condition_holds and not res.is_induced_derivation:
                        return {"cell": list(c), "tau": [A.field.format(x) for x in tau], "D": _mj(D),
                                "residual": sp.residual(induced, "der", c, D)}, counts
        return None, counts
    return _run("thm-trace-derivation", ctx, ["bihom_lie", "multiplicative"], body)


def axioms_report(A, ctx=None) -> TheoremReport:
    ctx = _ctx(A, ctx)
    rep = ctx.axioms
    witness = None
    if not rep.is_bihom_lie:
        j = rep.to_json()
        witness = {"commuting": j["commuting"],
                   "skew_failures": j["skew_failures"][:5],
                   "jacobi_failures": j["jacobi_failures"][:5]}
    return TheoremReport("axioms", [], "pass" if witness is None else "fail", witness,
                         {"multiplicative": rep.multiplicative, "regular": rep.regular})


def run_all(A: NAryBiHomAlgebra, win: Iterable, strict_commuting: bool = True,
            strict_all_slots: bool = True) -> list[TheoremReport]:
    """Every check, in a fixed order.  An empty window gives an empty report."""
    cells = _cells(win)
    if not cells:
        return []
    ctx = Context(A, strict_commuting, strict_all_slots)
    reports = [
        axioms_report(A, ctx),
        check_tower(A, cells, ctx),
        check_der_commutator(A, cells, ctx),
        check_der_c_lemma(A, cells, ctx),
        check_qder_lemma(A, cells, ctx),
    ]
    for c in cells:
        r = check_zder_identity(A, c, ctx)
        r.theorem_id = "prop-zder@%d,%d" % c
        reports.append(r)
    reports += [
        check_trivial_center_sum(A, cells, ctx),
        check_qder_embedding(A, cells, ctx),
        check_derivation_extension(A, ctx),
        check_trace_induction(A, ctx),
        check_trace_derivations(A, cells, ctx),
    ]
    return reports
