"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 for usage or input errors.  Algebra documents are read from a path or
from standard input (``-``) and written to standard output unless ``-o``
is given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import spaces as sp
from .algebra import check_axioms
from .constructions import derivation_extension, induce_from_nlie, t_extension, tau_induce
from .errors import BiHomError, ParseError
from .examples import BUILTINS, builtin
from .scalars import QQ, Field
from .serialize import (algebra_to_json, dumps, loads_algebra, matrix_from_json, space_to_json,
                        subspace_to_json)
from .verifier import run_all, window

JACOBI_ENVELOPE = (6, 4)  # (dim, arity) beyond which the Jacobi check gets slow

SPACE_KINDS = sp.KINDS + ("center", "abcenter")


class UsageError(BiHomError, ValueError):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str):
    return loads_algebra(_read_text(path))


def _json_arg(value: str, what: str):
    """Inline JSON, or a path to a file holding it."""
    text = _read_text(value) if os.path.isfile(value) else value
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("%s is not valid JSON: %s" % (what, exc)) from None


def _matrix_arg(value: str, A, what: str):
    return matrix_from_json(_json_arg(value, what), A.field, A.dim, what)


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _warn_size(A):
    d, n = JACOBI_ENVELOPE
    if A.dim > d or A.arity > n:
        print("warning: dim %d, arity %d is outside the envelope (dim <= %d, arity <= %d); "
              "the Jacobi check may be slow" % (A.dim, A.arity, d, n), file=sys.stderr)


def _parse_cells(text: str):
    """``"0,0;1,0"`` -> cells; the empty string is the empty window."""
    cells = []
    for part in filter(None, (p.strip() for p in text.split(";"))):
        try:
            s, r = (int(x) for x in part.split(","))
        except ValueError:
            raise UsageError("bad cell %r (expected s,r)" % part) from None
        if s < 0 or r < 0:
            raise UsageError("cells must be non-negative, got %r" % part)
        cells.append((s, r))
    return cells


def _window(args):
    if args.smax < 0 or args.rmax < 0:
        raise UsageError("--smax and --rmax must be non-negative")
    return window(args.smax, args.rmax)


def _field_arg(text: str | None) -> Field:
    if text is None or text.upper() in ("Q", "QQ"):
        return QQ
    try:
        return Field(int(text))
    except ValueError as exc:
        raise UsageError("--field must be Q or a prime, got %r (%s)" % (text, exc)) from None


# -- commands ----------------------------------------------------------------

def cmd_verify(args) -> int:
    A = _load(args.file)
    _warn_size(A)
    rep = check_axioms(A)
    _emit(dumps(rep.to_json()), args.output)
    return 0 if rep.is_bihom_lie else 1


def cmd_spaces(args) -> int:
    A = _load(args.file)
    if args.kind == "center":
        doc = subspace_to_json(sp.center(A, args.strict_all_slots), "center")
    elif args.kind == "abcenter":
        doc = subspace_to_json(sp.ab_center(A), "abcenter")
    else:
        _window(args)
        grid = sp.graded_space(A, args.kind, args.smax, args.rmax, args.strict_commuting)
        doc = {
            "kind": args.kind,
            "smax": args.smax,
            "rmax": args.rmax,
            "exhaustive": grid.exhaustive,
            "cells": [space_to_json(E) for E in grid.cells],
        }
    _emit(dumps(doc), args.output)
    return 0


def cmd_construct(args) -> int:
    A = _load(args.file)
    extra = {}
    if args.construction == "twist-induce":
        B = induce_from_nlie(A, _matrix_arg(args.alpha, A, "alpha"), _matrix_arg(args.beta, A, "beta"))
    elif args.construction == "der-extend":
        B = derivation_extension(A, _matrix_arg(args.D, A, "D"))
    elif args.construction == "t-extend":
        T = t_extension(A)
        B, extra = T.extended, {"grading": T.grading_json()}
    else:
        tau = _json_arg(args.tau, "tau")
        if not isinstance(tau, list):
            raise ParseError("tau must be a JSON list of scalars")
        B = tau_induce(A, tau, override=args.override_trace)
    _emit(dumps(algebra_to_json(B, **extra)), args.output)
    return 0


def cmd_theorems(args) -> int:
    A = _load(args.file)
    _warn_size(A)
    cells = _parse_cells(args.cells) if args.cells is not None else _window(args)
    reports = run_all(A, cells, args.strict_commuting, args.strict_all_slots)
    lines = "".join(json.dumps(r.to_json(), sort_keys=True) + "\n" for r in reports)
    _emit(lines, args.output)
    width = max([len(r.theorem_id) for r in reports] + [10])
    for r in reports:
        print("%-*s  %s" % (width, r.theorem_id, r.conclusion), file=sys.stderr)
    return 1 if any(r.failed for r in reports) else 0


def cmd_example(args) -> int:
    params = {}
    if args.m is not None:
        params["m"] = args.m
    if args.n is not None:
        params["n"] = args.n
    A = builtin(args.name, _field_arg(args.field), **params)
    _emit(dumps(algebra_to_json(A)), args.output)
    return 0


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nbihom", description="Exact computations with n-ary BiHom-Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(q, needs_file=True):
        if needs_file:
            q.add_argument("file", help="algebra JSON document, or - for stdin")
        q.add_argument("-o", "--output", help="write to this path instead of stdout")

    def grid(q):
        q.add_argument("--smax", type=int, default=0)
        q.add_argument("--rmax", type=int, default=0)
        q.add_argument("--no-strict-commuting", dest="strict_commuting", action="store_false",
                       help="centroid-type spaces need not commute with the twists")
        q.add_argument("--no-strict-all-slots", dest="strict_all_slots", action="store_false",
                       help="center tested in the first slot only")

    q = sub.add_parser("verify", help="check the BiHom-Lie axioms")
    common(q)
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("spaces", help="derivation-type spaces over a window of (s, r)")
    common(q)
    q.add_argument("--kind", required=True, choices=SPACE_KINDS)
    grid(q)
    q.set_defaults(func=cmd_spaces)

    q = sub.add_parser("construct", help="build a new algebra")
    q.add_argument("construction", choices=["twist-induce", "der-extend", "t-extend", "tau-induce"])
    common(q)
    q.add_argument("--alpha", help="twist-induce: matrix as JSON rows (inline or a file)")
    q.add_argument("--beta", help="twist-induce: matrix as JSON rows (inline or a file)")
    q.add_argument("--D", help="der-extend: the derivation as JSON rows (inline or a file)")
    q.add_argument("--tau", help="tau-induce: covector as a JSON list (inline or a file)")
    q.add_argument("--override-trace", action="store_true",
                   help="tau-induce: skip the twisted-trace membership test")
    q.set_defaults(func=cmd_construct)

    q = sub.add_parser("theorems", help="run the structural checks, JSON lines on stdout")
    common(q)
    grid(q)
    q.add_argument("--cells", help='explicit window such as "0,0;1,1"; "" is the empty window')
    q.set_defaults(func=cmd_theorems)

    q = sub.add_parser("example", help="print a built-in algebra")
    q.add_argument("name", choices=sorted(BUILTINS))
    q.add_argument("--m", help="parameter m (p/q) for example-bihom-dim2")
    q.add_argument("--n", help="parameter n (p/q) for example-bihom-dim2")
    q.add_argument("--field", help="Q (default) or a prime p")
    common(q, needs_file=False)
    q.set_defaults(func=cmd_example)
    return p


_REQUIRED = {"twist-induce": ("alpha", "beta"), "der-extend": ("D",), "tau-induce": ("tau",)}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "construct":
        missing = [k for k in _REQUIRED.get(args.construction, ()) if getattr(args, k) is None]
        if missing:
            parser.error("%s needs %s" % (args.construction, ", ".join("--" + k for k in missing)))
    try:
        return args.func(args)
    except (BiHomError, ValueError, ZeroDivisionError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
