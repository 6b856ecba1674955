"""Exact computations with finite-dimensional n-ary BiHom-Lie algebras."""

from .algebra import NAryBiHomAlgebra, AxiomReport, bracket_eval, check_axioms
from .examples import builtin
from .linalg import Matrix, Subspace, span
from .scalars import QQ, Field
from .serialize import algebra_from_json, algebra_to_json, load_algebra, save_algebra
from .spaces import SRIndex, compute

__all__ = [
    "NAryBiHomAlgebra", "AxiomReport", "bracket_eval", "check_axioms", "builtin",
    "Matrix", "Subspace", "span", "QQ", "Field",
    "algebra_from_json", "algebra_to_json", "load_algebra", "save_algebra",
    "SRIndex", "compute",
]
