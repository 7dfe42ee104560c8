"""Exact computation of adjoint forms on projective hypersurfaces."""

from .adjoint import AdjointProblem, adjoint_basis, assemble_constraints, constraint_block, flatten_constraint
from .divisor import FormalPrimeDivisor, adjoint_order, kappa_graded, validate_divisor
from .errors import AdjointError, InputError, PrecisionExhausted
from .exactla import QMatrix, kernel_basis, rank
from .fieldtower import FieldTower, TowerElem
from .fileio import dump_divisors, load_divisors, load_problem
from .laurent import INF, TruncLaurent
from .parsing import parse_poly, parse_series, parse_tower_elem
from .polyring import MultiPoly, quotient_monomial_basis
from .puiseux import curve_divisors, geometric_genus, plane_curve_adjoints

__all__ = [
    "AdjointProblem", "adjoint_basis", "assemble_constraints", "constraint_block",
    "flatten_constraint", "FormalPrimeDivisor", "adjoint_order", "kappa_graded",
    "validate_divisor", "AdjointError", "InputError", "PrecisionExhausted", "QMatrix",
    "kernel_basis", "rank", "FieldTower", "TowerElem", "dump_divisors", "load_divisors",
    "load_problem", "INF", "TruncLaurent", "parse_poly", "parse_series", "parse_tower_elem",
    "MultiPoly", "quotient_monomial_basis", "curve_divisors", "geometric_genus",
    "plane_curve_adjoints",
]
