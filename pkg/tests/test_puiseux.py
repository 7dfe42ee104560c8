import time
from fractions import Fraction

import pytest
import sympy

from hyperadj.divisor import adjoint_order, validate_divisor
from hyperadj.errors import DegenerateCurve
from hyperadj.adjoint import flatten_constraint, generic_image
from hyperadj.polyring import quotient_monomial_basis
from hyperadj.puiseux import (
    affine_singular_points,
    branches_to_divisors,
    curve_divisors,
    geometric_genus,
    initial_frontier,
    plane_curve_adjoints,
    puiseux_branches,
)

from helpers import (
    CURVE_VARS,
    CUSPIDAL_CUBIC,
    FERMAT_QUARTIC,
    NODAL_CUBIC,
    TRINODAL_QUARTIC,
    curve,
)


def describe(F):
    return [p.describe(CURVE_VARS) for p in affine_singular_points(F)]


def test_singular_points():
    assert describe(curve(NODAL_CUBIC)) == ["chart z=1: x = 0, y = 0, multiplicity 2"]
    assert describe(curve("x^2 + y^2 - z^2")) == []
    assert describe(curve("y^2*z^2 - x^4 + x^3*z")) == [
        "chart z=1: x = 0, y = 0, multiplicity 2",
        "chart y=1: x = 0, z = 0, multiplicity 2",
    ]


def test_three_coordinate_nodes():
    assert describe(curve(TRINODAL_QUARTIC)) == [
        "chart z=1: x = 0, y = 0, multiplicity 2",
        "chart y=1: x = 0, z = 0, multiplicity 2",
        "chart x=1: y = 0, z = 0, multiplicity 2",
    ]


def test_conjugate_singular_points():
    # nodes at (+-sqrt(2) : 0 : 1) are glued into one description
    F = curve("(x^2 - 2*z^2)^2 - y^2*z^2 + y^4")
    assert describe(F) == ["chart z=1: x^2 - 2 = 0, y = 0, multiplicity 2"]
    _, divs = curve_divisors(F)
    assert [d.tower.format_minpoly(1) for d in divs] == ["a1^2 - 2"] * 2
    # two nodes on a quartic: 3 - 2
    assert geometric_genus(F) == 1


def test_non_squarefree_curve_rejected():
    with pytest.raises(DegenerateCurve):
        curve_divisors(curve("(y^2 - x*z)^2"))


def test_node_branches_are_binomial_series():
    F = curve(NODAL_CUBIC)
    pt, = affine_singular_points(F)
    N = 9
    branches = puiseux_branches(pt.affine, pt, N)
    assert len(branches) == 2 and all(b.e == 1 for b in branches)
    X = sympy.Symbol("X")
    root = sympy.series(X * sympy.sqrt(1 + X), X, 0, N).removeO()
    want = {sympy.expand(root), sympy.expand(-root)}
    got = set()
    for b in branches:
        assert str(b.x) == "t"
        expr = sum(sympy.Rational(c.to_rational().numerator, c.to_rational().denominator) * X**k for k, c in b.y.items())
        got.add(sympy.expand(expr))
        assert b.y.prec >= N
    assert got == want


def test_cusp_branch_is_exact():
    F = curve(CUSPIDAL_CUBIC)
    pt, = affine_singular_points(F)
    b, = puiseux_branches(pt.affine, pt, 10)
    assert b.e == 2
    assert str(b.x) == "t^2" and str(b.y) == "t^3"
    phi, = branches_to_divisors([b])
    assert [str(im) for im in phi.images] == ["t^2", "t^3", "1"]


def test_conjugate_pair_stays_one_branch():
    F = curve("y^2*z + x^2*z + x^3")
    _, divs = curve_divisors(F)
    phi, = divs
    assert phi.tower.degrees == (2,)
    assert phi.tower.format_minpoly(1) == "a1^2 + 1"
    assert validate_divisor(phi, F).ok
    B = quotient_monomial_basis(F, 1)
    images = generic_image(phi, B, 1)
    rows = flatten_constraint([im[0] for im in images], phi.tower)
    assert rows and all(isinstance(x, Fraction) for r in rows for x in r)


def test_nodal_divisor_orders():
    F = curve(NODAL_CUBIC)
    _, divs = curve_divisors(F)
    assert [d.name for d in divs] == ["phi1", "phi2"]
    assert [adjoint_order(d, F) for d in divs] == [1, 1]


def test_triple_point_branches():
    F = curve("(x^2 + y^2)^2 + 3*x^2*y*z - y^3*z")
    pt, = affine_singular_points(F)
    assert pt.multiplicity == 3
    _, divs = curve_divisors(F)
    assert sum(d.tower.degree() for d in divs) == 3
    for d in divs:
        assert validate_divisor(d, F).ok


def test_initial_frontier():
    assert initial_frontier(curve(NODAL_CUBIC)) == 22


@pytest.mark.parametrize(
    "text,genus",
    [
        (NODAL_CUBIC, 0),
        (CUSPIDAL_CUBIC, 0),
        (FERMAT_QUARTIC, 3),
        (TRINODAL_QUARTIC, 0),
        ("x^3 + y^3 + z^3", 1),
        ("y^2*z^2 - x^4 + x^3*z", 0),
        ("x^3 - z*(x^2 + y^2)", 0),
        ("y^2*z^2 + 2*x^2*z^2 + 3*x^2*y^2 - x*y*z^2 - x*y^2*z - x^2*y*z", 0),
    ],
)
def test_genus(text, genus):
    t0 = time.perf_counter()
    assert geometric_genus(curve(text)) == genus
    assert time.perf_counter() - t0 < 10


def test_genus_against_classical_formula():
    # a tacnode (delta 2) on a quartic: (3*2)/2 - 2 = 1
    F = curve("y^2*z^2 - x^4 - y^4")
    assert geometric_genus(F) == 1


def test_plane_curve_adjoints_returns_divisors():
    basis, divs = plane_curve_adjoints(curve(TRINODAL_QUARTIC), 1, 1)
    assert [str(f) for f in basis] == ["x*y", "x*z", "y*z"]
    assert len(divs) == 6
