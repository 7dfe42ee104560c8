from fractions import Fraction

import pytest
import sympy

from hyperadj.errors import NonHomogeneous, VariableMismatch
from hyperadj.polyring import (
    MultiPoly,
    basis_polynomial,
    hilbert_quotient_dim,
    monomials_of_degree,
    partial_derivative,
    poly_arith,
    quotient_monomial_basis,
)
from hyperadj.parsing import parse_poly

from helpers import BASIS_NAMES, SURFACE_VARS, surface

V = SURFACE_VARS


def P(text, vs=V):
    return parse_poly(text, vs)


def test_square():
    f = P("x*z + w^2")
    assert poly_arith(f, f, "mul") == P("x^2*z^2 + 2*x*z*w^2 + w^4")


def test_surface_expansion():
    assert surface() == P("w^3*y^2*z + x^3*z^3 + 3*x^2*z^2*w^2 + 3*x*z*w^4 + w^6")
    assert surface().degree() == 6
    assert surface().is_homogeneous()


def test_cancellation_gives_empty_term_map():
    f = P("x*y - 3*w")
    z = poly_arith(f, -f, "add")
    assert z.is_zero() and not z.terms


def test_partials():
    assert partial_derivative(surface(), "w") == P("6*x^2*z^2*w + 12*x*z*w^3 + 3*y^2*z*w^2 + 6*w^5")
    assert P("y^3").partial("x").is_zero()
    assert P("w^3*y^2*z").partial("y") == P("2*w^3*y*z")


def test_printing_is_descending_and_explicit():
    assert str(partial_derivative(surface(), "w")) == "6*x^2*z^2*w + 3*y^2*z*w^2 + 12*x*z*w^3 + 6*w^5"
    assert str(P("0")) == "0"
    assert str(P("-x + 1/2*y^2")) == "1/2*y^2 - x"


def test_print_parse_round_trip():
    for text in ["w^3*y^2*z+(x*z+w^2)^3", "x*z*w + w^3", "-3/7*x^2*y + 5", "0"]:
        f = P(text)
        assert P(str(f)) == f


def test_variable_mismatch():
    with pytest.raises(VariableMismatch):
        P("x") + parse_poly("x", ("x", "y"))


def test_degree_three_basis_is_every_monomial():
    B = quotient_monomial_basis(surface(), 3)
    assert len(B) == 20
    names = [str(MultiPoly.monomial(V, e)) for e in B]
    assert names == BASIS_NAMES


def test_basis_modulo_quadric_lex():
    vs = ("x", "y", "z")
    F = parse_poly("x^2 + y*z", vs)
    B = quotient_monomial_basis(F, 2, "lex")
    assert [str(MultiPoly.monomial(vs, e)) for e in B] == ["x*y", "x*z", "y^2", "y*z", "z^2"]
    assert len(B) == hilbert_quotient_dim(3, 2, 2) == 5


def test_degree_zero_basis():
    assert quotient_monomial_basis(surface(), 0) == [(0, 0, 0, 0)]


def test_basis_rejects_inhomogeneous():
    with pytest.raises(NonHomogeneous):
        quotient_monomial_basis(P("x^2 + y"), 2)


def test_monomials_of_degree_count():
    assert len(monomials_of_degree(4, 3)) == 20
    assert monomials_of_degree(3, -1) == []


def test_basis_polynomial():
    B = quotient_monomial_basis(surface(), 3)
    coeffs = [Fraction(0)] * 20
    coeffs[BASIS_NAMES.index("x*z*w")] = 1
    coeffs[BASIS_NAMES.index("w^3")] = 1
    assert basis_polynomial(V, B, coeffs) == P("x*z*w + w^3")


def test_product_against_sympy():
    x, y, z, w = sympy.symbols("x y z w")
    f = P("3*x^2 - y*w + 1/2*z")
    g = P("x - 2*w^2 + y*z")
    expect = sympy.expand((3 * x**2 - y * w + sympy.Rational(1, 2) * z) * (x - 2 * w**2 + y * z))
    assert f * g == P(str(expect).replace("**", "^"))
