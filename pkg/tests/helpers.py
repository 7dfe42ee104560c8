"""Shared builders for the worked degree-6 surface and a few plane curves."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from hyperadj.divisor import FormalPrimeDivisor
from hyperadj.fieldtower import FieldTower
from hyperadj.laurent import TruncLaurent
from hyperadj.parsing import parse_poly

FIXTURES = Path(__file__).parent / "fixtures"

SURFACE_VARS = ("x", "y", "z", "w")
SURFACE = "w^3*y^2*z+(x*z+w^2)^3"
CURVE_VARS = ("x", "y", "z")

# degree-3 monomials in the order used for the stacked matrix
BASIS_NAMES = [
    "x^3", "x^2*y", "x*y^2", "y^3", "x^2*z", "x*y*z", "y^2*z", "x*z^2", "y*z^2", "z^3",
    "x^2*w", "x*y*w", "y^2*w", "x*z*w", "y*z*w", "z^2*w", "x*w^2", "y*w^2", "z*w^2", "w^3",
]

# nonzero entries (row, column, value) of the 13 x 20 stacked matrix, 1-based
PRINTED_MATRIX = [
    (1, 1, 1), (2, 2, -8), (3, 11, -8), (4, 11, -8), (5, 11, 4), (6, 3, 64),
    (7, 5, 64), (7, 17, -64), (8, 12, 64), (9, 12, 64), (10, 11, 1),
    (11, 17, 128), (12, 17, 128), (13, 12, -32),
]

# coefficients of t^0 .. t^8 of the generic degree-3 image: {k: {monomial: coefficient}}
GENERIC_IMAGE = {
    0: {"x^3": "1"},
    1: {},
    2: {},
    3: {"x^2*y": "-8/s", "x^2*w": "-8/s*alpha"},
    4: {"x^2*w": "-8/s"},
    5: {"x^2*w": "4/s^2*alpha"},
    6: {"x*y^2": "64/s^2", "x^2*z": "64/s", "x*y*w": "64/s^2*alpha", "x*w^2": "-64/s"},
    7: {"x^2*w": "1/s^3*alpha", "x*y*w": "64/s^2", "x*w^2": "128/s^2*alpha"},
    8: {"x*y*w": "-32/s^3*alpha", "x*w^2": "128/s^2"},
}


def printed_matrix() -> list[list[Fraction]]:
    rows = [[Fraction(0)] * 20 for _ in range(13)]
    for r, c, v in PRINTED_MATRIX:
        rows[r - 1][c - 1] = Fraction(v)
    return rows


def surface():
    return parse_poly(SURFACE, SURFACE_VARS)


def surface_tower() -> FieldTower:
    K0 = FieldTower(("s",))
    s = K0.symbol("s")
    return K0.extend("alpha", [s, 0, 1])


def surface_divisor(hint=None, name="phi1") -> FormalPrimeDivisor:
    K = surface_tower()
    s, a = K.symbol("s"), K.symbol("alpha")
    x = TruncLaurent.constant(K, 1)
    y = TruncLaurent.monomial(K, -8 / s, 3)
    z = TruncLaurent.monomial(K, 64 / s, 6)
    w = TruncLaurent.from_dict(
        K, {3: -8 / s * a, 4: -8 / s, 5: 4 / s**2 * a, 7: a / s**3, 9: a / (2 * s**4)}, 11
    )
    return FormalPrimeDivisor(name, K, [x, y, z, w], hint)


def curve(text: str):
    return parse_poly(text, CURVE_VARS)


NODAL_CUBIC = "y^2*z - x^3 - x^2*z"
CUSPIDAL_CUBIC = "y^2*z - x^3"
FERMAT_QUARTIC = "x^4 + y^4 + z^4"
TRINODAL_QUARTIC = "y^2*z^2 + 2*x^2*z^2 + 3*x^2*y^2 - 3*x*y*z^2 - 4*x*y^2*z - 5*x^2*y*z"
