"""Univariate polynomials over algebraic field towers.

Polynomials are lists of :class:`TowerElem` coefficients in ascending degree
with no trailing zeros (the zero polynomial is ``[]``).  Factorization uses
Trager's norm method down to Q, where sympy does the work.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import sympy
from sympy.polys.domains import QQ

from .errors import DivisionByZero, InputError
from .fieldtower import FieldTower, TowerElem

UPoly = list  # list[TowerElem], ascending

__all__ = [
    "strip", "degree", "padd", "psub", "pmul", "pscale", "pdivmod", "monic",
    "pgcd", "pderiv", "peval", "shift", "squarefree_decomposition",
    "norm_element", "norm_poly", "factor_squarefree", "factor",
]


def strip(p: Sequence[TowerElem]) -> UPoly:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def degree(p: UPoly) -> int:
    return len(p) - 1


def padd(a: UPoly, b: UPoly) -> UPoly:
    if len(a) < len(b):
        a, b = b, a
    return strip([x + y for x, y in zip(a, b)] + list(a[len(b):]))


def psub(a: UPoly, b: UPoly) -> UPoly:
    return padd(a, [-y for y in b])


def pscale(a: UPoly, c) -> UPoly:
    return strip([x * c for x in a])


def pmul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return []
    K = a[0].tower
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = out[i + j] + x * y
    return strip(out)


def pdivmod(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    if len(a) < len(b):
        return [], strip(a)
    inv = b[-1].inverse()
    K = b[-1].tower
    q = [K.zero] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] * inv
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] = a[k + j] - c * y
    return strip(q), strip(a[: len(b) - 1])


def monic(a: UPoly) -> UPoly:
    if not a:
        return []
    inv = a[-1].inverse()
    return [x * inv for x in a]


def pgcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic greatest common divisor."""
    a, b = strip(a), strip(b)
    while b:
        a, b = b, pdivmod(a, b)[1]
    return monic(a)


def pderiv(a: UPoly) -> UPoly:
    return strip([c * k for k, c in enumerate(a)][1:])


def peval(a: UPoly, x):
    acc = None
    for c in reversed(a):
        acc = c if acc is None else acc * x + c
    return acc


def shift(a: UPoly, c) -> UPoly:
    """``a(U + c)`` by repeated synthetic division."""
    a = list(a)
    n = len(a)
    for i in range(n):
        for k in range(n - 2, i - 1, -1):
            a[k] = a[k] + c * a[k + 1]
    return strip(a)


def squarefree_decomposition(a: UPoly) -> list[tuple[UPoly, int]]:
    """Yun's algorithm: monic squarefree factors with their multiplicities."""
    a = monic(strip(a))
    if len(a) <= 1:
        return []
    out = []
    da = pderiv(a)
    g = pgcd(a, da)
    b = pdivmod(a, g)[0]
    c = pdivmod(da, g)[0]
    d = psub(c, pderiv(b))
    k = 1
    while len(b) > 1:
        g = pgcd(b, d)
        b = pdivmod(b, g)[0]
        c = pdivmod(d, g)[0]
        if len(g) > 1:
            out.append((g, k))
        d = psub(c, pderiv(b))
        k += 1
    return out


def _det(M: list[list[TowerElem]]) -> TowerElem:
    M = [row[:] for row in M]
    n = len(M)
    K = M[0][0].tower
    det = K.one
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            return K.zero
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        piv = M[c][c]
        det = det * piv
        inv = piv.inverse()
        for r in range(c + 1, n):
            f = M[r][c] * inv
            if f:
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return det


def norm_element(x: TowerElem) -> TowerElem:
    """Norm of ``x`` from its tower down to the level below."""
    K = x.tower
    if K.height == 0:
        raise InputError("the norm needs an algebraic extension")
    e = K.degrees[-1]
    alpha = K.gen()
    cols = []
    v = x
    for _ in range(e):
        cols.append(v.decompose())
        v = v * alpha
    M = [[cols[c][r] for c in range(e)] for r in range(e)]
    return _det(M)


def norm_poly(q: UPoly) -> UPoly:
    """Norm of a polynomial over the top level, as a polynomial one level down."""
    K = q[-1].tower
    P = K.parent
    e = K.degrees[-1]
    D = e * degree(q)
    nodes = list(range(D + 1))
    values = [norm_element(peval(q, K.from_rational(u))) for u in nodes]
    # Newton divided differences over the lower field
    coef = list(values)
    for k in range(1, D + 1):
        for i in range(D, k - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * P.from_rational(Fraction(1, nodes[i] - nodes[i - k]))
    poly: UPoly = [coef[D]]
    for i in range(D - 1, -1, -1):
        # poly = poly * (U - nodes[i]) + coef[i]
        shifted = [P.zero] + poly
        scaled = [c * (-nodes[i]) for c in poly] + [P.zero]
        poly = [a + b for a, b in zip(shifted, scaled)]
        poly[0] = poly[0] + coef[i]
    return strip(poly)


def _factor_rational(p: UPoly, K: FieldTower) -> list[UPoly]:
    U = sympy.Symbol("U")
    coeffs = [c.to_rational() for c in reversed(p)]
    sp = sympy.Poly([QQ(c.numerator, c.denominator) for c in coeffs], U, domain=QQ)
    _, facs = sp.factor_list()
    out = []
    for f, _mult in facs:
        fc = f.monic().all_coeffs()
        out.append([K.from_rational(Fraction(int(c.p), int(c.q))) for c in reversed(fc)])
    out.sort(key=lambda f: (len(f), [str(c) for c in f]))
    return out


def factor_squarefree(p: UPoly) -> list[UPoly]:
    """Monic irreducible factors of a squarefree polynomial over its tower."""
    p = monic(strip(p))
    if len(p) <= 2:
        return [p] if len(p) == 2 else []
    K = p[-1].tower
    if K.height == 0:
        if K.transcendentals:
            raise InputError("factorization over transcendental extensions is not supported")
        return _factor_rational(p, K)
    alpha = K.gen()
    s = 0
    while True:
        q = shift(p, alpha * (-s))
        N = norm_poly(q)
        if len(pgcd(N, pderiv(N))) == 1:
            break
        s = -s if s > 0 else 1 - s
    gs = factor_squarefree(N)
    if len(gs) == 1:
        return [p]
    out = []
    for g in gs:
        h = pgcd(q, [K.coerce(c) for c in g])
        if len(h) > 1:
            out.append(monic(shift(h, alpha * s)))
    out.sort(key=lambda f: (len(f), [str(c) for c in f]))
    return out


def factor(p: UPoly) -> tuple[TowerElem, list[tuple[UPoly, int]]]:
    """Leading coefficient and monic irreducible factors with multiplicities."""
    p = strip(p)
    if not p:
        raise DivisionByZero("cannot factor the zero polynomial")
    out = []
    for f, k in squarefree_decomposition(p):
        for g in factor_squarefree(f):
            out.append((g, k))
    return p[-1], out
