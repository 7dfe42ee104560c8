import pytest
import sympy

from hyperadj.errors import DivisionByZero, InputError
from hyperadj.fieldtower import FieldTower
from hyperadj.upoly import (
    factor,
    factor_squarefree,
    norm_poly,
    pdivmod,
    pgcd,
    pmul,
    squarefree_decomposition,
    strip,
)


def P(K, coeffs):
    return strip([K.coerce(c) for c in coeffs])


def product(fs):
    out = None
    for f in fs:
        out = f if out is None else pmul(out, f)
    return out


def sympy_factor_count(expr, **kw):
    U = sympy.Symbol("U")
    _, facs = sympy.factor_list(expr(U), **kw)
    return sum(k for _, k in facs)


def test_rational_factoring():
    Q = FieldTower()
    p = P(Q, [-2, 0, 0, 0, 1])
    assert factor_squarefree(p) == [p]
    fs = factor_squarefree(P(Q, [-1, 0, 0, 0, 1]))
    assert [len(f) - 1 for f in fs] == [1, 1, 2]
    assert product(fs) == P(Q, [-1, 0, 0, 0, 1])


def test_factor_over_quadratic_extension():
    K = FieldTower().extend("a", [-2, 0, 1])
    p = P(K, [-2, 0, 0, 0, 1])
    fs = factor_squarefree(p)
    a = K.gen()
    assert sorted(fs, key=str) == sorted([P(K, [-a, 0, 1]), P(K, [a, 0, 1])], key=str)
    assert len(fs) == sympy_factor_count(lambda U: U**4 - 2, extension=sympy.sqrt(2))


def test_factor_over_two_step_tower():
    K = FieldTower().extend("a", [-2, 0, 1])
    L = K.extend("b", [-K.gen(), 0, 1])
    fs = factor_squarefree(P(L, [-2, 0, 0, 0, 1]))
    assert sorted(len(f) - 1 for f in fs) == [1, 1, 2]
    assert product(fs) == P(L, [-2, 0, 0, 0, 1])
    assert len(fs) == sympy_factor_count(lambda U: U**4 - 2, extension=sympy.root(2, 4))


def test_cyclotomic_over_gaussian_field():
    K = FieldTower().extend("i", [1, 0, 1])
    fs = factor_squarefree(P(K, [1, 0, 0, 0, 1]))
    assert len(fs) == sympy_factor_count(lambda U: U**4 + 1, extension=sympy.I) == 2
    assert product(fs) == P(K, [1, 0, 0, 0, 1])


def test_norm_of_linear_factor():
    K = FieldTower().extend("i", [1, 0, 1])
    n = norm_poly(P(K, [K.gen(), 1]))
    assert [c.to_rational() for c in n] == [1, 0, 1]


def test_multiplicities():
    Q = FieldTower()
    f = pmul(pmul(P(Q, [1, 1]), P(Q, [1, 1])), P(Q, [-2, 0, 1]))
    lc, facs = factor(pscale_two(f, Q))
    assert lc == Q.coerce(3)
    assert sorted((len(g) - 1, k) for g, k in facs) == [(1, 2), (2, 1)]
    sq = squarefree_decomposition(f)
    assert sorted(k for _, k in sq) == [1, 2]


def pscale_two(f, Q):
    return [c * Q.coerce(3) for c in f]


def test_gcd_and_division():
    Q = FieldTower()
    a = P(Q, [-1, 0, 1])
    b = P(Q, [1, 2, 1])
    assert pgcd(a, b) == P(Q, [1, 1])
    q, r = pdivmod(a, P(Q, [1, 1]))
    assert q == P(Q, [-1, 1]) and r == []
    with pytest.raises(DivisionByZero):
        factor([])


def test_transcendental_base_rejected():
    K = FieldTower(("s",))
    with pytest.raises(InputError):
        factor_squarefree(P(K, [-2, 0, 1]))
