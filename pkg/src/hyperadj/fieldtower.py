"""Exact arithmetic in towers Q(s_1, ..., s_k)[a_1][a_2]...[a_h].

A :class:`FieldTower` is a purely transcendental base field followed by a
chain of simple algebraic extensions, each given by a monic minimal
polynomial whose coefficients live one level below.  Elements are kept in a
nested canonical form:

* level 0 is a ground rational of sympy's ``QQ`` (gmpy2 ``mpq`` when
  available) when there are no transcendentals, otherwise a :class:`RatFunc` (reduced fraction, denominator monic under
  graded-lex order);
* level ``i > 0`` is a tuple of level ``i - 1`` values, the coefficients of
  ``1, a_i, a_i^2, ...`` with trailing zeros stripped and length below the
  degree of ``a_i``.

Zero is therefore always a zero rational, a zero :class:`RatFunc` or ``()``
and equality of raw representations is equality of field elements.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Sequence

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring

from .errors import BadLevel, DivisionByZero, InputError, TowerMismatch, UnknownSymbol

__all__ = ["FieldTower", "TowerElem", "RatFunc", "tower_arith", "tower_inv", "tower_decompose", "tower_deriv"]


def _mpq(c) -> object:
    if isinstance(c, int):
        return QQ(c)
    c = Fraction(c) if not hasattr(c, "numerator") else c
    return QQ(int(c.numerator), int(c.denominator))


def _frac(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


class RatFunc:
    """Reduced quotient of two sparse polynomials over Q.

    The denominator is monic with respect to the ring's graded-lex order, so
    every rational function has exactly one representation.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, normalized: bool = False):
        R = num.ring
        if den is None:
            den = R.one
        if not normalized:
            if not den:
                raise DivisionByZero("rational function with zero denominator")
            if not num:
                den = R.one
            else:
                if not den.is_ground:
                    g = num.gcd(den)
                    if g != R.one:
                        num = num.exquo(g)
                        den = den.exquo(g)
                lc = den.LC
                if lc != 1:
                    num = num.quo_ground(lc)
                    den = den.quo_ground(lc)
        self.num = num
        self.den = den

    @property
    def ring(self):
        return self.num.ring

    def _lift(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        R = self.num.ring
        return RatFunc(R.ground_new(_mpq(other)), R.one, normalized=True)

    def __add__(self, other):
        other = self._lift(other)
        a, b = self.den, other.den
        if a.is_ground and b.is_ground:
            return RatFunc(self.num + other.num, a, normalized=True)
        if a == b:
            return RatFunc(self.num + other.num, a)
        # both operands are reduced, so only the common part of the
        # denominators can cancel against the new numerator
        g = a.gcd(b)
        if g.is_ground:
            return RatFunc(self.num * b + other.num * a, a * b, normalized=True)
        a1, b1 = a.exquo(g), b.exquo(g)
        num = self.num * b1 + other.num * a1
        if not num:
            return RatFunc(num.ring.zero, normalized=True)
        h = num.gcd(g)
        if not h.is_ground:
            num, g = num.exquo(h), g.exquo(h)
        return _monic(num, a1 * b1 * g)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, normalized=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if not self.num or not other.num:
            return RatFunc(self.num.ring.zero, normalized=True)
        return _cross_product(self.num, self.den, other.num, other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if not other.num:
            raise DivisionByZero("division by zero rational function")
        num, den = other.num, other.den
        lc = num.LC
        return _cross_product(self.num, self.den, den.quo_ground(lc), num.quo_ground(lc))

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = self._lift(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        # sympy may hand back polynomials whose cached hash predates their final terms
        return hash((frozenset(self.num.items()), frozenset(self.den.items())))

    def diff(self, k: int) -> "RatFunc":
        x = self.num.ring.gens[k]
        return RatFunc(self.num.diff(x) * self.den - self.num * self.den.diff(x), self.den * self.den)

    def is_constant(self) -> bool:
        return self.den == 1 and self.num.is_ground

    def __repr__(self):
        return f"RatFunc({format_ratfunc(self)})"


def _monic(n, d) -> RatFunc:
    lc = d.LC
    if lc != 1:
        n, d = n.quo_ground(lc), d.quo_ground(lc)
    return RatFunc(n, d, normalized=True)


def _cancel(n, d):
    if n.is_ground or d.is_ground:
        return n, d
    g = n.gcd(d)
    if g.is_ground:
        return n, d
    return n.exquo(g), d.exquo(g)


def _cross_product(n1, d1, n2, d2) -> RatFunc:
    """``(n1/d1) * (n2/d2)`` for reduced inputs with monic denominators."""
    n1, d2 = _cancel(n1, d2)
    n2, d1 = _cancel(n2, d1)
    return _monic(n1 * n2, d1 * d2)


def _fmt_monomial(exps: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polyelement(p, names: Sequence[str]) -> str:
    """Print a sympy ``PolyElement`` with explicit ``*``/``^``, descending grlex."""
    if not p:
        return "0"
    terms = sorted(p.terms(), key=lambda mc: grlex(mc[0]), reverse=True)
    out = ""
    for i, (mon, c) in enumerate(terms):
        c = _frac(c)
        m = _fmt_monomial(mon, names)
        neg = c < 0
        a = -c if neg else c
        if not m:
            body = str(a)
        elif a == 1:
            body = m
        else:
            body = f"{a}*{m}"
        if i == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


def format_ratfunc(f: RatFunc) -> str:
    names = [str(g) for g in f.ring.symbols]
    if f.den == 1:
        return format_polyelement(f.num, names)
    # move the numerator's coefficient denominators below the fraction bar
    D = lcm(*(_frac(c).denominator for _, c in f.num.terms()))
    num = format_polyelement(f.num.mul_ground(_mpq(D)) if D != 1 else f.num, names)
    den = format_polyelement(f.den, names)
    if len(f.num) != 1:
        num = f"({num})"
    if D != 1:
        den = f"{D}*{den}" if len(f.den) == 1 else f"{D}*({den})"
    if len(f.den) != 1 or "*" in den:
        den = f"({den})"
    return f"{num}/{den}"


class FieldTower:
    """Q(s_1..s_k) followed by simple algebraic extensions.

    Build the base with ``FieldTower(["s"])`` and add levels with
    :meth:`extend`.  Towers are immutable; ``extend`` returns a new tower whose
    :attr:`parent` is the old one.
    """

    def __init__(self, transcendentals: Iterable[str] = ()):
        names = tuple(transcendentals)
        if len(set(names)) != len(names):
            raise InputError(f"duplicate transcendental names {names}")
        self.transcendentals = names
        self.gens: tuple[str, ...] = ()
        self.minpolys: tuple[tuple, ...] = ()
        self.degrees: tuple[int, ...] = ()
        self.parent: FieldTower | None = None
        if names:
            self._ring = ring(",".join(names), QQ, grlex)[0]
            self._base_zero = RatFunc(self._ring.zero, normalized=True)
            self._base_one = RatFunc(self._ring.one, normalized=True)
        else:
            self._ring = None
            self._base_zero = QQ(0)
            self._base_one = QQ(1)
        self._dalpha_cache: dict[tuple[int, int], tuple] = {}

    # -- structure -------------------------------------------------------
    @property
    def height(self) -> int:
        """Number of algebraic extension levels."""
        return len(self.gens)

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.transcendentals + self.gens

    @cached_property
    def _key(self):
        return (self.transcendentals, self.gens, self.minpolys)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FieldTower):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        exts = ", ".join(f"{g}: {self.format_minpoly(i + 1)}" for i, g in enumerate(self.gens))
        return f"FieldTower(transcendentals={list(self.transcendentals)}, extensions=[{exts}])"

    def degree(self) -> int:
        """Degree of the tower over its transcendental base."""
        d = 1
        for e in self.degrees:
            d *= e
        return d

    def ancestor(self, height: int) -> "FieldTower":
        t = self
        if height > self.height or height < 0:
            raise BadLevel(f"tower has no level {height}")
        while t.height > height:
            t = t.parent
        return t

    def extend(self, gen: str, minpoly: Sequence, check: bool = True) -> "FieldTower":
        """Adjoin a root ``gen`` of the monic polynomial with coefficients ``minpoly``.

        ``minpoly`` lists coefficients from the constant term upwards; entries
        may be :class:`TowerElem` of this tower or rationals.  Irreducibility is
        trusted; with ``check`` the polynomial must at least be squarefree.
        """
        if gen in self.symbols or gen == "t":
            raise InputError(f"generator name {gen!r} is already used")
        coeffs = tuple(self.coerce(c).raw for c in minpoly)
        lvl = self.height
        while len(coeffs) > 1 and self._is_zero_raw(coeffs[-1], lvl):
            coeffs = coeffs[:-1]
        e = len(coeffs) - 1
        if e < 2:
            raise InputError(f"minimal polynomial of {gen} must have degree >= 2")
        if coeffs[-1] != self._one(lvl):
            raise InputError(f"minimal polynomial of {gen} must be monic")
        if check:
            m = list(coeffs)
            dm = [self._scale(c, k, lvl) for k, c in enumerate(m)][1:]
            g = self._pgcd(m, dm, lvl)
            if len(g) > 1:
                raise InputError(f"minimal polynomial of {gen} is not squarefree")
        child = FieldTower.__new__(FieldTower)
        child.transcendentals = self.transcendentals
        child.gens = self.gens + (gen,)
        child.minpolys = self.minpolys + (coeffs,)
        child.degrees = self.degrees + (e,)
        child.parent = self
        child._ring = self._ring
        child._base_zero = self._base_zero
        child._base_one = self._base_one
        child._dalpha_cache = {}
        return child

    # -- element constructors --------------------------------------------
    @property
    def zero(self) -> "TowerElem":
        return TowerElem(self, self._zero(self.height))

    @property
    def one(self) -> "TowerElem":
        return TowerElem(self, self._one(self.height))

    def from_rational(self, c) -> "TowerElem":
        return TowerElem(self, self._lift(self._base(c), 0, self.height))

    def symbol(self, name: str) -> "TowerElem":
        """The element named ``name`` (a transcendental or a generator)."""
        if name in self.transcendentals:
            k = self.transcendentals.index(name)
            x = RatFunc(self._ring.gens[k], normalized=True)
            return TowerElem(self, self._lift(x, 0, self.height))
        if name in self.gens:
            lvl = self.gens.index(name) + 1
            raw = (self._zero(lvl - 1), self._one(lvl - 1))
            return TowerElem(self, self._lift(raw, lvl, self.height))
        raise UnknownSymbol(f"unknown symbol {name!r}")

    def gen(self, level: int | None = None) -> "TowerElem":
        level = self.height if level is None else level
        if not 1 <= level <= self.height:
            raise BadLevel(f"no algebraic level {level}")
        return self.symbol(self.gens[level - 1])

    def coerce(self, x) -> "TowerElem":
        if isinstance(x, TowerElem):
            if x.tower is self or x.tower == self:
                return x
            if x.tower.height < self.height and self.ancestor(x.tower.height) == x.tower:
                return self.embed(x)
            raise TowerMismatch("elements belong to different field towers")
        if isinstance(x, (int, Fraction)):
            return self.from_rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into a field tower")

    def embed(self, x: "TowerElem") -> "TowerElem":
        """Embed an element of an ancestor tower into this tower."""
        h = x.tower.height
        if h > self.height or self.ancestor(h) != x.tower:
            raise TowerMismatch("element's tower is not an ancestor of this tower")
        return TowerElem(self, self._lift(x.raw, h, self.height))

    def minpoly(self, level: int | None = None) -> list["TowerElem"]:
        """Coefficients (constant first) of a level's minimal polynomial."""
        level = self.height if level is None else level
        if not 1 <= level <= self.height:
            raise BadLevel(f"no algebraic level {level}")
        t = self.ancestor(level - 1)
        return [TowerElem(t, c) for c in self.minpolys[level - 1]]

    def format_minpoly(self, level: int) -> str:
        gen = self.gens[level - 1]
        coeffs = self.minpolys[level - 1]
        terms = []
        for r in range(len(coeffs) - 1, -1, -1):
            c = coeffs[r]
            if self._is_zero_raw(c, level - 1):
                continue
            terms.append((self._fmt(c, level - 1), r))
        return _join_terms(terms, gen)

    # -- raw arithmetic -----------------------------------------------------
    def _base(self, c):
        if isinstance(c, RatFunc):
            return c
        c = _mpq(c)
        if self._ring is None:
            return c
        return RatFunc(self._ring.ground_new(c), normalized=True)

    def _zero(self, lvl: int):
        return self._base_zero if lvl == 0 else ()

    def _one(self, lvl: int):
        return self._base_one if lvl == 0 else (self._one(lvl - 1),)

    @staticmethod
    def _is_zero_raw(a, lvl: int) -> bool:
        return not a

    def _lift(self, raw, lo: int, hi: int):
        for _ in range(lo, hi):
            raw = (raw,) if raw else ()
        return raw

    @staticmethod
    def _strip(v: list) -> tuple:
        n = len(v)
        while n and not v[n - 1]:
            n -= 1
        return tuple(v[:n])

    def _add(self, a, b, lvl: int):
        if lvl == 0:
            return a + b
        if not a:
            return b
        if not b:
            return a
        sub = lvl - 1
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, bi in enumerate(b):
            out[i] = self._add(out[i], bi, sub)
        return self._strip(out)

    def _neg(self, a, lvl: int):
        if lvl == 0:
            return -a
        return tuple(self._neg(c, lvl - 1) for c in a)

    def _sub(self, a, b, lvl: int):
        if lvl == 0:
            return a - b
        return self._add(a, self._neg(b, lvl), lvl)

    def _scale(self, a, c, lvl: int):
        """Multiply by a rational number."""
        if lvl == 0:
            return a * self._base(c)
        if not c:
            return ()
        return tuple(self._scale(x, c, lvl - 1) for x in a)

    def _mul(self, a, b, lvl: int):
        if lvl == 0:
            return a * b
        if not a or not b:
            return ()
        sub = lvl - 1
        zero = self._zero(sub)
        prod = [zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] = self._add(prod[i + j], self._mul(ai, bj, sub), sub)
        return self._reduce(prod, lvl)

    def _sum_products(self, pairs, lvl: int):
        """``sum a * b`` over ``pairs``, reducing modulo the minimal polynomial once."""
        if lvl == 0:
            acc = self._base_zero
            for a, b in pairs:
                acc = acc + a * b
            return acc
        sub = lvl - 1
        zero = self._zero(sub)
        prod: list = []
        for a, b in pairs:
            if not a or not b:
                continue
            need = len(a) + len(b) - 1
            if len(prod) < need:
                prod.extend([zero] * (need - len(prod)))
            for i, ai in enumerate(a):
                if not ai:
                    continue
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] = self._add(prod[i + j], self._mul(ai, bj, sub), sub)
        if not prod:
            return ()
        return self._reduce(prod, lvl)

    def _reduce(self, prod: list, lvl: int) -> tuple:
        m = self.minpolys[lvl - 1]
        e = len(m) - 1
        sub = lvl - 1
        for k in range(len(prod) - 1, e - 1, -1):
            c = prod[k]
            if not c:
                continue
            for j in range(e):
                if m[j]:
                    prod[k - e + j] = self._sub(prod[k - e + j], self._mul(c, m[j], sub), sub)
        return self._strip(prod[:e])

    def _inv(self, a, lvl: int):
        if not a:
            raise DivisionByZero("inverse of zero")
        if lvl == 0:
            return self._base_one / a
        sub = lvl - 1
        if len(a) == 1:
            return (self._inv(a[0], sub),)
        # extended Euclid in K_{lvl-1}[X] against the minimal polynomial
        r0, r1 = list(self.minpolys[lvl - 1]), list(a)
        s0, s1 = [], [self._one(sub)]
        while len(r1) > 1:
            q, r = self._pdivmod(r0, r1, sub)
            r0, r1 = r1, r
            s0, s1 = s1, self._psub(s0, self._pmul(q, s1, sub), sub)
        if not r1:
            raise InputError(f"minimal polynomial of {self.gens[lvl - 1]} is reducible")
        c = self._inv(r1[0], sub)
        return self._strip([self._mul(x, c, sub) for x in s1])

    # dense polynomial helpers over a level (coefficient lists, constant first)
    def _psub(self, a, b, lvl):
        n = max(len(a), len(b))
        z = self._zero(lvl)
        out = [self._sub(a[i] if i < len(a) else z, b[i] if i < len(b) else z, lvl) for i in range(n)]
        return list(self._strip(out))

    def _pmul(self, a, b, lvl):
        if not a or not b:
            return []
        z = self._zero(lvl)
        out = [z] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = self._add(out[i + j], self._mul(x, y, lvl), lvl)
        return list(self._strip(out))

    def _pdivmod(self, a, b, lvl):
        a = list(self._strip(list(a)))
        b = list(self._strip(list(b)))
        if not b:
            raise DivisionByZero("polynomial division by zero")
        inv_lc = self._inv(b[-1], lvl)
        z = self._zero(lvl)
        q = [z] * max(len(a) - len(b) + 1, 0)
        while len(a) >= len(b):
            c = self._mul(a[-1], inv_lc, lvl)
            k = len(a) - len(b)
            q[k] = c
            for j, bj in enumerate(b):
                if bj:
                    a[k + j] = self._sub(a[k + j], self._mul(c, bj, lvl), lvl)
            a = list(self._strip(a[:-1]))
        return list(self._strip(q)), a

    def _pgcd(self, a, b, lvl):
        a = list(self._strip(list(a)))
        b = list(self._strip(list(b)))
        while b:
            _, r = self._pdivmod(a, b, lvl)
            a, b = b, r
        return a

    # -- derivation -----------------------------------------------------------
    def _deriv(self, a, lvl: int, k: int):
        if lvl == 0:
            if self._ring is None or not a:
                return self._base_zero
            return a.diff(k)
        if not a:
            return ()
        sub = lvl - 1
        out = self._strip([self._deriv(c, sub, k) for c in a])
        # a'(alpha) * d(alpha)/ds_k
        da_poly = self._strip([self._scale(c, r, sub) for r, c in enumerate(a)][1:])
        if da_poly:
            out = self._add(out, self._mul(da_poly, self._dalpha(lvl, k), lvl), lvl)
        return out

    def _dalpha(self, lvl: int, k: int):
        key = (lvl, k)
        if key not in self._dalpha_cache:
            m = self.minpolys[lvl - 1]
            sub = lvl - 1
            e = len(m) - 1
            num = self._strip([self._deriv(m[j], sub, k) for j in range(e)])
            den = self._strip([self._scale(m[j], j, sub) for j in range(1, e + 1)])
            self._dalpha_cache[key] = self._neg(self._mul(num, self._inv(den, lvl), lvl), lvl)
        return self._dalpha_cache[key]

    # -- printing -----------------------------------------------------------
    def _fmt(self, a, lvl: int) -> str:
        if lvl == 0:
            if isinstance(a, RatFunc):
                return format_ratfunc(a)
            return str(a)
        if not a:
            return "0"
        terms = [(self._fmt(c, lvl - 1), r) for r, c in enumerate(a) if c]
        return _join_terms(terms, self.gens[lvl - 1])


def _join_terms(terms: list[tuple[str, int]], gen: str) -> str:
    out = ""
    for i, (cs, r) in enumerate(terms):
        if r == 0:
            body = cs
        else:
            mon = gen if r == 1 else f"{gen}^{r}"
            if cs == "1":
                body = mon
            elif cs == "-1":
                body = "-" + mon
            elif " " in cs:
                body = f"({cs})*{mon}"
            else:
                body = f"{cs}*{mon}"
        if i == 0:
            out = body
        elif body.startswith("-"):
            out += " - " + body[1:]
        else:
            out += " + " + body
    return out


class TowerElem:
    """Immutable element of a :class:`FieldTower`."""

    __slots__ = ("tower", "raw")

    def __init__(self, tower: FieldTower, raw):
        self.tower = tower
        self.raw = raw

    def _other(self, other) -> "TowerElem":
        if isinstance(other, TowerElem):
            if other.tower is self.tower or other.tower == self.tower:
                return other
            raise TowerMismatch("elements belong to different field towers")
        if isinstance(other, (int, Fraction)):
            return self.tower.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        t = self.tower
        return TowerElem(t, t._add(self.raw, o.raw, t.height))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        t = self.tower
        return TowerElem(t, t._sub(self.raw, o.raw, t.height))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        t = self.tower
        return TowerElem(t, t._neg(self.raw, t.height))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        t = self.tower
        return TowerElem(t, t._mul(self.raw, o.raw, t.height))

    __rmul__ = __mul__

    def inverse(self) -> "TowerElem":
        t = self.tower
        return TowerElem(t, t._inv(self.raw, t.height))

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.tower.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __bool__(self):
        return bool(self.raw)

    def is_zero(self) -> bool:
        return not self.raw

    def __eq__(self, other):
        if isinstance(other, TowerElem):
            return (other.tower is self.tower or other.tower == self.tower) and self.raw == other.raw
        if isinstance(other, (int, Fraction)):
            return self.raw == self.tower.from_rational(other).raw
        return NotImplemented

    def __hash__(self):
        return hash(self.raw)

    def deriv(self, symbol: str) -> "TowerElem":
        t = self.tower
        if symbol not in t.transcendentals:
            raise UnknownSymbol(f"{symbol!r} is not a transcendental of the tower")
        return TowerElem(t, t._deriv(self.raw, t.height, t.transcendentals.index(symbol)))

    def decompose(self, level: int | None = None) -> list["TowerElem"]:
        """Power-basis coordinates ``[c_0, ..., c_{e-1}]`` over the level below."""
        t = self.tower
        if t.height == 0:
            raise BadLevel("the tower has no algebraic level to decompose")
        if level is not None and level != t.height:
            raise BadLevel(f"can only decompose the top level {t.height}, not {level}")
        e = t.degrees[-1]
        sub = t.height - 1
        parts = list(self.raw) + [t._zero(sub)] * (e - len(self.raw))
        return [TowerElem(t.parent, p) for p in parts]

    def to_rational(self) -> Fraction:
        """The value as a rational number; raises ``ValueError`` otherwise."""
        raw = self.raw
        for _ in range(self.tower.height):
            if not raw:
                return Fraction(0)
            if len(raw) > 1:
                raise ValueError(f"{self} is not rational")
            raw = raw[0]
        if isinstance(raw, RatFunc):
            if not raw.is_constant():
                raise ValueError(f"{self} is not rational")
            return _frac(raw.num.LC) if raw.num else Fraction(0)
        return _frac(raw)

    def is_rational(self) -> bool:
        try:
            self.to_rational()
        except ValueError:
            return False
        return True

    def __str__(self):
        t = self.tower
        return t._fmt(self.raw, t.height)

    def __repr__(self):
        return f"TowerElem({self})"


def tower_arith(a: TowerElem, b: TowerElem, op: str) -> TowerElem:
    """Functional form of ``a op b`` for ``op`` in add, sub, mul, neg."""
    if op == "neg":
        return -a
    if not isinstance(b, TowerElem) or not (a.tower is b.tower or a.tower == b.tower):
        raise TowerMismatch("elements belong to different field towers")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def tower_inv(a: TowerElem) -> TowerElem:
    return a.inverse()


def tower_decompose(a: TowerElem, level: int | None = None) -> list[TowerElem]:
    return a.decompose(level)


def tower_deriv(a: TowerElem, symbol: str) -> TowerElem:
    return a.deriv(symbol)
