"""Truncated Laurent series in ``t`` over a :class:`FieldTower`.

A series stores its known coefficients for exponents ``lead, lead + 1, ...``
and a frontier ``prec``: every coefficient below ``prec`` is known (those
past the stored list are zero), nothing at or above ``prec`` is.  Exact
series, such as polynomial images, use ``prec = math.inf``.

Precision is propagated pessimistically and never extended by guessing: a
sum is known up to the smaller frontier, a product up to
``min(val_a + prec_b, val_b + prec_a)``, a quotient to the smaller relative
precision.  Asking for something the window cannot certify raises
:class:`~hyperadj.errors.PrecisionExhausted`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Sequence

from .errors import DivisionByZero, PrecisionExhausted, TowerMismatch, UnknownSymbol
from .fieldtower import FieldTower, TowerElem
from .polyring import MultiPoly

INF = math.inf

__all__ = [
    "TruncLaurent",
    "series_arith",
    "series_div",
    "series_ord",
    "series_deriv",
    "substitute_poly",
    "jacobian_order",
    "INF",
]


def _prec_str(p) -> str:
    return "exact" if p == INF else str(p)


class TruncLaurent:
    """Immutable truncated Laurent series ``sum c_k t^k + O(t^prec)``."""

    __slots__ = ("tower", "lead", "coeffs", "prec")

    def __init__(self, tower: FieldTower, lead: int, coeffs: Sequence[TowerElem], prec=INF):
        if prec != INF:
            prec = int(prec)
        coeffs = [tower.coerce(c) for c in coeffs]
        # drop coefficients at or past the frontier, then strip zeros at both ends
        if prec != INF:
            coeffs = coeffs[: max(prec - lead, 0)]
        i = 0
        while i < len(coeffs) and not coeffs[i]:
            i += 1
        j = len(coeffs)
        while j > i and not coeffs[j - 1]:
            j -= 1
        self.tower = tower
        self.coeffs = tuple(coeffs[i:j])
        self.prec = prec
        if self.coeffs:
            self.lead = lead + i
        else:
            self.lead = prec if prec != INF else 0

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, tower: FieldTower, prec=INF) -> "TruncLaurent":
        return cls(tower, 0 if prec == INF else prec, (), prec)

    @classmethod
    def constant(cls, tower: FieldTower, c, prec=INF) -> "TruncLaurent":
        return cls(tower, 0, [tower.coerce(c)], prec)

    @classmethod
    def monomial(cls, tower: FieldTower, c, k: int, prec=INF) -> "TruncLaurent":
        return cls(tower, k, [tower.coerce(c)], prec)

    @classmethod
    def from_dict(cls, tower: FieldTower, coeffs: dict[int, object], prec=INF) -> "TruncLaurent":
        if not coeffs:
            return cls.zero(tower, prec)
        lo, hi = min(coeffs), max(coeffs)
        z = tower.zero
        return cls(tower, lo, [tower.coerce(coeffs[k]) if k in coeffs else z for k in range(lo, hi + 1)], prec)

    # -- queries --------------------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.prec == INF

    def is_window_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self.coeffs

    def val(self):
        """Certified lower bound for the order (the true order when known)."""
        return self.lead if self.coeffs else self.prec

    def ord(self) -> int:
        """Exponent of the first nonzero coefficient.

        Returns ``math.inf`` for the exact zero series; raises
        :class:`PrecisionExhausted` when the window holds only zeros.
        """
        if self.coeffs:
            return self.lead
        if self.prec == INF:
            return INF
        raise PrecisionExhausted("series_ord", self.prec + 1, f"series vanishes through O(t^{self.prec})")

    def __getitem__(self, k: int) -> TowerElem:
        if k >= self.prec:
            raise PrecisionExhausted("coefficient extraction", k + 1, f"t^{k} lies beyond O(t^{self.prec})")
        i = k - self.lead
        if self.coeffs and 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.tower.zero

    def coefficient(self, k: int) -> TowerElem:
        return self[k]

    def items(self) -> Iterable[tuple[int, TowerElem]]:
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.lead + i, c

    def truncate(self, prec: int) -> "TruncLaurent":
        return TruncLaurent(self.tower, self.lead, self.coeffs, min(self.prec, prec))

    def leading_coefficient(self) -> TowerElem:
        self.ord()
        return self.coeffs[0]

    # -- arithmetic -----------------------------------------------------------
    def _other(self, other) -> "TruncLaurent":
        if isinstance(other, TruncLaurent):
            if other.tower is not self.tower and other.tower != self.tower:
                raise TowerMismatch("series over different field towers")
            return other
        if isinstance(other, (int, Fraction, TowerElem)):
            return TruncLaurent.constant(self.tower, other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        prec = min(self.prec, o.prec)
        d: dict[int, TowerElem] = dict(self.items())
        for k, c in o.items():
            d[k] = d[k] + c if k in d else c
        return TruncLaurent.from_dict(self.tower, {k: c for k, c in d.items() if k < prec}, prec)

    __radd__ = __add__

    def __neg__(self):
        return TruncLaurent(self.tower, self.lead, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, TowerElem)):
            c = self.tower.coerce(other)
            if not c:
                return TruncLaurent.zero(self.tower)
            return TruncLaurent(self.tower, self.lead, [x * c for x in self.coeffs], self.prec)
        o = self._other(other)
        if o is NotImplemented:
            return o
        prec = min(self.val() + o.prec, o.val() + self.prec)
        if not self.coeffs or not o.coeffs:
            return TruncLaurent.zero(self.tower, prec)
        lead = self.lead + o.lead
        n = len(self.coeffs) + len(o.coeffs) - 1
        if prec != INF:
            n = min(n, prec - lead)
        if n <= 0:
            return TruncLaurent.zero(self.tower, prec)
        t = self.tower
        h = t.height
        a = [c.raw for c in self.coeffs]
        b = [c.raw for c in o.coeffs]
        acc = []
        for k in range(n):
            lo = max(0, k - len(b) + 1)
            hi = min(k, len(a) - 1)
            acc.append(t._sum_products([(a[i], b[k - i]) for i in range(lo, hi + 1)], h))
        return TruncLaurent(t, lead, [TowerElem(t, r) for r in acc], prec)

    __rmul__ = __mul__

    def inverse(self, prec=None) -> "TruncLaurent":
        """Multiplicative inverse.

        The relative precision of the result equals that of ``self``.  An
        exact non-monomial has an infinite inverse; ``prec`` (an absolute
        frontier for the result) must then be supplied.
        """
        if not self.coeffs:
            if self.prec == INF:
                raise DivisionByZero("inverse of the zero series")
            raise PrecisionExhausted("series_div", self.prec + 1, f"divisor vanishes through O(t^{self.prec})")
        v = self.lead
        rel = self.prec - v
        if self.prec == INF and len(self.coeffs) == 1 and (prec is None or prec == INF):
            return TruncLaurent(self.tower, -v, [self.coeffs[0].inverse()], INF)
        out_prec = -v + rel
        if prec is not None:
            out_prec = min(out_prec, prec)
        if out_prec == INF:
            raise ValueError("inverse of an exact non-monomial series is infinite; pass prec")
        n = out_prec + v
        if n <= 0:
            return TruncLaurent.zero(self.tower, out_prec)
        t = self.tower
        h = t.height
        b = [c.raw for c in self.coeffs]
        inv0 = t._inv(b[0], h)
        q = [inv0]
        for k in range(1, n):
            top = min(k, len(b) - 1)
            acc = t._sum_products([(b[j], q[k - j]) for j in range(1, top + 1)], h)
            q.append(t._neg(t._mul(acc, inv0, h), h) if acc else acc)
        return TruncLaurent(t, -v, [TowerElem(t, r) for r in q], out_prec)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, TowerElem)):
            return self * self.tower.coerce(other).inverse()
        o = self._other(other)
        if o is NotImplemented:
            return o
        return series_div(self, o)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return series_div(o, self)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncLaurent.constant(self.tower, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, TruncLaurent):
            return (
                (self.tower is other.tower or self.tower == other.tower)
                and self.prec == other.prec
                and self.coeffs == other.coeffs
                and (not self.coeffs or self.lead == other.lead)
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.lead, self.coeffs, self.prec))

    def agrees_with(self, other: "TruncLaurent") -> bool:
        """Equality of all coefficients below the common frontier."""
        p = min(self.prec, other.prec)
        return (self - other).truncate(p).is_window_zero()

    # -- calculus -------------------------------------------------------------
    def deriv_t(self) -> "TruncLaurent":
        d = {k - 1: c * k for k, c in self.items() if k != 0}
        return TruncLaurent.from_dict(self.tower, d, self.prec - 1)

    def deriv(self, var: str) -> "TruncLaurent":
        if var == "t":
            return self.deriv_t()
        if var not in self.tower.transcendentals:
            raise UnknownSymbol(f"{var!r} is neither t nor a transcendental of the tower")
        return TruncLaurent(self.tower, self.lead, [c.deriv(var) for c in self.coeffs], self.prec)

    def map_coefficients(self, fn, tower: FieldTower | None = None) -> "TruncLaurent":
        tower = tower or self.tower
        return TruncLaurent(tower, self.lead, [fn(c) for c in self.coeffs], self.prec)

    def compose_unit(self, u: "TruncLaurent", prec=None) -> "TruncLaurent":
        """Substitute ``t -> t * u(t)`` for a unit power series ``u``.

        The frontier is preserved; for exact input with a non-polynomial
        result pass ``prec``.
        """
        if u.val() != 0 or u.prec == INF and not u.coeffs:
            raise ValueError("reparametrization needs a unit power series")
        tu = u * TruncLaurent.monomial(self.tower, 1, 1)
        out_prec = self.prec if prec is None else min(self.prec, prec)
        result = TruncLaurent.zero(self.tower, out_prec)
        need_inv = any(k < 0 for k, _ in self.items())
        if need_inv:
            if out_prec == INF:
                raise ValueError("pass prec to reparametrize a series with negative exponents")
            inv = tu.inverse(prec=out_prec)
        for k, c in self.items():
            if k >= 0:
                p = tu ** k
            else:
                p = inv ** (-k)
            if out_prec != INF:
                p = p.truncate(out_prec)
            result = result + p * c
        return result.truncate(out_prec) if out_prec != INF else result

    # -- printing -------------------------------------------------------------
    def to_str(self, var: str = "t") -> str:
        parts: list[str] = []
        for k, c in self.items():
            cs = str(c)
            if k == 0:
                body = cs
            else:
                mon = var if k == 1 else f"{var}^{k}"
                if cs == "1":
                    body = mon
                elif cs == "-1":
                    body = "-" + mon
                elif " " in cs:
                    body = f"({cs})*{mon}"
                else:
                    body = f"{cs}*{mon}"
            parts.append(body)
        if self.prec != INF:
            parts.append(f"O({var}^{self.prec})")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"TruncLaurent({self.to_str()})"


def series_arith(a: TruncLaurent, b: TruncLaurent, op: str) -> TruncLaurent:
    if a.tower is not b.tower and a.tower != b.tower:
        raise TowerMismatch("series over different field towers")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def series_div(a: TruncLaurent, b: TruncLaurent, prec=None) -> TruncLaurent:
    """``a / b`` with lead ``val(a) - ord(b)`` and the smaller relative precision.

    ``prec`` caps the result frontier; it is required when both operands are
    exact and the quotient does not terminate.
    """
    if a.tower is not b.tower and a.tower != b.tower:
        raise TowerMismatch("series over different field towers")
    v = b.ord() if b.coeffs else None
    if v is None:
        if b.prec == INF:
            raise DivisionByZero("division by the zero series")
        raise PrecisionExhausted("series_div", b.prec + 1, f"divisor vanishes through O(t^{b.prec})")
    if not a.coeffs:
        out = a.prec - v
        if prec is not None:
            out = min(out, prec)
        return TruncLaurent.zero(a.tower, out)
    rel = min(a.prec - a.lead, b.prec - v)
    out_prec = a.lead - v + rel
    if prec is not None:
        out_prec = min(out_prec, prec)
    if out_prec == INF:
        if len(b.coeffs) == 1:
            return a * b.inverse()
        q, r = _exact_divmod(a, b)
        if r is None:
            return q
        raise ValueError("exact quotient does not terminate; pass prec")
    binv = b.inverse(prec=out_prec - a.lead)
    return (a * binv).truncate(out_prec)


def _exact_divmod(a: TruncLaurent, b: TruncLaurent):
    """Division of exact series from the low end; ``(q, None)`` when it terminates."""
    t = a.tower
    rem = dict(a.items())
    inv = b.coeffs[0].inverse()
    q: dict[int, TowerElem] = {}
    steps = max(len(a.coeffs) - len(b.coeffs) + 1, 0)
    for _ in range(steps):
        if not rem:
            break
        k = min(rem)
        c = rem[k] * inv
        q[k - b.lead] = c
        for j, bc in enumerate(b.coeffs):
            e = k + j
            v = rem.get(e, t.zero) - c * bc
            if v:
                rem[e] = v
            else:
                rem.pop(e, None)
    if not rem:
        return TruncLaurent.from_dict(t, q), None
    return None, rem


def series_ord(a: TruncLaurent) -> int:
    return a.ord()


def series_deriv(a: TruncLaurent, var: str) -> TruncLaurent:
    return a.deriv(var)


def substitute_poly(p: MultiPoly, images: Sequence[TruncLaurent]) -> TruncLaurent:
    """Image of a polynomial under ``x_j -> images[j]``."""
    if len(images) != p.nvars:
        raise ValueError(f"need {p.nvars} images, got {len(images)}")
    tower = images[0].tower
    for im in images[1:]:
        if im.tower is not tower and im.tower != tower:
            raise TowerMismatch("images over different field towers")
    if p.is_zero():
        return TruncLaurent.zero(tower)
    total = TruncLaurent.zero(tower)
    powers: list[dict[int, TruncLaurent]] = [{1: im} for im in images]

    def power(k: int, e: int) -> TruncLaurent:
        cache = powers[k]
        if e not in cache:
            h = e // 2
            cache[e] = power(k, h) * power(k, e - h)
        return cache[e]

    for e, c in p.sorted_terms():
        term = TruncLaurent.constant(tower, c)
        for k, ek in enumerate(e):
            if ek:
                term = term * power(k, ek)
        total = total + term
    return total


def jacobian_matrix(u_images: Sequence[TruncLaurent], tower: FieldTower) -> list[list[TruncLaurent]]:
    vars_ = list(tower.transcendentals) + ["t"]
    if len(u_images) != len(vars_):
        raise ValueError(
            f"need {len(vars_)} coordinate images (transcendentals + 1), got {len(u_images)}"
        )
    return [[u.deriv(v) for v in vars_] for u in u_images]


def determinant(M: list[list[TruncLaurent]], tower: FieldTower) -> TruncLaurent:
    n = len(M)
    total = TruncLaurent.zero(tower)
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = TruncLaurent.constant(tower, sign)
        for i, j in enumerate(perm):
            term = term * M[i][j]
        total = total + term
    return total


def jacobian_order(u_images: Sequence[TruncLaurent], tower: FieldTower) -> int:
    """Order in ``t`` of det d(u_1..u_l)/d(s_1..s_{l-1}, t)."""
    det = determinant(jacobian_matrix(u_images, tower), tower)
    if not det.coeffs:
        if det.prec == INF:
            raise DivisionByZero("Jacobian determinant is identically zero")
        raise PrecisionExhausted("jacobian_order", det.prec + 1, f"determinant vanishes through O(t^{det.prec})")
    return det.lead
