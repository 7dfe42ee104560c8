"""Sparse multivariate polynomials over Q.

A :class:`MultiPoly` is a map from exponent tuples to nonzero
:class:`~fractions.Fraction` coefficients over a fixed, ordered variable list.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Callable, Iterable, Mapping, Sequence

from .errors import NonHomogeneous, UnknownVariable, VariableMismatch

Exponent = tuple[int, ...]

__all__ = [
    "MultiPoly",
    "monomial_key",
    "monomials_of_degree",
    "poly_arith",
    "partial_derivative",
    "quotient_monomial_basis",
    "hilbert_quotient_dim",
]


def _degrevlex(e: Exponent):
    return (sum(e), tuple(-x for x in reversed(e)))


def _lex(e: Exponent):
    return tuple(e)


def _deglex(e: Exponent):
    return (sum(e), tuple(e))


_ORDERS: dict[str, Callable[[Exponent], tuple]] = {
    "degrevlex": _degrevlex,
    "lex": _lex,
    "deglex": _deglex,
}


def monomial_key(order: str) -> Callable[[Exponent], tuple]:
    """Sort key for a monomial order; larger keys mean larger monomials."""
    try:
        return _ORDERS[order]
    except KeyError:
        raise ValueError(f"unknown monomial order {order!r}; expected one of {sorted(_ORDERS)}") from None


class MultiPoly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, object] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    e = tuple(e)
                    if len(e) != n:
                        raise ValueError(f"exponent {e} does not match {n} variables")
                    clean[e] = c
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, variables: Sequence[str], c) -> "MultiPoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "MultiPoly":
        variables = tuple(variables)
        if name not in variables:
            raise UnknownVariable(f"unknown variable {name!r}")
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def monomial(cls, variables: Sequence[str], exps: Exponent, c=1) -> "MultiPoly":
        return cls(variables, {tuple(exps): c})

    # -- queries ------------------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        """Total degree (-1 for the zero polynomial)."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        k = self._index(name)
        return max((e[k] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def leading_exponent(self, order: str = "degrevlex") -> Exponent:
        if not self.terms:
            raise ValueError("zero polynomial has no leading exponent")
        return max(self.terms, key=monomial_key(order))

    def sorted_terms(self, order: str = "degrevlex") -> list[tuple[Exponent, Fraction]]:
        key = monomial_key(order)
        return sorted(self.terms.items(), key=lambda ec: key(ec[0]), reverse=True)

    def coefficient(self, exps: Exponent) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def _index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise VariableMismatch(f"variables {self.variables} vs {other.variables}")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.variables, other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomials only take nonnegative integer powers")
        result = MultiPoly.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "MultiPoly":
        c = Fraction(c)
        return MultiPoly(self.variables, {e: v * c for e, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == MultiPoly.constant(self.variables, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def partial(self, name: str) -> "MultiPoly":
        """Formal partial derivative with respect to ``name``."""
        k = self._index(name)
        out = {}
        for e, c in self.terms.items():
            if e[k]:
                d = list(e)
                d[k] -= 1
                out[tuple(d)] = c * e[k]
        return MultiPoly(self.variables, out)

    def substitute(self, values: Mapping[str, "MultiPoly"] | Sequence) -> object:
        """Evaluate with one value per variable (anything supporting ``+``, ``*``, ``**``)."""
        if isinstance(values, Mapping):
            values = [values[v] for v in self.variables]
        values = list(values)
        if len(values) != self.nvars:
            raise ValueError(f"expected {self.nvars} values, got {len(values)}")
        powers: list[dict[int, object]] = [{} for _ in values]
        total = None
        for e, c in self.sorted_terms():
            term = None
            for k, ek in enumerate(e):
                if not ek:
                    continue
                p = powers[k].get(ek)
                if p is None:
                    p = values[k] ** ek
                    powers[k][ek] = p
                term = p if term is None else term * p
            term = c if term is None else term * c
            total = term if total is None else total + term
        return total

    def rename(self, variables: Sequence[str]) -> "MultiPoly":
        if len(variables) != self.nvars:
            raise ValueError("renaming must keep the number of variables")
        return MultiPoly(variables, self.terms)

    # -- printing -----------------------------------------------------------
    def to_str(self, order: str = "degrevlex") -> str:
        if not self.terms:
            return "0"
        out = ""
        for i, (e, c) in enumerate(self.sorted_terms(order)):
            mon = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            neg = c < 0
            a = -c if neg else c
            if not mon:
                body = str(a)
            elif a == 1:
                body = mon
            else:
                body = f"{a}*{mon}"
            if i == 0:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MultiPoly({self.variables}, {self.to_str()!r})"


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    if not isinstance(b, MultiPoly) or a.variables != b.variables:
        raise VariableMismatch("polynomials over different variable lists")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(a: MultiPoly, name: str) -> MultiPoly:
    return a.partial(name)


def monomials_of_degree(nvars: int, degree: int) -> list[Exponent]:
    """All exponent vectors of the given total degree (unsorted)."""
    if degree < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for k in combo:
            e[k] += 1
        out.append(tuple(e))
    return out


def quotient_monomial_basis(F: MultiPoly, N: int, order: str = "degrevlex") -> list[Exponent]:
    """Monomial basis of the degree-``N`` part of ``Q[x] / <F>``.

    These are the degree-``N`` monomials not divisible by the leading
    monomial of ``F``, listed from largest to smallest.
    """
    if F.is_zero() or not F.is_homogeneous():
        raise NonHomogeneous("F must be a nonzero homogeneous polynomial")
    if F.degree() < 1:
        raise NonHomogeneous("F must have positive degree")
    key = monomial_key(order)
    lead = F.leading_exponent(order)
    basis = [
        e for e in monomials_of_degree(F.nvars, N)
        if not all(a >= b for a, b in zip(e, lead))
    ]
    basis.sort(key=key, reverse=True)
    return basis


def hilbert_quotient_dim(nvars: int, d: int, N: int) -> int:
    """dim of the degree-N part of a polynomial ring modulo a degree-d principal ideal."""
    if N < 0:
        return 0
    full = comb(N + nvars - 1, nvars - 1)
    return full - (comb(N - d + nvars - 1, nvars - 1) if N >= d else 0)


def basis_polynomial(variables: Sequence[str], basis: Iterable[Exponent], coeffs: Sequence) -> MultiPoly:
    """``sum(c_b * b)`` for a monomial basis and matching coefficients."""
    return MultiPoly(variables, {e: c for e, c in zip(basis, coeffs)})
