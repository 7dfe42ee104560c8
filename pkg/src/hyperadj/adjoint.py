"""Adjoint bases: generic-form constraints, flattening to Q, and the kernel."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .divisor import FormalPrimeDivisor, adjoint_order
from .errors import InputError, NonHomogeneous, PrecisionExhausted
from .exactla import QMatrix, kernel_basis, primitive_row
from .fieldtower import FieldTower, TowerElem, _frac
from .laurent import TruncLaurent
from .polyring import Exponent, MultiPoly, quotient_monomial_basis

__all__ = [
    "AdjointProblem",
    "ConstraintBlock",
    "target_degree",
    "generic_image",
    "constraint_block",
    "flatten_constraint",
    "assemble_constraints",
    "adjoint_basis",
]

Tag = tuple  # (t-exponent, decomposition path, s-monomial exponents)


@dataclass
class AdjointProblem:
    F: MultiPoly
    m: int
    n: int
    divisors: list[FormalPrimeDivisor] = field(default_factory=list)
    order: str = "degrevlex"
    normalize_rows: bool = False

    def __post_init__(self):
        if self.F.is_zero() or not self.F.is_homogeneous():
            raise NonHomogeneous("the hypersurface equation must be a nonzero homogeneous polynomial")
        if self.F.nvars < 3:
            raise InputError("a hypersurface needs at least 3 homogeneous variables")
        if self.m < 1:
            raise InputError(f"m must be a positive integer, got {self.m}")
        self.divisors = list(self.divisors)

    @property
    def l(self) -> int:
        return self.F.nvars - 2

    @property
    def d(self) -> int:
        return self.F.degree()


@dataclass
class ConstraintBlock:
    divisor: str
    alpha: int
    bound: int
    rows: list[tuple[Fraction, ...]]
    tags: list[Tag]


def target_degree(problem: AdjointProblem) -> int:
    return problem.n + problem.m * (problem.d - problem.l - 2)


def generic_image(phi: FormalPrimeDivisor, basis: Sequence[Exponent], bound) -> list[TruncLaurent]:
    """Images of the basis monomials (dehomogenized in the divisor's chart) below ``t^bound``."""
    imgs = [im.truncate(bound) for im in phi.normalized_images()]
    cache: list[dict[int, TruncLaurent]] = [{0: TruncLaurent.constant(phi.tower, 1), 1: im} for im in imgs]

    def power(k: int, e: int) -> TruncLaurent:
        c = cache[k]
        if e not in c:
            c[e] = power(k, e - 1) * imgs[k]
        return c[e]

    out = []
    for b in basis:
        term = TruncLaurent.constant(phi.tower, 1)
        for k, e in enumerate(b):
            if e:
                term = term * power(k, e)
        out.append(term)
    return out


def _flatten_raw(coeffs: list, tower: FieldTower, lvl: int, path: tuple, out: list):
    if lvl > 0:
        e = tower.degrees[lvl - 1]
        zero = tower._zero(lvl - 1)
        parts = [list(c) + [zero] * (e - len(c)) for c in coeffs]
        for r in range(e):
            comp = [p[r] for p in parts]
            if any(comp):
                _flatten_raw(comp, tower, lvl - 1, path + (r,), out)
        return
    if not tower.transcendentals:
        row = tuple(_frac(c) for c in coeffs)
        if any(row):
            out.append((path, (), row))
        return
    lcd = None
    for c in coeffs:
        if c:
            lcd = c.den if lcd is None else lcd.lcm(c.den)
    if lcd is None:
        return
    if lcd.LC != 1:
        lcd = lcd.quo_ground(lcd.LC)
    by_mono: dict[tuple, list[Fraction]] = {}
    n = len(coeffs)
    for idx, c in enumerate(coeffs):
        if not c:
            continue
        p = c.num * lcd.exquo(c.den)
        for mono, q in p.terms():
            by_mono.setdefault(mono, [Fraction(0)] * n)[idx] = _frac(q)
    for mono in sorted(by_mono, key=lambda e: (sum(e), e)):
        row = tuple(by_mono[mono])
        if any(row):
            out.append((path, mono, row))


def flatten_constraint(
    coeffs: Sequence[TowerElem], tower: FieldTower | None = None, with_tags: bool = False
):
    """Rational rows equivalent to ``sum_b coeffs[b] * c_b = 0``.

    Works from the top of the tower down: algebraic levels split along the
    power basis of their generator (ascending powers), the base level is
    cleared of denominators by their least common multiple and split by
    monomials in the transcendentals (ascending graded-lex).  Zero rows are
    dropped.  With ``with_tags`` each row comes with its (path, monomial).
    """
    coeffs = list(coeffs)
    if tower is None:
        if not coeffs:
            return []
        tower = coeffs[0].tower
    raws = [tower.coerce(c).raw for c in coeffs]
    out: list = []
    _flatten_raw(raws, tower, tower.height, (), out)
    if with_tags:
        return [(row, (path, mono)) for path, mono, row in out]
    return [row for _, _, row in out]


def constraint_block(
    problem: AdjointProblem,
    phi: FormalPrimeDivisor,
    basis: Sequence[Exponent],
    alpha: int | None = None,
) -> ConstraintBlock:
    """Rational rows expressing ``kappa(sum c_b b) >= m * alpha`` at one divisor."""
    if alpha is None:
        alpha = adjoint_order(phi, problem.F)
    bound = problem.m * alpha
    rows: list[tuple[Fraction, ...]] = []
    tags: list[Tag] = []
    if bound <= 0 or not basis:
        return ConstraintBlock(phi.name, alpha, bound, rows, tags)
    images = generic_image(phi, basis, bound)
    short = min(im.prec for im in images)
    if short < bound:
        raise PrecisionExhausted(
            f"constraint block for divisor {phi.name}", bound,
            f"monomial images are only known through O(t^{short})",
        )
    for j in range(bound):
        form = [im[j] for im in images]
        for row, (path, mono) in flatten_constraint(form, phi.tower, with_tags=True):
            if problem.normalize_rows:
                row = primitive_row(row)
            rows.append(row)
            tags.append((j, path, mono))
    return ConstraintBlock(phi.name, alpha, bound, rows, tags)


def _thread_cap() -> int:
    raw = os.environ.get("ADJOINT_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = os.cpu_count() or 1
    return max(1, n)


def assemble_constraints(problem: AdjointProblem) -> tuple[list[Exponent], list[ConstraintBlock]]:
    """Quotient basis of the target degree and one constraint block per divisor."""
    N = target_degree(problem)
    if N < 0:
        return [], []
    basis = quotient_monomial_basis(problem.F, N, problem.order)
    divs = problem.divisors
    workers = min(_thread_cap(), len(divs)) if divs else 1
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(lambda p: constraint_block(problem, p, basis), divs))
    else:
        blocks = [constraint_block(problem, p, basis) for p in divs]
    return basis, blocks


def adjoint_basis(problem: AdjointProblem) -> list[MultiPoly]:
    """Basis of the m-adjoint forms of twist n, as polynomials of the target degree."""
    basis, blocks = assemble_constraints(problem)
    if not basis:
        return []
    rows = [r for b in blocks for r in b.rows]
    K = kernel_basis(QMatrix(rows, len(basis)))
    vs = problem.F.variables
    return [MultiPoly(vs, {e: c for e, c in zip(basis, v) if c}) for v in K]
