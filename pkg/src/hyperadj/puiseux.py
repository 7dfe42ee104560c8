"""Singular points and branch expansions of plane curves.

For a homogeneous ``F(x, y, z)`` every singular point is located in one of
three affine charts and expanded with rational Newton-Puiseux: along each
Newton polygon edge the edge polynomial is factored over the current field
tower, the tower is extended by an irreducible factor when needed, and the
substitution ``X = xi^a T^q``, ``Y = T^m (xi^b + Y1)`` (with ``b q - a m = 1``)
keeps every coefficient inside the tower.  Once a root is simple the rest of
the branch follows from Newton iteration.

A branch is returned as ``x = x0 + gamma * T^e``, ``y = y(T)``.  Conjugate
branches stay together as one branch over the extension field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import sympy
from sympy.polys.domains import QQ

from .divisor import FormalPrimeDivisor
from .errors import DegenerateCurve, FrontierTooSmall, InputError, NonHomogeneous, PrecisionExhausted
from .fieldtower import FieldTower, TowerElem
from .laurent import TruncLaurent, series_div
from .polyring import MultiPoly
from .upoly import factor, pgcd, pderiv, pdivmod, strip

__all__ = [
    "SingularLocusDescription",
    "PuiseuxBranch",
    "affine_singular_points",
    "puiseux_branches",
    "branches_to_divisors",
    "curve_divisors",
    "initial_frontier",
    "plane_curve_adjoints",
    "geometric_genus",
]

MAX_SHEAR = 32
DEFAULT_PRECISION_CAP = 1024

BiPoly = dict  # {(i, j): TowerElem}


@dataclass(frozen=True)
class SingularLocusDescription:
    """A conjugacy class of singular points in one affine chart.

    ``affine`` is the chart equation in the coordinates ``coords`` (after the
    shear ``x -> x + shear * y`` in the ``z = 1`` chart).  The points are
    ``(x0, y0)`` where ``x0`` runs over the roots of ``minpoly_x`` and
    ``y0 = y_expr(x0)``; both live in ``tower``.
    """

    chart: int
    coords: tuple[int, int]
    affine: MultiPoly
    minpoly_x: tuple[Fraction, ...]
    tower: FieldTower
    x0: TowerElem
    y_expr: TowerElem
    shear: int = 0
    multiplicity: int = 0

    def describe(self, names: Sequence[str]) -> str:
        u, v = (names[k] for k in self.coords)
        mp = _format_upoly_q(self.minpoly_x, u)
        return (
            f"chart {names[self.chart]}=1: {mp} = 0, {v} = {self.y_expr}"
            + (f", shear {self.shear}" if self.shear else "")
            + f", multiplicity {self.multiplicity}"
        )


@dataclass(frozen=True)
class PuiseuxBranch:
    point: SingularLocusDescription
    tower: FieldTower
    e: int
    gamma: TowerElem
    x: TruncLaurent
    y: TruncLaurent
    frontier: object


def _format_upoly_q(coeffs: Sequence[Fraction], var: str) -> str:
    V = (var,)
    return MultiPoly(V, {(k,): c for k, c in enumerate(coeffs)}).to_str()


# -- sympy bridges -------------------------------------------------------------

def _to_sympy(p: MultiPoly, gens) -> sympy.Poly:
    rep = {e: QQ(c.numerator, c.denominator) for e, c in p.terms.items()}
    if not rep:
        return sympy.Poly(0, *gens, domain=QQ)
    return sympy.Poly.from_dict(rep, *gens, domain=QQ)


def _qq_coeffs(p: sympy.Poly) -> list[Fraction]:
    """Ascending rational coefficients of a univariate sympy polynomial."""
    return [Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())]


def _check_curve(F: MultiPoly):
    if F.nvars != 3:
        raise InputError("plane curves need exactly 3 homogeneous variables")
    if F.is_zero() or not F.is_homogeneous() or F.degree() < 1:
        raise NonHomogeneous("F must be a nonzero homogeneous polynomial of positive degree")
    gens = sympy.symbols("x0:3")
    g = _to_sympy(F, gens)
    for v in F.variables:
        g = g.gcd(_to_sympy(F.partial(v), gens))
    if g.total_degree() > 0:
        raise DegenerateCurve("F is not squarefree (it shares a factor with its partial derivatives)")


# -- singular points -------------------------------------------------------------

def _chart_poly(F: MultiPoly, chart: int, coords: tuple[int, int], shear: int = 0) -> MultiPoly:
    """Dehomogenize at ``chart``; with a shear, the first coordinate is replaced by ``u + shear*v``."""
    V = ("u", "v")
    u, v = MultiPoly.var(V, "u"), MultiPoly.var(V, "v")
    vals: list = [None, None, None]
    vals[chart] = MultiPoly.constant(V, 1)
    vals[coords[0]] = u + v * shear if shear else u
    vals[coords[1]] = v
    return F.substitute(vals)


def _eval_upoly(p: sympy.Poly, K: FieldTower, x0: TowerElem) -> list[TowerElem]:
    """Coefficients in the second variable of ``p(x0, Y)``."""
    out: dict[int, TowerElem] = {}
    for (i, j), c in p.terms():
        term = K.from_rational(Fraction(int(c.p), int(c.q))) * x0 ** i
        out[j] = out[j] + term if j in out else term
    if not out:
        return []
    return strip([out.get(j, K.zero) for j in range(max(out) + 1)])


def _class_tower(p: list[Fraction]) -> tuple[FieldTower, TowerElem]:
    Q = FieldTower()
    if len(p) == 2:
        return Q, Q.from_rational(-p[0] / p[1])
    lc = p[-1]
    K = Q.extend("a1", [c / lc for c in p])
    return K, K.gen()


def _squarefree_part(g: list[TowerElem]) -> list[TowerElem]:
    return pdivmod(g, pgcd(g, pderiv(g)))[0] if len(g) > 2 else g


def _factors_q(r: sympy.Poly) -> list[list[Fraction]]:
    _, facs = r.factor_list()
    out = [_qq_coeffs(f.monic()) for f, _ in facs if f.degree() > 0]
    out.sort(key=lambda c: (len(c), [str(x) for x in c]))
    return out


def _chart_z_points(F: MultiPoly) -> list[SingularLocusDescription]:
    X, Y = sympy.symbols("u v")
    for shear in range(MAX_SHEAR):
        f = _chart_poly(F, 2, (0, 1), shear)
        fs = _to_sympy(f, (X, Y))
        fx, fy = fs.diff(X), fs.diff(Y)
        if fs.degree(Y) <= 0 or fy.is_zero:
            return []
        r1 = sympy.Poly(sympy.resultant(fs.as_expr(), fy.as_expr(), Y), X, domain=QQ)
        if r1.is_zero:
            raise DegenerateCurve("the chart equation shares a factor with its derivative")
        r2 = sympy.Poly(sympy.resultant(fx.as_expr(), fy.as_expr(), Y), X, domain=QQ)
        r = r1 if r2.is_zero else r1.gcd(r2)
        points = []
        ok = True
        for p in _factors_q(r) if r.degree() > 0 else []:
            K, x0 = _class_tower(p)
            g = pgcd(_eval_upoly(fs, K, x0), _eval_upoly(fx, K, x0))
            g = pgcd(g, _eval_upoly(fy, K, x0))
            if len(g) <= 1:
                continue
            g = _squarefree_part(g)
            if len(g) > 2:
                ok = False
                break
            y0 = -g[0] / g[1]
            points.append((p, K, x0, y0))
        if ok:
            return [
                SingularLocusDescription(2, (0, 1), f, tuple(p), K, x0, y0, shear, _multiplicity(f, K, x0, y0))
                for p, K, x0, y0 in points
            ]
    raise InputError("could not separate singular points by a shear")


def _chart_y_points(F: MultiPoly) -> list[SingularLocusDescription]:
    X = sympy.Symbol("u")
    f = _chart_poly(F, 1, (0, 2))
    on_line = [
        f,
        f.partial("u"),
        f.partial("v"),
    ]
    h = None
    for q in on_line:
        restricted = MultiPoly(("u",), {(i,): c for (i, j), c in q.terms.items() if j == 0})
        s = _to_sympy(restricted, (X,))
        h = s if h is None else h.gcd(s)
    if h.is_zero or h.degree() <= 0:
        return []
    out = []
    for p in _factors_q(h):
        K, x0 = _class_tower(p)
        y0 = K.zero
        out.append(SingularLocusDescription(1, (0, 2), f, tuple(p), K, x0, y0, 0, _multiplicity(f, K, x0, y0)))
    return out


def _chart_x_points(F: MultiPoly) -> list[SingularLocusDescription]:
    f = _chart_poly(F, 0, (1, 2))
    zero = (0, 0)
    if f.coefficient(zero) or f.partial("u").coefficient(zero) or f.partial("v").coefficient(zero):
        return []
    K = FieldTower()
    return [SingularLocusDescription(0, (1, 2), f, (Fraction(0), Fraction(1)), K, K.zero, K.zero, 0,
                                     _multiplicity(f, K, K.zero, K.zero))]


def _multiplicity(f: MultiPoly, K: FieldTower, x0, y0) -> int:
    G = _local(f, K, x0, y0)
    return min(i + j for i, j in G)


def affine_singular_points(F: MultiPoly) -> list[SingularLocusDescription]:
    """All singular points of the projective curve ``F = 0``, grouped by chart.

    The ``z = 1`` chart comes first, then the points ``[x:1:0]``, then
    ``[1:0:0]``; each point is listed once.
    """
    _check_curve(F)
    return _chart_z_points(F) + _chart_y_points(F) + _chart_x_points(F)


# -- local expansions ---------------------------------------------------------

def _local(f: MultiPoly, K: FieldTower, x0: TowerElem, y0: TowerElem) -> BiPoly:
    """Coefficients of ``f(x0 + X, y0 + Y)`` over ``K``."""
    out: BiPoly = {}
    xp = [K.one]
    yp = [K.one]
    dx = max((e[0] for e in f.terms), default=0)
    dy = max((e[1] for e in f.terms), default=0)
    for _ in range(dx):
        xp.append(xp[-1] * x0)
    for _ in range(dy):
        yp.append(yp[-1] * y0)
    for (i, j), c in f.terms.items():
        for p in range(i + 1):
            cx = xp[i - p] * (comb(i, p) * c)
            if not cx:
                continue
            for q in range(j + 1):
                v = cx * yp[j - q] * comb(j, q)
                if v:
                    out[(p, q)] = out[(p, q)] + v if (p, q) in out else v
    return {k: v for k, v in out.items() if v}


def _lower_edges(G: BiPoly) -> list[tuple[int, int, list[tuple[int, int]]]]:
    """Edges of the Newton polygon between the axes as ``(m, q, points)``."""
    j0 = min(j for (i, j) in G if i == 0)
    edges = []
    ic, jc = 0, j0
    while jc > 0:
        best = None
        for (i, j) in G:
            if j < jc:
                mu = Fraction(i - ic, jc - j)
                if best is None or mu < best:
                    best = mu
        on = sorted(
            ((i, j) for (i, j) in G if j < jc and Fraction(i - ic, jc - j) == best),
            key=lambda p: -p[1],
        )
        on = [(ic, jc)] + on
        edges.append((best.numerator, best.denominator, on))
        ic, jc = on[-1]
    return edges


@dataclass
class _State:
    K: FieldTower
    gamma: TowerElem
    e: int
    A: dict  # exact polynomial part of Y, {exponent: coeff}
    bc: TowerElem
    bk: int


def _lift_state(st: _State, K: FieldTower) -> _State:
    return _State(K, K.coerce(st.gamma), st.e, {k: K.coerce(c) for k, c in st.A.items()}, K.coerce(st.bc), st.bk)


def _substitute_edge(G: BiPoly, xi: TowerElem, a: int, b: int, q: int, m: int) -> BiPoly:
    """``G(xi^a T^q, T^m (xi^b + Y1)) / T^c`` with ``c`` the edge value."""
    const = min(q * i + m * j for (i, j) in G)
    xb = xi ** b
    out: BiPoly = {}
    for (i, j), c in G.items():
        base = c * xi ** (a * i)
        texp = q * i + m * j - const
        for k in range(j + 1):
            v = base * comb(j, k) * xb ** (j - k)
            if v:
                key = (texp, k)
                out[key] = out[key] + v if key in out else v
    return {k: v for k, v in out.items() if v}


def _advance(st: _State, xi: TowerElem, a: int, b: int, q: int, m: int) -> _State:
    xa = xi ** a
    A = {}
    for k, c in st.A.items():
        A[q * k] = c * xa ** k
    bc = st.bc * xa ** st.bk
    lead = q * st.bk + m
    A[lead] = A[lead] + bc * xi ** b if lead in A else bc * xi ** b
    return _State(xi.tower, st.gamma * xa ** st.e, st.e * q, {k: v for k, v in A.items() if v}, bc, lead)


def _bezout(q: int, m: int) -> tuple[int, int]:
    """``(a, b)`` with ``b q - a m = 1`` and ``0 <= a < q``."""
    for a in range(q):
        if (1 + a * m) % q == 0:
            return a, (1 + a * m) // q
    raise AssertionError("gcd(q, m) must be 1")


def _expand(G: BiPoly, st: _State, out: list, depth: int = 0):
    if depth > 64:
        raise FrontierTooSmall("puiseux_branches", None, "branches did not separate")
    jmin = min(j for (i, j) in G)
    if jmin:
        if jmin > 1:
            raise DegenerateCurve("local equation is not squarefree")
        out.append((st, None))
        G = {(i, j - 1): c for (i, j), c in G.items()}
    imin = min(i for (i, j) in G)
    if imin:
        G = {(i - imin, j): c for (i, j), c in G.items()}
    if (0, 0) in G:
        return
    for m, q, pts in _lower_edges(G):
        jb = pts[-1][1]
        K = st.K
        phi = [K.zero] * ((pts[0][1] - jb) // q + 1)
        for (i, j) in pts:
            phi[(j - jb) // q] = G[(i, j)]
        _, facs = factor(phi)
        a, b = _bezout(q, m)
        for f, r in facs:
            if len(f) == 2:
                K1 = K
                xi = -f[0]
                st1 = st
                G0 = G
            else:
                K1 = K.extend(f"a{K.height + 1}", f)
                xi = K1.gen()
                st1 = _lift_state(st, K1)
                G0 = {k: K1.coerce(v) for k, v in G.items()}
            G1 = _substitute_edge(G0, xi, a, b, q, m)
            st2 = _advance(st1, xi, a, b, q, m)
            if r == 1:
                out.append((st2, G1))
            else:
                _expand(G1, st2, out, depth + 1)


def _horner(coeffs: list[TruncLaurent], Y: TruncLaurent, prec: int) -> TruncLaurent:
    acc = coeffs[-1].truncate(prec)
    for c in reversed(coeffs[:-1]):
        acc = (acc * Y + c).truncate(prec)
    return acc


def _newton_series(G: BiPoly, K: FieldTower, prec: int) -> TruncLaurent:
    """Power series ``Y(T)`` with ``Y(0) = 0`` and ``G(T, Y(T)) = 0`` mod ``T^prec``."""
    if prec <= 0:
        return TruncLaurent.zero(K, max(prec, 0))
    dj = max(j for (_, j) in G)
    cols: list[dict] = [{} for _ in range(dj + 1)]
    for (i, j), c in G.items():
        cols[j][i] = c
    g = [TruncLaurent.from_dict(K, c) for c in cols]
    dg = [g[j] * j for j in range(1, dj + 1)]
    Y = TruncLaurent.zero(K)
    p = 1
    while p < prec:
        p = min(2 * p, prec)
        val = _horner(g, Y, p)
        der = _horner(dg, Y, p)
        Y = (Y - series_div(val, der, prec=p)).truncate(p)
        Y = TruncLaurent(K, Y.lead, Y.coeffs)
    return Y.truncate(prec)


def puiseux_branches(f: MultiPoly, point: SingularLocusDescription, frontier: int) -> list[PuiseuxBranch]:
    """All branches of ``f = 0`` at the point class, expanded through ``T^frontier``."""
    if frontier < 1:
        raise FrontierTooSmall("puiseux_branches", 1, "frontier must be positive")
    K = point.tower
    G = _local(f, K, point.x0, point.y_expr)
    if (0, 0) in G:
        raise InputError("the point does not lie on the curve")
    st = _State(K, K.one, 1, {}, K.one, 0)
    raw: list = []
    _expand(G, st, raw)
    out = []
    for st, G1 in raw:
        Kb = st.K
        y = TruncLaurent.from_dict(Kb, st.A) + Kb.coerce(point.y_expr)
        if G1 is not None and any(j == 0 for (_, j) in G1):
            tail = _newton_series(G1, Kb, frontier - st.bk)
            y = y + tail * TruncLaurent.monomial(Kb, st.bc, st.bk)
        x = TruncLaurent.constant(Kb, Kb.coerce(point.x0)) + TruncLaurent.monomial(Kb, st.gamma, st.e)
        out.append(PuiseuxBranch(point, Kb, st.e, st.gamma, x, y, y.prec))
    return out


def branches_to_divisors(branches: Sequence[PuiseuxBranch], start: int = 1) -> list[FormalPrimeDivisor]:
    """Homogeneous divisor data ``phi<k>`` for each branch, in the original coordinates."""
    out = []
    for k, br in enumerate(branches, start):
        pt = br.point
        K = br.tower
        images: list = [None, None, None]
        images[pt.chart] = TruncLaurent.constant(K, 1)
        images[pt.coords[0]] = br.x
        images[pt.coords[1]] = br.y
        if pt.shear:
            images[0] = images[0] + images[1] * pt.shear
        out.append(FormalPrimeDivisor(f"phi{k}", K, images))
    return out


def initial_frontier(F: MultiPoly) -> int:
    d = F.degree()
    return 2 * d * d + 4


def curve_divisors(F: MultiPoly, frontier: int | None = None) -> tuple[list[SingularLocusDescription], list[FormalPrimeDivisor]]:
    """Singular points of a plane curve and the divisors of all branches there."""
    points = affine_singular_points(F)
    N = initial_frontier(F) if frontier is None else frontier
    branches = []
    for pt in points:
        branches.extend(puiseux_branches(pt.affine, pt, N))
    return points, branches_to_divisors(branches)


def plane_curve_adjoints(
    F: MultiPoly,
    m: int,
    n: int,
    order: str = "degrevlex",
    normalize_rows: bool = False,
    precision_cap: int = DEFAULT_PRECISION_CAP,
    frontier: int | None = None,
):
    """Adjoint basis of a plane curve with internally computed divisors.

    The branch frontier starts at ``initial_frontier(F)`` and doubles while
    precision runs out, up to ``precision_cap``.  Returns ``(basis, divisors)``.
    """
    from .adjoint import AdjointProblem, adjoint_basis

    N = initial_frontier(F) if frontier is None else frontier
    while True:
        _, divisors = curve_divisors(F, N)
        try:
            problem = AdjointProblem(F, m, n, divisors, order, normalize_rows)
            return adjoint_basis(problem), divisors
        except PrecisionExhausted:
            if 2 * N > precision_cap:
                raise
            N *= 2


def geometric_genus(F: MultiPoly, precision_cap: int = DEFAULT_PRECISION_CAP) -> int:
    """Dimension of the degree ``d - 3`` adjoints of an irreducible plane curve."""
    basis, _ = plane_curve_adjoints(F, 1, 0, precision_cap=precision_cap)
    return len(basis)

