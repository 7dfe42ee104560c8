"""Formal prime divisors of a hypersurface and the valuations they define."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    DivisionByZero,
    FormatError,
    HintMismatch,
    NonHomogeneous,
    NoUsablePartial,
    PrecisionExhausted,
    TowerMismatch,
)
from .fieldtower import FieldTower
from .laurent import INF, TruncLaurent, determinant, jacobian_matrix, series_div, substitute_poly
from .polyring import MultiPoly

__all__ = [
    "FormalPrimeDivisor",
    "ValidationReport",
    "validate_divisor",
    "kappa_graded",
    "kappa_at_least",
    "adjoint_order",
    "partial_orders",
]

# frontier used when an exact chart image is not a constant and the
# normalized images become genuinely infinite series
EXACT_NORMALIZATION_FRONTIER = 64


class FormalPrimeDivisor:
    """A map ``x_k -> images[k]`` into Laurent series over ``tower``.

    The images form a projective tuple.  The chart is the smallest index
    whose image has order 0; dividing by that image gives the normalized
    images, whose chart entry is exactly 1.
    """

    def __init__(
        self,
        name: str,
        tower: FieldTower,
        images: Sequence[TruncLaurent],
        adjoint_order_hint: int | None = None,
    ):
        if not images:
            raise FormatError("a divisor needs at least one image")
        for im in images:
            if not isinstance(im, TruncLaurent):
                raise FormatError("divisor images must be truncated Laurent series")
            if im.tower is not tower and im.tower != tower:
                raise TowerMismatch(f"image of divisor {name} lives over a different tower")
        self.name = name
        self.tower = tower
        self.images = tuple(images)
        self.adjoint_order_hint = adjoint_order_hint
        self._normalized: dict[int, tuple[TruncLaurent, ...]] = {}
        self._chart: int | None = None

    def __repr__(self):
        return f"FormalPrimeDivisor({self.name!r}, {len(self.images)} images over {self.tower!r})"

    @property
    def nvars(self) -> int:
        return len(self.images)

    def image_orders(self) -> list:
        """Certified order of every image, or ``None`` when not certifiable."""
        out = []
        for im in self.images:
            try:
                out.append(im.ord())
            except PrecisionExhausted:
                out.append(None)
        return out

    def admissible_charts(self) -> list[int]:
        """Indices whose image is a unit (order exactly 0)."""
        self.chart  # raises when the minimum order cannot be certified
        return [k for k, o in enumerate(self.image_orders()) if o == 0]

    @property
    def chart(self) -> int:
        if self._chart is None:
            self._chart = self._find_chart()
        return self._chart

    def _find_chart(self) -> int:
        orders = self.image_orders()
        known = [o for o in orders if o is not None and o != INF]
        if not known:
            raise PrecisionExhausted(
                "chart selection", None, f"no image of divisor {self.name} has a certifiable order"
            )
        low = min(known)
        for im, o in zip(self.images, orders):
            if o is None and im.prec <= low:
                raise PrecisionExhausted(
                    "chart selection", low + 1,
                    f"an image of divisor {self.name} vanishes through O(t^{im.prec})",
                )
        if low > 0:
            raise FormatError(f"divisor {self.name}: no unit coordinate (all images have positive order)")
        if low < 0:
            raise FormatError(f"divisor {self.name}: image of negative order {low}")
        return orders.index(0)

    def normalized_images(self, chart: int | None = None) -> tuple[TruncLaurent, ...]:
        """Images divided by the chart image, so the chart entry is 1."""
        i = self.chart if chart is None else chart
        if i not in self._normalized:
            self._normalized[i] = self._normalize(i)
        return self._normalized[i]

    def _normalize(self, i: int) -> tuple[TruncLaurent, ...]:
        c = self.images[i]
        if c.ord() != 0:
            raise FormatError(f"chart {i} of divisor {self.name} is not a unit coordinate")
        one = TruncLaurent.constant(self.tower, 1)
        if c.is_exact and len(c.coeffs) == 1:
            inv = c.coeffs[0].inverse()
            return tuple(one if k == i else im * inv for k, im in enumerate(self.images))
        finite = [im.prec for im in self.images if im.prec != INF]
        cap = max(finite) if finite else EXACT_NORMALIZATION_FRONTIER
        return tuple(
            one if k == i else series_div(im, c, prec=cap) for k, im in enumerate(self.images)
        )

    def min_frontier(self):
        return min(im.prec for im in self.images)

    def reparametrize(self, u: TruncLaurent, name: str | None = None) -> "FormalPrimeDivisor":
        """Compose every image with ``t -> t * u(t)``."""
        finite = [im.prec for im in self.images if im.prec != INF]
        cap = max(finite) if finite else None
        return FormalPrimeDivisor(
            name or self.name,
            self.tower,
            [im.compose_unit(u, prec=cap) for im in self.images],
            self.adjoint_order_hint,
        )


def _windowed(fn, imgs: Sequence[TruncLaurent], start: int = 8) -> TruncLaurent:
    """Evaluate ``fn`` on images truncated to a doubling window.

    Stops at the first window whose result has a nonzero coefficient, or
    once the window covers every image's own frontier.
    """
    finite = [im.prec for im in imgs if im.prec != INF]
    exact_len = max((im.lead + len(im.coeffs) for im in imgs if im.prec == INF), default=0)
    full = max(finite + [exact_len + 1])
    w = max(start, 1)
    while True:
        if w >= full:
            return fn(list(imgs))
        res = fn([im.truncate(w) for im in imgs])
        if res.coeffs:
            return res
        w *= 2


def _image(f: MultiPoly, imgs: Sequence[TruncLaurent], start: int = 8) -> TruncLaurent:
    return _windowed(lambda ims: substitute_poly(f, ims), imgs, start)


@dataclass
class ValidationReport:
    ok: bool
    chart: int | None
    orders: list
    min_frontier: object
    residual: TruncLaurent | None
    messages: list[str] = field(default_factory=list)

    def lines(self) -> list[str]:
        fmt = lambda o: "?" if o is None else ("inf" if o == INF else str(o))
        out = [
            f"status: {'pass' if self.ok else 'fail'}",
            f"chart: {'-' if self.chart is None else self.chart}",
            "orders: " + ", ".join(fmt(o) for o in self.orders),
            f"min frontier: {fmt(self.min_frontier)}",
            f"residual: {self.residual if self.residual is not None else '-'}",
        ]
        out += [f"note: {m}" for m in self.messages]
        return out

    def __str__(self):
        return "\n".join(self.lines())


def _check_shape(phi: FormalPrimeDivisor, F: MultiPoly):
    if phi.nvars != F.nvars:
        raise FormatError(
            f"divisor {phi.name} has {phi.nvars} images but the polynomial has {F.nvars} variables"
        )
    want = F.nvars - 3
    have = len(phi.tower.transcendentals)
    if want >= 0 and have != want:
        raise FormatError(
            f"divisor {phi.name} has {have} transcendentals; a hypersurface in "
            f"{F.nvars} variables needs {want}"
        )


def validate_divisor(phi: FormalPrimeDivisor, F: MultiPoly) -> ValidationReport:
    """Check the homomorphism condition and the chart invariant."""
    _check_shape(phi, F)
    messages: list[str] = []
    orders = phi.image_orders()
    chart = None
    ok = True
    try:
        chart = phi.chart
    except (FormatError, PrecisionExhausted) as exc:
        ok = False
        messages.append(str(exc))
    residual = substitute_poly(F, phi.images)
    if residual.coeffs:
        ok = False
        messages.append(f"F does not vanish: first nonzero residual coefficient at t^{residual.lead}")
    elif residual.prec == INF:
        pass
    elif residual.prec <= 0:
        ok = False
        messages.append("residual window is empty; images are too short to certify F = 0")
    return ValidationReport(ok, chart, orders, phi.min_frontier(), residual, messages)


def _homogeneous_degree(f: MultiPoly) -> int:
    if f.is_zero():
        return 0
    if not f.is_homogeneous():
        raise NonHomogeneous("kappa is only defined for homogeneous polynomials")
    return f.degree()


def kappa_graded(phi: FormalPrimeDivisor, f: MultiPoly, chart: int | None = None):
    """``ord_t`` of ``f / x_i^deg f`` under the divisor (``inf`` for f = 0)."""
    _homogeneous_degree(f)
    if f.is_zero():
        return INF
    img = _image(f, phi.normalized_images(chart))
    return img.ord()


def kappa_at_least(phi: FormalPrimeDivisor, f: MultiPoly, bound: int, chart: int | None = None) -> bool:
    """Decide ``kappa_graded(phi, f) >= bound`` using only certified coefficients."""
    _homogeneous_degree(f)
    if f.is_zero():
        return True
    img = _image(f, phi.normalized_images(chart), bound)
    if img.coeffs:
        return img.lead >= bound
    if img.prec >= bound:
        return True
    raise PrecisionExhausted("kappa_at_least", bound, f"image vanishes only through O(t^{img.prec})")


def _jacobian_series(u: Sequence[TruncLaurent], tower: FieldTower) -> TruncLaurent:
    det = determinant(jacobian_matrix(u, tower), tower)
    if not det.coeffs and det.prec == INF:
        raise DivisionByZero("Jacobian determinant is identically zero")
    return det


def partial_orders(phi: FormalPrimeDivisor, F: MultiPoly, chart: int | None = None) -> dict[str, object]:
    """Order of every partial derivative image; ``None`` if not certifiable."""
    imgs = phi.normalized_images(chart)
    out: dict[str, object] = {}
    for v in F.variables:
        try:
            out[v] = _image(F.partial(v), imgs).ord()
        except PrecisionExhausted:
            out[v] = None
    return out


def adjoint_order(
    phi: FormalPrimeDivisor,
    F: MultiPoly,
    chart: int | None = None,
    partial: str | None = None,
) -> int:
    """Adjoint order of ``F`` at the divisor.

    It is the order of the image of ``dF/dx_j`` minus the order of the
    Jacobian of the remaining affine coordinates with respect to the
    transcendentals and ``t``.  By default ``j`` is the usable index whose
    partial image has the smallest order.
    """
    _check_shape(phi, F)
    i = phi.chart if chart is None else chart
    imgs = phi.normalized_images(i)
    names = F.variables
    if partial is not None:
        if partial not in names:
            raise FormatError(f"unknown partial index {partial!r}")
        if names.index(partial) == i:
            raise FormatError("the partial index must differ from the chart index")
        candidates = [partial]
    else:
        candidates = [v for k, v in enumerate(names) if k != i]
    best = None
    needed = None
    for v in candidates:
        img = _image(F.partial(v), imgs)
        if img.coeffs:
            o = img.lead
            if best is None or o < best[1]:
                best = (v, o)
        elif img.prec != INF:
            needed = img.prec + 1 if needed is None else max(needed, img.prec + 1)
    if best is None:
        raise NoUsablePartial(
            "adjoint_order", needed,
            f"every partial derivative image of divisor {phi.name} vanishes through its window",
        )
    j, ord_partial = best
    jdx = names.index(j)
    u = [imgs[k] for k in range(len(names)) if k not in (i, jdx)]
    try:
        jac = _windowed(lambda ims: _jacobian_series(ims, phi.tower), u).ord()
    except DivisionByZero:
        raise FormatError(
            f"divisor {phi.name}: affine coordinates have identically vanishing Jacobian"
        ) from None
    alpha = ord_partial - jac
    if phi.adjoint_order_hint is not None and phi.adjoint_order_hint != alpha:
        raise HintMismatch(
            f"divisor {phi.name}: supplied adjoint order {phi.adjoint_order_hint}, computed {alpha}"
        )
    return alpha
