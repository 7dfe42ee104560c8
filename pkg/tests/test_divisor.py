import time

import pytest

from hyperadj.divisor import (
    FormalPrimeDivisor,
    adjoint_order,
    kappa_at_least,
    kappa_graded,
    partial_orders,
    validate_divisor,
)
from hyperadj.errors import (
    FormatError,
    HintMismatch,
    NonHomogeneous,
    NoUsablePartial,
    PrecisionExhausted,
)
from hyperadj.fieldtower import FieldTower
from hyperadj.laurent import INF, TruncLaurent
from hyperadj.parsing import parse_poly, parse_series

from helpers import CUSPIDAL_CUBIC, NODAL_CUBIC, SURFACE_VARS, curve, surface, surface_divisor

V = SURFACE_VARS


def test_fixture_validates():
    rep = validate_divisor(surface_divisor(), surface())
    assert rep.ok
    assert rep.chart == 0
    assert rep.orders == [0, 3, 6, 3]
    assert rep.min_frontier == 11
    assert "status: pass" in str(rep)


def test_wrong_hypersurface_fails_at_t0():
    F = surface() + parse_poly("x^6", V)
    rep = validate_divisor(surface_divisor(), F)
    assert not rep.ok
    assert rep.residual.lead == 0


def test_no_unit_coordinate():
    K = FieldTower(("s",))
    t = TruncLaurent.monomial(K, 1, 1)
    phi = FormalPrimeDivisor("bad", K, [t, t, t * t, t])
    rep = validate_divisor(phi, surface())
    assert not rep.ok
    assert any("no unit coordinate" in m for m in rep.messages)
    with pytest.raises(FormatError):
        phi.chart


def test_shape_checks():
    K = FieldTower()
    one = TruncLaurent.constant(K, 1)
    with pytest.raises(FormatError):
        validate_divisor(FormalPrimeDivisor("p", K, [one] * 4), surface())
    with pytest.raises(FormatError):
        validate_divisor(FormalPrimeDivisor("p", K, [one] * 3), surface())


def test_kappa_values():
    phi = surface_divisor()
    k = lambda text: kappa_graded(phi, parse_poly(text, V))
    assert k("y") == 3
    assert k("x") == 0
    assert k("y^3") == 9
    assert k("x*z*w + w^3") == 10
    assert kappa_graded(phi, parse_poly("0", V)) == INF


def test_kappa_needs_homogeneous_input():
    with pytest.raises(NonHomogeneous):
        kappa_graded(surface_divisor(), parse_poly("x + y^2", V))


def test_kappa_at_least():
    phi = surface_divisor()
    assert kappa_at_least(phi, parse_poly("x*z*w + w^3", V), 9)
    assert not kappa_at_least(phi, parse_poly("x^2*y", V), 9)
    # F vanishes through O(t^26) only
    with pytest.raises(PrecisionExhausted):
        kappa_at_least(phi, surface(), 40)


def test_adjoint_order_fixture_is_fast():
    t0 = time.perf_counter()
    assert adjoint_order(surface_divisor(), surface()) == 9
    assert time.perf_counter() - t0 < 1.0


def test_adjoint_order_every_partial():
    phi = surface_divisor()
    for v in ("y", "z", "w"):
        assert adjoint_order(phi, surface(), partial=v) == 9
    assert partial_orders(phi, surface()) == {"x": 20, "y": 18, "z": 14, "w": 17}


def test_partial_index_must_differ_from_chart():
    with pytest.raises(FormatError):
        adjoint_order(surface_divisor(), surface(), partial="x")


def test_hint():
    assert adjoint_order(surface_divisor(9), surface()) == 9
    with pytest.raises(HintMismatch):
        adjoint_order(surface_divisor(8), surface())


def test_nodal_branch():
    Q = FieldTower()
    y = parse_series(
        "t + 1/2*t^2 - 1/8*t^3 + 1/16*t^4 - 5/128*t^5 + 7/256*t^6 + O(t^7)", Q
    )
    phi = FormalPrimeDivisor("b", Q, [TruncLaurent.monomial(Q, 1, 1), y, TruncLaurent.constant(Q, 1)])
    F = curve(NODAL_CUBIC)
    assert validate_divisor(phi, F).ok
    assert adjoint_order(phi, F) == 1


def test_cusp_branch():
    Q = FieldTower()
    phi = FormalPrimeDivisor(
        "c", Q, [parse_series("t^2", Q), parse_series("t^3", Q), parse_series("1", Q)]
    )
    F = curve(CUSPIDAL_CUBIC)
    assert validate_divisor(phi, F).ok
    assert adjoint_order(phi, F) == 2
    assert partial_orders(phi, F)["y"] == 3


def test_no_usable_partial():
    # every partial image vanishes through the short window
    Q = FieldTower()
    phi = FormalPrimeDivisor(
        "short", Q, [parse_series("O(t^2)", Q), parse_series("O(t^2)", Q), parse_series("1", Q)]
    )
    with pytest.raises(NoUsablePartial) as err:
        adjoint_order(phi, curve(CUSPIDAL_CUBIC))
    assert isinstance(err.value, PrecisionExhausted)


def test_reparametrize_preserves_order():
    phi = surface_divisor()
    K = phi.tower
    psi = phi.reparametrize(parse_series("1 + t", K))
    assert validate_divisor(psi, surface()).ok
    assert adjoint_order(psi, surface()) == 9
    assert kappa_graded(psi, parse_poly("x*z*w + w^3", V)) == 10


def test_normalization_of_non_constant_chart():
    Q = FieldTower()
    imgs = [parse_series(s, Q) for s in ("t^2 + t^3", "t^3 + t^4", "1 + t")]
    phi = FormalPrimeDivisor("c", Q, imgs)
    assert phi.chart == 2
    F = curve(CUSPIDAL_CUBIC)
    assert validate_divisor(phi, F).ok
    assert adjoint_order(phi, F) == 2
