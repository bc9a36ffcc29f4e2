import itertools

import pytest

from mfcat.cech import (
    CechCover,
    IncompatibleRestrictions,
    NotACover,
    cech_ext,
    cech_hyper,
    cech_total,
    sheafify,
)
from mfcat.groebner import FreeModuleMap
from mfcat.homcx import HomComplex, Z2Complex, ext
from mfcat.poly import Ring
from mfcat.stabilization import koszul_stab, stabilize_cyclic

A = Ring.of("x")


def test_certificate():
    cover = CechCover.of(A, ["x + 1", "x - 1"])
    g = cover.validate()
    assert sum((a * f for a, f in zip(g, cover.denominators)), A.zero()) == A.one()


def test_not_a_cover():
    with pytest.raises(NotACover):
        CechCover.of(A, ["x", "x^2"]).validate()


def test_intersections_order():
    cover = CechCover.of(A, ["x", "x - 1", "x + 2"])
    assert cover.intersections() == [(0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]
    assert cover.denominator((0, 1)) == A("x^2 - x")


@pytest.mark.parametrize("cover", [["1"], ["x + 1", "x - 1"], ["x + 1", "x - 1", "x + 2"]])
def test_affine_consistency(cover):
    P = koszul_stab(A("x^3"))
    result = cech_ext(P, P, CechCover.of(A, cover))
    assert result.dims == ext(P, P).dims == (1, 1)


def test_cover_order_does_not_matter():
    P = stabilize_cyclic(A("x^4"), [A("x^2")])
    cover = CechCover.of(A, ["x + 1", "x - 1", "x + 2"])
    dims = {cech_ext(P, P, cover.permuted(order), local=False).dims
            for order in itertools.permutations(range(3))}
    assert dims == {(2, 2)}


@pytest.mark.parametrize("power", [1, 2, 3])
def test_denominator_power(power):
    P = koszul_stab(A("x^3"))
    result = cech_ext(P, P, CechCover.of(A, ["x + 1", "x - 1"]), power=power, local=False)
    assert result.dims == (1, 1)
    assert result.report()["denominator_power"] == power


def test_power_must_be_positive():
    P = koszul_stab(A("x^3"))
    with pytest.raises(ValueError):
        cech_ext(P, P, CechCover.of(A, ["x + 1", "x - 1"]), power=0)


W2 = "(x*(x - 1))^2"


@pytest.mark.parametrize("f, charts, total", [
    ("x*(x - 1)^2", {(0,): (0, 0), (1,): (1, 1), (0, 1): (0, 0)}, (1, 1)),
    ("x^2*(x - 1)", {(0,): (1, 1), (1,): (0, 0), (0, 1): (0, 0)}, (1, 1)),
    ("x*(x - 1)", {(0,): (1, 1), (1,): (1, 1), (0, 1): (0, 0)}, (2, 2)),
    ("x^2", {(0,): (0, 0), (1,): (0, 0), (0, 1): (0, 0)}, (0, 0)),
])
def test_charts_see_local_support(f, charts, total):
    # the singular points of the zero fiber are 0 and 1; D(x) misses 0 and D(x - 1) misses 1
    P = stabilize_cyclic(A(W2), [A(f)])
    result = cech_ext(P, P, CechCover.of(A, ["x", "x - 1"]))
    assert result.charts == charts
    assert result.dims == total == ext(P, P).dims


def test_structure_sheaf_is_infinite():
    O = Z2Complex(A, 1, 0, FreeModuleMap.zero(A, 0, 1), FreeModuleMap.zero(A, 1, 0))
    cover = CechCover.of(A, ["x + 1", "x - 1"])
    charts, restrictions = sheafify(O, cover)
    assert cech_hyper(charts, restrictions, cover).dims == (float("inf"), 0)


def test_incompatible_restrictions():
    P = koszul_stab(A("x^3"))
    H = HomComplex(P, P)
    cover = CechCover.of(A, ["x + 1", "x - 1"])
    charts, restrictions = sheafify(H, cover)
    r_even, r_odd = restrictions[((0,), (0, 1))]
    restrictions[((0,), (0, 1))] = (r_even.scale(A("x")), r_odd)
    with pytest.raises(IncompatibleRestrictions, match="does not commute"):
        cech_total(charts, restrictions, cover)


def test_missing_restriction():
    P = koszul_stab(A("x^3"))
    H = HomComplex(P, P)
    cover = CechCover.of(A, ["x + 1", "x - 1"])
    charts, restrictions = sheafify(H, cover)
    del restrictions[((1,), (0, 1))]
    with pytest.raises(IncompatibleRestrictions, match="missing"):
        cech_total(charts, restrictions, cover)


def test_path_dependence_detected():
    P = koszul_stab(A("x^3"))
    H = HomComplex(P, P)
    cover = CechCover.of(A, ["x + 1", "x - 1", "x + 2"])
    charts, restrictions = sheafify(H, cover)
    key = ((0, 1), (0, 1, 2))
    restrictions[key] = tuple(r.scale(-1) for r in restrictions[key])
    with pytest.raises(IncompatibleRestrictions, match="path"):
        cech_total(charts, restrictions, cover)
