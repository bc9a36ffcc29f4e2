import pytest

from mfcat.cech import CechCover
from mfcat.hochschild import (
    compare_hh,
    cy_symmetry_check,
    forms_complex,
    hh_cohomology,
    hh_homology,
    hh_via_diagonal,
    milnor_number,
    polyvector_complex,
)
from mfcat.groebner import INFINITE
from mfcat.poly import Ring
from mfcat.stabilization import koszul_stab, stabilize_cyclic

from conftest import SUITE, suite_W


@pytest.mark.parametrize("text, variables, hh, mu", SUITE)
def test_milnor_number(text, variables, hh, mu):
    assert milnor_number(suite_W(text, variables)) == mu


@pytest.mark.parametrize("text, variables, hh, mu", SUITE)
def test_polyvector_route(text, variables, hh, mu):
    W = suite_W(text, variables)
    polyvector_complex(W).check()
    assert hh_cohomology(W).dims == hh


@pytest.mark.parametrize("text, variables, hh, mu", SUITE)
def test_diagonal_route(text, variables, hh, mu):
    assert hh_via_diagonal(suite_W(text, variables)).dims == hh


@pytest.mark.parametrize("text, variables, hh, mu", SUITE)
def test_homology_route(text, variables, hh, mu):
    W = suite_W(text, variables)
    forms_complex(W).check()
    n = W.ring.ngens
    expected = [0, 0]
    expected[n % 2] = mu
    assert hh_homology(W).dims == tuple(expected)


@pytest.mark.parametrize("text, variables, hh, mu", SUITE)
def test_compare(text, variables, hh, mu):
    report = compare_hh(suite_W(text, variables))
    assert report.passed
    assert report.payload()["pass"] is True
    assert set(report.timings) == {"polyvector", "diagonal", "milnor"}


def test_kunneth():
    A, B = Ring.of("x"), Ring.of("x,y")
    e1, o1 = hh_cohomology(A("x^3")).dims
    e2, o2 = hh_cohomology(A("x^4")).dims
    assert hh_cohomology(B("x^3 + y^4")).dims == (e1 * e2 + o1 * o2, e1 * o2 + o1 * e2)
    assert hh_via_diagonal(B("x^3 + y^4")).dims == (6, 0)


def test_hh_over_cover_matches_affine():
    A = Ring.of("x")
    cover = CechCover.of(A, ["x + 1", "x - 1"])
    res = hh_cohomology(A("x^3"), cover)
    assert res.route == "polyvector+cech"
    assert res.dims == (2, 0)
    assert hh_homology(A("x^3"), cover).dims == (0, 2)


def test_non_isolated_singularity():
    B = Ring.of("x,y")
    assert milnor_number(B("x^2*y")) == INFINITE
    assert hh_cohomology(B("x^2*y")).dims[0] == INFINITE


@pytest.mark.parametrize("text, variables", [("x^3", "x"), ("x^2 + y^2", "x,y"), ("x^3 + y^3", "x,y")])
def test_cy_symmetry_koszul(text, variables):
    P = koszul_stab(suite_W(text, variables))
    report = cy_symmetry_check(P, P)
    assert report.passed
    assert report.n == suite_W(text, variables).ring.ngens


def test_cy_symmetry_mixed_pair():
    B = Ring.of("x,y")
    W = B("x^3 + y^3")
    P = koszul_stab(W)
    Q = stabilize_cyclic(W, [B("x + y")])
    report = cy_symmetry_check(P, Q)
    assert report.passed
    assert len(report.checks) == 2


def test_cy_wrong_dimension_fails():
    B = Ring.of("x,y")
    W = B("x*y")
    P = stabilize_cyclic(W, [B("x")])
    Q = stabilize_cyclic(W, [B("y")])
    assert cy_symmetry_check(P, Q).passed
    report = cy_symmetry_check(P, Q, n=1)
    assert report.forward == (0, 1) and report.backward == (0, 1)
    assert not report.passed
