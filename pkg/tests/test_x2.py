"""
Full pipeline on the 10-dimensional member.

Moments are compared with the published values. The published potential does not
solve the potential system built from the published moments (see test_reference.py),
so potential, Mabuchi constant and criterion are checked for consistency with the
solved theta, and the published figures stay as expected failures.

Every test here shares one analysis and is marked slow.
"""

from fractions import Fraction

import pytest

from app.schemas import load_x2_reference

pytestmark = pytest.mark.slow

LEX_FIRST_ARGMAX = (-1, 4, -1, -1, 0, 3, -1, -1, 1, 1)


@pytest.fixture(scope="module")
def reference():
    return load_x2_reference()


@pytest.fixture(scope="module")
def region(stability_service, x2_certificate):
    return stability_service.pminus(x2_certificate.polytope, x2_certificate.potential)


def test_moments(x2_certificate, reference):
    assert x2_certificate.moment_first == tuple(reference.exact(x) for x in reference.b)
    c = x2_certificate.moment_second
    for (i, j), value in reference.moment_second_entries().items():
        assert c[i][j] == value, (i + 1, j + 1)
    # printed b0 is only reported
    assert x2_certificate.volume > 0


def test_boundary_identities(stability_service, x2_certificate):
    integration_service = stability_service.integration_service
    p = x2_certificate.polytope
    assert integration_service.boundary_volume(p) == 10 * x2_certificate.volume
    assert integration_service.boundary_moment_first(p) == tuple(11 * x for x in x2_certificate.moment_first)


def test_potential_solves_the_system(x2_certificate):
    theta = x2_certificate.potential
    assert x2_certificate.sbar == 10
    assert x2_certificate.futaki_residuals_vanish

    vol = x2_certificate.volume
    b = x2_certificate.moment_first
    c = x2_certificate.moment_second
    for i in range(10):
        assert sum(c[i][j] * theta.a[j] for j in range(10)) + b[i] * (theta.c - 1) == 0, i + 1
    assert theta.c == -sum(x * y for x, y in zip(theta.a, b, strict=True)) / vol


def test_potential_follows_the_moment_symmetries(x2_certificate):
    a = x2_certificate.potential.a
    assert a[0] == a[1] == a[4] == a[5]
    assert a[2] == a[3] == a[6] == a[7]
    assert a[8] == a[9]
    assert a[0] > a[8] > 0
    assert x2_certificate.potential.c < 0


def test_mabuchi_constant(x2_certificate, reference):
    theta = x2_certificate.potential
    mabuchi = x2_certificate.mabuchi
    assert mabuchi.value == theta(reference.point(reference.argmax))
    assert mabuchi.argmax == tuple(Fraction(x) for x in LEX_FIRST_ARGMAX)
    assert mabuchi.value == theta(mabuchi.argmax) > 1
    assert x2_certificate.ding_unstable


def test_criterion_is_consistent(x2_certificate, region):
    theta = x2_certificate.potential
    criterion = x2_certificate.criterion
    assert criterion.pminus_vertex_count == region.vertex_count == 380
    assert criterion.vol_pminus > 0
    assert criterion.lhs == 1 - theta.c
    assert criterion.rhs == criterion.integral / criterion.vol_pminus
    assert criterion.satisfied == (criterion.lhs < criterion.rhs)


def test_pminus_lies_in_p_above_one(moment2, x2_certificate, region):
    theta = x2_certificate.potential
    assert region.has_vertex(x2_certificate.mabuchi.argmax)
    assert all(moment2.contains(v) for v in region.vertices)
    assert all(theta(v) >= 1 for v in region.vertices)


def test_destabilizer_value(x2_certificate):
    assert x2_certificate.destabilizer_value > 0


@pytest.mark.xfail(strict=True, reason="the published theta does not solve the published moment system")
def test_published_potential(x2_certificate, reference):
    theta = x2_certificate.potential
    for index, value in reference.theta_coefficients.items():
        assert theta.a[index - 1] == reference.exact(value), index
    assert theta.c == reference.exact(reference.theta_constant)


@pytest.mark.xfail(strict=True, reason="follows from the published theta")
def test_published_mabuchi_constant(x2_certificate, reference):
    assert x2_certificate.mabuchi.value == reference.exact(reference.mabuchi)


@pytest.mark.xfail(strict=True, reason="follows from the published theta")
def test_published_criterion(x2_certificate, reference):
    criterion = x2_certificate.criterion
    assert criterion.pminus_vertex_count == reference.pminus_vertex_count
    assert criterion.vol_pminus == reference.exact(reference.vol_pminus)
    assert criterion.integral == reference.exact(reference.integral_pminus)
    assert criterion.lhs_minus_rhs == reference.exact(reference.lhs_minus_rhs)


@pytest.mark.xfail(strict=True, reason="follows from the published theta")
def test_published_pminus_vertices(region, reference):
    assert set(region.vertices) == reference.pminus_vertex_set
