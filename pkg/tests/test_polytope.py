"""
Polytope conversions and constructions:
- Vertex and facet enumeration with both engines.
- Polar duality, reflexivity and smoothness.
- Halfspace cuts, products, free sums and linear maps.
"""

import random
from fractions import Fraction

import pytest

from app.models import EnumerationMethod, Halfspace
from app.utils.exact import matvec, solve_linear_system, transpose
from app.utils.exceptions import (
    DegeneratePolytopeError,
    DimensionMismatchError,
    EmptyPolyhedronError,
    OriginNotInteriorError,
    UnboundedPolyhedronError,
)

from .conftest import box_halfspaces, cube_points, points, random_unimodular, vec

ENGINES = [EnumerationMethod.DOUBLE_DESCRIPTION, EnumerationMethod.SUBSETS]


@pytest.mark.parametrize("method", ENGINES)
def test_square_vertices_from_halfspaces(polytope_service, method):
    square = polytope_service.enumerate_vertices(box_halfspaces(2), 2, method=method)
    assert set(square.vertices) == set(cube_points(2))
    assert square.facet_count == 4
    assert square.dropped_halfspaces == 0


@pytest.mark.parametrize("method", ENGINES)
def test_redundant_halfspace_is_dropped(polytope_service, method):
    halfspaces = [*box_halfspaces(2), Halfspace(normal=vec(1, 1), offset=Fraction(5))]
    square = polytope_service.enumerate_vertices(halfspaces, 2, method=method)
    assert square.vertex_count == 4
    assert square.facet_count == 4
    assert square.dropped_halfspaces == 1


@pytest.mark.parametrize("method", ENGINES)
def test_unbounded_and_infeasible(polytope_service, method):
    half_plane = [Halfspace(normal=vec(1, 0), offset=Fraction(1)), Halfspace(normal=vec(0, 1), offset=Fraction(1))]
    with pytest.raises(UnboundedPolyhedronError):
        polytope_service.enumerate_vertices(half_plane, 2, method=method)
    infeasible = [*box_halfspaces(2), Halfspace(normal=vec(1, 0), offset=Fraction(-3))]
    with pytest.raises(EmptyPolyhedronError):
        polytope_service.enumerate_vertices(infeasible, 2, method=method)


def test_lineality_direction_is_unbounded(polytope_service):
    strip = [Halfspace(normal=vec(1, 0), offset=Fraction(1)), Halfspace(normal=vec(-1, 0), offset=Fraction(1))]
    with pytest.raises(UnboundedPolyhedronError):
        polytope_service.enumerate_vertices(strip, 2)


@pytest.mark.parametrize("method", ENGINES)
def test_square_facets(polytope_service, method):
    square = polytope_service.enumerate_facets(cube_points(2), method=method)
    assert set(square.facets) == {
        Halfspace(normal=vec(1, 0), offset=Fraction(1)),
        Halfspace(normal=vec(-1, 0), offset=Fraction(1)),
        Halfspace(normal=vec(0, 1), offset=Fraction(1)),
        Halfspace(normal=vec(0, -1), offset=Fraction(1)),
    }
    assert all(len(members) == 2 for members in square.incidence)


def test_interior_points_are_not_vertices(polytope_service):
    hull = polytope_service.enumerate_facets([*cube_points(2), vec(0, 0), vec(1, 0), vec("1/2", "-1/3")])
    assert set(hull.vertices) == set(cube_points(2))


def test_engines_agree_on_cube_and_family(polytope_service, delta1):
    for pts in (cube_points(3), list(delta1.vertices)):
        by_dd = polytope_service.enumerate_facets(pts, method=EnumerationMethod.DOUBLE_DESCRIPTION)
        by_subsets = polytope_service.enumerate_facets(pts, method=EnumerationMethod.SUBSETS)
        assert by_dd.vertices == by_subsets.vertices
        assert by_dd.facets == by_subsets.facets
        assert by_dd.incidence == by_subsets.incidence


def test_degenerate_points(polytope_service):
    with pytest.raises(DegeneratePolytopeError):
        polytope_service.enumerate_facets(points([(0, 0), (1, 1), (2, 2)]))
    with pytest.raises(DimensionMismatchError):
        polytope_service.enumerate_facets([vec(0, 0), vec(1, 0, 0)])


def test_polar_dual_of_cross_polytope_is_square(polytope_service, cross_polytope, square):
    dual = polytope_service.polar_dual(cross_polytope)
    assert dual.vertices == square.vertices
    assert polytope_service.polar_dual(dual).vertices == cross_polytope.vertices


def test_polar_dual_needs_interior_origin(polytope_service):
    shifted = polytope_service.enumerate_facets(points([(0, 0), (1, 0), (0, 1)]))
    with pytest.raises(OriginNotInteriorError):
        polytope_service.polar_dual(shifted)


def test_reflexive_and_smooth(polytope_service, square, cross_polytope, p2_fano):
    assert polytope_service.is_reflexive(square)
    assert polytope_service.is_reflexive(cross_polytope)
    assert polytope_service.is_smooth_fano(cross_polytope)
    assert polytope_service.is_smooth_fano(p2_fano)
    # the square is reflexive but its cones are not unimodular
    assert not polytope_service.is_smooth_fano(square)
    big = polytope_service.enumerate_facets(points([(2, 0), (-2, 0), (0, 2), (0, -2)]))
    assert not polytope_service.is_reflexive(big)


def test_intersect_halfspace(polytope_service, square):
    right = polytope_service.intersect_halfspace(square, Halfspace(normal=vec(1, 0), offset=Fraction(0)))
    assert set(right.vertices) == set(points([(0, -1), (0, 1), (1, -1), (1, 1)]))
    assert right.facet_count == 4

    empty = polytope_service.intersect_halfspace(square, Halfspace(normal=vec(1, 0), offset=Fraction(-2)))
    assert empty.is_empty

    edge = polytope_service.intersect_halfspace(square, Halfspace(normal=vec(1, 0), offset=Fraction(-1)))
    assert edge.affine_dim == 1
    assert set(edge.vertices) == set(points([(1, -1), (1, 1)]))

    corner = polytope_service.intersect_halfspace(square, Halfspace(normal=vec(1, 1), offset=Fraction(-1)))
    assert set(corner.vertices) == set(points([(0, 1), (1, 0), (1, 1)]))


def test_intersect_checks_dimension(polytope_service, square):
    with pytest.raises(DimensionMismatchError):
        polytope_service.intersect_halfspace(square, Halfspace(normal=vec(1, 0, 0), offset=Fraction(0)))


def test_products_and_free_sums(polytope_service, interval, square, cross_polytope, p2_fano):
    product = polytope_service.cartesian_product(interval, interval)
    assert product.vertices == square.vertices
    assert product.facets == square.facets

    free = polytope_service.free_sum(interval, interval)
    assert free.vertices == cross_polytope.vertices
    assert free.facets == cross_polytope.facets

    summed = polytope_service.free_sum(p2_fano, interval)
    assert summed.vertex_count == p2_fano.vertex_count + 2
    assert polytope_service.is_smooth_fano(summed)
    assert polytope_service.cartesian_product(square, interval).vertex_count == 8


def test_apply_linear_map(polytope_service, square):
    shear = [vec(1, 1), vec(0, 1)]
    image = polytope_service.apply_linear_map(square, shear)
    assert set(image.vertices) == set(points([(-2, -1), (0, -1), (0, 1), (2, 1)]))
    assert image.facet_count == 4
    assert all(h.value(v) >= 0 for h in image.facets for v in image.vertices)
    assert image.facets == polytope_service.enumerate_facets(list(image.vertices)).facets


def test_parse_and_serialize_polytope(polytope_service, square):
    text = "# the square\n2 4\n1 1\n1 -1\n-1 1\n-1 -1\n"
    parsed = polytope_service.parse_polytope(text)
    assert parsed.vertices == square.vertices
    assert polytope_service.serialize_polytope(parsed) == "2 4\n-1 -1\n-1 1\n1 -1\n1 1\n"


def _random_halfspaces(rng: random.Random, dim: int) -> list[Halfspace]:
    """A box cut by a few random halfspaces that keep the origin inside."""
    halfspaces = box_halfspaces(dim, bound=2)
    for _ in range(dim + 1):
        normal = tuple(Fraction(rng.randint(-3, 3)) for _ in range(dim))
        if any(normal):
            halfspaces.append(Halfspace(normal=normal, offset=Fraction(rng.randint(1, 4), rng.randint(1, 3))))
    return halfspaces


@pytest.mark.parametrize(
    ("method", "dim"),
    [
        (EnumerationMethod.DOUBLE_DESCRIPTION, 2),
        (EnumerationMethod.DOUBLE_DESCRIPTION, 3),
        (EnumerationMethod.DOUBLE_DESCRIPTION, 4),
        (EnumerationMethod.SUBSETS, 2),
        (EnumerationMethod.SUBSETS, 3),
    ],
)
def test_vertices_then_facets_round_trip(polytope_service, method, dim):
    rng = random.Random(100 + dim)
    for _ in range(5):
        p = polytope_service.enumerate_vertices(_random_halfspaces(rng, dim), dim, method=method)
        hull = polytope_service.enumerate_facets(list(p.vertices), method=method)
        assert hull.vertices == p.vertices
        assert hull.facets == p.facets
        assert hull.incidence == p.incidence


def test_engines_agree_on_random_halfspaces(polytope_service):
    rng = random.Random(5)
    for _ in range(5):
        halfspaces = _random_halfspaces(rng, 3)
        by_dd = polytope_service.enumerate_vertices(halfspaces, 3, method=EnumerationMethod.DOUBLE_DESCRIPTION)
        by_subsets = polytope_service.enumerate_vertices(halfspaces, 3, method=EnumerationMethod.SUBSETS)
        assert by_dd.vertices == by_subsets.vertices
        assert by_dd.dropped_halfspaces == by_subsets.dropped_halfspaces


def test_vertex_enumeration_commutes_with_unimodular_maps(polytope_service):
    rng = random.Random(11)
    for dim in (2, 3, 4):
        halfspaces = _random_halfspaces(rng, dim)
        p = polytope_service.enumerate_vertices(halfspaces, dim)
        a = random_unimodular(rng, dim)
        # l(A^-1 y) >= 0 has normal solving A^T u' = u
        moved = [
            Halfspace(normal=solve_linear_system(transpose(a), h.normal), offset=h.offset)
            for h in halfspaces
        ]
        image = polytope_service.enumerate_vertices(moved, dim)
        assert set(image.vertices) == {matvec(a, v) for v in p.vertices}
        assert image.vertices == polytope_service.apply_linear_map(p, a).vertices


@pytest.mark.parametrize(
    ("left", "right"),
    [("interval", "interval"), ("interval", "p2_fano"), ("p2_fano", "p2_fano"), ("p2_fano", "delta1")],
)
def test_dual_of_free_sum_is_product_of_duals(polytope_service, request, left, right):
    d1 = request.getfixturevalue(left)
    d2 = request.getfixturevalue(right)
    dual_of_sum = polytope_service.polar_dual(polytope_service.free_sum(d1, d2))
    product_of_duals = polytope_service.cartesian_product(
        polytope_service.polar_dual(d1),
        polytope_service.polar_dual(d2),
    )
    assert dual_of_sum.vertices == product_of_duals.vertices
    assert dual_of_sum.facets == product_of_duals.facets


@pytest.mark.parametrize("fixture", ["p2_fano", "p2_moment", "cube3", "delta1", "moment1"])
def test_polar_dual_is_an_involution(polytope_service, request, fixture):
    p = request.getfixturevalue(fixture)
    twice = polytope_service.polar_dual(polytope_service.polar_dual(p))
    assert twice.vertices == p.vertices
    assert twice.facets == p.facets


def test_polar_dual_of_a_rational_polytope(polytope_service):
    p = polytope_service.enumerate_facets(points([(2, 0), (0, 3), (-1, -1)]))
    dual = polytope_service.polar_dual(p)
    assert not dual.is_lattice
    assert polytope_service.polar_dual(dual).vertices == p.vertices


def test_weighted_triangle_is_reflexive_but_singular(polytope_service):
    # conv{e1, e2, -e1 - 2 e2}: facets x + y <= 1, x - y <= 1, -3x + y <= 1
    triangle = polytope_service.enumerate_facets(points([(1, 0), (0, 1), (-1, -2)]))
    assert polytope_service.is_reflexive(triangle)
    assert not polytope_service.is_smooth_fano(triangle)
    dual = polytope_service.polar_dual(triangle)
    assert dual.vertices == tuple(sorted(points([(-1, -1), (-1, 1), (3, -1)])))
