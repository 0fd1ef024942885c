"""
Global pytest fixtures and helpers for the toric stability pipeline.

This module:
- Provides session-scoped services (the expensive objects are built once).
- Builds the small reference polytopes used across the suite.
- Exposes helpers to turn integer literals into exact vectors.
"""

import random
from collections.abc import Iterable
from fractions import Fraction
from itertools import product
from pathlib import Path

import pytest

from app.models import Halfspace, InputKind, Polytope
from app.services.families_service import FamiliesService
from app.services.integration_service import IntegrationService
from app.services.polytope_service import PolytopeService
from app.services.stability_service import StabilityService

DATA_DIR = Path(__file__).parent / "data"


def vec(*values: int | str | Fraction) -> tuple[Fraction, ...]:
    """Exact vector from ints or `p/q` strings."""
    return tuple(Fraction(v) for v in values)


def points(rows: Iterable[Iterable[int]]) -> list[tuple[Fraction, ...]]:
    return [tuple(Fraction(x) for x in row) for row in rows]


def cube_points(n: int) -> list[tuple[Fraction, ...]]:
    """Vertices of [-1, 1]^n."""
    return points(product((-1, 1), repeat=n))


def random_unimodular(rng: random.Random, n: int) -> list[tuple[Fraction, ...]]:
    """An integer matrix with determinant +-1 built from random row operations."""
    matrix = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2)
        factor = rng.choice([-2, -1, 1, 2])
        matrix[i] = [a + factor * b for a, b in zip(matrix[i], matrix[j], strict=True)]
    if n > 1 and rng.random() < 0.5:
        matrix[0], matrix[1] = matrix[1], matrix[0]
    return [tuple(row) for row in matrix]


def box_halfspaces(n: int, bound: int = 1) -> list[Halfspace]:
    """-bound <= x_i <= bound as halfspaces."""
    halfspaces = []
    for i in range(n):
        for sign in (1, -1):
            normal = tuple(Fraction(sign if j == i else 0) for j in range(n))
            halfspaces.append(Halfspace(normal=normal, offset=Fraction(bound)))
    return halfspaces


@pytest.fixture(scope="session")
def polytope_service() -> PolytopeService:
    return PolytopeService()


@pytest.fixture(scope="session")
def integration_service() -> IntegrationService:
    return IntegrationService()


@pytest.fixture(scope="session")
def stability_service() -> StabilityService:
    return StabilityService()


@pytest.fixture(scope="session")
def families_service() -> FamiliesService:
    return FamiliesService()


@pytest.fixture(scope="session")
def square(polytope_service) -> Polytope:
    """[-1, 1]^2."""
    return polytope_service.enumerate_facets(cube_points(2))


@pytest.fixture(scope="session")
def cube3(polytope_service) -> Polytope:
    return polytope_service.enumerate_facets(cube_points(3))


@pytest.fixture(scope="session")
def cross_polytope(polytope_service) -> Polytope:
    """conv{+-e1, +-e2}, the Fano polytope of P1 x P1."""
    return polytope_service.enumerate_facets(points([(1, 0), (-1, 0), (0, 1), (0, -1)]))


@pytest.fixture(scope="session")
def p2_fano(families_service) -> Polytope:
    return families_service.projective_space_polytope(2)


@pytest.fixture(scope="session")
def p2_moment(polytope_service, p2_fano) -> Polytope:
    """conv{(-1,-1), (2,-1), (-1,2)}."""
    return polytope_service.polar_dual(p2_fano)


@pytest.fixture(scope="session")
def interval(polytope_service) -> Polytope:
    """[-1, 1], the moment polytope of P1."""
    return polytope_service.enumerate_facets(points([(-1,), (1,)]))


@pytest.fixture(scope="session")
def delta1(families_service) -> Polytope:
    """The 5-dimensional member r = 1 of the blow-up family."""
    return families_service.xr_fano_polytope(1)


@pytest.fixture(scope="session")
def moment1(polytope_service, delta1) -> Polytope:
    return polytope_service.polar_dual(delta1)


@pytest.fixture(scope="session")
def delta2(families_service) -> Polytope:
    return families_service.xr_fano_polytope(2)


@pytest.fixture(scope="session")
def moment2(polytope_service, delta2) -> Polytope:
    return polytope_service.polar_dual(delta2)


@pytest.fixture(scope="session")
def x2_certificate(stability_service, delta2):
    """Full pipeline on the 10-dimensional example; shared by every slow test."""
    return stability_service.analyze(delta2, InputKind.FANO_POLYTOPE)
