"""
Exact H <-> V conversion through cddlib's double description method.

Rows follow the cdd layout: an inequality is (b, a) for b + <a, x> >= 0 and a
generator is (t, x) with t = 1 for a point and t = 0 for a direction.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import cdd

from app.config.logger import logger
from app.utils.exact import RatVector

NUMBER_TYPE = "fraction"


@dataclass(frozen=True, slots=True)
class Generators:
    """V-representation of a polyhedron: points, rays and lines."""

    points: list[RatVector] = field(default_factory=list)
    rays: list[RatVector] = field(default_factory=list)
    lines: list[RatVector] = field(default_factory=list)

    @property
    def is_bounded(self) -> bool:
        return not self.rays and not self.lines


def _matrix(rows: Sequence[Sequence[Fraction | int]], rep_type: cdd.RepType) -> cdd.Matrix:
    matrix = cdd.Matrix([list(row) for row in rows], number_type=NUMBER_TYPE)
    matrix.rep_type = rep_type
    return matrix


def _rows(matrix: cdd.Matrix) -> list[tuple[Fraction, ...]]:
    return [tuple(Fraction(x) for x in matrix[i]) for i in range(matrix.row_size)]


def generators(inequalities: Sequence[Sequence[Fraction | int]]) -> Generators:
    """
    Points, rays and lines of {x : b + <a, x> >= 0 for every row (b, a)}.

    An infeasible system gives no generators at all.
    """
    polyhedron = cdd.Polyhedron(_matrix(inequalities, cdd.RepType.INEQUALITY))
    output = polyhedron.get_generators()
    result = Generators()
    for index, (t, *x) in enumerate(_rows(output)):
        if index in output.lin_set:
            result.lines.append(tuple(x))
        elif t:
            result.points.append(tuple(xi / t for xi in x))
        else:
            result.rays.append(tuple(x))
    logger.debug(
        f"cdd: {len(inequalities)} inequalities -> {len(result.points)} points, "
        f"{len(result.rays)} rays, {len(result.lines)} lines",
    )
    return result


def inequalities(points: Sequence[RatVector]) -> list[tuple[Fraction, RatVector]]:
    """
    Facet inequalities (b, a) of conv(points), each meaning b + <a, x> >= 0.

    Implicit equations of a lower dimensional hull are returned as two opposite rows.
    """
    polyhedron = cdd.Polyhedron(_matrix([[1, *p] for p in points], cdd.RepType.GENERATOR))
    output = polyhedron.get_inequalities()
    result = []
    for index, (b, *a) in enumerate(_rows(output)):
        if not any(a):
            continue
        result.append((b, tuple(a)))
        if index in output.lin_set:
            result.append((-b, tuple(-x for x in a)))
    logger.debug(f"cdd: {len(points)} points -> {len(result)} inequalities")
    return result
