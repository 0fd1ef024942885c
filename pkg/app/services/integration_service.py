"""
Exact integration over rational polytopes.

A polytope is cut into simplices by a pulling triangulation driven purely by the
facet-vertex incidence: every face is coned from its extreme vertex (lex-min or
lex-max) over the facets of that face not containing it. Integrals of affine and
quadratic integrands then reduce to weights attached to vertices and vertex pairs:

    int_S g h dv = Vol(S) / ((n+1)(n+2)) * (sum_k g_k h_k + (sum_k g_k)(sum_k h_k))

so only |det| per simplex has to be accumulated. Coordinates are scaled to integers
by the lcm of all denominators; the scale is divided out at the end.
"""

import time
import weakref
from collections import defaultdict
from collections.abc import Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import factorial, lcm

from app.config.logger import logger
from app.models import (
    AffineForm,
    ApexRule,
    Halfspace,
    PLIntegrals,
    Polytope,
    QuadraticIntegrand,
    Simplex,
    SimplePLFunction,
)
from app.services.polytope_service import PolytopeService
from app.utils.exact import RatMatrix, RatVector, integer_determinant, integer_row
from app.utils.exceptions import DegeneratePolytopeError, NotReflexiveError, catch_errors


def _bits(mask: int) -> list[int]:
    indices = []
    while mask:
        low = mask & -mask
        indices.append(low.bit_length() - 1)
        mask ^= low
    return indices


class _Triangulator:
    """Pulling triangulation of a polytope and its faces, memoised by vertex mask."""

    def __init__(self, p: Polytope, apex: ApexRule) -> None:
        self.p = p
        self.apex = apex
        self.full_mask = (1 << p.vertex_count) - 1
        self._faces: dict[int, tuple[tuple[int, ...], ...]] = {}

    def pick_apex(self, mask: int) -> int:
        if self.apex is ApexRule.LEX_MIN:
            return (mask & -mask).bit_length() - 1
        return mask.bit_length() - 1

    def facets_of(self, mask: int) -> list[int]:
        """Facets of the face `mask`: the maximal proper traces of the polytope's facets."""
        traces = {mask & f for f in self.p.facet_masks} - {0, mask}
        return [t for t in traces if not any(t != other and t & other == t for other in traces)]

    def face_simplices(self, mask: int, dim: int) -> tuple[tuple[int, ...], ...]:
        cached = self._faces.get(mask)
        if cached is None:
            cached = tuple(self.cone_simplices(mask, dim))
            self._faces[mask] = cached
        return cached

    def cone_simplices(self, mask: int, dim: int) -> Iterator[tuple[int, ...]]:
        """Simplices (vertex index tuples, apex last) of the face `mask` of dimension `dim`."""
        if mask.bit_count() == dim + 1:
            yield tuple(_bits(mask))
            return
        apex = self.pick_apex(mask)
        apex_bit = 1 << apex
        for facet in self.facets_of(mask):
            if facet & apex_bit:
                continue
            for simplex in self.face_simplices(facet, dim - 1):
                yield (*simplex, apex)


@dataclass(slots=True)
class _BoundaryWeights:
    total: int = 0
    vertex: dict[int, int] = field(default_factory=lambda: defaultdict(int))


class _Weights:
    """
    Per-vertex and per-pair |det| sums of one triangulation, in integer coordinates.
    """

    def __init__(self, p: Polytope, apex: ApexRule) -> None:
        self.p = p
        self.n = p.dim
        self.scale = reduce(lcm, (x.denominator for v in p.vertices for x in v), 1)
        self.points = [integer_row([x * self.scale for x in v])[0] for v in p.vertices]
        self.triangulator = _Triangulator(p, apex)
        self.simplex_count = 0
        self.total = 0
        self.vertex: list[int] = [0] * p.vertex_count
        self.pair: dict[tuple[int, int], int] = defaultdict(int)
        self._accumulate()

    def _accumulate(self) -> None:
        started = time.perf_counter()
        points = self.points
        vertex = self.vertex
        pair = self.pair
        for simplex in self.triangulator.cone_simplices(self.triangulator.full_mask, self.n):
            apex = points[simplex[-1]]
            rows = [[a - b for a, b in zip(points[k], apex, strict=True)] for k in simplex[:-1]]
            weight = abs(integer_determinant(rows))
            self.simplex_count += 1
            self.total += weight
            ordered = sorted(simplex)
            for position, k in enumerate(ordered):
                vertex[k] += weight
                for l in ordered[position + 1 :]:  # noqa: E741
                    pair[k, l] += weight
        logger.info(
            f"triangulated {self.p!r} ({self.triangulator.apex.value}): "
            f"{self.simplex_count} simplices in {time.perf_counter() - started:.2f}s",
        )

    @property
    def denominator(self) -> int:
        """n! * scale^n: turns an accumulated |det| into a volume."""
        return factorial(self.n) * self.scale**self.n

    @cached_property
    def boundary(self) -> list[_BoundaryWeights]:
        """Per facet, |det(s_1, ..., s_n)| sums over the facet's simplices."""
        result = []
        for j, mask in enumerate(self.p.facet_masks):
            weights = _BoundaryWeights()
            for simplex in self.triangulator.face_simplices(mask, self.n - 1):
                det = abs(integer_determinant([self.points[k] for k in simplex]))
                weights.total += det
                for k in simplex:
                    weights.vertex[k] += det
            result.append(weights)
            logger.debug(f"boundary weights for facet {j}: {weights.total}")
        return result


class IntegrationService:
    """
    Triangulation and exact integration of degree <= 2 integrands.
    """

    def __init__(self) -> None:
        """
        Initialize IntegrationService with a PolytopeService and an empty weight cache.
        """
        self.polytope_service = PolytopeService()
        self._cache: weakref.WeakKeyDictionary[Polytope, dict[ApexRule, _Weights]] = weakref.WeakKeyDictionary()

    def _weights(self, p: Polytope, apex: ApexRule) -> _Weights:
        per_rule = self._cache.setdefault(p, {})
        if apex not in per_rule:
            per_rule[apex] = _Weights(p, apex)
        return per_rule[apex]

    def _require_reflexive(self, p: Polytope) -> None:
        if not self.polytope_service.is_reflexive(p):
            msg = "boundary measure is only defined here for reflexive polytopes"
            raise NotReflexiveError(msg)

    @catch_errors
    def triangulate(self, p: Polytope, *, apex: ApexRule = ApexRule.LEX_MIN) -> list[Simplex]:
        """
        Simplices with disjoint interiors covering p.

        Raises:
            DegeneratePolytopeError: If p is not full-dimensional.

        """
        if not p.is_full_dimensional:
            msg = f"cannot triangulate {p!r}: not full-dimensional"
            raise DegeneratePolytopeError(msg)
        triangulator = _Triangulator(p, apex)
        n = p.dim
        simplices = []
        for indices in triangulator.cone_simplices(triangulator.full_mask, n):
            points = tuple(p.vertices[i] for i in indices)
            base = points[0]
            rows = [[a - b for a, b in zip(q, base, strict=True)] for q in points[1:]]
            ints, factor = [], 1
            for row in rows:
                row_ints, row_factor = integer_row(row)
                ints.append(row_ints)
                factor *= row_factor
            signed = Fraction(integer_determinant(ints), factor * factorial(n))
            simplices.append(Simplex(points=points, signed_volume=signed))
        return simplices

    def volume(self, p: Polytope, *, apex: ApexRule = ApexRule.LEX_MIN) -> Fraction:
        """Lebesgue volume; 0 for empty or lower-dimensional p."""
        if not p.is_full_dimensional:
            return Fraction(0)
        weights = self._weights(p, apex)
        return Fraction(weights.total, weights.denominator)

    def moment_first(self, p: Polytope, *, apex: ApexRule = ApexRule.LEX_MIN) -> RatVector:
        """b_i = integral of x_i over p."""
        if not p.is_full_dimensional:
            return (Fraction(0),) * p.dim
        weights = self._weights(p, apex)
        sums = [0] * p.dim
        for k, w in enumerate(weights.vertex):
            if w:
                for i, x in enumerate(weights.points[k]):
                    sums[i] += w * x
        denominator = weights.denominator * (p.dim + 1) * weights.scale
        return tuple(Fraction(s, denominator) for s in sums)

    def moment_second(self, p: Polytope, *, apex: ApexRule = ApexRule.LEX_MIN) -> RatMatrix:
        """c_ij = integral of x_i x_j over p."""
        n = p.dim
        if not p.is_full_dimensional:
            return tuple((Fraction(0),) * n for _ in range(n))
        weights = self._weights(p, apex)
        points = weights.points
        sums = [[0] * n for _ in range(n)]
        for k, w in enumerate(weights.vertex):
            if w:
                q = points[k]
                for i in range(n):
                    wi = 2 * w * q[i]
                    if wi:
                        row = sums[i]
                        for j in range(i, n):
                            row[j] += wi * q[j]
        for (k, l), w in weights.pair.items():
            q, r = points[k], points[l]
            for i in range(n):
                qi, ri = q[i], r[i]
                if qi or ri:
                    row = sums[i]
                    for j in range(i, n):
                        row[j] += w * (qi * r[j] + ri * q[j])
        denominator = weights.denominator * (n + 1) * (n + 2) * weights.scale**2
        return tuple(
            tuple(Fraction(sums[min(i, j)][max(i, j)], denominator) for j in range(n))
            for i in range(n)
        )

    def integrate_affine(self, p: Polytope, g: AffineForm, *, apex: ApexRule = ApexRule.LEX_MIN) -> Fraction:
        """Integral of an affine form over p."""
        if not p.is_full_dimensional:
            return Fraction(0)
        weights = self._weights(p, apex)
        values, factor = integer_row([g(v) for v in p.vertices])
        total = sum(w * g_k for w, g_k in zip(weights.vertex, values, strict=True))
        return Fraction(total, weights.denominator * (p.dim + 1) * factor)

    @catch_errors
    def integrate_affine_product(
        self,
        p: Polytope,
        q: QuadraticIntegrand,
        *,
        apex: ApexRule = ApexRule.LEX_MIN,
    ) -> Fraction:
        """Integral of g * h over p; 0 when p is not full-dimensional."""
        if not p.is_full_dimensional:
            return Fraction(0)
        weights = self._weights(p, apex)
        g, g_factor = integer_row([q.g(v) for v in p.vertices])
        h, h_factor = integer_row([q.h(v) for v in p.vertices])
        total = sum(2 * w * g[k] * h[k] for k, w in enumerate(weights.vertex) if w)
        for (k, l), w in weights.pair.items():
            total += w * (g[k] * h[l] + g[l] * h[k])
        denominator = weights.denominator * (p.dim + 1) * (p.dim + 2) * g_factor * h_factor
        return Fraction(total, denominator)

    def _boundary_integral(self, p: Polytope, facet_indices: list[int], g: AffineForm) -> Fraction:
        """
        Integral of g against d(sigma) over the listed facets.

        A facet simplex S with apex 0 has dsigma-area n * Vol(conv(0, S)) / c_j.
        """
        if not facet_indices:
            return Fraction(0)
        weights = self._weights(p, ApexRule.LEX_MIN)
        values, factor = integer_row([g(v) for v in p.vertices])
        n = p.dim
        result = Fraction(0)
        for j in facet_indices:
            facet = weights.boundary[j]
            total = sum(w * values[k] for k, w in facet.vertex.items())
            result += Fraction(total, factor) / p.facets[j].offset
        return result / (factorial(n - 1) * weights.scale**n * n)

    @catch_errors
    def boundary_integral(self, p: Polytope, g: AffineForm) -> Fraction:
        """Integral of an affine form over dP against dsigma."""
        self._require_reflexive(p)
        return self._boundary_integral(p, list(range(p.facet_count)), g)

    @catch_errors
    def boundary_volume(self, p: Polytope) -> Fraction:
        """Vol(dP) in the dsigma measure."""
        self._require_reflexive(p)
        return self._boundary_integral(p, list(range(p.facet_count)), AffineForm.constant_form(p.dim, 1))

    @catch_errors
    def boundary_moment_first(self, p: Polytope) -> RatVector:
        """Integrals of x_i over dP against dsigma."""
        self._require_reflexive(p)
        facets = list(range(p.facet_count))
        return tuple(self._boundary_integral(p, facets, AffineForm.coordinate(p.dim, i)) for i in range(p.dim))

    @catch_errors
    def integrate_pl(
        self,
        p: Polytope,
        f: SimplePLFunction,
        *,
        weight: AffineForm | None = None,
    ) -> PLIntegrals:
        """
        Integrals of f = max(0, g) over p and over its boundary.

        The interior pair is (int_P f dv, int_P weight * f dv), computed on
        Q = P cut by {g >= 0}; the boundary part runs over the facets of Q that lie
        in facets of P, where f coincides with g.
        """
        self._require_reflexive(p)
        weight = weight or AffineForm.constant_form(p.dim, 1)
        zero = Fraction(0)
        q = self.polytope_service.intersect_halfspace(p, f.kink)
        if not q.is_full_dimensional:
            return PLIntegrals(interior=(zero, zero), boundary=zero)
        g = f.active_piece
        interior = (
            self.integrate_affine(q, g),
            self.integrate_affine_product(q, QuadraticIntegrand(g=weight, h=g)),
        )
        p_facets: set[Halfspace] = set(p.facets)
        on_boundary = [j for j, h in enumerate(q.facets) if h in p_facets]
        boundary = self._boundary_integral(q, on_boundary, g)
        return PLIntegrals(interior=interior, boundary=boundary)
