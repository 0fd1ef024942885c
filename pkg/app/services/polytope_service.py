from collections.abc import Iterable, Sequence
from fractions import Fraction
from itertools import combinations

from app.config.logger import logger
from app.config.settings import settings
from app.models import EnumerationMethod, Halfspace, Polytope
from app.repositories.poly_files_repository import parse_points, serialize_points
from app.services import double_description
from app.utils.exact import (
    RatVector,
    affine_rank,
    determinant,
    hyperplane_normal,
    matvec,
    rank,
    solve_linear_system,
    sub,
    transpose,
    vector,
)
from app.utils.exceptions import (
    DegeneratePolytopeError,
    DimensionMismatchError,
    EmptyPolyhedronError,
    OriginNotInteriorError,
    SingularMatrixError,
    UnboundedPolyhedronError,
    catch_errors,
)


def _check_dimension(items: Iterable[Sequence], dim: int, what: str) -> None:
    for item in items:
        if len(item) != dim:
            msg = f"{what} of length {len(item)} in ambient dimension {dim}"
            raise DimensionMismatchError(msg)


def _empty(dim: int) -> Polytope:
    return Polytope(dim=dim, vertices=(), facets=(), incidence=(), affine_dim=-1)


def assemble(dim: int, points: Iterable[RatVector], halfspaces: Iterable[Halfspace]) -> Polytope:
    """
    Build a Polytope from its vertex set and a valid inequality description.

    Halfspaces are normalised and deduplicated; one is kept only when the vertices
    it touches span a face of codimension one, so redundant inequalities and
    implicit equations are dropped (and counted).
    """
    vertices = tuple(sorted(set(points)))
    _check_dimension(vertices, dim, "vertex")
    normalized = sorted({h.normalized() for h in halfspaces})
    _check_dimension((h.normal for h in normalized), dim, "normal")
    affine_dim = affine_rank(vertices)
    if affine_dim <= 0:
        return Polytope(
            dim=dim,
            vertices=vertices,
            facets=(),
            incidence=(),
            affine_dim=affine_dim,
            dropped_halfspaces=len(normalized),
        )

    kept: dict[frozenset[int], Halfspace] = {}
    for halfspace in normalized:
        touching = frozenset(i for i, v in enumerate(vertices) if halfspace.value(v) == 0)
        if touching in kept:
            continue
        if affine_rank([vertices[i] for i in touching]) == affine_dim - 1:
            kept[touching] = halfspace
    facets = sorted(kept.items(), key=lambda item: item[1])
    return Polytope(
        dim=dim,
        vertices=vertices,
        facets=tuple(h for _, h in facets),
        incidence=tuple(members for members, _ in facets),
        affine_dim=affine_dim,
        dropped_halfspaces=len(normalized) - len(facets),
    )


class PolytopeService:
    """
    Conversions between V- and H-representations, duality and constructions.
    """

    def __init__(self, method: EnumerationMethod | None = None) -> None:
        """
        Initialize PolytopeService with the enumeration engine to use.
        """
        self.method = method or EnumerationMethod(settings.ENUMERATION_METHOD)

    @catch_errors
    def enumerate_vertices(
        self,
        halfspaces: Sequence[Halfspace],
        dim: int,
        *,
        method: EnumerationMethod | None = None,
    ) -> Polytope:
        """
        Vertices of the bounded polyhedron {x : l_j(x) >= 0}.

        Raises:
            UnboundedPolyhedronError: If a recession direction exists.
            EmptyPolyhedronError: If the system is infeasible.

        """
        _check_dimension((h.normal for h in halfspaces), dim, "normal")
        if rank(h.normal for h in halfspaces) < dim:
            msg = "normals do not span the ambient space; the polyhedron has a lineality direction"
            raise UnboundedPolyhedronError(msg)
        method = method or self.method
        if method is EnumerationMethod.SUBSETS:
            points = self._vertices_by_subsets(halfspaces, dim)
        else:
            points = self._vertices_by_double_description(halfspaces)
        polytope = assemble(dim, points, halfspaces)
        if polytope.dropped_halfspaces:
            logger.warning(f"{polytope.dropped_halfspaces} redundant inequalities dropped")
        logger.info(f"enumerate_vertices[{method.value}]: {len(halfspaces)} halfspaces -> {polytope!r}")
        return polytope

    @staticmethod
    def _vertices_by_double_description(halfspaces: Sequence[Halfspace]) -> list[RatVector]:
        found = double_description.generators([(h.offset, *h.normal) for h in halfspaces])
        if not found.points:
            msg = "halfspace system is infeasible"
            raise EmptyPolyhedronError(msg)
        if not found.is_bounded:
            msg = "halfspace system has a recession direction"
            raise UnboundedPolyhedronError(msg)
        return found.points

    @staticmethod
    def _vertices_by_subsets(halfspaces: Sequence[Halfspace], dim: int) -> list[RatVector]:
        points: set[RatVector] = set()
        for subset in combinations(halfspaces, dim):
            try:
                point = solve_linear_system(
                    [h.normal for h in subset],
                    [-h.offset for h in subset],
                )
            except SingularMatrixError:
                continue
            if all(h.value(point) >= 0 for h in halfspaces):
                points.add(point)
        if not points:
            msg = "halfspace system is infeasible"
            raise EmptyPolyhedronError(msg)
        # recession cone {d : <u, d> >= 0}
        recession = double_description.generators([(0, *h.normal) for h in halfspaces])
        if not recession.is_bounded:
            msg = "halfspace system has a recession direction"
            raise UnboundedPolyhedronError(msg)
        return list(points)

    @catch_errors
    def enumerate_facets(
        self,
        points: Sequence[RatVector],
        *,
        method: EnumerationMethod | None = None,
    ) -> Polytope:
        """
        Convex hull of `points` with its irredundant facet list.

        Raises:
            DegeneratePolytopeError: If the points do not span the space affinely.

        """
        if not points:
            msg = "no points given"
            raise DegeneratePolytopeError(msg)
        dim = len(points[0])
        _check_dimension(points, dim, "point")
        points = sorted(set(points))
        if affine_rank(points) < dim:
            msg = f"points span an affine space of dimension {affine_rank(points)} < {dim}"
            raise DegeneratePolytopeError(msg)
        method = method or self.method
        if method is EnumerationMethod.SUBSETS:
            facets = self._facets_by_subsets(points, dim)
        else:
            facets = self._facets_by_double_description(points)
        vertices = [
            p for p in points
            if rank(h.normal for h in facets if h.value(p) == 0) == dim
        ]
        polytope = assemble(dim, vertices, facets)
        logger.info(f"enumerate_facets[{method.value}]: {len(points)} points -> {polytope!r}")
        return polytope

    @staticmethod
    def _facets_by_double_description(points: Sequence[RatVector]) -> list[Halfspace]:
        return [
            Halfspace(normal=a, offset=b)
            for b, a in double_description.inequalities(points)
        ]

    @staticmethod
    def _facets_by_subsets(points: Sequence[RatVector], dim: int) -> list[Halfspace]:
        facets: set[Halfspace] = set()
        for subset in combinations(points, dim):
            base = subset[0]
            normal = hyperplane_normal([sub(p, base) for p in subset[1:]]) if dim > 1 else (1,)
            if normal is None:
                continue
            halfspace = Halfspace(
                normal=vector(normal),
                offset=-sum((Fraction(a) * b for a, b in zip(normal, base, strict=True)), Fraction(0)),
            )
            values = [halfspace.value(p) for p in points]
            if all(v >= 0 for v in values):
                facets.add(halfspace)
            elif all(v <= 0 for v in values):
                facets.add(halfspace.flipped())
        return list(facets)

    @staticmethod
    def contains_origin_interior(p: Polytope) -> bool:
        return p.is_full_dimensional and all(h.offset > 0 for h in p.facets)

    @catch_errors
    def polar_dual(self, p: Polytope) -> Polytope:
        """
        {x : <x, v> >= -1 for every vertex v of p}.

        Facet (u, c) of p becomes the vertex u / c, so no enumeration is needed.
        """
        if not self.contains_origin_interior(p):
            msg = "polar dual needs the origin strictly inside the polytope"
            raise OriginNotInteriorError(msg)
        vertices = [tuple(x / h.offset for x in h.normal) for h in p.facets]
        facets = [Halfspace(normal=v, offset=Fraction(1)) for v in p.vertices]
        dual = assemble(p.dim, vertices, facets)
        logger.info(f"polar_dual: {p!r} -> {dual!r}")
        return dual

    def is_reflexive(self, delta: Polytope) -> bool:
        """
        Lattice polytope with the origin inside and every primitive facet offset equal to 1.
        """
        if delta.is_empty or not delta.is_lattice:
            return False
        if not self.contains_origin_interior(delta):
            return False
        return all(h.is_primitive and h.offset == 1 for h in delta.facets)

    def is_smooth_fano(self, delta: Polytope) -> bool:
        """
        Every facet is spanned by exactly n vertices forming a basis of the lattice.
        """
        if not self.is_reflexive(delta):
            return False
        for members in delta.incidence:
            if len(members) != delta.dim:
                return False
            if abs(determinant([delta.vertices[i] for i in sorted(members)])) != 1:
                return False
        return True

    @catch_errors
    def intersect_halfspace(self, p: Polytope, h: Halfspace) -> Polytope:
        """
        p intersected with {l_h >= 0}; the result may be empty or lower-dimensional.

        New vertices are the points where the hyperplane crosses an edge of p;
        two vertices span an edge when the facets through both meet in exactly them.
        """
        if h.dim != p.dim:
            msg = f"halfspace of dimension {h.dim} cut against a polytope of dimension {p.dim}"
            raise DimensionMismatchError(msg)
        if p.is_empty:
            return p
        values = [h.value(v) for v in p.vertices]
        if all(v >= 0 for v in values):
            return p
        if all(v < 0 for v in values):
            return _empty(p.dim)

        full_mask = (1 << p.vertex_count) - 1
        above = [i for i, v in enumerate(values) if v > 0]
        below = [i for i, v in enumerate(values) if v < 0]
        points = [p.vertices[i] for i, v in enumerate(values) if v >= 0]
        for i in above:
            through_i = p.vertex_facets[i]
            for j in below:
                face = full_mask
                for k in through_i & p.vertex_facets[j]:
                    face &= p.facet_masks[k]
                if face != (1 << i) | (1 << j):
                    continue
                t = values[i] / (values[i] - values[j])
                points.append(tuple(a + t * (b - a) for a, b in zip(p.vertices[i], p.vertices[j], strict=True)))
        result = assemble(p.dim, points, [*p.facets, h])
        logger.debug(f"intersect_halfspace: {p!r} -> {result!r}")
        return result

    def cartesian_product(self, p1: Polytope, p2: Polytope) -> Polytope:
        """Product polytope in dimension n1 + n2 with lifted facets."""
        if p1.is_empty or p2.is_empty:
            return _empty(p1.dim + p2.dim)
        zeros1 = (Fraction(0),) * p1.dim
        zeros2 = (Fraction(0),) * p2.dim
        vertices = [v + w for v in p1.vertices for w in p2.vertices]
        facets = [Halfspace(normal=h.normal + zeros2, offset=h.offset) for h in p1.facets]
        facets += [Halfspace(normal=zeros1 + h.normal, offset=h.offset) for h in p2.facets]
        return assemble(p1.dim + p2.dim, vertices, facets)

    def free_sum(self, d1: Polytope, d2: Polytope) -> Polytope:
        """
        conv(d1 x {0} and {0} x d2); its facets pair up the facets of the summands.
        """
        if not (self.contains_origin_interior(d1) and self.contains_origin_interior(d2)):
            msg = "free sum needs the origin strictly inside both summands"
            raise OriginNotInteriorError(msg)
        zeros1 = (Fraction(0),) * d1.dim
        zeros2 = (Fraction(0),) * d2.dim
        vertices = [v + zeros2 for v in d1.vertices] + [zeros1 + w for w in d2.vertices]
        facets = [
            Halfspace(
                normal=tuple(x / f.offset for x in f.normal) + tuple(y / g.offset for y in g.normal),
                offset=Fraction(1),
            )
            for f in d1.facets
            for g in d2.facets
        ]
        return assemble(d1.dim + d2.dim, vertices, facets)

    def apply_linear_map(self, p: Polytope, a: Sequence[Sequence[Fraction]]) -> Polytope:
        """
        Image of p under an invertible x -> A x; facets transform by the inverse transpose.
        """
        if determinant(a) == 0:
            msg = "linear map is singular"
            raise SingularMatrixError(msg)
        images = [matvec(a, v) for v in p.vertices]
        facets = []
        columns = transpose(a)
        for h in p.facets:
            # l(A^-1 y) >= 0: normal' solves A^T normal' = normal
            normal = solve_linear_system(columns, h.normal)
            facets.append(Halfspace(normal=normal, offset=h.offset))
        return assemble(p.dim, images, facets)

    @catch_errors
    def parse_polytope(self, text: str) -> Polytope:
        """Convex hull of the points of a `.poly` text."""
        poly_file = parse_points(text)
        return self.enumerate_facets(list(poly_file.points))

    @staticmethod
    def serialize_polytope(p: Polytope, *, comments: Sequence[str] = ()) -> str:
        """`.poly` text of the vertices in canonical order."""
        return serialize_points(p.dim, p.vertices, comments=comments)
