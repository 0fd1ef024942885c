from fractions import Fraction

from app.config.logger import logger
from app.models import MoriRelationReport, Polytope, RelationCheck, XrSpec
from app.models.families import vector_sum
from app.services.polytope_service import PolytopeService
from app.utils.exact import IntVector, RatVector
from app.utils.exceptions import INTERNAL_ERROR_EXIT_CODE, raise_business_error


def _rational(points: tuple[IntVector, ...]) -> list[RatVector]:
    return [tuple(Fraction(x) for x in p) for p in points]


class FamiliesService:
    """
    Constructors for the Fano polytopes used as inputs and test cases.
    """

    def __init__(self) -> None:
        """
        Initialize FamiliesService with a PolytopeService instance.
        """
        self.polytope_service = PolytopeService()

    def xr_fano_polytope(self, r: int) -> Polytope:
        """
        Convex hull of the 8r + 2 generators of the 5r-dimensional blow-up family.
        """
        spec = XrSpec(r)
        delta = self.polytope_service.enumerate_facets(_rational(spec.generators))
        if delta.vertex_count != spec.vertex_count:
            msg = f"expected {spec.vertex_count} vertices for r={r}, got {delta.vertex_count}"
            raise_business_error(msg, exit_code=INTERNAL_ERROR_EXIT_CODE)
        logger.info(f"family r={r}: picard number {delta.vertex_count - delta.dim}")
        return delta

    def projective_space_polytope(self, n: int) -> Polytope:
        """conv{e_1, ..., e_n, -(e_1 + ... + e_n)}."""
        if n < 1:
            msg = f"n must be positive, got {n}"
            raise_business_error(msg)
        points = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
        points.append(tuple(Fraction(-1) for _ in range(n)))
        return self.polytope_service.enumerate_facets(points)

    def del_pezzo_polytopes(self) -> dict[str, Polytope]:
        """The five smooth toric del Pezzo surfaces."""
        rays: dict[str, list[IntVector]] = {
            "P2": [(1, 0), (0, 1), (-1, -1)],
            "P1xP1": [(1, 0), (0, 1), (-1, 0), (0, -1)],
            "Bl1P2": [(1, 0), (1, 1), (0, 1), (-1, -1)],
            "Bl2P2": [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1)],
            "Bl3P2": [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)],
        }
        return {name: self.polytope_service.enumerate_facets(_rational(tuple(v))) for name, v in rays.items()}

    def mori_relation_check(self, r: int) -> MoriRelationReport:
        """
        Check the two relation families among the generators for 1 <= i <= r.

        Z family:  u_{i+1} + ... + u_{2r+1} + y_1 + ... + y_i = v_1 + ... + v_i, degree 2r+1-i
        Y family:  u_{r+1} + ... + u_{2r+1} + y_{i+1} + ... + y_r + z_1 + ... + z_i
                   = v_1 + ... + v_r + w_{1,1} + ... + w_{i,1}, degree r+1-i

        The degree is the number of left terms minus the number of right terms.
        """
        spec = XrSpec(r)
        n = spec.dimension
        relations = []
        for i in range(1, r + 1):
            lhs = [(f"u{k}", spec.u[k - 1]) for k in range(i + 1, 2 * r + 2)]
            lhs += [(f"y{k}", spec.y[k - 1]) for k in range(1, i + 1)]
            rhs = [(f"v{k}", spec.v[k - 1]) for k in range(1, i + 1)]
            relations.append(self._relation("Z", i, lhs, rhs, 2 * r + 1 - i, n))
        for i in range(1, r + 1):
            lhs = [(f"u{k}", spec.u[k - 1]) for k in range(r + 1, 2 * r + 2)]
            lhs += [(f"y{k}", spec.y[k - 1]) for k in range(i + 1, r + 1)]
            lhs += [(f"z{k}", spec.z[k - 1]) for k in range(1, i + 1)]
            rhs = [(f"v{k}", spec.v[k - 1]) for k in range(1, r + 1)]
            rhs += [(f"w{k}1", spec.w[k - 1][0]) for k in range(1, i + 1)]
            relations.append(self._relation("Y", i, lhs, rhs, r + 1 - i, n))
        report = MoriRelationReport(r=r, relations=tuple(relations))
        if not report.all_hold:
            logger.warning(f"relation check failed for r={r}")
        return report

    @staticmethod
    def _relation(
        family: str,
        i: int,
        lhs: list[tuple[str, IntVector]],
        rhs: list[tuple[str, IntVector]],
        expected_degree: int,
        dim: int,
    ) -> RelationCheck:
        holds = vector_sum(dim, *(v for _, v in lhs)) == vector_sum(dim, *(v for _, v in rhs))
        return RelationCheck(
            family=family,
            i=i,
            lhs=tuple(name for name, _ in lhs),
            rhs=tuple(name for name, _ in rhs),
            holds=holds,
            degree=len(lhs) - len(rhs),
            expected_degree=expected_degree,
        )
