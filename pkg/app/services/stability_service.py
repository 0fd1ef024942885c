import time
from collections.abc import Iterator
from contextlib import contextmanager
from fractions import Fraction

from app.config.logger import logger
from app.models import (
    AffineForm,
    AffinePotential,
    CriterionResult,
    Halfspace,
    InputKind,
    MabuchiResult,
    Polytope,
    QuadraticIntegrand,
    SimplePLFunction,
    StabilityCertificate,
)
from app.services.integration_service import IntegrationService
from app.services.polytope_service import PolytopeService
from app.utils.exact import dot, solve_linear_system
from app.utils.exceptions import (
    NotReflexiveError,
    SingularMatrixError,
    SingularMomentMatrixError,
    catch_errors,
)


@contextmanager
def _stage(timing: dict[str, float], name: str) -> Iterator[None]:
    started = time.perf_counter()
    yield
    timing[name] = round(time.perf_counter() - started, 3)
    logger.info(f"stage {name}: {timing[name]}s")


class StabilityService:
    """
    Potential function, Mabuchi constant and the instability criterion of a moment polytope.
    """

    def __init__(self) -> None:
        """
        Initialize StabilityService with polytope and integration services.
        """
        self.polytope_service = PolytopeService()
        self.integration_service = IntegrationService()

    def _require_reflexive(self, p: Polytope) -> None:
        if not self.polytope_service.is_reflexive(p):
            msg = f"{p!r} is not reflexive"
            raise NotReflexiveError(msg)

    def average_scalar_curvature(self, p: Polytope) -> Fraction:
        """Vol(dP) / Vol(P)."""
        self._require_reflexive(p)
        return self.integration_service.boundary_volume(p) / self.integration_service.volume(p)

    @catch_errors
    def solve_potential(self, p: Polytope) -> AffinePotential:
        """
        The affine theta with L_P(1) = L_P(x_i) = 0.

        Solves sum_j (c_ij - b_i b_j / V) a_j = b_i, then c = -<a, b> / V.

        Raises:
            SingularMomentMatrixError: If the centred moment matrix is singular.
            NotReflexiveError: If p is not reflexive.

        """
        self._require_reflexive(p)
        vol = self.integration_service.volume(p)
        b = self.integration_service.moment_first(p)
        c = self.integration_service.moment_second(p)
        centred = [[c[i][j] - b[i] * b[j] / vol for j in range(p.dim)] for i in range(p.dim)]
        try:
            a = solve_linear_system(centred, b)
        except SingularMatrixError as e:
            msg = f"moment matrix of {p!r} is singular"
            raise SingularMomentMatrixError(msg) from e
        potential = AffinePotential(a=a, c=-dot(a, b) / vol)
        logger.info(f"potential solved for {p!r}")
        return potential

    @catch_errors
    def donaldson_futaki(
        self,
        p: Polytope,
        theta: AffinePotential,
        f: SimplePLFunction | AffineForm,
    ) -> Fraction:
        """
        L_P(f) = int_dP f dsigma - int_P (S + theta) f dv, S the average scalar curvature.

        The boundary term is integrated facet by facet, independently of the
        linear system that produced theta.
        """
        self._require_reflexive(p)
        sbar = self.average_scalar_curvature(p)
        weight = theta.as_form()
        if isinstance(f, SimplePLFunction):
            integrals = self.integration_service.integrate_pl(p, f, weight=weight)
            return integrals.boundary - sbar * integrals.interior[0] - integrals.interior[1]
        boundary = self.integration_service.boundary_integral(p, f)
        interior = self.integration_service.integrate_affine(p, f)
        weighted = self.integration_service.integrate_affine_product(p, QuadraticIntegrand(g=weight, h=f))
        return boundary - sbar * interior - weighted

    def mabuchi_constant(self, p: Polytope, theta: AffinePotential) -> MabuchiResult:
        """Maximum of theta over the vertices; ties go to the lexicographically smallest vertex."""
        best = max(theta(v) for v in p.vertices)
        argmax = next(v for v in p.vertices if theta(v) == best)
        return MabuchiResult(value=best, argmax=argmax)

    def pminus(self, p: Polytope, theta: AffinePotential) -> Polytope:
        """The closed region {theta >= 1} of p."""
        cut = Halfspace(normal=theta.a, offset=theta.c - 1)
        return self.polytope_service.intersect_halfspace(p, cut)

    @catch_errors
    def instability_test(
        self,
        p: Polytope,
        theta: AffinePotential,
        *,
        region: Polytope | None = None,
    ) -> CriterionResult:
        """
        1 - c < int_{P-} (1 - theta)^2 dv / Vol(P-); not applicable when Vol(P-) = 0.
        """
        region = region if region is not None else self.pminus(p, theta)
        vol = self.integration_service.volume(region)
        one_minus_theta = -theta.as_form().shifted(-1)
        integral = self.integration_service.integrate_affine_product(
            region,
            QuadraticIntegrand(g=one_minus_theta, h=one_minus_theta),
        )
        lhs = 1 - theta.c
        rhs = integral / vol if vol else None
        return CriterionResult(
            vol_pminus=vol,
            integral=integral,
            lhs=lhs,
            rhs=rhs,
            satisfied=rhs is not None and lhs < rhs,
            pminus_vertex_count=region.vertex_count,
        )

    @staticmethod
    def destabilizer_candidate(theta: AffinePotential) -> SimplePLFunction:
        """max(0, theta - 1), the function P- singles out."""
        return SimplePLFunction(u=theta.a, d=theta.c - 1)

    def futaki_residuals(self, p: Polytope, theta: AffinePotential) -> list[Fraction]:
        """L_P(1), L_P(x_1), ..., L_P(x_n); all vanish for the solved potential."""
        forms = [AffineForm.constant_form(p.dim, 1)]
        forms += [AffineForm.coordinate(p.dim, i) for i in range(p.dim)]
        return [self.donaldson_futaki(p, theta, form) for form in forms]

    @catch_errors
    def analyze(
        self,
        polytope: Polytope,
        input_kind: InputKind,
        *,
        reference_volume: Fraction | None = None,
    ) -> StabilityCertificate:
        """
        Full pipeline on a Fano polytope (dualised first) or a moment polytope.
        """
        timing: dict[str, float] = {}
        with _stage(timing, "duality"):
            if input_kind is InputKind.FANO_POLYTOPE:
                delta = polytope
                self._require_reflexive(delta)
                p = self.polytope_service.polar_dual(delta)
            else:
                p = polytope
                self._require_reflexive(p)
                delta = self.polytope_service.polar_dual(p)
            smooth = self.polytope_service.is_smooth_fano(delta)
            if not smooth:
                logger.warning(f"{delta!r} is reflexive but not smooth; analysing anyway")

        with _stage(timing, "moments"):
            volume = self.integration_service.volume(p)
            b = self.integration_service.moment_first(p)
            c = self.integration_service.moment_second(p)
        with _stage(timing, "potential"):
            theta = self.solve_potential(p)
            sbar = self.average_scalar_curvature(p)
            residuals_vanish = not any(self.futaki_residuals(p, theta))
            if not residuals_vanish:
                logger.error(f"L_P does not vanish on affine functions for {p!r}")
        with _stage(timing, "mabuchi"):
            mabuchi = self.mabuchi_constant(p, theta)
        with _stage(timing, "criterion"):
            region = self.pminus(p, theta)
            criterion = self.instability_test(p, theta, region=region)
        with _stage(timing, "destabilizer"):
            destabilizer = self.donaldson_futaki(p, theta, self.destabilizer_candidate(theta))

        return StabilityCertificate(
            input_kind=input_kind,
            polytope=p,
            reflexive=True,
            smooth=smooth,
            volume=volume,
            moment_first=b,
            moment_second=c,
            potential=theta,
            sbar=sbar,
            mabuchi=mabuchi,
            criterion=criterion,
            destabilizer_value=destabilizer,
            futaki_residuals_vanish=residuals_vanish,
            fano_vertex_count=delta.vertex_count,
            volume_matches_reference=None if reference_volume is None else volume == reference_volume,
            timing=timing,
        )
