from fractions import Fraction

from pydantic import BaseModel, Field

from app.config.settings import settings
from app.models import InputKind, StabilityCertificate
from app.utils.exact import RatVector, format_scalar, render_decimal

DESTABILIZER_CANDIDATE = "max(0, theta_P - 1)"


def _exact(values: RatVector) -> list[str]:
    return [format_scalar(x) for x in values]


class InputBlock(BaseModel):
    """Where the polytope came from."""

    kind: InputKind
    source: str
    generators: list[list[str]] | None = None


class PolytopeBlock(BaseModel):
    dim: int
    vertex_count: int
    facet_count: int
    fano_vertex_count: int
    reflexive: bool
    smooth: bool
    dropped_halfspaces: int = 0


class MomentsBlock(BaseModel):
    """Exact moments of the moment polytope, `p/q` strings."""

    volume: str
    volume_approx: str
    volume_matches_reference: bool | None = None
    b: list[str]
    c: list[list[str]]


class PotentialBlock(BaseModel):
    a: list[str]
    c: str
    sbar: str
    futaki_residuals_vanish: bool


class MabuchiBlock(BaseModel):
    value: str
    approx: str
    argmax: list[str]


class CriterionBlock(BaseModel):
    vol_pminus: str
    vol_pminus_approx: str
    integral: str
    integral_approx: str
    lhs: str
    lhs_approx: str
    rhs: str | None = None
    rhs_approx: str | None = None
    lhs_minus_rhs: str | None = None
    lhs_minus_rhs_approx: str | None = None
    satisfied: bool
    applicable: bool
    pminus_vertices: int


class VerdictBlock(BaseModel):
    sufficient_polystable: bool
    ding_unstable: bool
    criterion: CriterionBlock


class DestabilizerBlock(BaseModel):
    candidate: str = DESTABILIZER_CANDIDATE
    value: str
    approx: str
    negative: bool


class CertificateDocument(BaseModel):
    """
    JSON certificate of one analysis. Exact values are `p/q` strings.
    """

    schema_version: str = settings.SCHEMA_VERSION
    digits: int
    input: InputBlock
    polytope: PolytopeBlock
    moments: MomentsBlock
    potential: PotentialBlock
    mabuchi: MabuchiBlock
    verdicts: VerdictBlock
    destabilizer: DestabilizerBlock
    timing: dict[str, float] = Field(default_factory=dict)

    @classmethod
    def from_certificate(
        cls,
        certificate: StabilityCertificate,
        *,
        source: str,
        digits: int | None = None,
        generators: list[list[str]] | None = None,
    ) -> "CertificateDocument":
        """
        Serialise a StabilityCertificate; approximations use `digits` significant digits.
        """
        digits = digits or settings.DECIMAL_DIGITS

        def approx(value: Fraction) -> str:
            return render_decimal(value, digits)

        p = certificate.polytope
        criterion = certificate.criterion
        gap = criterion.lhs_minus_rhs
        return cls(
            digits=digits,
            input=InputBlock(kind=certificate.input_kind, source=source, generators=generators),
            polytope=PolytopeBlock(
                dim=p.dim,
                vertex_count=p.vertex_count,
                facet_count=p.facet_count,
                fano_vertex_count=certificate.fano_vertex_count,
                reflexive=certificate.reflexive,
                smooth=certificate.smooth,
                dropped_halfspaces=p.dropped_halfspaces,
            ),
            moments=MomentsBlock(
                volume=format_scalar(certificate.volume),
                volume_approx=approx(certificate.volume),
                volume_matches_reference=certificate.volume_matches_reference,
                b=_exact(certificate.moment_first),
                c=[_exact(row) for row in certificate.moment_second],
            ),
            potential=PotentialBlock(
                a=_exact(certificate.potential.a),
                c=format_scalar(certificate.potential.c),
                sbar=format_scalar(certificate.sbar),
                futaki_residuals_vanish=certificate.futaki_residuals_vanish,
            ),
            mabuchi=MabuchiBlock(
                value=format_scalar(certificate.mabuchi.value),
                approx=approx(certificate.mabuchi.value),
                argmax=_exact(certificate.mabuchi.argmax),
            ),
            verdicts=VerdictBlock(
                sufficient_polystable=certificate.sufficient_polystable,
                ding_unstable=certificate.ding_unstable,
                criterion=CriterionBlock(
                    vol_pminus=format_scalar(criterion.vol_pminus),
                    vol_pminus_approx=approx(criterion.vol_pminus),
                    integral=format_scalar(criterion.integral),
                    integral_approx=approx(criterion.integral),
                    lhs=format_scalar(criterion.lhs),
                    lhs_approx=approx(criterion.lhs),
                    rhs=None if criterion.rhs is None else format_scalar(criterion.rhs),
                    rhs_approx=None if criterion.rhs is None else approx(criterion.rhs),
                    lhs_minus_rhs=None if gap is None else format_scalar(gap),
                    lhs_minus_rhs_approx=None if gap is None else approx(gap),
                    satisfied=criterion.satisfied,
                    applicable=criterion.applicable,
                    pminus_vertices=criterion.pminus_vertex_count,
                ),
            ),
            destabilizer=DestabilizerBlock(
                value=format_scalar(certificate.destabilizer_value),
                approx=approx(certificate.destabilizer_value),
                negative=certificate.destabilizer_value < 0,
            ),
            timing=certificate.timing,
        )

    def to_json(self, *, include_timing: bool = True) -> str:
        """
        Pretty JSON text. Without the timing block identical inputs give identical text.
        """
        exclude = None if include_timing else {"timing"}
        return self.model_dump_json(indent=2, exclude=exclude)
