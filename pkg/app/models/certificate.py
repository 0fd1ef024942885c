from dataclasses import dataclass, field
from fractions import Fraction

from app.utils.exact import RatMatrix, RatVector

from .enums import InputKind
from .polytope import Polytope
from .potential import AffinePotential, CriterionResult, MabuchiResult


@dataclass(frozen=True, slots=True)
class StabilityCertificate:
    """
    Everything the pipeline computed for one moment polytope.

    `sufficient_polystable` (M <= 1) and `ding_unstable` (M > 1) are exclusive;
    the criterion is kept independently of both.
    """

    input_kind: InputKind
    polytope: Polytope
    reflexive: bool
    smooth: bool
    volume: Fraction
    moment_first: RatVector
    moment_second: RatMatrix
    potential: AffinePotential
    sbar: Fraction
    mabuchi: MabuchiResult
    criterion: CriterionResult
    destabilizer_value: Fraction
    futaki_residuals_vanish: bool
    fano_vertex_count: int
    volume_matches_reference: bool | None = None
    timing: dict[str, float] = field(default_factory=dict)

    @property
    def sufficient_polystable(self) -> bool:
        return self.mabuchi.value <= 1

    @property
    def ding_unstable(self) -> bool:
        return self.mabuchi.value > 1
