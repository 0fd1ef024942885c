from dataclasses import dataclass
from fractions import Fraction

from app.utils.exact import RatVector, dot

from .halfspace import Halfspace
from .simplex import AffineForm


@dataclass(frozen=True, slots=True)
class AffinePotential:
    """
    theta(x) = <a, x> + c, normalised so that its integral over P vanishes.
    """

    a: RatVector
    c: Fraction

    def __call__(self, point: RatVector) -> Fraction:
        return dot(self.a, point) + self.c

    def as_form(self) -> AffineForm:
        return AffineForm(coefficients=self.a, constant=self.c)


@dataclass(frozen=True, slots=True)
class SimplePLFunction:
    """f(x) = max(0, <u, x> + d)."""

    u: RatVector
    d: Fraction

    def __post_init__(self) -> None:
        if self.d == 0 and not any(self.u):
            msg = "a simple piecewise linear function needs (u, d) != 0"
            raise ValueError(msg)

    def __call__(self, point: RatVector) -> Fraction:
        return max(Fraction(0), dot(self.u, point) + self.d)

    @property
    def active_piece(self) -> AffineForm:
        """The affine function on the region where f is positive."""
        return AffineForm(coefficients=self.u, constant=self.d)

    @property
    def kink(self) -> Halfspace:
        """The closed halfspace where f coincides with its affine piece."""
        return Halfspace(normal=self.u, offset=self.d)


@dataclass(frozen=True, slots=True)
class PLIntegrals:
    """
    Integrals of a simple PL function f = max(0, g).

    `interior` is the pair (int_P f dv, int_P w * f dv) for the requested weight w;
    `boundary` is int_{dP} f dsigma.
    """

    interior: tuple[Fraction, Fraction]
    boundary: Fraction


@dataclass(frozen=True, slots=True)
class MabuchiResult:
    """Maximum of theta over P and the lexicographically smallest vertex attaining it."""

    value: Fraction
    argmax: RatVector


@dataclass(frozen=True, slots=True)
class CriterionResult:
    """
    Instability criterion 1 - c < int_{P-} (1 - theta)^2 dv / Vol(P-).

    Not applicable (rhs is None, satisfied False) when Vol(P-) = 0.
    """

    vol_pminus: Fraction
    integral: Fraction
    lhs: Fraction
    rhs: Fraction | None
    satisfied: bool
    pminus_vertex_count: int

    @property
    def applicable(self) -> bool:
        return self.rhs is not None

    @property
    def lhs_minus_rhs(self) -> Fraction | None:
        if self.rhs is None:
            return None
        return self.lhs - self.rhs
