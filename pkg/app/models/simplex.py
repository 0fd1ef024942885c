from dataclasses import dataclass
from fractions import Fraction

from app.utils.exact import RatVector, dot


@dataclass(frozen=True, slots=True)
class Simplex:
    """
    n + 1 points with signed volume det(p1 - p0, ..., pn - p0) / n!.
    """

    points: tuple[RatVector, ...]
    signed_volume: Fraction

    @property
    def volume(self) -> Fraction:
        return abs(self.signed_volume)


@dataclass(frozen=True, slots=True)
class AffineForm:
    """x -> <coefficients, x> + constant."""

    coefficients: RatVector
    constant: Fraction

    def __call__(self, point: RatVector) -> Fraction:
        return dot(self.coefficients, point) + self.constant

    @classmethod
    def constant_form(cls, dim: int, value: Fraction | int) -> "AffineForm":
        return cls(coefficients=(Fraction(0),) * dim, constant=Fraction(value))

    @classmethod
    def coordinate(cls, dim: int, index: int) -> "AffineForm":
        """The coordinate function x_index (0-based)."""
        return cls(
            coefficients=tuple(Fraction(int(i == index)) for i in range(dim)),
            constant=Fraction(0),
        )

    def __neg__(self) -> "AffineForm":
        return AffineForm(tuple(-a for a in self.coefficients), -self.constant)

    def shifted(self, delta: Fraction | int) -> "AffineForm":
        """The form plus a constant."""
        return AffineForm(self.coefficients, self.constant + delta)


@dataclass(frozen=True, slots=True)
class QuadraticIntegrand:
    """The product g(x) * h(x) of two affine forms."""

    g: AffineForm
    h: AffineForm

    def __call__(self, point: RatVector) -> Fraction:
        return self.g(point) * self.h(point)
