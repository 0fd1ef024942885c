from dataclasses import dataclass
from fractions import Fraction

from app.utils.exact import RatVector, dot, primitive_integer_vector


@dataclass(frozen=True, slots=True, order=True)
class Halfspace:
    """
    The closed halfspace l(x) = <x, normal> + offset >= 0.
    """

    normal: RatVector
    offset: Fraction

    @property
    def dim(self) -> int:
        return len(self.normal)

    @property
    def is_primitive(self) -> bool:
        """True when the normal is an integer vector with gcd 1."""
        if any(x.denominator != 1 for x in self.normal):
            return False
        return primitive_integer_vector(self.normal) == tuple(int(x) for x in self.normal)

    def value(self, point: RatVector) -> Fraction:
        """Evaluate the defining affine function."""
        return dot(point, self.normal) + self.offset

    def normalized(self) -> "Halfspace":
        """
        Rescale by a positive factor so that the normal is primitive integral.
        """
        primitive = primitive_integer_vector(self.normal)
        pivot = next((i for i, x in enumerate(self.normal) if x), None)
        if pivot is None:
            return self
        factor = Fraction(primitive[pivot]) / self.normal[pivot]
        return Halfspace(
            normal=tuple(Fraction(x) for x in primitive),
            offset=self.offset * factor,
        )

    def flipped(self) -> "Halfspace":
        """The opposite closed halfspace."""
        return Halfspace(normal=tuple(-x for x in self.normal), offset=-self.offset)
