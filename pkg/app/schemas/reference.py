from fractions import Fraction
from functools import cache
from importlib.resources import files

from pydantic import BaseModel

from app.utils.exact import RatVector, parse_scalar

REFERENCE_FILE = "x2_reference.json"


class MomentGroup(BaseModel):
    """One printed value c_ij shared by several (1-based) index pairs."""

    value: str
    entries: list[tuple[int, int]]


class X2Reference(BaseModel):
    """
    Published exact values for the 10-dimensional member of the blow-up family.
    """

    r: int
    p_vertex_count: int
    pminus_vertex_count: int
    b0: str
    b: list[str]
    c: list[MomentGroup]
    theta_coefficients: dict[int, str]
    theta_constant: str
    mabuchi: str
    mabuchi_approx: str
    argmax: list[int]
    one_minus_c: str
    one_minus_c_approx: str
    vol_pminus: str
    vol_pminus_approx: str
    integral_pminus: str
    integral_pminus_approx: str
    lhs_minus_rhs: str
    lhs_minus_rhs_approx: str
    pminus_vertices: list[list[str]]
    p_vertices: list[list[int]]

    @staticmethod
    def exact(text: str) -> Fraction:
        return parse_scalar(text)

    def point(self, coordinates: list[int] | list[str]) -> RatVector:
        return tuple(Fraction(x) if isinstance(x, int) else parse_scalar(x) for x in coordinates)

    @property
    def p_vertex_set(self) -> set[RatVector]:
        return {self.point(v) for v in self.p_vertices}

    @property
    def pminus_vertex_set(self) -> set[RatVector]:
        """
        The listed vertices of P-.

        The printed list has fewer entries than the printed count: rows with a missing
        coordinate, repeated rows and two rows with a truncated denominator are left out.
        """
        return {self.point(v) for v in self.pminus_vertices}

    def moment_second_entries(self) -> dict[tuple[int, int], Fraction]:
        """(i, j) with 0-based indices to the printed c_ij, both orders."""
        entries = {}
        for group in self.c:
            value = parse_scalar(group.value)
            for i, j in group.entries:
                entries[i - 1, j - 1] = value
                entries[j - 1, i - 1] = value
        return entries

    def printed_row_gap(self, first: int, second: int) -> Fraction:
        """
        Row `first` minus row `second` (1-based) of sum_j c_ij a_j + b_i (c - 1) = 0 at the printed theta.

        Every exact solution of the potential system gives 0.

        Raises:
            ValueError: If an unprinted coefficient does not cancel between the two rows.

        """
        c = self.moment_second_entries()
        b = [self.exact(x) for x in self.b]
        i, k = first - 1, second - 1
        gap = (b[i] - b[k]) * (self.exact(self.theta_constant) - 1)
        for j in range(len(b)):
            weight = c[i, j] - c[k, j]
            if j + 1 in self.theta_coefficients:
                gap += weight * self.exact(self.theta_coefficients[j + 1])
            elif weight:
                msg = f"a{j + 1} is not printed and does not cancel between rows {first} and {second}"
                raise ValueError(msg)
        return gap


@cache
def load_x2_reference() -> X2Reference:
    text = files("app.data").joinpath(REFERENCE_FILE).read_text(encoding="utf-8")
    return X2Reference.model_validate_json(text)
