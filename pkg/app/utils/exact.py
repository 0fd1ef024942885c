"""
Exact rational kernel.

Scalars are `fractions.Fraction` (always reduced, positive denominator); vectors and
matrices are tuples of them. Elimination works on integer rows obtained by clearing
denominators, so the inner loops run on Python ints.
"""

import re
from collections.abc import Iterable, Sequence
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from app.utils.exceptions import DimensionMismatchError, ParseError, SingularMatrixError

type RatVector = tuple[Fraction, ...]
type RatMatrix = tuple[RatVector, ...]
type IntVector = tuple[int, ...]

SCALAR_PATTERN = re.compile(r"[+-]?[0-9]+(?:/[0-9]+)?")

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(value: int | str | Fraction) -> Fraction:
    """
    Coerce an int, a `p/q` string or a Fraction into a Fraction.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return parse_scalar(value)


def parse_scalar(text: str, *, line: int = 1, column: int = 1) -> Fraction:
    """
    Parse the `p/q` (or integer) text form; the denominator must be positive.
    """
    token = text.strip()
    if not SCALAR_PATTERN.fullmatch(token):
        msg = f"not an exact scalar: {token!r}"
        raise ParseError(msg, line=line, column=column)
    if "/" in token and int(token.split("/", 1)[1]) == 0:
        msg = f"zero denominator: {token!r}"
        raise ParseError(msg, line=line, column=column)
    return Fraction(token)


def format_scalar(value: Fraction) -> str:
    """Return `p/q`, or `p` when q = 1; the sign sits on the numerator."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def render_decimal(value: Fraction, digits: int) -> str:
    """
    Render `value` with `digits` significant digits, rounding half to even.
    """
    if value == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = ROUND_HALF_EVEN
        approx = Decimal(value.numerator) / Decimal(value.denominator)
    return format(approx, "f")


def vector(values: Iterable[int | str | Fraction]) -> RatVector:
    """Build a RatVector."""
    return tuple(to_fraction(v) for v in values)


def matrix(rows: Iterable[Iterable[int | str | Fraction]]) -> RatMatrix:
    """Build a rectangular RatMatrix."""
    result = tuple(vector(row) for row in rows)
    if result and any(len(row) != len(result[0]) for row in result):
        msg = "matrix rows have different lengths"
        raise DimensionMismatchError(msg)
    return result


def _check_same_length(u: Sequence, v: Sequence) -> None:
    if len(u) != len(v):
        msg = f"vector lengths differ: {len(u)} != {len(v)}"
        raise DimensionMismatchError(msg)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    """Exact inner product."""
    _check_same_length(u, v)
    return sum((a * b for a, b in zip(u, v, strict=True)), ZERO)


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> RatVector:
    """Componentwise difference."""
    _check_same_length(u, v)
    return tuple(a - b for a, b in zip(u, v, strict=True))


def identity_matrix(n: int) -> RatMatrix:
    """n x n identity."""
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def transpose(a: Sequence[Sequence[Fraction]]) -> RatMatrix:
    """Matrix transpose."""
    return tuple(zip(*a, strict=True)) if a else ()


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> RatMatrix:
    """Matrix product."""
    columns = transpose(b)
    return tuple(tuple(dot(row, col) for col in columns) for row in a)


def matvec(a: Sequence[Sequence[Fraction]], x: Sequence[Fraction]) -> RatVector:
    """Matrix-vector product."""
    return tuple(dot(row, x) for row in a)


def integer_row(row: Sequence[Fraction]) -> tuple[list[int], int]:
    """
    Clear denominators of a row.

    Returns the integer row and the positive factor it was multiplied by.
    """
    factor = reduce(lcm, (x.denominator for x in row), 1)
    return [x.numerator * (factor // x.denominator) for x in row], factor


def primitive_integer_vector(values: Sequence[Fraction | int]) -> IntVector:
    """
    Scale a rational vector by a positive factor into a primitive integer vector.

    The zero vector is returned unchanged.
    """
    ints, _ = integer_row([Fraction(v) for v in values])
    divisor = reduce(gcd, ints, 0)
    if divisor == 0:
        return tuple(ints)
    return tuple(x // divisor for x in ints)


def _require_square(a: Sequence[Sequence[Fraction]]) -> int:
    n = len(a)
    if any(len(row) != n for row in a):
        msg = "matrix is not square"
        raise DimensionMismatchError(msg)
    return n


def _bareiss_forward(rows: list[list[int]], n: int) -> int | None:
    """
    Fraction-free forward elimination on the first n columns, in place.

    Pivots are chosen by largest magnitude. Returns the permutation sign,
    or None when a zero pivot column shows the leading block is singular.
    """
    sign = 1
    previous = 1
    width = len(rows[0]) if rows else 0
    for k in range(n):
        pivot_row = max(range(k, n), key=lambda i: abs(rows[i][k]))
        if rows[pivot_row][k] == 0:
            return None
        if pivot_row != k:
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            sign = -sign
        pivot = rows[k][k]
        pivot_tail = rows[k]
        for i in range(k + 1, n):
            row = rows[i]
            lead = row[k]
            for j in range(k + 1, width):
                row[j] = (row[j] * pivot - lead * pivot_tail[j]) // previous
            row[k] = 0
        previous = pivot
    return sign


def determinant(a: Sequence[Sequence[Fraction]]) -> Fraction:
    """
    Exact determinant with sign.
    """
    n = _require_square(a)
    if n == 0:
        return ONE
    rows: list[list[int]] = []
    denominator = 1
    for row in a:
        ints, factor = integer_row(row)
        rows.append(ints)
        denominator *= factor
    sign = _bareiss_forward(rows, n)
    if sign is None:
        return ZERO
    return Fraction(sign * rows[n - 1][n - 1], denominator)


def integer_determinant(a: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix, staying in ints."""
    n = len(a)
    if n == 0:
        return 1
    rows = [list(row) for row in a]
    sign = _bareiss_forward(rows, n)
    if sign is None:
        return 0
    return sign * rows[n - 1][n - 1]


def solve_linear_system(a: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> RatVector:
    """
    Solve A x = rhs exactly.

    Raises:
        SingularMatrixError: If rank(A) < n.
        DimensionMismatchError: If shapes disagree.

    """
    n = _require_square(a)
    if len(rhs) != n:
        msg = f"right-hand side has length {len(rhs)}, expected {n}"
        raise DimensionMismatchError(msg)
    rows = [integer_row([*row, Fraction(b)])[0] for row, b in zip(a, rhs, strict=True)]
    if _bareiss_forward(rows, n) is None:
        msg = "matrix is singular"
        raise SingularMatrixError(msg)
    solution: list[Fraction] = [ZERO] * n
    for i in range(n - 1, -1, -1):
        row = rows[i]
        acc = Fraction(row[n])
        for j in range(i + 1, n):
            if row[j]:
                acc -= row[j] * solution[j]
        solution[i] = acc / row[i]
    return tuple(solution)


def _echelon_rows(a: Iterable[Sequence[Fraction | int]]) -> list[list[int]]:
    """
    Integer row echelon form; every row is kept primitive (divided by its gcd).
    """
    rows = []
    for row in a:
        ints = list(primitive_integer_vector(row))
        if any(ints):
            rows.append(ints)
    if not rows:
        return []
    width = len(rows[0])
    echelon: list[list[int]] = []
    column = 0
    while rows and column < width:
        pivot_index = next((i for i, row in enumerate(rows) if row[column]), None)
        if pivot_index is None:
            column += 1
            continue
        pivot_row = rows.pop(pivot_index)
        pivot = pivot_row[column]
        reduced = []
        for row in rows:
            lead = row[column]
            if lead:
                row = [x * pivot - lead * p for x, p in zip(row, pivot_row, strict=True)]  # noqa: PLW2901
                divisor = reduce(gcd, row, 0)
                if divisor == 0:
                    continue
                row = [x // divisor for x in row]  # noqa: PLW2901
            reduced.append(row)
        rows = reduced
        echelon.append(pivot_row)
        column += 1
    return echelon


def rank(a: Iterable[Sequence[Fraction | int]]) -> int:
    """Exact rank of a (possibly non-square) matrix."""
    return len(_echelon_rows(a))


def affine_rank(points: Sequence[Sequence[Fraction]]) -> int:
    """Dimension of the affine hull of `points`; -1 for no points."""
    if not points:
        return -1
    base = points[0]
    return rank(sub(p, base) for p in points[1:])


def hyperplane_normal(rows: Sequence[Sequence[Fraction]]) -> IntVector | None:
    """
    Primitive integer generator of the kernel of an (n-1) x n matrix.

    Uses signed maximal minors; returns None when the rank is below n - 1.
    """
    if not rows:
        return None
    n = len(rows[0])
    int_rows = [integer_row(row)[0] for row in rows]
    cofactors = []
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in int_rows]
        cofactors.append((-1) ** j * integer_determinant(minor))
    if not any(cofactors):
        return None
    return primitive_integer_vector(cofactors)
