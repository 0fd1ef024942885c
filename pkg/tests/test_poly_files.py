"""
`.poly` files:
- Parsing with comments and exact scalars.
- Errors carry their position.
- Directory access through the repository.
"""

from fractions import Fraction

import pytest

from app.repositories.poly_files_repository import PolyFilesRepository, parse_points, serialize_points
from app.schemas import load_x2_reference
from app.utils.exceptions import DimensionMismatchError, ParseError

from .conftest import DATA_DIR, vec


def test_parse_square():
    poly_file = parse_points((DATA_DIR / "square.poly").read_text())
    assert poly_file.dim == 2
    assert poly_file.points == (vec(1, 1), vec(1, -1), vec(-1, 1), vec(-1, -1))
    assert poly_file.comments == ("[-1, 1]^2",)


def test_parse_rationals_and_blank_lines():
    poly_file = parse_points("\n1 2\n\n  -3/6\n7/1\n")
    assert poly_file.points == ((Fraction(-1, 2),), (Fraction(7),))


@pytest.mark.parametrize(
    ("text", "line", "column"),
    [
        ("", 1, 1),
        ("2\n1 1\n", 1, 1),
        ("2 x\n", 1, 3),
        ("2 2\n1 1\n1 1.5\n", 3, 3),
        ("2 2\n1 1\n", 3, 1),
        ("2 1\n1 1\n2 2\n", 3, 1),
        ("\u00b2 3\n", 1, 1),
        ("2 \u0663\n", 1, 3),
        ("2 1\n1 \u00b2\n", 2, 3),
    ],
)
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as error:
        parse_points(text)
    assert (error.value.line, error.value.column) == (line, column)


def test_row_length_mismatch():
    with pytest.raises(DimensionMismatchError, match="line 4"):
        parse_points((DATA_DIR / "bad_row.poly").read_text())


def test_serialize_keeps_order_and_comments():
    text = serialize_points(2, [vec("1/2", -3), vec(0, 1)], comments=["first", "second"])
    assert text == "# first\n# second\n2 2\n1/2 -3\n0 1\n"


def test_round_trip_of_a_large_rational_vertex():
    vertex = next(v for v in load_x2_reference().pminus_vertices if any("/" in x for x in v))
    text = "10 1\n" + " ".join(vertex) + "\n"
    parsed = parse_points(text)
    assert serialize_points(parsed.dim, parsed.points) == text
    assert any(x.denominator > 10**20 for x in parsed.points[0])


def test_repository_lists_reads_and_writes(tmp_path):
    repository = PolyFilesRepository(root=DATA_DIR)
    assert [p.name for p in repository.list_files("scan")] == [
        "a_p2.poly",
        "b_bl1p2.poly",
        "c_big_cross.poly",
        "d_broken.poly",
    ]
    assert repository.read("cross.poly").dim == 2

    written = PolyFilesRepository(root=tmp_path).write("out.poly", 1, [vec(-1), vec(1)], comments=["interval"])
    assert written == tmp_path / "out.poly"
    assert written.read_text() == "# interval\n1 2\n-1\n1\n"
