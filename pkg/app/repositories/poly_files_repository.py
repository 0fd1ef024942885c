import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path

from app.config.logger import logger
from app.utils.exact import RatVector, format_scalar, parse_scalar
from app.utils.exceptions import DimensionMismatchError, ParseError

POLY_SUFFIX = ".poly"
HEADER_INT_PATTERN = re.compile(r"[0-9]+")


@dataclass(frozen=True, slots=True)
class PolyFile:
    """
    Contents of a `.poly` file: header `n k`, then k rows of n exact scalars.
    """

    dim: int
    points: tuple[RatVector, ...]
    comments: tuple[str, ...] = ()


def _content_lines(text: str) -> Iterable[tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            yield number, raw


def _tokens(raw: str) -> list[tuple[int, str]]:
    """Whitespace-separated tokens with their 1-based columns."""
    tokens = []
    column = 0
    for token in raw.split():
        column = raw.index(token, column)
        tokens.append((column + 1, token))
        column += len(token)
    return tokens


def _header_int(token: str, *, line: int, column: int, what: str) -> int:
    if not HEADER_INT_PATTERN.fullmatch(token):
        msg = f"{what} must be a non-negative integer, got {token!r}"
        raise ParseError(msg, line=line, column=column)
    return int(token)


def parse_points(text: str) -> PolyFile:
    """
    Parse `.poly` text.

    Raises:
        ParseError: On a malformed header, scalar or row count.
        DimensionMismatchError: When a row has the wrong number of entries.

    """
    comments = tuple(
        line.strip()[1:].strip() for line in text.splitlines() if line.strip().startswith("#")
    )
    lines = iter(_content_lines(text))
    header = next(lines, None)
    if header is None:
        msg = "missing header `n k`"
        raise ParseError(msg, line=1)
    header_line, header_raw = header
    header_tokens = _tokens(header_raw)
    if len(header_tokens) != 2:  # noqa: PLR2004
        msg = f"header must be `n k`, got {header_raw.strip()!r}"
        raise ParseError(msg, line=header_line)
    dim = _header_int(header_tokens[0][1], line=header_line, column=header_tokens[0][0], what="dimension")
    count = _header_int(header_tokens[1][1], line=header_line, column=header_tokens[1][0], what="point count")
    if dim < 1:
        msg = "dimension must be positive"
        raise ParseError(msg, line=header_line, column=header_tokens[0][0])

    points: list[RatVector] = []
    last_line = header_line
    for line, raw in lines:
        last_line = line
        if len(points) == count:
            msg = f"more than the {count} points announced in the header"
            raise ParseError(msg, line=line)
        tokens = _tokens(raw)
        if len(tokens) != dim:
            msg = f"line {line}: expected {dim} coordinates, got {len(tokens)}"
            raise DimensionMismatchError(msg)
        points.append(tuple(parse_scalar(token, line=line, column=column) for column, token in tokens))
    if len(points) != count:
        msg = f"header announces {count} points, found {len(points)}"
        raise ParseError(msg, line=last_line + 1)
    return PolyFile(dim=dim, points=tuple(points), comments=comments)


def serialize_points(dim: int, points: Sequence[RatVector], *, comments: Sequence[str] = ()) -> str:
    """Canonical `.poly` text; points are written in the given order."""
    lines = [f"# {comment}" for comment in comments]
    lines.append(f"{dim} {len(points)}")
    lines.extend(" ".join(format_scalar(x) for x in point) for point in points)
    return "\n".join(lines) + "\n"


class PolyFilesRepository:
    """
    Directory-backed access to `.poly` files.
    """

    def __init__(self, root: Path | None = None) -> None:
        """
        Initialize the repository; relative paths resolve against `root`.
        """
        self.root = root or Path.cwd()

    def _resolve(self, path: Path | str) -> Path:
        path = Path(path)
        return path if path.is_absolute() else self.root / path

    def list_files(self, directory: Path | str) -> list[Path]:
        """`.poly` files of a directory, sorted by name."""
        return sorted(p for p in self._resolve(directory).iterdir() if p.suffix == POLY_SUFFIX and p.is_file())

    def read(self, path: Path | str) -> PolyFile:
        resolved = self._resolve(path)
        logger.debug(f"reading {resolved}")
        return parse_points(resolved.read_text(encoding="utf-8"))

    def write(self, path: Path | str, dim: int, points: Sequence[RatVector], *, comments: Sequence[str] = ()) -> Path:
        resolved = self._resolve(path)
        resolved.write_text(serialize_points(dim, points, comments=comments), encoding="utf-8")
        logger.info(f"wrote {len(points)} points to {resolved}")
        return resolved
