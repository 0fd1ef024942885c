from pydantic import BaseModel

from app.models import CheckStatus

SCAN_COLUMNS = (
    "name",
    "dim",
    "vertices",
    "mabuchi",
    "mabuchi_approx",
    "sufficient_polystable",
    "ding_unstable",
    "criterion_applicable",
    "criterion_satisfied",
    "error",
)


class ScanRow(BaseModel):
    """One `.poly` file of a scan; failures carry `error` and leave the rest empty."""

    name: str
    dim: int | None = None
    vertices: int | None = None
    mabuchi: str | None = None
    mabuchi_approx: str | None = None
    sufficient_polystable: bool | None = None
    ding_unstable: bool | None = None
    criterion_applicable: bool | None = None
    criterion_satisfied: bool | None = None
    error: str | None = None

    def as_csv_row(self) -> list[str]:
        values = self.model_dump()
        return [_cell(values[column]) for column in SCAN_COLUMNS]


class CheckResult(BaseModel):
    """Outcome of one acceptance check of `verify-paper`."""

    name: str
    status: CheckStatus
    expected: str | None = None
    actual: str | None = None
    detail: str | None = None


class CheckReport(BaseModel):
    checks: list[CheckResult]

    @property
    def failed(self) -> int:
        return sum(check.status is CheckStatus.FAIL for check in self.checks)


def _cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    return str(value)
