import csv
import io
import multiprocessing
from pathlib import Path

from app.config.logger import logger
from app.config.settings import settings
from app.models import InputKind
from app.repositories.poly_files_repository import PolyFilesRepository
from app.schemas import SCAN_COLUMNS, ScanRow
from app.services.polytope_service import PolytopeService
from app.services.stability_service import StabilityService
from app.utils.exact import format_scalar, render_decimal


def analyze_file(path: Path, input_kind: InputKind, digits: int) -> ScanRow:
    """
    Analyse one `.poly` file; any failure becomes the row's `error`.
    """
    try:
        poly_file = PolyFilesRepository().read(path)
        polytope = PolytopeService().enumerate_facets(list(poly_file.points))
        certificate = StabilityService().analyze(polytope, input_kind)
    except Exception as e:  # noqa: BLE001
        logger.warning(f"scan: {path.name} failed: {e}")
        return ScanRow(name=path.name, error=f"{type(e).__name__}: {e}")
    return ScanRow(
        name=path.name,
        dim=polytope.dim,
        vertices=polytope.vertex_count,
        mabuchi=format_scalar(certificate.mabuchi.value),
        mabuchi_approx=render_decimal(certificate.mabuchi.value, digits),
        sufficient_polystable=certificate.sufficient_polystable,
        ding_unstable=certificate.ding_unstable,
        criterion_applicable=certificate.criterion.applicable,
        criterion_satisfied=certificate.criterion.satisfied,
    )


def _analyze_task(task: tuple[str, str, int]) -> ScanRow:
    path, kind, digits = task
    return analyze_file(Path(path), InputKind(kind), digits)


class ScanService:
    """
    Batch analysis of a directory of `.poly` files.
    """

    def __init__(self) -> None:
        """
        Initialize ScanService with a PolyFilesRepository instance.
        """
        self.repository = PolyFilesRepository()

    def scan(
        self,
        directory: Path | str,
        *,
        jobs: int | None = None,
        input_kind: InputKind = InputKind.FANO_POLYTOPE,
        digits: int | None = None,
    ) -> list[ScanRow]:
        """One row per file, sorted by file name, whatever the number of workers."""
        jobs = jobs or settings.SCAN_JOBS
        digits = digits or settings.DECIMAL_DIGITS
        files = self.repository.list_files(directory)
        logger.info(f"scan: {len(files)} files in {directory} with {jobs} worker(s)")
        tasks = [(str(path), input_kind.value, digits) for path in files]
        if jobs > 1 and len(tasks) > 1:
            with multiprocessing.Pool(processes=min(jobs, len(tasks))) as pool:
                rows = pool.map(_analyze_task, tasks)
        else:
            rows = [_analyze_task(task) for task in tasks]
        return sorted(rows, key=lambda row: row.name)

    @staticmethod
    def to_csv(rows: list[ScanRow]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(SCAN_COLUMNS)
        writer.writerows(row.as_csv_row() for row in rows)
        return buffer.getvalue()
