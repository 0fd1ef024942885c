from pathlib import Path

import click

from app.config.logger import logger
from app.models import InputKind
from app.services.scan_service import ScanService

service = ScanService()


@click.command("scan")
@click.argument("directory", type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.option("--jobs", type=click.IntRange(min=1), help="Worker processes.")
@click.option("--csv", "csv_out", type=click.Path(dir_okay=False, path_type=Path), help="Write the CSV here.")
@click.option("--moment-polytope", is_flag=True, help="Files list moment polytopes instead of Fano polytopes.")
@click.option("--digits", type=click.IntRange(1, 200), help="Significant digits of the Mabuchi approximation.")
def scan(
    directory: Path,
    jobs: int | None,
    csv_out: Path | None,
    moment_polytope: bool,  # noqa: FBT001
    digits: int | None,
) -> None:
    """
    Analyse every `.poly` file of DIRECTORY, one CSV row per file.
    """
    kind = InputKind.MOMENT_POLYTOPE if moment_polytope else InputKind.FANO_POLYTOPE
    rows = service.scan(directory, jobs=jobs, input_kind=kind, digits=digits)
    failed = sum(row.error is not None for row in rows)
    if failed:
        logger.warning(f"scan: {failed} of {len(rows)} files failed")
    text = service.to_csv(rows)
    if csv_out is None:
        click.echo(text, nl=False)
    else:
        csv_out.write_text(text, encoding="utf-8")
        logger.info(f"scan: {len(rows)} rows written to {csv_out}")
