from pathlib import Path

import click

from app.config.logger import logger
from app.models import InputKind
from app.repositories.poly_files_repository import PolyFilesRepository
from app.schemas import CertificateDocument
from app.services.polytope_service import PolytopeService
from app.services.stability_service import StabilityService
from app.utils.exact import format_scalar, parse_scalar

repository = PolyFilesRepository()
polytope_service = PolytopeService()
stability_service = StabilityService()


@click.command("analyze")
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option(
    "--fano-polytope",
    "input_kind",
    flag_value=InputKind.FANO_POLYTOPE.value,
    help="FILE lists the vertices of a reflexive Fano polytope.",
)
@click.option(
    "--moment-polytope",
    "input_kind",
    flag_value=InputKind.MOMENT_POLYTOPE.value,
    help="FILE lists the vertices of a reflexive moment polytope.",
)
@click.option("--json", "json_out", type=click.Path(dir_okay=False, path_type=Path), help="Write the certificate here.")
@click.option("--digits", type=click.IntRange(1, 200), help="Significant digits of the approximations.")
@click.option("--reference-volume", help="Exact volume (`p/q`) to compare the computed volume against.")
def analyze(
    file: Path,
    input_kind: str | None,
    json_out: Path | None,
    digits: int | None,
    reference_volume: str | None,
) -> None:
    """
    Run the full stability pipeline on FILE and print its certificate.
    """
    if input_kind is None:
        msg = "one of --fano-polytope or --moment-polytope is required"
        raise click.UsageError(msg)
    kind = InputKind(input_kind)
    poly_file = repository.read(file)
    polytope = polytope_service.enumerate_facets(list(poly_file.points))
    reference = None if reference_volume is None else parse_scalar(reference_volume)
    certificate = stability_service.analyze(polytope, kind, reference_volume=reference)

    generators = None
    if kind is InputKind.FANO_POLYTOPE:
        generators = [[format_scalar(x) for x in v] for v in polytope.vertices]
    document = CertificateDocument.from_certificate(
        certificate,
        source=file.name,
        digits=digits,
        generators=generators,
    )
    text = document.to_json()
    if json_out is None:
        click.echo(text)
    else:
        json_out.write_text(text + "\n", encoding="utf-8")
        logger.info(f"certificate written to {json_out}")
