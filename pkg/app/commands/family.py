from fractions import Fraction
from pathlib import Path

import click

from app.models import XrSpec
from app.repositories.poly_files_repository import PolyFilesRepository
from app.services.families_service import FamiliesService
from app.services.polytope_service import PolytopeService

service = FamiliesService()
repository = PolyFilesRepository()


def family_comments(spec: XrSpec, vertices: tuple[tuple[Fraction, ...], ...]) -> list[str]:
    """Header comments naming the generators in listing order and in file order."""
    names = {tuple(Fraction(x) for x in g): label for g, label in zip(spec.generators, spec.labels, strict=True)}
    return [
        f"blow-up family r={spec.r}: dimension {spec.dimension}, picard number {spec.picard_number}",
        "listing order: " + " ".join(spec.labels),
        "file order: " + " ".join(names[v] for v in vertices),
    ]


@click.command("family")
@click.option("--r", "r", type=click.IntRange(min=1), required=True, help="Family parameter r >= 1.")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write the polytope here.")
def family(r: int, out: Path | None) -> None:
    """
    Emit the Fano polytope of the blow-up family as a `.poly` file.
    """
    delta = service.xr_fano_polytope(r)
    comments = family_comments(XrSpec(r), delta.vertices)
    if out is None:
        click.echo(PolytopeService.serialize_polytope(delta, comments=comments), nl=False)
    else:
        repository.write(out, delta.dim, delta.vertices, comments=comments)
