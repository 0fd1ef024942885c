import logging

import click

from app.commands import analyze, family, scan, verify_paper
from app.config.logger import set_level
from app.config.settings import settings


@click.group(name="toric-kstability")
@click.version_option(version=settings.SCHEMA_VERSION, message="%(prog)s certificate schema %(version)s")
@click.option("--verbose", "-v", is_flag=True, help="Log every pipeline step.")
@click.option("--quiet", "-q", is_flag=True, help="Log warnings and errors only.")
def cli(verbose: bool, quiet: bool) -> None:  # noqa: FBT001
    """Exact K-stability checks for toric Fano manifolds."""
    if verbose:
        set_level(logging.DEBUG)
    elif quiet:
        set_level(logging.WARNING)


cli.add_command(family.family)
cli.add_command(analyze.analyze)
cli.add_command(scan.scan)
cli.add_command(verify_paper.verify_paper)
