import click

from app.models import CheckStatus
from app.services.paper_check_service import PaperCheckService
from app.utils.exceptions import raise_business_error


@click.command("verify-paper")
@click.option("--skip-slow", is_flag=True, help="Skip the moment, potential and criterion checks.")
def verify_paper(skip_slow: bool) -> None:  # noqa: FBT001
    """
    Check the 10-dimensional example against its published values.
    """
    report = PaperCheckService().run(skip_slow=skip_slow)
    for check in report.checks:
        line = f"{check.status.value:<6} {check.name}"
        if check.status is not CheckStatus.PASS:
            parts = [f"expected={check.expected}" if check.expected else "", f"actual={check.actual}"]
            line += "  " + " ".join(part for part in parts if part)
        if check.detail:
            line += f"  ({check.detail})"
        click.echo(line)
    click.echo(f"{len(report.checks) - report.failed}/{len(report.checks)} checks without failure")
    if report.failed:
        raise_business_error(f"{report.failed} check(s) failed")
