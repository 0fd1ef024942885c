import sys
from collections.abc import Sequence

import click

from app.commands.cli import cli
from app.config.logger import logger
from app.utils.exceptions import INPUT_ERROR_EXIT_CODE, BusinessError, exit_code_for


def run_cli(argv: Sequence[str] | None = None) -> int:
    """
    Run one command and return its exit code: 0 ok, 1 input error, 2 internal error.
    """
    try:
        result = cli.main(args=list(argv) if argv is not None else None, standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return INPUT_ERROR_EXIT_CODE
    except click.Abort:
        click.echo("Aborted!", err=True)
        return INPUT_ERROR_EXIT_CODE
    except BusinessError as e:
        logger.error(e.message)
        return exit_code_for(e)
    except Exception as e:
        logger.exception(f"{type(e).__name__}: {e}")
        return exit_code_for(e)
    return result if isinstance(result, int) else 0


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
