import inspect
import json
import traceback
from collections.abc import Callable
from fractions import Fraction
from functools import wraps
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from app.config.logger import logger

INPUT_ERROR_EXIT_CODE = 1
INTERNAL_ERROR_EXIT_CODE = 2


class ApplicationError(Exception):
    """Base class for all application-specific exceptions."""

    def __init__(self, message: str, *, extra: str | None = None) -> None:
        """Initialize application error."""
        super().__init__(message)
        self.message = message
        log = f"{message!s}" + (f"\n{extra!s}" if extra else "")
        logger.error(log)

    def __str__(self) -> str:
        """Return the string representation."""
        return self.message


class BusinessError(Exception):
    """Exceptions related to expected domain failures (bad input, degenerate geometry)."""

    def __init__(
        self,
        message: str,
        *,
        exit_code: int = INPUT_ERROR_EXIT_CODE,
    ) -> None:
        """Initialize business logic error."""
        super().__init__(message)
        self.message = message
        self.exit_code = exit_code

    def __str__(self) -> str:
        """Return the string representation."""
        return self.message


class SingularMatrixError(BusinessError):
    """Linear system has no unique solution."""


class SingularMomentMatrixError(SingularMatrixError):
    """The centred second-moment matrix of a polytope is degenerate."""


class UnboundedPolyhedronError(BusinessError):
    """Halfspace system admits a recession direction."""


class EmptyPolyhedronError(BusinessError):
    """Halfspace system is infeasible."""


class DegeneratePolytopeError(BusinessError):
    """Point set or polytope is not full-dimensional."""


class OriginNotInteriorError(BusinessError):
    """Operation needs the origin strictly inside the polytope."""


class NotReflexiveError(BusinessError):
    """Operation needs a reflexive polytope."""


class DimensionMismatchError(BusinessError):
    """Objects of different ambient dimensions were combined."""


class ParseError(BusinessError):
    """Malformed polytope file."""

    def __init__(self, message: str, *, line: int, column: int = 1) -> None:
        """Initialize parse error with its position (1-based)."""
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def raise_business_error(message: str, *, exit_code: int | None = None) -> None:
    """Raise Business error exception."""
    kwargs = {}
    if exit_code is not None:
        kwargs["exit_code"] = exit_code
    raise BusinessError(message, **kwargs)


def exit_code_for(exc: BaseException) -> int:
    """Map an exception to the CLI exit code."""
    if isinstance(exc, BusinessError):
        return exc.exit_code
    return INTERNAL_ERROR_EXIT_CODE


def catch_errors(wrapped: Callable[..., Any]) -> Callable[..., Any]:
    """
    Exception handling for pipeline entry points with extra info.
    """

    def get_json(param: Any) -> Any:
        """Return 'param' as json."""
        if isinstance(param, BaseModel):
            return param.model_dump_json()
        if isinstance(param, Fraction):
            return str(param)
        return json.dumps(param, default=str)[:500]

    @wraps(wrapped)
    def wrapper(*args, **kwargs) -> Any:  # noqa: ANN002, ANN003
        try:
            return wrapped(*args, **kwargs)
        except BusinessError:
            raise
        except Exception as e:
            extra = None
            stack = traceback.extract_tb(e.__traceback__)
            frame = stack[-1] if stack else None
            if frame:
                file_path = Path(frame.filename)
                project_root = Path.cwd()
                try:
                    file_name = file_path.relative_to(project_root)
                except ValueError:
                    file_name = str(file_path)
                    file_name = (
                        "site-packages" + file_name.split("site-packages", 1)[-1]
                        if "site-packages" in file_name
                        else file_name
                    )
                line_num = frame.lineno
                method_name = wrapped.__name__
                is_method = bool(args) and "self" in inspect.signature(wrapped).parameters
                if is_method:
                    method_name = f"{args[0].__class__.__name__}.{wrapped.__name__}"

                json_args = [get_json(arg) for arg in args]
                json_kwargs = [f"{key}: {get_json(value)}" for key, value in kwargs.items()]
                if is_method:
                    json_args.pop(0)

                extra = f"Call: {method_name} ({file_name}: {line_num}).\nArgs: {','.join([*json_args, *json_kwargs])}"

            # Log with ApplicationError, then re-raise the original exception
            message = f"{type(e).__module__}.{type(e).__name__}: {e!s}"
            ApplicationError(message=message, extra=extra)
            raise

    return wrapper
