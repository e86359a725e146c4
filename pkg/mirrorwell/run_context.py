"""
Run Context Management

Carries a run id through one CLI invocation or one HTTP request without
threading it through every solver signature.

The run id flows automatically through:
- CLI subcommands
- HTTP requests (see middleware.LoggingMiddleware)
- Spectrum searches, oracle runs and table builds
- Logging entries (see logging_config.RunIdProcessor)

Usage Examples:
    # Automatic id generation
    run_id = get_or_create_run_id()

    # Explicit id for a block of work
    with run_context("table-3-rebuild"):
        build_tables()
"""

from contextvars import ContextVar
from contextlib import contextmanager
from typing import Iterator, Optional
import uuid

_run_id_var: ContextVar[Optional[str]] = ContextVar("run_id", default=None)


def generate_run_id() -> str:
    """Generate a new UUID4 run id.

    Examples:
        >>> len(generate_run_id())
        36
    """
    return str(uuid.uuid4())


def get_current_run_id() -> Optional[str]:
    """Return the run id active in the current context, or None."""
    return _run_id_var.get()


def get_or_create_run_id() -> str:
    """Return the active run id, creating and setting one if none exists.

    Examples:
        >>> first = get_or_create_run_id()
        >>> first == get_or_create_run_id()
        True
    """
    current = _run_id_var.get()
    if current is None:
        current = generate_run_id()
        _run_id_var.set(current)
    return current


def set_run_id(run_id: str) -> object:
    """Set the run id and return the token needed by reset_run_id()."""
    return _run_id_var.set(run_id)


def reset_run_id(token: object) -> None:
    """Restore the run id that was active before set_run_id()."""
    _run_id_var.reset(token)


def clear_run_id() -> None:
    """Drop the current run id; mostly useful in tests."""
    _run_id_var.set(None)


@contextmanager
def run_context(run_id: Optional[str] = None) -> Iterator[str]:
    """Bind a run id to a block of work.

    Args:
        run_id: Id to use. A fresh UUID4 is generated when None.

    Yields:
        The run id bound for the duration of the block.

    Examples:
        >>> with run_context("demo") as rid:
        ...     assert get_current_run_id() == "demo" == rid
        >>> get_current_run_id() is None
        True
    """
    if run_id is None:
        run_id = generate_run_id()

    token = set_run_id(run_id)
    try:
        yield run_id
    finally:
        reset_run_id(token)
