import structlog
import logging
import logging.handlers
from pathlib import Path
from typing import Any, Dict, Optional
import json
import os
import re
import sys
from datetime import datetime, timezone

from mirrorwell.run_context import get_current_run_id


class PlainTextFormatter(logging.Formatter):
    """Plain text formatter for file logs, free of ANSI escape sequences.

    Renders structured entries as
    [timestamp] [LEVEL] [logger] event key=value key=value
    """

    def format(self, record: logging.LogRecord) -> str:
        try:
            if isinstance(record.msg, dict):
                data = record.msg
            else:
                msg = str(record.getMessage())
                if msg.startswith("{") and msg.endswith("}"):
                    try:
                        data = json.loads(msg)
                    except ValueError:
                        data = {"event": msg}
                else:
                    data = {"event": msg}

            timestamp = data.get("timestamp", datetime.now(timezone.utc).isoformat())
            level = data.get("level", record.levelname).upper()
            logger_name = data.get("logger", record.name)
            event = data.get("event", "")

            parts = [f"[{timestamp}]", f"[{level}]", f"[{logger_name}]" if logger_name else "", event]
            base_message = " ".join(filter(None, parts))

            skip_keys = {"timestamp", "level", "logger", "event"}
            extras = [f"{key}={value}" for key, value in data.items() if key not in skip_keys and value is not None]

            if extras:
                return f"{base_message} | {' '.join(extras)}"
            return base_message

        except Exception:
            return super().format(record)


class DualOutputProcessor:
    """Copies every structured event to a plain-text file handler.

    Console output keeps its own renderer; the file gets the readable
    PlainTextFormatter layout.
    """

    def __init__(self, file_handler: logging.Handler):
        self.file_handler = file_handler

    def __call__(self, logger: Any, method_name: str, event_dict: Dict[str, Any]) -> Dict[str, Any]:
        try:
            record = logging.LogRecord(
                name=event_dict.get("logger", ""),
                level=getattr(logging, method_name.upper(), logging.INFO),
                pathname="",
                lineno=0,
                msg=dict(event_dict),
                args=(),
                exc_info=None,
            )
            self.file_handler.emit(record)
        except Exception:
            # file logging must never break console logging
            pass
        return event_dict


class RunIdProcessor:
    """Injects the active run id into every log entry."""

    def __call__(self, logger: Any, method_name: str, event_dict: Dict[str, Any]) -> Dict[str, Any]:
        run_id = get_current_run_id()
        if run_id and "run_id" not in event_dict:
            event_dict["run_id"] = run_id
        return event_dict


def configure_logging(
    debug: bool = False,
    log_file_path: Optional[str] = None,
    log_level: str = "WARNING",
    rotation_hours: int = 24,
    retention_days: int = 7,
) -> None:
    """Configure structured logging for the library, CLI and HTTP app.

    Console output goes to stderr so CSV/JSON written to stdout stays clean.
    Debug mode switches to the colored console renderer; otherwise events
    are rendered as JSON lines. A timed rotating plain-text file is added
    when log_file_path is given.

    Args:
        debug: Enable debug level and the colored console renderer.
        log_file_path: Optional path of a rotating log file.
        log_level: Level name used when debug is False.
        rotation_hours: Hours between file rotations.
        retention_days: Days of rotated files kept.

    Examples:
        >>> configure_logging(debug=True)
        >>> configure_logging(log_file_path="logs/mirrorwell.log", log_level="INFO")
    """
    level = logging.DEBUG if debug else getattr(logging, log_level.upper(), logging.WARNING)

    root_logger = logging.getLogger()
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(logging.Formatter("%(message)s"))

    file_handler = None
    if log_file_path:
        log_path = Path(log_file_path)
        log_path.parent.mkdir(parents=True, exist_ok=True)

        file_handler = logging.handlers.TimedRotatingFileHandler(
            filename=log_file_path,
            when="H",
            interval=rotation_hours,
            backupCount=max(1, retention_days * 24 // max(1, rotation_hours)),
            encoding="utf-8",
            utc=True,
        )
        file_handler.setLevel(level)
        file_handler.suffix = "%Y-%m-%d_%H"
        file_handler.extMatch = re.compile(r"^\d{4}-\d{2}-\d{2}_\d{2}$")
        file_handler.setFormatter(PlainTextFormatter())

    logging.basicConfig(level=level, handlers=[console_handler], format="%(message)s")

    for logger_name in ["uvicorn", "uvicorn.access", "uvicorn.error", "fastapi", "httpx", "httpcore"]:
        third_party_logger = logging.getLogger(logger_name)
        if debug:
            third_party_logger.propagate = True
        else:
            third_party_logger.handlers = [console_handler]
            third_party_logger.propagate = False

    for noisy in ["httpx", "httpcore"]:
        logging.getLogger(noisy).setLevel(logging.WARNING)

    processors: list[Any] = [
        structlog.stdlib.filter_by_level,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.stdlib.PositionalArgumentsFormatter(),
        structlog.processors.TimeStamper(fmt="iso"),
        RunIdProcessor(),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
        structlog.processors.UnicodeDecoder(),
        structlog.processors.CallsiteParameterAdder(
            parameters=[
                structlog.processors.CallsiteParameter.FILENAME,
                structlog.processors.CallsiteParameter.LINENO,
            ]
        ),
    ]

    if file_handler:
        processors.append(DualOutputProcessor(file_handler))

    if debug:
        use_colors = sys.stderr.isatty() or os.getenv("FORCE_COLOR") == "1"
        processors.append(
            structlog.dev.ConsoleRenderer(
                colors=use_colors,
                repr_native_str=False,
                exception_formatter=structlog.dev.plain_traceback,
            )
        )
    else:
        processors.append(structlog.processors.JSONRenderer())

    structlog.configure(
        processors=processors,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    """Return a structlog logger bound to name.

    Entries automatically carry the active run id.

    Examples:
        >>> logger = get_logger(__name__)
        >>> logger.info("spectrum_ready", kind="double", d=1.0, count=7)
    """
    return structlog.get_logger(name)


def log_solver_call(solver: str, operation: str, **kwargs: Any) -> Dict[str, Any]:
    """Build a consistent log context for an expensive solver call.

    Examples:
        >>> logger.debug("Scanning sector", **log_solver_call("spectrum", "scan", d=1.0))
    """
    return {"solver": solver, "operation": operation, **kwargs}


def log_root_refinement(
    kind: str,
    sector: str,
    d: float,
    energy: float,
    iterations: int,
    converged: bool,
    **kwargs: Any,
) -> Dict[str, Any]:
    """Build the log context for one refined eigenvalue."""
    return {
        "kind": kind,
        "sector": sector,
        "d": d,
        "energy": energy,
        "iterations": iterations,
        "converged": converged,
        **kwargs,
    }


def log_api_request(method: str, path: str, **kwargs: Any) -> Dict[str, Any]:
    """Build the log context for an incoming HTTP request."""
    return {"method": method, "path": path, **kwargs}


def log_api_response(status_code: int, duration_ms: float, **kwargs: Any) -> Dict[str, Any]:
    """Build the log context for an HTTP response."""
    return {"status_code": status_code, "duration_ms": duration_ms, **kwargs}
