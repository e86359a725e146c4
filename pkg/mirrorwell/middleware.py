import time
import uuid
from typing import Callable

from fastapi import Request, Response
from fastapi.responses import JSONResponse
from starlette.middleware.base import BaseHTTPMiddleware

from mirrorwell.exceptions import Error, NumericalError, ValidationError
from mirrorwell.logging_config import get_logger, log_api_request, log_api_response
from mirrorwell.run_context import run_context

logger = get_logger(__name__)


class LoggingMiddleware(BaseHTTPMiddleware):
    """Middleware for logging requests and responses.

    Each request gets a request ID and runs inside its own run context, so
    every solver log line emitted while serving it carries the same run id.
    Both ids are returned in the X-Request-ID and X-Run-ID headers.

    Examples:
        >>> app = FastAPI()
        >>> app.add_middleware(LoggingMiddleware)
    """

    async def dispatch(self, request: Request, call_next: Callable) -> Response:
        request_id = str(uuid.uuid4())
        request.state.request_id = request_id

        with run_context() as run_id:
            request.state.run_id = run_id
            start_time = time.time()
            logger.info(
                "Request started",
                **log_api_request(
                    request.method,
                    request.url.path,
                    request_id=request_id,
                    query=str(request.url.query) or None,
                    client_host=request.client.host if request.client else None,
                ),
            )

            response = await call_next(request)

            duration_ms = (time.time() - start_time) * 1000
            log_data = log_api_response(response.status_code, round(duration_ms, 2), request_id=request_id, path=request.url.path)
            if response.status_code >= 500:
                logger.error("Request failed", **log_data)
            elif response.status_code >= 400:
                logger.warning("Request rejected", **log_data)
            else:
                logger.info("Request completed", **log_data)

            response.headers["X-Request-ID"] = request_id
            response.headers["X-Run-ID"] = run_id
            return response


def error_status(error: Error) -> int:
    """400 for bad input, 422 for numerical failures, 500 otherwise."""
    if isinstance(error, ValidationError):
        return 400
    if isinstance(error, NumericalError):
        return 422
    return 500


def error_body(error: Error) -> dict:
    return {"error": {"type": type(error).__name__, "message": error.message, "code": error.error_code}}


class ErrorHandlingMiddleware(BaseHTTPMiddleware):
    """Middleware for handling exceptions.

    Converts mirrorwell errors into JSON bodies with the status from
    error_status(); anything unexpected becomes a generic 500.

    Examples:
        Numerical failure:
        >>> {
        ...   "error": {
        ...     "type": "WindowExhaustedError",
        ...     "message": "only 3 of 7 even levels of D at d=1 found below E=20",
        ...     "code": "WINDOW_EXHAUSTED"
        ...   }
        ... }
    """

    async def dispatch(self, request: Request, call_next: Callable) -> Response:
        try:
            return await call_next(request)
        except Error as e:
            logger.warning(
                "Application error",
                error_type=type(e).__name__,
                error_message=e.message,
                error_code=e.error_code,
                request_id=getattr(request.state, "request_id", None),
            )
            return JSONResponse(status_code=error_status(e), content=error_body(e))
        except Exception as e:
            logger.error(
                "Unexpected error",
                error_type=type(e).__name__,
                error_message=str(e),
                request_id=getattr(request.state, "request_id", None),
                exc_info=True,
            )
            return JSONResponse(
                status_code=500,
                content={
                    "error": {
                        "type": "InternalServerError",
                        "message": "An unexpected error occurred",
                        "code": "INTERNAL_ERROR",
                    }
                },
            )
