import os
import platform
import sys
import time
from contextlib import asynccontextmanager
from datetime import datetime
from typing import Any, Dict

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from mirrorwell.config import settings
from mirrorwell.logging_config import configure_logging, get_logger
from mirrorwell.middleware import ErrorHandlingMiddleware, LoggingMiddleware
from mirrorwell.routes import poly_router, spectrum_router, wavefunction_router

configure_logging(
    debug=settings.debug_mode,
    log_file_path=settings.log_file_path,
    log_level=settings.log_level,
    rotation_hours=settings.log_rotation_hours,
    retention_days=settings.log_retention_days,
)
logger = get_logger(__name__)

logger.info("FastAPI application initializing", python_version=sys.version, platform=platform.platform(), pid=os.getpid())


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Record startup time for the health endpoint."""
    startup_time = time.time()
    logger.info(
        "Starting mirrorwell API",
        version=settings.app_version,
        precision=settings.precision,
        oracle_step=settings.oracle_step,
    )
    app.state.startup_time = startup_time
    yield
    logger.info("Shutting down mirrorwell API", uptime_seconds=int(time.time() - startup_time))


app = FastAPI(
    title=f"{settings.app_name} - API",
    version=settings.app_version,
    lifespan=lifespan,
    docs_url="/api/docs",
    redoc_url="/api/redoc",
)

# last added runs first
app.add_middleware(ErrorHandlingMiddleware)
app.add_middleware(LoggingMiddleware)


@app.exception_handler(RequestValidationError)
async def validation_exception_handler(request: Request, exc: RequestValidationError):
    """Report query parameter errors in the same body shape as domain errors."""
    errors = exc.errors()
    error_id = f"val_err_{datetime.now().strftime('%Y%m%d_%H%M%S')}_{hash(str(errors)) % 10000}"
    logger.warning(
        "Validation error",
        error_id=error_id,
        request_id=getattr(request.state, "request_id", None),
        path=request.url.path,
        error_count=len(errors),
    )
    details = [
        {
            "field": " -> ".join(str(loc) for loc in error.get("loc", [])),
            "message": error.get("msg", "Unknown error"),
            "type": error.get("type", "unknown"),
        }
        for error in errors
    ]
    return JSONResponse(
        status_code=422,
        content={"error": {"type": "ValidationError", "message": "Request validation failed", "error_id": error_id, "details": details}},
    )


for router_name, router in (("spectrum", spectrum_router), ("poly", poly_router), ("wavefunction", wavefunction_router)):
    app.include_router(router)
    logger.debug("Router included", router_name=router_name, prefix=router.prefix)


@app.get("/health")
async def health_check(request: Request) -> Dict[str, Any]:
    """Health check endpoint"""
    return {
        "status": "healthy",
        "timestamp": time.time(),
        "version": settings.app_version,
        "request_id": getattr(request.state, "request_id", None),
        "uptime_seconds": int(time.time() - app.state.startup_time) if hasattr(app.state, "startup_time") else 0,
    }
