# Configuration module for mirrorwell
# Handles the numerical defaults of the solvers, logging settings and the
# HTTP surface parameters using Pydantic.

import logging
import sys
from typing import TYPE_CHECKING, Optional

import structlog
from pydantic import AliasChoices, Field, field_validator
from pydantic_settings import BaseSettings

if TYPE_CHECKING:
    from mirrorwell.schemas.oracle import GridSpec
    from mirrorwell.schemas.spectrum import ScanConfig

# Initialize structured logger for configuration events
logger = structlog.get_logger()


class Settings(BaseSettings):
    """Application settings with environment variable support.

    All settings can be overridden using environment variables or a .env
    file. The numerical fields seed the default ScanConfig and GridSpec used
    by the CLI and the HTTP routes; library callers may always pass their
    own configuration objects instead.

    Numerical Settings:
        precision: Absolute tolerance in E for eigenvalue refinement
            (MIRRORWELL_PRECISION).
        coarse_step: Step of the coarse sign scan in E.
        degeneracy_window: Half-width of the probe window around odd integers.
        max_refine_iter: Iteration cap of the bracketed refinement.
        oracle_step: Finite-difference grid step.
        oracle_margin: Grid half-width beyond the separation d.
        oracle_richardson: Combine h and h/2 runs.
        parallel_workers: Process pool size for table rows (None = cpu count).

    Logging Configuration:
        log_file_path: Path to log file, None disables file logging
        log_level: Logging verbosity (DEBUG, INFO, WARNING, ERROR)
        log_rotation_hours: Hours between log file rotations
        log_retention_days: Days to keep old log files

    Examples:
        >>> settings = Settings()
        >>> settings.scan_defaults().refine_tol
        1e-10
    """

    # =============================================================================
    # APPLICATION CONFIGURATION
    # =============================================================================
    app_name: str = Field(default="mirrorwell", validation_alias=AliasChoices("APP_NAME"))

    app_version: str = Field(default="1.0.0", validation_alias=AliasChoices("APP_VERSION"))

    # Debug mode switches logging to the colored console renderer
    debug_mode: bool = Field(default=False, validation_alias=AliasChoices("DEBUG_MODE"))

    # =============================================================================
    # LOGGING CONFIGURATION
    # =============================================================================
    # None keeps the CLI free of stray log files
    log_file_path: Optional[str] = Field(default=None, validation_alias=AliasChoices("LOG_FILE_PATH"))

    log_level: str = Field(default="WARNING", validation_alias=AliasChoices("LOG_LEVEL"))

    log_rotation_hours: int = Field(default=24, validation_alias=AliasChoices("LOG_ROTATION_HOURS"))

    log_retention_days: int = Field(default=7, validation_alias=AliasChoices("LOG_RETENTION_DAYS"))

    # =============================================================================
    # SPECTRUM SEARCH
    # =============================================================================
    # Absolute tolerance in E of every refined eigenvalue
    precision: float = Field(default=1e-10, validation_alias=AliasChoices("MIRRORWELL_PRECISION", "PRECISION"))

    coarse_step: float = Field(default=0.02, gt=0, validation_alias=AliasChoices("COARSE_STEP"))

    degeneracy_window: float = Field(default=0.05, gt=0, validation_alias=AliasChoices("DEGENERACY_WINDOW"))

    max_refine_iter: int = Field(default=200, ge=10, validation_alias=AliasChoices("MAX_REFINE_ITER"))

    # =============================================================================
    # FINITE-DIFFERENCE ORACLE
    # =============================================================================
    oracle_step: float = Field(default=2e-3, validation_alias=AliasChoices("ORACLE_STEP"))

    oracle_margin: float = Field(default=14.0, gt=0, validation_alias=AliasChoices("ORACLE_MARGIN"))

    oracle_richardson: bool = Field(default=True, validation_alias=AliasChoices("ORACLE_RICHARDSON"))

    # =============================================================================
    # CONCURRENCY AND HTTP
    # =============================================================================
    parallel_workers: Optional[int] = Field(default=None, ge=1, validation_alias=AliasChoices("PARALLEL_WORKERS"))

    api_host: str = Field(default="127.0.0.1", validation_alias=AliasChoices("API_HOST"))

    api_port: int = Field(default=8000, validation_alias=AliasChoices("API_PORT"))

    @field_validator("precision")
    @classmethod
    def validate_precision(cls, v: float) -> float:
        """Reject refinement tolerances the double-double kernel cannot honor.

        Raises:
            ValueError: If v is below 1e-12 or not below 1e-2.

        Examples:
            >>> Settings.validate_precision(1e-9)
            1e-09
            >>> Settings.validate_precision(1e-15)
            ValueError: MIRRORWELL_PRECISION must lie in [1e-12, 1e-2)...
        """
        if not (1e-12 <= v < 1e-2):
            raise ValueError(f"MIRRORWELL_PRECISION must lie in [1e-12, 1e-2). Got: {v}")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        level = v.upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"LOG_LEVEL must be a logging level name. Got: {v}")
        return level

    @field_validator("oracle_step")
    @classmethod
    def validate_oracle_step(cls, v: float) -> float:
        if not (0 < v <= 0.05):
            raise ValueError(f"ORACLE_STEP must lie in (0, 0.05]. Got: {v}")
        return v

    def scan_defaults(self) -> "ScanConfig":
        """Return the ScanConfig implied by these settings.

        The energy window is left on automatic so each search sizes it from
        d and the requested count.
        """
        from mirrorwell.schemas.spectrum import ScanConfig

        return ScanConfig(
            coarse_step=self.coarse_step,
            refine_tol=self.precision,
            max_refine_iter=self.max_refine_iter,
            degeneracy_window=self.degeneracy_window,
        )

    def grid_defaults(self) -> "GridSpec":
        """Return the GridSpec implied by these settings."""
        from mirrorwell.schemas.oracle import GridSpec

        return GridSpec(step=self.oracle_step, margin=self.oracle_margin, richardson=self.oracle_richardson)

    model_config = {
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "case_sensitive": False,
        "extra": "ignore",
    }


def load_settings() -> Settings:
    """Load and validate settings from environment and .env files.

    Returns:
        A validated Settings instance.

    Raises:
        SystemExit: If the configuration is invalid; the error is logged and
            printed to stderr first.
    """
    try:
        loaded = Settings()
        logger.debug(
            "Configuration loaded successfully",
            app_name=loaded.app_name,
            app_version=loaded.app_version,
            debug_mode=loaded.debug_mode,
            precision=loaded.precision,
            log_level=loaded.log_level,
        )
        return loaded

    except Exception as e:
        logger.error("Failed to load configuration", error=str(e), error_type=type(e).__name__)
        print(f"Configuration Error: {e}", file=sys.stderr)
        print("Please check your .env file and MIRRORWELL_* environment variables.", file=sys.stderr)
        sys.exit(1)


# Import this in other modules: from mirrorwell.config import settings
settings = load_settings()
