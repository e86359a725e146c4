from typing import List, Optional

from fastapi import APIRouter, Query, Request

from mirrorwell.logging_config import get_logger
from mirrorwell.oracle import cross_check
from mirrorwell.schemas.spectrum import SpectrumReport, SplittingRow
from mirrorwell.schemas.verify import VerificationReport
from mirrorwell.services import compute_spectrum, well_kind
from mirrorwell.spectrum import splitting_table
from mirrorwell.validation import parse_real, parse_sector, validate_count

logger = get_logger(__name__)

router = APIRouter(prefix="/api", tags=["spectrum"])


def _optional(value: Optional[str], name: str) -> Optional[float]:
    return None if value is None else parse_real(value, name)


@router.get("/spectrum", response_model=SpectrumReport)
def get_spectrum(
    request: Request,
    potential: str = Query(..., description="Catalog name: D, S, KA, DR, L-D, ..."),
    d: str = Query("0", description="Separation, decimal or rational such as 3/2"),
    count: int = Query(7, ge=1, le=20),
    sector: str = Query("both", description="even, odd or both"),
    e_max: Optional[str] = Query(None, description="Upper end of the energy window"),
    step: Optional[str] = Query(None, description="Coarse scan step, or grid step for oracle potentials"),
    g: str = Query("1", description="Coupling of the linear wells"),
):
    """Lowest eigenvalues of a catalog potential.

    Examples:
        >>> GET /api/spectrum?potential=D&d=1&count=7
        >>> GET /api/spectrum?potential=KA&count=4
    """
    logger.info("Spectrum requested", request_id=getattr(request.state, "request_id", None), potential=potential, d=d, count=count)
    return compute_spectrum(
        potential,
        parse_real(d, "d"),
        count,
        sector=parse_sector(sector),
        e_max=_optional(e_max, "e_max"),
        step=_optional(step, "step"),
        g=parse_real(g, "g"),
    )


@router.get("/splitting", response_model=List[SplittingRow])
def get_splitting(
    d: str = Query(..., description="Separation"),
    levels: int = Query(4, ge=1, le=10),
    potential: str = Query("D"),
):
    """Even/odd pairs of the lowest levels with their tunnelling gaps."""
    validate_count(levels)
    return splitting_table(parse_real(d, "d"), levels, well_kind(potential))


@router.get("/verify", response_model=VerificationReport)
def get_verify(
    potential: str = Query(..., description="D or S"),
    d: str = Query(...),
    count: int = Query(7, ge=1, le=15),
    tol: float = Query(1e-5, gt=0.0),
):
    """Connection-method spectrum checked against the finite-difference oracle."""
    report = cross_check(well_kind(potential), parse_real(d, "d"), count, tolerance=tol)
    logger.info("Verification finished", potential=potential, d=d, passed=report.passed, max_deviation=report.max_deviation)
    return report
