from typing import List, Optional

from fastapi import APIRouter, Query

from mirrorwell.logging_config import get_logger
from mirrorwell.schemas.wavefunction import WavefunctionResponse
from mirrorwell.services import resolve_states, sample_states, well_kind
from mirrorwell.validation import parse_index_list, parse_real, parse_sector

logger = get_logger(__name__)

router = APIRouter(prefix="/api", tags=["wavefunction"])


@router.get("/wavefunction", response_model=List[WavefunctionResponse])
def get_wavefunction(
    potential: str = Query(..., description="D or S"),
    d: str = Query(...),
    sector: str = Query("both"),
    energy: Optional[str] = Query(None, description="Explicit energy; needs sector even or odd"),
    index: Optional[str] = Query(None, description="Comma separated level indices"),
    x_min: Optional[float] = Query(None),
    x_max: Optional[float] = Query(None),
    points: int = Query(201, ge=2, le=5001),
    normalize: bool = Query(True),
):
    """Sampled eigenfunctions selected by energy or by level index.

    Examples:
        >>> GET /api/wavefunction?potential=D&d=1&index=0,1
    """
    kind = well_kind(potential)
    separation = parse_real(d, "d")
    states = resolve_states(
        kind,
        separation,
        indices=parse_index_list(index) if index is not None else None,
        energy=parse_real(energy, "energy") if energy is not None else None,
        sector=parse_sector(sector),
    )
    sampled = sample_states(kind, separation, states, x_min=x_min, x_max=x_max, points=points, unit_norm=normalize)
    logger.debug("Wavefunctions sampled", potential=potential, d=separation, states=len(sampled))
    return [w.to_response() for w in sampled]
