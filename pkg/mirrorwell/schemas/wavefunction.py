from typing import List, Optional

from pydantic import BaseModel, Field

from mirrorwell.schemas.spectrum import ParitySector, WellKind


class WavefunctionResponse(BaseModel):
    """JSON rendition of a sampled eigenfunction."""

    kind: WellKind
    sector: ParitySector
    d: float
    energy: float
    xs: List[float]
    values: List[float]
    continuity_gap: float
    derivative_gap: float
    norm: Optional[float] = None
    node_count: int = Field(ge=0)
