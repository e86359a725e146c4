from typing import List, Optional

from pydantic import BaseModel

from mirrorwell.schemas.spectrum import ParitySector


class VerificationRow(BaseModel):
    index: int
    sector: Optional[ParitySector]
    connection: float
    oracle: float
    deviation: float


class VerificationReport(BaseModel):
    """Connection-method spectrum side by side with the finite-difference one."""

    potential: str
    d: float
    count: int
    tolerance: float
    rows: List[VerificationRow]
    max_deviation: float
    oracle_est_error: float
    passed: bool
