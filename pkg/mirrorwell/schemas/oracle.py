from typing import List, Optional

from pydantic import BaseModel, Field


class GridSpec(BaseModel):
    """Uniform finite-difference grid with Dirichlet ends and a node at 0.

    half_width defaults to d + margin. The step is halved once more for the
    Richardson partner run when richardson is set.
    """

    step: float = Field(default=2e-3, gt=0.0, le=0.05)
    margin: float = Field(default=14.0, gt=0.0)
    half_width: Optional[float] = Field(default=None, gt=0.0)
    richardson: bool = True

    def resolved_half_width(self, d: float) -> float:
        return self.half_width if self.half_width is not None else d + self.margin


class OracleResult(BaseModel):
    potential: str
    d: float
    eigenvalues: List[float]
    h_used: float
    extrapolated: bool
    est_error: float
    level_errors: List[float] = Field(default_factory=list)
