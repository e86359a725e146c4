from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator


class WellKind(str, Enum):
    """The two mirror symmetric wells solved through connection conditions."""

    DOUBLE = "D"
    SINGLE = "S"

    @property
    def other(self) -> "WellKind":
        return WellKind.SINGLE if self is WellKind.DOUBLE else WellKind.DOUBLE

    @property
    def shift_sign(self) -> int:
        """Sign sigma with the right-hand piece centred on x = -sigma*d.

        Double keeps (x - d)^2 on the right, Single keeps (x + d)^2.
        """
        return -1 if self is WellKind.DOUBLE else 1


class ParitySector(str, Enum):
    """Even states obey a Neumann condition at 0, odd states a Dirichlet one."""

    EVEN = "even"
    ODD = "odd"

    @property
    def sign(self) -> int:
        return 1 if self is ParitySector.EVEN else -1


class Method(str, Enum):
    CONNECTION = "connection"
    POLYNOMIAL = "polynomial"
    ORACLE = "oracle"


class ScanConfig(BaseModel):
    """Parameters of the sign scan and bracketed refinement in E.

    e_min and e_max default to an automatic window sized from d and the
    requested count. With strict set, running out of window raises instead
    of returning a partial list.
    """

    e_min: Optional[float] = Field(default=None, gt=-1.0)
    e_max: Optional[float] = Field(default=None, le=60.0)
    coarse_step: float = Field(default=0.02, gt=0.0)
    refine_tol: float = Field(default=1e-10, ge=1e-12)
    max_refine_iter: int = Field(default=200, ge=10)
    degeneracy_window: float = Field(default=0.05, gt=0.0)
    strict: bool = False

    @model_validator(mode="after")
    def check_window(self) -> "ScanConfig":
        if self.e_min is not None and self.e_max is not None and self.e_min >= self.e_max:
            raise ValueError(f"e_min must be below e_max, got [{self.e_min}, {self.e_max}]")
        return self


class EigenvalueRecord(BaseModel):
    """One eigenvalue together with how it was obtained.

    kind and sector are None for catalog potentials outside the two
    mirror symmetric wells (sector is also None for asymmetric ones).
    """

    potential: str
    kind: Optional[WellKind] = None
    sector: Optional[ParitySector] = None
    index: int = Field(ge=0, description="Per-sector ordinal, or overall ordinal when sector is None")
    d: float
    energy: float
    bracket: Tuple[float, float]
    residual: float = 0.0
    method: Method
    converged: bool = True
    iterations: int = 0

    def flat(self) -> dict:
        """Flat export record with the stable key set."""
        return {
            "kind": self.kind.value if self.kind else self.potential,
            "sector": self.sector.value if self.sector else None,
            "index": self.index,
            "d": self.d,
            "energy": self.energy,
            "residual": self.residual,
            "method": self.method.value,
        }


class SplittingRow(BaseModel):
    """Even/odd pair of level n with the tunnelling gap between them.

    epsilon_even = 2n+1 - E_even and epsilon_odd = E_odd - (2n+1) measure
    how far the pair sits from the harmonic level it collapses onto.
    """

    level: int
    even: float
    odd: float
    gap: float
    epsilon_even: float
    epsilon_odd: float


class SpectrumReport(BaseModel):
    potential: str
    d: float
    requested: int
    records: List[EigenvalueRecord]
    complete: bool = True
    message: Optional[str] = None
