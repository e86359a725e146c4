from typing import List, Tuple

from pydantic import BaseModel, Field, model_validator

from mirrorwell.schemas.spectrum import ParitySector, WellKind


def even_count(n: int) -> int:
    """Number of positive roots of H_n'(d) - d H_n(d)."""
    return (n + 1) // 2 if n % 2 else n // 2


def odd_count(n: int) -> int:
    """Number of positive zeros of H_n."""
    return n // 2


class PolynomialParameterSet(BaseModel):
    """Separations admitting a closed-form eigenstate of energy 2n+1."""

    n: int = Field(ge=1)
    even_params: List[float]
    odd_params: List[float]

    @property
    def even_count(self) -> int:
        return len(self.even_params)

    @property
    def odd_count(self) -> int:
        return len(self.odd_params)


class PolynomialEigenstate(BaseModel):
    """Closed-form state e^{-(x+-d)^2/2} H_n(x+-d) glued at the origin.

    piece_signs holds the (left, right) amplitudes of the two Hermite
    pieces.
    """

    n: int = Field(ge=1)
    j: int = Field(ge=1)
    d: float
    sector: ParitySector
    kind: WellKind
    energy: float
    piece_signs: Tuple[int, int]

    @model_validator(mode="after")
    def check_energy(self) -> "PolynomialEigenstate":
        if self.energy != 2 * self.n + 1:
            raise ValueError(f"energy must equal 2n+1 = {2 * self.n + 1}, got {self.energy}")
        if any(s not in (1, -1) for s in self.piece_signs):
            raise ValueError("piece signs must be +1 or -1")
        return self
