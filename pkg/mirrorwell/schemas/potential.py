from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field


class PotentialFamily(str, Enum):
    """Catalog potentials, addressed by their stable short names."""

    HARMONIC_PLUS = "H+"
    HARMONIC_MINUS = "H-"
    DOUBLE = "D"
    SINGLE = "S"
    LINEAR_DOUBLE = "L-D"
    LINEAR_SINGLE = "L-S"
    KREIN_ADLER = "KA"
    KREIN_ADLER_DOUBLE = "KA-D"
    KREIN_ADLER_SINGLE = "KA-S"
    WALLED_DR = "DR"
    WALLED_DL = "DL"
    WALLED_SR = "SR"
    WALLED_SL = "SL"


class WallSide(str, Enum):
    """Half-line systems with an impenetrable wall at the origin."""

    DR = "DR"
    DL = "DL"
    SR = "SR"
    SL = "SL"

    @property
    def allowed_sign(self) -> int:
        """+1 when the particle lives on x > 0, -1 for x < 0."""
        return 1 if self in (WallSide.DR, WallSide.SR) else -1

    @property
    def shift(self) -> int:
        """Sign s of the harmonic piece (x + s*d)^2 kept on the open side."""
        return -1 if self in (WallSide.DR, WallSide.SL) else 1


_WALLED = {
    PotentialFamily.WALLED_DR: WallSide.DR,
    PotentialFamily.WALLED_DL: WallSide.DL,
    PotentialFamily.WALLED_SR: WallSide.SR,
    PotentialFamily.WALLED_SL: WallSide.SL,
}

_ASYMMETRIC = {PotentialFamily.HARMONIC_PLUS, PotentialFamily.HARMONIC_MINUS, *_WALLED}


class PotentialSpec(BaseModel):
    """Declarative description of one catalog potential.

    Attributes:
        family: Which catalog member.
        d: Separation of the two shifted wells, d >= 0.
        g: Coupling of the linear families, V_L(x) = g^3 |x|.
    """

    family: PotentialFamily
    d: float = Field(default=0.0, ge=0.0, le=6.0, description="Separation of the shifted wells")
    g: float = Field(default=1.0, gt=0.0, description="Linear-well coupling")

    model_config = {"frozen": True}

    @property
    def name(self) -> str:
        return self.family.value

    @property
    def is_symmetric(self) -> bool:
        """True when V(x) = V(-x) holds pointwise."""
        return self.family not in _ASYMMETRIC

    @property
    def wall_side(self) -> Optional[WallSide]:
        return _WALLED.get(self.family)
