"""
Connection conditions of the mirror symmetric wells.

On x >= 0 the double well coincides with (x - d)^2 and the single well with
(x + d)^2, so the decaying solution there is e^{-s^2/2} Ubar(a; s) with
s = x - d or s = x + d and a = (1 - E)/4. Mirror symmetry leaves one
condition at the origin per parity sector:

    even (Neumann):   slope factor of Ubar at s0 = 0
    odd (Dirichlet):  Ubar(a; s0) = 0

with s0 = -d for the double well and s0 = +d for the single well. Both
wells therefore share one formula in the signed variable s0, which makes the
d -> -d duality between them exact as implemented. The common factor
e^{-d^2/2} is dropped; only zeros matter.
"""

import math
from dataclasses import dataclass

import numpy as np

from mirrorwell.exceptions import ParameterRangeError
from mirrorwell.logging_config import get_logger
from mirrorwell.schemas.spectrum import ParitySector, WellKind
from mirrorwell.specfun import ExtendedReal, KummerParameters, ubar_signed, ubar_slope_signed

logger = get_logger(__name__)

MAX_SEPARATION = 6.0
ENERGY_FLOOR = -1.0
ENERGY_CEILING = 60.0


@dataclass(frozen=True)
class ConditionValue:
    """mantissa * 2**scale_exponent with |mantissa| in [1, 2), or canonical zero."""

    mantissa: float
    scale_exponent: int
    raw_sign: int

    @classmethod
    def from_extended(cls, x: ExtendedReal) -> "ConditionValue":
        total = float(x.value) + float(x.correction)
        if total == 0.0:
            return cls(0.0, 0, 0)
        mantissa, exponent = math.frexp(total)
        return cls(2.0 * mantissa, exponent - 1, 1 if total > 0 else -1)

    @property
    def value(self) -> float:
        return math.ldexp(self.mantissa, self.scale_exponent)


def kummer_params_of_energy(E: float) -> KummerParameters:
    """a = (1 - E)/4, b = 1/2.

    Examples:
        >>> kummer_params_of_energy(5.0).a
        -1.0
    """
    return KummerParameters(a=(1.0 - E) / 4.0, b=0.5)


def _check_inputs(d: float, energies) -> None:
    if not abs(d) <= MAX_SEPARATION:
        raise ParameterRangeError(f"separation |d| must not exceed {MAX_SEPARATION}, got {d}")
    e = np.asarray(energies, dtype=float)
    if not np.all((e > ENERGY_FLOOR) & (e < ENERGY_CEILING)):
        raise ParameterRangeError(f"energy must lie in ({ENERGY_FLOOR}, {ENERGY_CEILING})")


def _evaluate(sector: ParitySector, s0: float, a) -> ExtendedReal:
    if sector is ParitySector.EVEN:
        return ubar_slope_signed(a, s0)
    return ubar_signed(a, s0)


def matching_point(kind: WellKind, d: float) -> float:
    """Signed Ubar argument at x = 0 for the right-hand piece of kind."""
    return kind.shift_sign * d


def condition_extended(kind: WellKind, sector: ParitySector, d: float, E: float) -> ExtendedReal:
    _check_inputs(d, E)
    return _evaluate(sector, matching_point(kind, d), kummer_params_of_energy(E).a)


def condition(kind: WellKind, sector: ParitySector, d: float, E: float) -> ConditionValue:
    """Scaled left-hand side of the connection condition for (kind, sector).

    d may be negative; condition(SINGLE, s, d, E) and
    condition(DOUBLE, s, -d, E) run through identical arithmetic.

    Raises:
        ParameterRangeError: If |d| > 6 or E is outside (-1, 60).
    """
    return ConditionValue.from_extended(condition_extended(kind, sector, d, E))


def condition_float(kind: WellKind, sector: ParitySector, d: float, E: float) -> float:
    """condition() collapsed to a plain float, for root refinement."""
    return condition_extended(kind, sector, d, E).to_float()


def condition_array(kind: WellKind, sector: ParitySector, d: float, energies: np.ndarray) -> np.ndarray:
    """Vectorized condition values over an energy grid."""
    energies = np.asarray(energies, dtype=float)
    _check_inputs(d, energies)
    logger.debug("Evaluating condition grid", kind=kind.value, sector=sector.value, d=d, points=energies.size)
    a = (1.0 - energies) / 4.0
    return np.asarray(_evaluate(sector, matching_point(kind, d), a).to_float(), dtype=float)


def duality_image(kind: WellKind, sector: ParitySector, d: float, E: float) -> ConditionValue:
    """This kind's formula evaluated at -d, i.e. the other kind's condition at d."""
    return condition(kind, sector, -d, E)
