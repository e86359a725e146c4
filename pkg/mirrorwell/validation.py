import math
import re
from fractions import Fraction
from typing import List, Optional, Union

from mirrorwell.exceptions import ParameterRangeError, ValidationError
from mirrorwell.logging_config import get_logger
from mirrorwell.schemas.spectrum import ParitySector

logger = get_logger(__name__)

MAX_SEPARATION = 6.0
MAX_COUNT = 20
MAX_DEGREE = 100

_REAL_PATTERN = re.compile(r"^\s*[-+]?(\d+(\.\d*)?|\.\d+)([eE][-+]?\d+)?\s*$")
_RATIONAL_PATTERN = re.compile(r"^\s*([-+]?\d+)\s*/\s*(\d+)\s*$")


def parse_real(text: Union[str, float, int], field_name: str = "value") -> float:
    """Parse a decimal or rational literal into a finite float.

    Accepts the separations the tables are quoted with, e.g. "1/10" or
    "3/2", as well as ordinary decimals.

    Args:
        text: Literal to parse; numbers are passed through.
        field_name: Name used in error messages.

    Returns:
        The parsed value.

    Raises:
        ValidationError: If the literal is malformed, has a zero
            denominator or is not finite.

    Examples:
        >>> parse_real("1/10")
        0.1
        >>> parse_real("-2.5e-1")
        -0.25
        >>> parse_real("one")
        ValidationError: value must be a decimal or rational literal, got 'one'
    """
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        value = float(text)
    else:
        literal = str(text)
        rational = _RATIONAL_PATTERN.match(literal)
        if rational:
            denominator = int(rational.group(2))
            if denominator == 0:
                raise ValidationError(f"{field_name} has a zero denominator: {literal!r}")
            value = float(Fraction(int(rational.group(1)), denominator))
        elif _REAL_PATTERN.match(literal):
            value = float(literal)
        else:
            logger.warning("Unparseable numeric literal", field_name=field_name, literal=literal[:30])
            raise ValidationError(f"{field_name} must be a decimal or rational literal, got {literal!r}")

    if not math.isfinite(value):
        raise ValidationError(f"{field_name} must be finite, got {value}")
    return value


def validate_separation(d: float, allow_negative: bool = False) -> float:
    """Check that the separation lies in [0, 6] (or [-6, 6]).

    Examples:
        >>> validate_separation(1.5)
        1.5
        >>> validate_separation(7.0)
        ParameterRangeError: separation d=7.0 outside [0, 6]
    """
    low = -MAX_SEPARATION if allow_negative else 0.0
    if not (low <= d <= MAX_SEPARATION):
        raise ParameterRangeError(f"separation d={d} outside [{low:g}, {MAX_SEPARATION:g}]")
    return d


def validate_energy(E: float, low: float = -1.0, high: float = 60.0) -> float:
    if not (low < E < high):
        raise ParameterRangeError(f"energy E={E} outside ({low:g}, {high:g})")
    return E


def validate_count(count: int, limit: int = MAX_COUNT) -> int:
    """Check 1 <= count <= limit."""
    if not (1 <= count <= limit):
        raise ParameterRangeError(f"count must lie in [1, {limit}], got {count}")
    return count


def validate_degree(n: int, limit: int = MAX_DEGREE) -> int:
    """Check the Hermite degree 1 <= n <= limit."""
    if not (1 <= n <= limit):
        raise ParameterRangeError(f"degree n must lie in [1, {limit}], got {n}")
    return n


def parse_index_list(text: str) -> List[int]:
    """Parse "0,1,2" into [0, 1, 2].

    Raises:
        ValidationError: On empty items, non-integers or negative indices.
    """
    indices = []
    for item in str(text).split(","):
        item = item.strip()
        if not item.isdigit():
            raise ValidationError(f"index list must hold non-negative integers, got {text!r}")
        indices.append(int(item))
    return indices


def parse_sector(text: str) -> Optional[ParitySector]:
    """Map "even" / "odd" to a ParitySector and "both" to None."""
    key = str(text).strip().lower()
    if key == "both":
        return None
    try:
        return ParitySector(key)
    except ValueError:
        raise ValidationError(f"sector must be one of even, odd, both; got {text!r}")
