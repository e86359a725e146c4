"""
Catalog of potentials and the closed-form Krein-Adler eigenfunctions.

Walled half-line systems evaluate to +inf on the forbidden closed half-line
(x = 0 included); solvers never see those values because the oracle
truncates its grid there instead.
"""

import numpy as np

from mirrorwell.exceptions import UnknownPotentialError, ValidationError
from mirrorwell.logging_config import get_logger
from mirrorwell.schemas.potential import PotentialFamily, PotentialSpec, WallSide
from mirrorwell.specfun import hermite

logger = get_logger(__name__)

CATALOG = tuple(family.value for family in PotentialFamily)
KA_DELETED_LEVELS = (1, 2)


def potential_spec(name: str, d: float = 0.0, g: float = 1.0) -> PotentialSpec:
    """Build a PotentialSpec from its catalog name.

    Raises:
        UnknownPotentialError: If name is not in the catalog.

    Examples:
        >>> potential_spec("KA-D", d=1.0).family
        <PotentialFamily.KREIN_ADLER_DOUBLE: 'KA-D'>
    """
    try:
        family = PotentialFamily(name.strip().upper())
    except ValueError:
        raise UnknownPotentialError(name)
    return PotentialSpec(family=family, d=d, g=g)


def krein_adler(x):
    """V_KA(x) = x^2 + 3 + 32 x^2/(2x^2+1)^2 - 8/(2x^2+1)."""
    x = np.asarray(x, dtype=float)
    q = 2.0 * x * x + 1.0
    return x * x + 3.0 + 32.0 * x * x / (q * q) - 8.0 / q


def _walled(side: WallSide, x: np.ndarray, d: float) -> np.ndarray:
    shifted = (x + side.shift * d) ** 2
    open_side = x * side.allowed_sign > 0
    return np.where(open_side, shifted, np.inf)


def evaluate(spec: PotentialSpec, x):
    """Pointwise value of the potential, +inf behind walls.

    Examples:
        >>> evaluate(PotentialSpec(family=PotentialFamily.DOUBLE, d=1.0), 1.0)
        0.0
        >>> evaluate(PotentialSpec(family=PotentialFamily.KREIN_ADLER), 0.0)
        -5.0
    """
    arr = np.asarray(x, dtype=float)
    d = spec.d
    family = spec.family

    if family is PotentialFamily.HARMONIC_PLUS:
        out = (arr + d) ** 2
    elif family is PotentialFamily.HARMONIC_MINUS:
        out = (arr - d) ** 2
    elif family is PotentialFamily.DOUBLE:
        out = np.minimum((arr + d) ** 2, (arr - d) ** 2)
    elif family is PotentialFamily.SINGLE:
        out = np.maximum((arr + d) ** 2, (arr - d) ** 2)
    elif family in (PotentialFamily.LINEAR_DOUBLE, PotentialFamily.LINEAR_SINGLE):
        pick = np.minimum if family is PotentialFamily.LINEAR_DOUBLE else np.maximum
        out = spec.g ** 3 * pick(np.abs(arr + d), np.abs(arr - d))
    elif family is PotentialFamily.KREIN_ADLER:
        out = krein_adler(arr)
    elif family in (PotentialFamily.KREIN_ADLER_DOUBLE, PotentialFamily.KREIN_ADLER_SINGLE):
        pick = np.minimum if family is PotentialFamily.KREIN_ADLER_DOUBLE else np.maximum
        out = pick(krein_adler(arr + d), krein_adler(arr - d))
    else:
        out = _walled(spec.wall_side, arr, d)

    return float(out) if out.ndim == 0 else out


def ka_eigenvalue(n: int) -> float:
    """Level 2n of the Krein-Adler potential; n = 1, 2 are deleted.

    Raises:
        ValidationError: If n is negative or one of the deleted levels.
    """
    if n < 0 or n in KA_DELETED_LEVELS:
        raise ValidationError(f"Krein-Adler level n={n} does not exist (n >= 0, n not in {{1, 2}})")
    return 2.0 * n


def _hermite_column(k: int, x: np.ndarray) -> np.ndarray:
    """(H_k, H_k', H_k'') stacked on the last axis."""
    value = hermite(k, x)
    first = 2.0 * k * hermite(k - 1, x) if k >= 1 else np.zeros_like(x)
    second = 4.0 * k * (k - 1) * hermite(k - 2, x) if k >= 2 else np.zeros_like(x)
    return np.stack(np.broadcast_arrays(value, first, second), axis=-1)


def wronskian_h1_h2(n: int, x) -> np.ndarray:
    """W[H_1, H_2, H_n](x) as a 3x3 determinant of Hermite derivatives."""
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    columns = [_hermite_column(k, arr) for k in (1, 2, n)]
    matrices = np.stack(columns, axis=-1)  # [..., derivative order, function]
    return np.linalg.det(matrices)


def ka_eigenfunction(n: int, x):
    """psi_n(x) = e^{-x^2/2} W[H_1, H_2, H_n](x) / (4 (2x^2 + 1)).

    Examples:
        >>> round(ka_eigenfunction(0, 0.0), 12)
        4.0
    """
    ka_eigenvalue(n)
    arr = np.asarray(x, dtype=float)
    flat = np.atleast_1d(arr)
    psi = np.exp(-0.5 * flat * flat) * wronskian_h1_h2(n, flat) / (4.0 * (2.0 * flat * flat + 1.0))
    return float(psi[0]) if arr.ndim == 0 else psi
