"""
Separations with closed-form polynomial eigenstates.

At E = 2n+1 the pieces e^{-(x+-d)^2/2} H_n(x+-d) solve both halves of
either well; they glue into an eigenstate exactly when

    even sector:  H_n'(d) - d H_n(d) = d H_n(d) - H_{n+1}(d) = 0
    odd sector:   H_n(d) = 0

The odd separations are the positive Hermite zeros. The even ones are
isolated by a sign scan whose grid contains the zeros of H_n, which
interlace with them, so each scan cell pair holds at most one root.
"""

from functools import lru_cache
from typing import List, Tuple

import numpy as np
from scipy import optimize, special

from mirrorwell.exceptions import RootIsolationError, ValidationError
from mirrorwell.logging_config import get_logger
from mirrorwell.schemas.poly import PolynomialEigenstate, PolynomialParameterSet, even_count, odd_count
from mirrorwell.schemas.spectrum import ParitySector, WellKind
from mirrorwell.specfun import hermite
from mirrorwell.validation import validate_degree

logger = get_logger(__name__)

HEBOUND_C = 1.85575
_POLISH_XTOL = 1e-15
_SCAN_REFINEMENT = 8


def even_polynomial(n: int, d):
    """H_n'(d) - d H_n(d), written through the recurrence as d H_n(d) - H_{n+1}(d)."""
    return d * hermite(n, d) - hermite(n + 1, d)


def hebound(n: int) -> float:
    """Upper bound sqrt(2n+1) - c (2n+1)^(-1/6) on the zeros of H_n."""
    m = 2 * n + 1
    return float(np.sqrt(m) - HEBOUND_C / m ** (1.0 / 6.0))


def even_scan_limit(n: int) -> float:
    """Right end of the even-branch scan; no root is expected beyond it."""
    return float(np.sqrt(2 * n + 3))


def _polish(func, lo: float, hi: float) -> float:
    return float(optimize.brentq(func, lo, hi, xtol=_POLISH_XTOL, rtol=4 * np.finfo(float).eps, maxiter=200))


@lru_cache(maxsize=256)
def _hermite_zeros(n: int) -> Tuple[float, ...]:
    """Positive zeros of H_n: Golub-Welsch nodes polished on the recurrence."""
    if n < 2:
        return ()
    nodes = np.sort(special.roots_hermite(n)[0])
    positive = nodes[nodes > 1e-8]
    gaps = np.diff(np.concatenate(([0.0] if n % 2 else [-positive[0]], positive)))
    half = 0.25 * float(np.min(gaps))

    def h(x: float) -> float:
        return hermite(n, x)

    zeros = []
    for x in positive:
        lo, hi = x - half, x + half
        if np.sign(h(lo)) == np.sign(h(hi)):
            raise RootIsolationError(f"could not bracket the Hermite zero near {x} for n={n}")
        zeros.append(_polish(h, lo, hi))
    return tuple(zeros)


@lru_cache(maxsize=256)
def _even_roots(n: int) -> Tuple[float, ...]:
    limit = even_scan_limit(n)
    anchors = np.array(_hermite_zeros(n))
    fences = np.concatenate(([0.0], anchors, [limit]))
    step = float(np.min(np.diff(fences))) / _SCAN_REFINEMENT
    grid = np.union1d(np.arange(0.0, limit, step), fences)
    # d = 0 is a trivial root for even n
    grid = grid[grid > 0.0] if n % 2 == 0 else grid

    values = even_polynomial(n, grid)
    if values[-1] == 0.0 or np.sign(values[-1]) != np.sign(values[-2]):
        raise RootIsolationError(f"even-branch root of degree {n} reaches the scan limit {limit:.6f}")

    roots = []
    for i in range(len(grid) - 1):
        if values[i] == 0.0:
            roots.append(float(grid[i]))
        elif np.sign(values[i]) * np.sign(values[i + 1]) < 0:
            roots.append(_polish(lambda x: even_polynomial(n, x), float(grid[i]), float(grid[i + 1])))

    expected = even_count(n)
    if len(roots) != expected:
        raise RootIsolationError(f"found {len(roots)} even-branch roots for n={n}, expected {expected}")
    return tuple(roots)


def even_params(n: int) -> List[float]:
    """Positive roots of H_n'(d) - d H_n(d), ascending.

    Examples:
        >>> [round(x, 12) for x in even_params(1)]
        [1.0]
        >>> [round(x, 6) for x in even_params(3)]
        [0.602114, 2.03407]
    """
    validate_degree(n)
    return list(_even_roots(n))


def odd_params(n: int) -> List[float]:
    """Positive zeros of H_n, ascending.

    Examples:
        >>> odd_params(1)
        []
    """
    validate_degree(n)
    zeros = list(_hermite_zeros(n))
    if len(zeros) != odd_count(n):
        raise RootIsolationError(f"found {len(zeros)} Hermite zeros for n={n}, expected {odd_count(n)}")
    return zeros


def parameter_set(n: int) -> PolynomialParameterSet:
    return PolynomialParameterSet(n=n, even_params=even_params(n), odd_params=odd_params(n))


def params_for(n: int, sector: ParitySector) -> List[float]:
    return even_params(n) if sector is ParitySector.EVEN else odd_params(n)


def piece_signs(n: int, sector: ParitySector, kind: WellKind) -> Tuple[int, int]:
    """(left, right) amplitudes of the Hermite pieces.

    The double well keeps H_n(x+d) on the left and H_n(x-d) on the right;
    the single well swaps the shifts. Parity then fixes the relative sign.
    """
    parity = -1 if n % 2 else 1
    if kind is WellKind.DOUBLE:
        return (1 if sector is ParitySector.EVEN else -1, parity)
    return (parity, 1 if sector is ParitySector.EVEN else -1)


def build_eigenstate(n: int, j: int, sector: ParitySector, kind: WellKind) -> PolynomialEigenstate:
    """Closed-form eigenstate of energy 2n+1 at the j-th (1-based) separation.

    Raises:
        ValidationError: If j does not index the parameter list of (n, sector).

    Examples:
        >>> build_eigenstate(1, 1, ParitySector.EVEN, WellKind.DOUBLE).piece_signs
        (1, -1)
    """
    params = params_for(n, sector)
    if not 1 <= j <= len(params):
        raise ValidationError(f"j={j} outside 1..{len(params)} for n={n}, {sector.value} sector")
    d = params[j - 1]
    logger.debug("Built polynomial eigenstate", n=n, j=j, sector=sector.value, kind=kind.value, d=d)
    return PolynomialEigenstate(
        n=n,
        j=j,
        d=d,
        sector=sector,
        kind=kind,
        energy=2 * n + 1,
        piece_signs=piece_signs(n, sector, kind),
    )


def is_polynomial_point(sector: ParitySector, d: float, E: float, tol: float = 1e-9) -> bool:
    """True when (d, E) is one of the closed-form eigenpairs of the sector."""
    n = int(round((E - 1.0) / 2.0))
    if n < 1 or abs(E - (2 * n + 1)) > tol or n > 100:
        return False
    return any(abs(p - d) <= 1e-8 for p in params_for(n, sector))
