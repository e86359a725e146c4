"""
Eigenvalue search for the double and single wells.

Each parity sector is handled on its own: the connection condition is
sampled on a coarse energy grid (plus probe points hugging the odd
integers, where large-d pairs collapse), every sign change is refined with
Brent's method, and the two sectors are interleaved afterwards. By the
oscillation theorem the k lowest levels hold (k+1)//2 even and k//2 odd
states.
"""

from typing import List, Optional, Tuple

import numpy as np
from scipy import optimize

from mirrorwell.config import settings
from mirrorwell.connection import ENERGY_CEILING, condition_array, condition_float
from mirrorwell.exceptions import WindowExhaustedError
from mirrorwell.logging_config import get_logger, log_root_refinement, log_solver_call
from mirrorwell.polyparams import is_polynomial_point
from mirrorwell.schemas.spectrum import (
    EigenvalueRecord,
    Method,
    ParitySector,
    ScanConfig,
    SplittingRow,
    WellKind,
)
from mirrorwell.validation import validate_count, validate_separation

logger = get_logger(__name__)

# auto windows stop just short of the supported ceiling
_WINDOW_CAP = ENERGY_CEILING - 1e-6
_PROBE_EXPONENTS = range(1, 9)


def default_window(kind: WellKind, d: float, count: int) -> Tuple[float, float]:
    """Energy window scanned when the configuration leaves it open."""
    low = d * d if kind is WellKind.SINGLE else 0.0
    return low, min(_WINDOW_CAP, d * d + 2.0 * count + 8.0)


def _scan_grid(low: float, high: float, config: ScanConfig) -> np.ndarray:
    steps = max(1, int(np.ceil((high - low) / config.coarse_step)))
    grid = np.linspace(low, high, steps + 1)

    probes = []
    first_odd = max(1, int(np.ceil(low)) | 1)
    for centre in range(first_odd, int(np.floor(high)) + 1, 2):
        for k in _PROBE_EXPONENTS:
            offset = 10.0 ** -k
            if offset <= config.degeneracy_window:
                probes.extend((centre - offset, centre + offset))
        probes.append(float(centre))
    if probes:
        probes = np.asarray(probes)
        grid = np.union1d(grid, probes[(probes > low) & (probes < high)])
    return grid


def _refine(
    kind: WellKind,
    sector: ParitySector,
    d: float,
    lo: float,
    hi: float,
    f_lo: float,
    f_hi: float,
    config: ScanConfig,
) -> Tuple[float, float, bool, int]:
    def objective(E: float) -> float:
        return condition_float(kind, sector, d, E)

    root, info = optimize.brentq(
        objective,
        lo,
        hi,
        xtol=config.refine_tol,
        maxiter=config.max_refine_iter,
        full_output=True,
        disp=False,
    )
    scale = max(abs(f_lo), abs(f_hi))
    residual = abs(objective(root)) / scale if scale > 0 else 0.0
    return float(root), residual, bool(info.converged), int(info.iterations)


def _zeros_in_window(
    kind: WellKind,
    sector: ParitySector,
    d: float,
    low: float,
    high: float,
    needed: int,
    config: ScanConfig,
    include_low: bool = True,
) -> List[Tuple[float, Tuple[float, float], float, bool, int]]:
    """Zeros of the condition on [low, high], or (low, high] without include_low.

    An exact zero on a grid point is kept once. Its bracket runs to the
    neighbouring grid points and closes on the zero itself at a window end.
    """
    grid = _scan_grid(low, high, config)
    values = condition_array(kind, sector, d, grid)
    signs = np.sign(values)
    last = len(grid) - 1

    found = []
    for i in range(len(grid)):
        if len(found) >= needed:
            break
        if signs[i] == 0.0:
            if i == 0 and not include_low:
                continue
            root = float(grid[i])
            lo = float(grid[i - 1]) if i > 0 else root
            hi = float(grid[i + 1]) if i < last else root
            found.append((root, (lo, hi), 0.0, True, 0))
            continue
        if i < last and signs[i + 1] != 0.0 and signs[i] != signs[i + 1]:
            lo, hi = float(grid[i]), float(grid[i + 1])
            root, residual, converged, iterations = _refine(kind, sector, d, lo, hi, values[i], values[i + 1], config)
            if not lo < root < hi:
                lo = float(grid[max(i - 1, 0)])
                hi = float(grid[min(i + 2, last)])
            found.append((root, (lo, hi), residual, converged, iterations))
    return found


def sector_eigenvalues(
    kind: WellKind,
    sector: ParitySector,
    d: float,
    count: int,
    config: Optional[ScanConfig] = None,
) -> List[EigenvalueRecord]:
    """The count lowest eigenvalues of one parity sector.

    Args:
        kind: Double or single well.
        sector: Even (Neumann) or odd (Dirichlet) states.
        d: Separation in [0, 6].
        count: Number of levels, at most 20.
        config: Scan parameters; settings.scan_defaults() when None.

    Returns:
        Records ordered by energy, indexed 0.. within the sector. Fewer than
        count records come back when the window runs out and strict is off.

    Raises:
        WindowExhaustedError: If the window holds too few zeros and
            config.strict is set.

    Examples:
        >>> [r.energy for r in sector_eigenvalues(WellKind.DOUBLE, ParitySector.EVEN, 3.0, 1)]
        [0.99955...]
    """
    validate_separation(d)
    validate_count(count)
    config = config or settings.scan_defaults()
    auto_low, auto_high = default_window(kind, d, 2 * count)
    low = config.e_min if config.e_min is not None else auto_low
    high = config.e_max if config.e_max is not None else auto_high

    logger.debug(
        "Searching sector",
        **log_solver_call("spectrum", "sector_eigenvalues", kind=kind.value, sector=sector.value, d=d, window=(low, high)),
    )

    found = _zeros_in_window(kind, sector, d, low, high, count, config)
    while len(found) < count and config.e_max is None and high < _WINDOW_CAP:
        next_high = min(_WINDOW_CAP, high + 2.0 * (count - len(found)) + 8.0)
        logger.debug("Extending energy window", kind=kind.value, sector=sector.value, d=d, high=next_high)
        found.extend(_zeros_in_window(kind, sector, d, high, next_high, count - len(found), config, include_low=False))
        high = next_high

    records = []
    for index, (energy, bracket, residual, converged, iterations) in enumerate(found):
        if not converged:
            logger.warning(
                "Eigenvalue refinement did not converge",
                **log_root_refinement(kind.value, sector.value, d, energy, iterations, converged),
            )
        else:
            logger.debug(
                "Eigenvalue refined",
                **log_root_refinement(kind.value, sector.value, d, energy, iterations, converged, residual=residual),
            )
        records.append(
            EigenvalueRecord(
                potential=kind.value,
                kind=kind,
                sector=sector,
                index=index,
                d=d,
                energy=energy,
                bracket=bracket,
                residual=residual,
                method=Method.POLYNOMIAL if is_polynomial_point(sector, d, energy) else Method.CONNECTION,
                converged=converged,
                iterations=iterations,
            )
        )

    if len(records) < count:
        message = (
            f"only {len(records)} of {count} {sector.value} levels of {kind.value} "
            f"at d={d} found below E={high:g}"
        )
        if config.strict:
            raise WindowExhaustedError(message, records)
        logger.warning("Energy window exhausted", kind=kind.value, sector=sector.value, d=d, found=len(records), requested=count)
    return records


def sector_counts(count: int) -> Tuple[int, int]:
    """Even and odd levels among the count lowest states."""
    return (count + 1) // 2, count // 2


def find_eigenvalues(
    kind: WellKind,
    d: float,
    count: int,
    config: Optional[ScanConfig] = None,
) -> List[EigenvalueRecord]:
    """The count lowest eigenvalues across both sectors, ascending.

    Ties are ordered even before odd. Once the splitting of a pair falls
    below the refinement tolerance (roughly d > 5 for the lowest pairs of
    the double well) the two members agree only to that tolerance and may
    come back as equal floats or in either order; splitting_table gaps are
    then not meaningful.

    Examples:
        >>> [round(r.energy, 5) for r in find_eigenvalues(WellKind.DOUBLE, 1.0, 3)]
        [0.61892, 1.46847, 3.0]
    """
    validate_count(count)
    config = config or settings.scan_defaults()
    n_even, n_odd = sector_counts(count)

    records = sector_eigenvalues(kind, ParitySector.EVEN, d, n_even, config)
    if n_odd:
        try:
            records += sector_eigenvalues(kind, ParitySector.ODD, d, n_odd, config)
        except WindowExhaustedError as e:
            raise WindowExhaustedError(e.message, records + e.records) from e

    records.sort(key=lambda r: (r.energy, 0 if r.sector is ParitySector.EVEN else 1))
    return records


def splitting_table(
    d: float,
    levels: int,
    kind: WellKind = WellKind.DOUBLE,
    config: Optional[ScanConfig] = None,
) -> List[SplittingRow]:
    """Even/odd pairs of the lowest levels with their gaps.

    epsilon_even and epsilon_odd measure the distance of each member of the
    pair from the harmonic level 2n+1 it approaches as the wells separate.
    """
    config = config or settings.scan_defaults()
    even = sector_eigenvalues(kind, ParitySector.EVEN, d, levels, config)
    odd = sector_eigenvalues(kind, ParitySector.ODD, d, levels, config)

    rows = []
    for n, (e_rec, o_rec) in enumerate(zip(even, odd)):
        harmonic = 2 * n + 1
        rows.append(
            SplittingRow(
                level=n,
                even=e_rec.energy,
                odd=o_rec.energy,
                gap=o_rec.energy - e_rec.energy,
                epsilon_even=harmonic - e_rec.energy,
                epsilon_odd=o_rec.energy - harmonic,
            )
        )
    return rows
