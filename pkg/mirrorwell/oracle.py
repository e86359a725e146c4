"""
Finite-difference reference spectra.

-psi'' + V psi = E psi is discretized with the 3-point stencil on a uniform
grid with Dirichlet ends; the lowest eigenvalues of the resulting symmetric
tridiagonal matrix come from LAPACK's bisection driver. Symmetric grids keep
a node at x = 0. Walls are never modelled by large finite values: a walled
system is solved on its open half-line with a Dirichlet node at the wall.

The connection-method spectra are checked against these numbers by
cross_check().
"""

import math
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy import linalg

from mirrorwell.config import settings
from mirrorwell.exceptions import GridResolutionError, ParameterRangeError, ValidationError
from mirrorwell.logging_config import get_logger, log_solver_call
from mirrorwell.potentials import evaluate
from mirrorwell.schemas.oracle import GridSpec, OracleResult
from mirrorwell.schemas.potential import PotentialFamily, PotentialSpec, WallSide
from mirrorwell.schemas.spectrum import EigenvalueRecord, Method, ParitySector, WellKind
from mirrorwell.schemas.verify import VerificationReport, VerificationRow
from mirrorwell.spectrum import find_eigenvalues
from mirrorwell.validation import validate_count

logger = get_logger(__name__)

MAX_ORACLE_COUNT = 15
MAX_KA_SEPARATION = 4.0
# h^2 E_max above this means too few points per wavelength
CROWDING_LIMIT = 0.05
TURNING_MARGIN = 8.0

_WALLED_FAMILY = {
    WallSide.DR: PotentialFamily.WALLED_DR,
    WallSide.DL: PotentialFamily.WALLED_DL,
    WallSide.SR: PotentialFamily.WALLED_SR,
    WallSide.SL: PotentialFamily.WALLED_SL,
}


def _lowest_eigenvalues(potential_values: np.ndarray, h: float, count: int) -> np.ndarray:
    inv_h2 = 1.0 / (h * h)
    diagonal = 2.0 * inv_h2 + potential_values
    off_diagonal = np.full(potential_values.size - 1, -inv_h2)
    return linalg.eigvalsh_tridiagonal(diagonal, off_diagonal, select="i", select_range=(0, count - 1))


def _symmetric_nodes(half_width: float, step: float) -> Tuple[np.ndarray, float]:
    """Interior nodes of [-L, L] with one node exactly at 0."""
    cells = max(2, int(round(half_width / step)))
    h = half_width / cells
    return h * np.arange(-cells + 1, cells), h


def _halfline_nodes(half_width: float, step: float, sign: int) -> Tuple[np.ndarray, float]:
    """Interior nodes of (0, L) or (-L, 0); the wall is the Dirichlet node at 0."""
    cells = max(2, int(round(half_width / step)))
    h = half_width / cells
    return sign * h * np.arange(1, cells), h


def _needed_half_width(d: float, eigenvalues: np.ndarray) -> float:
    return d + float(np.sqrt(max(float(eigenvalues[-1]), 0.0))) + TURNING_MARGIN


def _check_resolution(label: str, d: float, half_width: float, step: float, eigenvalues: np.ndarray) -> None:
    e_max = float(eigenvalues[-1])
    if step * step * max(e_max, 0.0) > CROWDING_LIMIT:
        raise GridResolutionError(
            f"step {step:g} too coarse for {label} levels up to E={e_max:.4g} (h^2 E_max must stay below {CROWDING_LIMIT:g})"
        )
    needed = _needed_half_width(d, eigenvalues)
    if half_width < needed:
        raise GridResolutionError(f"half width {half_width:g} too small for {label} levels up to E={e_max:.4g}; need at least {needed:.4g}")


def _run(
    label: str,
    d: float,
    count: int,
    grid: GridSpec,
    solve: Callable[[float, float], Tuple[np.ndarray, float]],
) -> OracleResult:
    """Solve at h (and h/2 with Richardson) and package the result.

    Unless the grid pins half_width, a domain too narrow for the levels
    found is widened to d + sqrt(E_max) + 8 and solved again.
    """
    half_width = grid.resolved_half_width(d)
    coarse, h = solve(grid.step, half_width)
    if coarse.size < count:
        raise GridResolutionError(f"grid holds only {coarse.size} levels, {count} requested")
    needed = _needed_half_width(d, coarse)
    if grid.half_width is None and half_width < needed:
        logger.info("Widening oracle grid", potential=label, d=d, half_width=half_width, widened_to=math.ceil(needed))
        half_width = float(math.ceil(needed))
        coarse, h = solve(grid.step, half_width)
    _check_resolution(label, d, half_width, h, coarse)

    if not grid.richardson:
        return OracleResult(
            potential=label,
            d=d,
            eigenvalues=coarse.tolist(),
            h_used=h,
            extrapolated=False,
            est_error=0.0,
            level_errors=[0.0] * count,
        )

    fine, h_fine = solve(0.5 * grid.step, half_width)
    # error ~ C h^2, so the difference of the two runs is 3/4 of the coarse error
    extrapolated = (4.0 * fine - coarse) / 3.0
    level_errors = np.abs(fine - coarse) / 3.0
    order = np.argsort(extrapolated, kind="stable")
    return OracleResult(
        potential=label,
        d=d,
        eigenvalues=extrapolated[order].tolist(),
        h_used=h_fine,
        extrapolated=True,
        est_error=float(np.max(level_errors)),
        level_errors=level_errors[order].tolist(),
    )


def fd_spectrum(spec: PotentialSpec, count: int, grid: Optional[GridSpec] = None) -> OracleResult:
    """Lowest count eigenvalues of any catalog potential.

    Walled families are routed to halfline_spectrum.

    Raises:
        ParameterRangeError: If count is outside [1, 15].
        GridResolutionError: If the grid is too coarse or too narrow for
            the requested levels.

    Examples:
        >>> r = fd_spectrum(PotentialSpec(family=PotentialFamily.HARMONIC_PLUS), 3)
        >>> [round(e, 6) for e in r.eigenvalues]
        [1.0, 3.0, 5.0]
    """
    validate_count(count, MAX_ORACLE_COUNT)
    grid = grid or settings.grid_defaults()
    if spec.wall_side is not None:
        return halfline_spectrum(spec.wall_side, spec.d, count, grid)

    half_width = grid.resolved_half_width(spec.d)
    logger.debug(
        "Finite-difference spectrum",
        **log_solver_call("oracle", "fd_spectrum", potential=spec.name, d=spec.d, count=count, half_width=half_width, step=grid.step),
    )

    def solve(step: float, width: float) -> Tuple[np.ndarray, float]:
        xs, h = _symmetric_nodes(width, step)
        return _lowest_eigenvalues(np.asarray(evaluate(spec, xs)), h, count), h

    return _run(spec.name, spec.d, count, grid, solve)


def halfline_spectrum(side: WallSide, d: float, count: int, grid: Optional[GridSpec] = None) -> OracleResult:
    """Lowest eigenvalues of a walled half-line system.

    DR and DL share one spectrum, equal to the odd sector of the double
    well; SR and SL likewise reproduce the odd sector of the single well.
    """
    validate_count(count, MAX_ORACLE_COUNT)
    grid = grid or settings.grid_defaults()
    spec = PotentialSpec(family=_WALLED_FAMILY[side], d=d)
    half_width = grid.resolved_half_width(d)
    logger.debug(
        "Half-line spectrum",
        **log_solver_call("oracle", "halfline_spectrum", side=side.value, d=d, count=count, half_width=half_width),
    )

    def solve(step: float, width: float) -> Tuple[np.ndarray, float]:
        xs, h = _halfline_nodes(width, step, side.allowed_sign)
        return _lowest_eigenvalues(np.asarray(evaluate(spec, xs)), h, count), h

    return _run(spec.name, d, count, grid, solve)


def ka_double_single_spectrum(variant: PotentialFamily, d: float, count: int, grid: Optional[GridSpec] = None) -> OracleResult:
    """Spectra of min/max pairs of shifted Krein-Adler potentials.

    Raises:
        ValidationError: If variant is not KA-D or KA-S.
        ParameterRangeError: If d > 4.
    """
    if variant not in (PotentialFamily.KREIN_ADLER_DOUBLE, PotentialFamily.KREIN_ADLER_SINGLE):
        raise ValidationError(f"variant must be KA-D or KA-S, got {variant.value}")
    if not 0.0 <= d <= MAX_KA_SEPARATION:
        raise ParameterRangeError(f"separation d={d} outside [0, {MAX_KA_SEPARATION:g}] for {variant.value}")
    return fd_spectrum(PotentialSpec(family=variant, d=d), count, grid)


def oracle_records(spec: PotentialSpec, result: OracleResult) -> List[EigenvalueRecord]:
    """EigenvalueRecords for an oracle spectrum.

    Levels of symmetric potentials alternate even/odd from the ground
    state, so they get a sector and a per-sector index; other potentials
    get the overall index only.
    """
    kind = {PotentialFamily.DOUBLE: WellKind.DOUBLE, PotentialFamily.SINGLE: WellKind.SINGLE}.get(spec.family)
    errors = result.level_errors or [result.est_error] * len(result.eigenvalues)
    records = []
    for k, (energy, error) in enumerate(zip(result.eigenvalues, errors)):
        if spec.is_symmetric:
            sector, index = (ParitySector.EVEN if k % 2 == 0 else ParitySector.ODD), k // 2
        else:
            sector, index = None, k
        records.append(
            EigenvalueRecord(
                potential=spec.name,
                kind=kind,
                sector=sector,
                index=index,
                d=spec.d,
                energy=energy,
                bracket=(energy - error, energy + error),
                residual=error,
                method=Method.ORACLE,
            )
        )
    return records


def cross_check(
    kind: WellKind,
    d: float,
    count: int,
    tolerance: float = 1e-5,
    grid: Optional[GridSpec] = None,
) -> VerificationReport:
    """Connection-method eigenvalues against the finite-difference ones.

    Examples:
        >>> cross_check(WellKind.DOUBLE, 1.0, 7).passed
        True
    """
    connection = find_eigenvalues(kind, d, count)
    oracle = fd_spectrum(PotentialSpec(family=PotentialFamily(kind.value), d=d), count, grid)

    rows = []
    for k, record in enumerate(connection):
        reference = oracle.eigenvalues[k]
        rows.append(
            VerificationRow(
                index=k,
                sector=record.sector,
                connection=record.energy,
                oracle=reference,
                deviation=abs(record.energy - reference),
            )
        )
    max_deviation = max((row.deviation for row in rows), default=float("inf"))
    passed = len(rows) == count and max_deviation <= tolerance
    if not passed:
        logger.warning("Oracle cross-check failed", kind=kind.value, d=d, count=count, max_deviation=max_deviation, tolerance=tolerance)
    return VerificationReport(
        potential=kind.value,
        d=d,
        count=count,
        tolerance=tolerance,
        rows=rows,
        max_deviation=max_deviation,
        oracle_est_error=oracle.est_error,
        passed=passed,
    )
