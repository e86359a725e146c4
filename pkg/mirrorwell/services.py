"""
Request-level operations shared by the command line and the HTTP routes.

Each function takes already parsed parameters, picks the solver that fits
the potential and returns schema objects ready for export.
"""

from typing import List, Optional, Sequence, Tuple

import pydantic

from mirrorwell.config import settings
from mirrorwell.exceptions import ValidationError
from mirrorwell.logging_config import get_logger
from mirrorwell.oracle import fd_spectrum, oracle_records
from mirrorwell.potentials import potential_spec
from mirrorwell.schemas.potential import PotentialFamily
from mirrorwell.schemas.spectrum import ParitySector, SpectrumReport, WellKind
from mirrorwell.spectrum import find_eigenvalues, sector_eigenvalues
from mirrorwell.validation import validate_count, validate_separation
from mirrorwell.wavefun import SampledWavefunction, normalize, sample

logger = get_logger(__name__)

CONNECTION_FAMILIES = {PotentialFamily.DOUBLE: WellKind.DOUBLE, PotentialFamily.SINGLE: WellKind.SINGLE}
DEFAULT_POINTS = 801


def _override(model: pydantic.BaseModel, updates: dict):
    """Copy of a settings-derived model with validated overrides."""
    try:
        return type(model).model_validate({**model.model_dump(), **updates})
    except pydantic.ValidationError as e:
        raise ValidationError(f"invalid solver option: {e.errors()[0]['msg']}")


def well_kind(potential: str) -> WellKind:
    """D or S as a WellKind.

    Raises:
        UnknownPotentialError: If the name is not in the catalog.
        ValidationError: If the potential is not one of the two wells.
    """
    family = potential_spec(potential).family
    if family not in CONNECTION_FAMILIES:
        raise ValidationError(f"potential {family.value} has no connection conditions; use D or S")
    return CONNECTION_FAMILIES[family]


def compute_spectrum(
    potential: str,
    d: float,
    count: int,
    sector: Optional[ParitySector] = None,
    e_max: Optional[float] = None,
    step: Optional[float] = None,
    g: float = 1.0,
) -> SpectrumReport:
    """Lowest levels of any catalog potential.

    D and S go through the connection conditions, everything else through
    the finite-difference oracle. step overrides the coarse scan step for
    D/S and the grid step otherwise; e_max caps the D/S energy window.
    """
    validate_separation(d)
    validate_count(count)
    spec = potential_spec(potential, d=d, g=g)
    kind = CONNECTION_FAMILIES.get(spec.family)

    if kind is None:
        if sector is not None and not spec.is_symmetric:
            raise ValidationError(f"potential {spec.name} has no parity sectors")
        grid = settings.grid_defaults()
        if step is not None:
            grid = _override(grid, {"step": step})
        wanted = 2 * count if sector is not None else count
        records = oracle_records(spec, fd_spectrum(spec, wanted, grid))
        if sector is not None:
            records = [r for r in records if r.sector is sector][:count]
        return SpectrumReport(potential=spec.name, d=d, requested=count, records=records)

    updates = {}
    if e_max is not None:
        updates["e_max"] = e_max
    if step is not None:
        updates["coarse_step"] = step
    config = _override(settings.scan_defaults(), updates)
    if sector is None:
        records = find_eigenvalues(kind, d, count, config)
    else:
        records = sector_eigenvalues(kind, sector, d, count, config)

    complete = len(records) == count
    message = None if complete else f"only {len(records)} of {count} levels found in the energy window"
    return SpectrumReport(potential=spec.name, d=d, requested=count, records=records, complete=complete, message=message)


def resolve_states(
    kind: WellKind,
    d: float,
    indices: Optional[Sequence[int]] = None,
    energy: Optional[float] = None,
    sector: Optional[ParitySector] = None,
) -> List[Tuple[ParitySector, float]]:
    """(sector, E) pairs selected either by explicit energy or by index.

    Indices count all levels from the ground state, or the levels of one
    sector when sector is given.

    Raises:
        ValidationError: If neither or both selectors are given, an explicit
            energy comes without a sector, or an index is not found.
    """
    if (indices is None) == (energy is None):
        raise ValidationError("give either an energy or a list of indices")
    if energy is not None:
        if sector is None:
            raise ValidationError("an explicit energy needs --sector even or odd")
        return [(sector, energy)]

    count = max(indices) + 1
    if sector is None:
        records = find_eigenvalues(kind, d, count)
    else:
        records = sector_eigenvalues(kind, sector, d, count)
    if len(records) < count:
        raise ValidationError(f"level {count - 1} of {kind.value} at d={d} could not be resolved")
    return [(records[i].sector, records[i].energy) for i in indices]


def default_range(d: float) -> Tuple[float, float]:
    return -(d + 6.0), d + 6.0


def sample_states(
    kind: WellKind,
    d: float,
    states: Sequence[Tuple[ParitySector, float]],
    x_min: Optional[float] = None,
    x_max: Optional[float] = None,
    points: int = DEFAULT_POINTS,
    unit_norm: bool = True,
) -> List[SampledWavefunction]:
    low, high = default_range(d)
    x_min = low if x_min is None else x_min
    x_max = high if x_max is None else x_max
    sampled = []
    for sector, energy in states:
        w = sample(kind, sector, d, energy, x_min, x_max, points)
        sampled.append(normalize(w) if unit_norm else w)
    logger.debug("Sampled states", kind=kind.value, d=d, states=len(sampled), points=points)
    return sampled
