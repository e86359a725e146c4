"""
Regeneration of the reference tables.

Tables 1 and 2 list the polynomial separations together with the
polynomial whose roots they are; Tables 3 and 4 list the seven lowest
levels of the double and single wells on fixed separation grids. Nothing
is stored: every call recomputes from scratch.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import hermite as herm

from mirrorwell.config import settings
from mirrorwell.exceptions import ValidationError
from mirrorwell.logging_config import get_logger, log_solver_call
from mirrorwell.polyparams import even_params, odd_params
from mirrorwell.schemas.spectrum import WellKind
from mirrorwell.spectrum import find_eigenvalues

logger = get_logger(__name__)

TABLE_LEVELS = 7
EVEN_DEGREES = range(1, 7)
ODD_DEGREES = range(2, 7)
DOUBLE_ROWS = ("0", "1/10", "1/4", "1/2", "3/4", "1", "3/2", "2", "3", "4")
SINGLE_ROWS = ("1/10", "1/4", "1/2", "3/4", "1", "3/2", "2", "5/2")
LEVEL_HEADER = ("d", "E_0^e", "E_0^o", "E_1^e", "E_1^o", "E_2^e", "E_2^o", "E_3^e")


@dataclass(frozen=True)
class RenderedTable:
    title: str
    header: Tuple[str, ...]
    rows: Tuple[Tuple[str, ...], ...]


def format_cell(value: float) -> str:
    """Six significant digits, trailing zeros kept.

    Examples:
        >>> format_cell(5.104)
        '5.10400'
    """
    return format(value, "#.6g")


def _hermite_coefficients(n: int) -> List[int]:
    """Integer power-basis coefficients of H_n, lowest degree first."""
    basis = [0] * n + [1]
    return [int(round(c)) for c in herm.herm2poly(basis)]


def _render_integer_polynomial(coefficients: Sequence[int]) -> str:
    """Factor out the content and a power of d, e.g. [0, -10, 0, 4] -> '2d(-5 + 2d^2)'."""
    coefficients = list(coefficients)
    while coefficients and coefficients[-1] == 0:
        coefficients.pop()
    shift = 0
    while coefficients[shift] == 0:
        shift += 1
    reduced = coefficients[shift:]
    content = 0
    for c in reduced:
        content = math.gcd(content, abs(c))
    reduced = [c // content for c in reduced]

    terms = []
    for power, c in enumerate(reduced):
        if c == 0:
            continue
        monomial = "" if power == 0 else ("d" if power == 1 else f"d^{power}")
        magnitude = "" if abs(c) == 1 and monomial else str(abs(c))
        body = f"{magnitude}{monomial}"
        if not terms:
            terms.append(f"-{body}" if c < 0 else body)
        else:
            terms.append(f"- {body}" if c < 0 else f"+ {body}")

    prefix = "" if content == 1 else str(content)
    prefix += "" if shift == 0 else ("d" if shift == 1 else f"d^{shift}")
    inner = " ".join(terms)
    if len(terms) == 1 and not prefix:
        return inner
    return f"{prefix}({inner})" if len(terms) > 1 else f"{prefix}{inner}"


def even_condition_polynomial(n: int) -> str:
    """-(H_n'(d) - d H_n(d)) = H_{n+1}(d) - d H_n(d) in factored form.

    Examples:
        >>> even_condition_polynomial(2)
        '2d(-5 + 2d^2)'
    """
    upper = _hermite_coefficients(n + 1)
    lower = [0] + _hermite_coefficients(n)
    return _render_integer_polynomial([u - l for u, l in zip(upper, lower)])


def odd_condition_polynomial(n: int) -> str:
    """H_n(d) in factored form.

    Examples:
        >>> odd_condition_polynomial(3)
        '4d(-3 + 2d^2)'
    """
    return _render_integer_polynomial(_hermite_coefficients(n))


def table_even_params() -> RenderedTable:
    rows = tuple(
        (str(n), even_condition_polynomial(n), ", ".join(format_cell(d) for d in even_params(n)))
        for n in EVEN_DEGREES
    )
    return RenderedTable("Even parameters", ("n", "-(H_n'(d) - d H_n(d))", "d_j^e"), rows)


def table_odd_params() -> RenderedTable:
    rows = tuple(
        (str(n), odd_condition_polynomial(n), ", ".join(format_cell(d) for d in odd_params(n)))
        for n in ODD_DEGREES
    )
    return RenderedTable("Odd parameters", ("n", "H_n(d)", "d_j^o"), rows)


def _level_row(job: Tuple[str, str]) -> Tuple[str, ...]:
    kind_value, label = job
    d = float(Fraction(label))
    records = find_eigenvalues(WellKind(kind_value), d, TABLE_LEVELS)
    return (label, *(format_cell(r.energy) for r in records))


def _level_table(kind: WellKind, labels: Sequence[str], title: str, parallel: bool, workers: Optional[int]) -> RenderedTable:
    jobs = [(kind.value, label) for label in labels]
    logger.debug("Building level table", **log_solver_call("tables", "level_table", kind=kind.value, rows=len(jobs), parallel=parallel))
    if parallel:
        with ProcessPoolExecutor(max_workers=workers or settings.parallel_workers) as pool:
            rows = tuple(pool.map(_level_row, jobs))
    else:
        rows = tuple(_level_row(job) for job in jobs)
    return RenderedTable(title, LEVEL_HEADER, rows)


def table_double(parallel: bool = False, workers: Optional[int] = None) -> RenderedTable:
    """Seven lowest levels of the double well; row d = 0 is the harmonic spectrum."""
    return _level_table(WellKind.DOUBLE, DOUBLE_ROWS, "7 lowest eigenvalues of V_D", parallel, workers)


def table_single(parallel: bool = False, workers: Optional[int] = None) -> RenderedTable:
    return _level_table(WellKind.SINGLE, SINGLE_ROWS, "7 lowest eigenvalues of V_S", parallel, workers)


def build_table(which: int, parallel: bool = False, workers: Optional[int] = None) -> RenderedTable:
    """Table 1-4 by number.

    Raises:
        ValidationError: If which is not 1, 2, 3 or 4.
    """
    if which == 1:
        return table_even_params()
    if which == 2:
        return table_odd_params()
    if which == 3:
        return table_double(parallel, workers)
    if which == 4:
        return table_single(parallel, workers)
    raise ValidationError(f"table must be 1, 2, 3 or 4, got {which}")


def table_values(table: RenderedTable) -> np.ndarray:
    """Numeric body of a level table, one row per separation."""
    return np.array([[float(cell) for cell in row[1:]] for row in table.rows])
