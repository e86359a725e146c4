"""
Piecewise eigenfunctions of the double and single wells.

On x >= 0 a state is f(x + sigma d) with f(s) = e^{-s^2/2} Ubar(a; s) and
sigma the well's shift sign; mirror symmetry gives the x <= 0 half as
alpha f(-x + sigma d) with alpha = +1 (even) or -1 (odd). The same pieces
with Ubar replaced by H_n describe the closed-form polynomial states.

Global sign: the right-hand tail is positive for even states, the first
lobe right of the origin is positive for odd states.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from mirrorwell.exceptions import DecayError, ValidationError
from mirrorwell.logging_config import get_logger, log_solver_call
from mirrorwell.schemas.poly import PolynomialEigenstate
from mirrorwell.schemas.spectrum import ParitySector, WellKind
from mirrorwell.schemas.wavefunction import WavefunctionResponse
from mirrorwell.specfun import damped_ubar, hermite
from mirrorwell.validation import validate_energy, validate_separation

logger = get_logger(__name__)

DOMAIN_MARGIN = 12.0
QUADRATURE_ORDER = 64
DECAY_TOLERANCE = 1e-8


class Side(str, Enum):
    RIGHT = "right"
    LEFT = "left"


class PieceForm(str, Enum):
    UBAR = "ubar"
    HERMITE = "hermite"


@dataclass(frozen=True)
class WavefunctionPiece:
    """amplitude_sign * F(sqrt_branch * (x + shift_sign * d)) on one side of 0.

    F is e^{-u^2/2} Ubar(a; u) for the UBAR form (parameter = a) and
    e^{-u^2/2} H_n(u) for the HERMITE form (parameter = n). Hermite pieces
    are written directly in x +- d, so their branch is always +1.
    """

    side: Side
    shift_sign: int
    sqrt_branch: int
    amplitude_sign: int
    form: PieceForm
    parameter: float

    def __post_init__(self):
        for name in ("shift_sign", "sqrt_branch", "amplitude_sign"):
            if getattr(self, name) not in (1, -1):
                raise ValidationError(f"{name} must be +1 or -1, got {getattr(self, name)}")

    def argument(self, x, d: float):
        return self.sqrt_branch * (np.asarray(x, dtype=float) + self.shift_sign * d)

    def evaluate(self, x, d: float) -> Tuple[np.ndarray, np.ndarray]:
        """Value and x-derivative of the piece."""
        u = np.atleast_1d(self.argument(x, d))
        if self.form is PieceForm.UBAR:
            value, slope = damped_ubar(self.parameter, u)
        else:
            n = int(self.parameter)
            damping = np.exp(-0.5 * u * u)
            h = hermite(n, u)
            value = damping * h
            slope = damping * ((2.0 * n * hermite(n - 1, u) if n else 0.0) - u * h)
        value = self.amplitude_sign * np.asarray(value, dtype=float)
        slope = self.amplitude_sign * self.sqrt_branch * np.asarray(slope, dtype=float)
        return value, slope


def ubar_pieces(kind: WellKind, sector: ParitySector, d: float, E: float) -> Tuple[WavefunctionPiece, WavefunctionPiece]:
    """(left, right) Ubar pieces; left carries the sector sign alpha."""
    a = (1.0 - E) / 4.0
    sigma = kind.shift_sign
    right = WavefunctionPiece(Side.RIGHT, sigma, 1, 1, PieceForm.UBAR, a)
    left = WavefunctionPiece(Side.LEFT, -sigma, -1, sector.sign, PieceForm.UBAR, a)
    return left, right


def polynomial_pieces(state: PolynomialEigenstate) -> Tuple[WavefunctionPiece, WavefunctionPiece]:
    """(left, right) Hermite pieces of a closed-form state.

    The double well keeps H_n(x + d) on the left and H_n(x - d) on the
    right; the single well swaps them.
    """
    sigma = state.kind.shift_sign
    left_sign, right_sign = state.piece_signs
    right = WavefunctionPiece(Side.RIGHT, sigma, 1, right_sign, PieceForm.HERMITE, state.n)
    left = WavefunctionPiece(Side.LEFT, -sigma, 1, left_sign, PieceForm.HERMITE, state.n)
    return left, right


def _domain_half_width(d: float) -> float:
    return DOMAIN_MARGIN + abs(d)


def _check_domain(x: np.ndarray, d: float) -> None:
    limit = _domain_half_width(d)
    if np.any(np.abs(x) > limit):
        raise ValidationError(f"x must lie within [-{limit:g}, {limit:g}]")


def _evaluate_pieces(left: WavefunctionPiece, right: WavefunctionPiece, x: np.ndarray, d: float):
    values = np.empty_like(x)
    slopes = np.empty_like(x)
    on_right = x >= 0.0
    if on_right.any():
        values[on_right], slopes[on_right] = right.evaluate(x[on_right], d)
    if (~on_right).any():
        values[~on_right], slopes[~on_right] = left.evaluate(x[~on_right], d)
    return values, slopes


def _global_sign(right: WavefunctionPiece, sector: ParitySector, d: float) -> int:
    # Ubar tails are positive, so only odd states may need flipping
    if sector is ParitySector.EVEN:
        return 1
    value, slope = right.evaluate(0.0, d)
    lead = slope[0] if slope[0] != 0.0 else value[0]
    return -1 if lead < 0 else 1


def _gaps(left: WavefunctionPiece, right: WavefunctionPiece, d: float) -> Tuple[float, float]:
    v_right, s_right = right.evaluate(0.0, d)
    v_left, s_left = left.evaluate(0.0, d)
    return abs(float(v_right[0] - v_left[0])), abs(float(s_right[0] - s_left[0]))


def _prepare(kind: WellKind, sector: ParitySector, d: float, E: float):
    validate_separation(d)
    validate_energy(E)
    left, right = ubar_pieces(kind, sector, d, E)
    return left, right, _global_sign(right, sector, d)


def evaluate_eigenfunction(kind: WellKind, sector: ParitySector, d: float, E: float, x):
    """psi(x) for the state of energy E, unnormalized, with the global sign applied.

    Any E in (-1, 60) is accepted; away from an eigenvalue the pieces no
    longer join smoothly at 0 (see SampledWavefunction gaps).

    Raises:
        ValidationError: If |x| > 12 + d or d, E are out of range.

    Examples:
        >>> abs(evaluate_eigenfunction(WellKind.DOUBLE, ParitySector.ODD, 2 ** -0.5, 5.0, 0.0)) < 1e-12
        True
    """
    left, right, sign = _prepare(kind, sector, d, E)
    arr = np.asarray(x, dtype=float)
    flat = np.atleast_1d(arr)
    _check_domain(flat, d)
    values, _ = _evaluate_pieces(left, right, flat, d)
    values = sign * values
    return float(values[0]) if arr.ndim == 0 else values


def evaluate_derivative(kind: WellKind, sector: ParitySector, d: float, E: float, x):
    """psi'(x), one-sided from the right at x = 0."""
    left, right, sign = _prepare(kind, sector, d, E)
    arr = np.asarray(x, dtype=float)
    flat = np.atleast_1d(arr)
    _check_domain(flat, d)
    _, slopes = _evaluate_pieces(left, right, flat, d)
    slopes = sign * slopes
    return float(slopes[0]) if arr.ndim == 0 else slopes


def evaluate_polynomial_state(state: PolynomialEigenstate, x):
    """Closed-form e^{-(x+-d)^2/2} H_n(x+-d) state with its piece signs."""
    arr = np.asarray(x, dtype=float)
    flat = np.atleast_1d(arr)
    _check_domain(flat, state.d)
    left, right = polynomial_pieces(state)
    values, _ = _evaluate_pieces(left, right, flat, state.d)
    return float(values[0]) if arr.ndim == 0 else values


@dataclass
class SampledWavefunction:
    """Samples of one eigenfunction on an ascending grid through 0.

    scale is the factor applied to the analytic pieces; normalize() updates
    it together with values and gaps.
    """

    kind: WellKind
    sector: ParitySector
    d: float
    energy: float
    xs: np.ndarray
    values: np.ndarray
    continuity_gap: float
    derivative_gap: float
    norm: Optional[float] = None
    scale: float = field(default=1.0, repr=False)

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0

    def to_response(self) -> WavefunctionResponse:
        return WavefunctionResponse(
            kind=self.kind,
            sector=self.sector,
            d=self.d,
            energy=self.energy,
            xs=self.xs.tolist(),
            values=self.values.tolist(),
            continuity_gap=self.continuity_gap,
            derivative_gap=self.derivative_gap,
            norm=self.norm,
            node_count=node_count(self),
        )


def sample(
    kind: WellKind,
    sector: ParitySector,
    d: float,
    E: float,
    x_min: float,
    x_max: float,
    n_points: int,
) -> SampledWavefunction:
    """Sample psi on linspace(x_min, x_max, n_points) with 0 added.

    Raises:
        ValidationError: If n_points < 2, the range is empty, misses 0 or
            leaves [-(12 + d), 12 + d].
    """
    if n_points < 2:
        raise ValidationError(f"n_points must be at least 2, got {n_points}")
    if not (x_min < x_max) or not (x_min <= 0.0 <= x_max):
        raise ValidationError(f"sampling range [{x_min}, {x_max}] must be non-degenerate and contain 0")

    logger.debug(
        "Sampling wavefunction",
        **log_solver_call("wavefun", "sample", kind=kind.value, sector=sector.value, d=d, energy=E, points=n_points),
    )
    left, right, sign = _prepare(kind, sector, d, E)
    xs = np.union1d(np.linspace(x_min, x_max, n_points), [0.0])
    _check_domain(xs, d)
    values, _ = _evaluate_pieces(left, right, xs, d)
    continuity_gap, derivative_gap = _gaps(left, right, d)

    scale = float(sign)
    return SampledWavefunction(
        kind=kind,
        sector=sector,
        d=d,
        energy=E,
        xs=xs,
        values=scale * values,
        continuity_gap=continuity_gap,
        derivative_gap=derivative_gap,
        scale=scale,
    )


def _quadrature_nodes(half_width: float) -> Tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes on unit panels of [0, half_width]."""
    nodes, weights = np.polynomial.legendre.leggauss(QUADRATURE_ORDER)
    edges = np.linspace(0.0, half_width, int(np.ceil(half_width)) + 1)
    lo, hi = edges[:-1, None], edges[1:, None]
    half = 0.5 * (hi - lo)
    xs = (lo + half * (nodes[None, :] + 1.0)).ravel()
    ws = (half * weights[None, :]).ravel()
    return xs, ws


def squared_norm(kind: WellKind, sector: ParitySector, d: float, E: float) -> float:
    """Integral of f^2 over [-(12 + d), 12 + d] for the unscaled pieces.

    Raises:
        DecayError: If |psi| at the domain ends is not below 1e-8 max|psi|.
    """
    half_width = _domain_half_width(d)
    _, right = ubar_pieces(kind, sector, d, E)
    xs, ws = _quadrature_nodes(half_width)
    values, _ = right.evaluate(xs, d)
    edge, _ = right.evaluate(half_width, d)

    peak = float(np.max(np.abs(values)))
    if not abs(edge[0]) < DECAY_TOLERANCE * peak:
        logger.warning("Wavefunction does not decay", kind=kind.value, sector=sector.value, d=d, energy=E, edge=float(edge[0]), peak=peak)
        raise DecayError(f"|psi| at x = +-{half_width:g} is {abs(edge[0]):.3e}, not below {DECAY_TOLERANCE:g} of its peak {peak:.3e}")
    # psi^2 is even in x, so the left half mirrors the right
    return 2.0 * float(np.dot(ws, values * values))


def normalize(w: SampledWavefunction) -> SampledWavefunction:
    """Rescale w to unit L2 norm; norm records the norm before scaling.

    Raises:
        DecayError: If the state does not decay inside the quadrature domain.

    Examples:
        >>> w = sample(WellKind.DOUBLE, ParitySector.EVEN, 0.0, 1.0, -3.0, 3.0, 61)
        >>> round(normalize(w).norm, 12) == round(np.pi ** -0.25, 12)
        True
    """
    norm = abs(w.scale) * np.sqrt(squared_norm(w.kind, w.sector, w.d, w.energy))
    factor = 1.0 / norm
    logger.debug("Normalized wavefunction", kind=w.kind.value, sector=w.sector.value, d=w.d, energy=w.energy, norm=norm)
    return replace(
        w,
        values=w.values * factor,
        continuity_gap=w.continuity_gap * factor,
        derivative_gap=w.derivative_gap * factor,
        norm=float(norm),
        scale=w.scale * factor,
    )


def node_count(w: SampledWavefunction) -> int:
    """Strict sign changes of the samples; exact zeros are skipped."""
    signs = np.sign(w.values)
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))
