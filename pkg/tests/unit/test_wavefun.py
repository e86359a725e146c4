"""
Unit tests for the piecewise eigenfunctions, their sampling and normalization.
"""

import numpy as np
import pytest
from scipy import integrate

import mirrorwell.wavefun as wavefun
from mirrorwell.exceptions import DecayError, ValidationError
from mirrorwell.polyparams import build_eigenstate
from mirrorwell.potentials import evaluate as potential_values
from mirrorwell.schemas.potential import PotentialFamily, PotentialSpec
from mirrorwell.schemas.spectrum import ParitySector, WellKind
from mirrorwell.spectrum import find_eigenvalues
from mirrorwell.wavefun import (
    PieceForm,
    Side,
    WavefunctionPiece,
    evaluate_derivative,
    evaluate_eigenfunction,
    evaluate_polynomial_state,
    node_count,
    normalize,
    sample,
    squared_norm,
)


@pytest.fixture(scope="module")
def double_levels():
    return find_eigenvalues(WellKind.DOUBLE, 1.0, 5)


@pytest.mark.unit
class TestEvaluate:
    """Point evaluation of psi and psi'."""

    @pytest.mark.parametrize("kind", [WellKind.DOUBLE, WellKind.SINGLE])
    @pytest.mark.parametrize("sector", [ParitySector.EVEN, ParitySector.ODD])
    def test_parity(self, kind, sector):
        xs = np.linspace(0.05, 5.0, 40)
        right = evaluate_eigenfunction(kind, sector, 0.8, 2.7, xs)
        left = evaluate_eigenfunction(kind, sector, 0.8, 2.7, -xs)
        np.testing.assert_allclose(left, sector.sign * right, rtol=1e-14, atol=0.0)

    def test_scalar_in_scalar_out(self):
        value = evaluate_eigenfunction(WellKind.DOUBLE, ParitySector.EVEN, 1.0, 2.0, 0.5)
        assert isinstance(value, float)
        slope = evaluate_derivative(WellKind.DOUBLE, ParitySector.EVEN, 1.0, 2.0, 0.5)
        assert isinstance(slope, float)

    def test_odd_polynomial_state_vanishes_at_origin(self):
        assert abs(evaluate_eigenfunction(WellKind.DOUBLE, ParitySector.ODD, 2 ** -0.5, 5.0, 0.0)) < 1e-12

    def test_even_tail_is_positive(self):
        for kind in (WellKind.DOUBLE, WellKind.SINGLE):
            assert evaluate_eigenfunction(kind, ParitySector.EVEN, 1.0, 2.2, 4.0) > 0

    def test_odd_first_lobe_is_positive(self):
        value = evaluate_eigenfunction(WellKind.DOUBLE, ParitySector.ODD, 1.0, 1.46847, 0.3)
        assert value > 0

    def test_derivative_matches_difference_quotient(self):
        h = 1e-5
        for x in (0.3, 1.7, -2.2):
            numeric = (
                evaluate_eigenfunction(WellKind.SINGLE, ParitySector.EVEN, 0.5, 4.1, x + h)
                - evaluate_eigenfunction(WellKind.SINGLE, ParitySector.EVEN, 0.5, 4.1, x - h)
            ) / (2 * h)
            analytic = evaluate_derivative(WellKind.SINGLE, ParitySector.EVEN, 0.5, 4.1, x)
            assert analytic == pytest.approx(numeric, rel=1e-6, abs=1e-9)

    @pytest.mark.parametrize("kind", [WellKind.DOUBLE, WellKind.SINGLE])
    def test_schroedinger_residual_away_from_origin(self, kind):
        d, h = 1.0, 1e-4
        xs = np.array([-5.5, -3.2, -1.1, -0.3, 0.25, 0.9, 2.4, 5.5])
        potential = potential_values(PotentialSpec(family=PotentialFamily(kind.value), d=d), xs)
        for record in find_eigenvalues(kind, d, 5):
            psi = evaluate_eigenfunction(kind, record.sector, d, record.energy, xs)
            plus = evaluate_eigenfunction(kind, record.sector, d, record.energy, xs + h)
            minus = evaluate_eigenfunction(kind, record.sector, d, record.energy, xs - h)
            second = (plus - 2.0 * psi + minus) / h**2
            residual = -second + (potential - record.energy) * psi
            scale = np.max(np.abs(psi)) * max(1.0, record.energy)
            assert np.max(np.abs(residual)) <= 1e-6 * scale, record

    def test_domain_is_bounded(self):
        with pytest.raises(ValidationError):
            evaluate_eigenfunction(WellKind.DOUBLE, ParitySector.EVEN, 1.0, 2.0, 13.5)

    def test_energy_range(self):
        with pytest.raises(ValidationError):
            evaluate_eigenfunction(WellKind.DOUBLE, ParitySector.EVEN, 1.0, -1.5, 0.0)

    def test_piece_signs_are_checked(self):
        with pytest.raises(ValidationError):
            WavefunctionPiece(Side.RIGHT, 0, 1, 1, PieceForm.UBAR, 0.0)


@pytest.mark.unit
class TestPolynomialStates:
    """Closed-form states agree with the general solution."""

    @pytest.mark.parametrize(
        "n, j, sector, kind",
        [
            (1, 1, ParitySector.EVEN, WellKind.DOUBLE),
            (2, 1, ParitySector.ODD, WellKind.DOUBLE),
            (3, 2, ParitySector.EVEN, WellKind.SINGLE),
        ],
    )
    def test_proportional_to_ubar_state(self, n, j, sector, kind):
        state = build_eigenstate(n, j, sector, kind)
        xs = np.array([-3.1, -2.35, -0.4, 0.45, 1.9, 2.8])
        closed = evaluate_polynomial_state(state, xs)
        general = evaluate_eigenfunction(kind, sector, state.d, state.energy, xs)
        ratio = closed / general
        np.testing.assert_allclose(ratio, ratio[0], rtol=1e-8)


@pytest.mark.unit
class TestSample:
    """Sampling, gaps and node counting."""

    def test_grid_contains_origin(self):
        w = sample(WellKind.DOUBLE, ParitySector.EVEN, 1.0, 2.0, -1.0, 2.0, 10)
        assert 0.0 in w.xs
        assert np.all(np.diff(w.xs) > 0)
        assert w.xs[0] == -1.0 and w.xs[-1] == 2.0

    @pytest.mark.parametrize("kind", [WellKind.DOUBLE, WellKind.SINGLE])
    @pytest.mark.parametrize("d", [0.5, 1.0, 2.0])
    def test_gaps_vanish_at_eigenpairs(self, kind, d):
        for record in find_eigenvalues(kind, d, 5):
            w = sample(kind, record.sector, d, record.energy, -(d + 4.0), d + 4.0, 81)
            assert w.continuity_gap <= 1e-8 * w.max_abs
            assert w.derivative_gap <= 1e-8 * w.max_abs

    def test_gap_away_from_eigenvalue(self):
        w = sample(WellKind.DOUBLE, ParitySector.EVEN, 1.0, 2.0, -4.0, 4.0, 81)
        assert w.continuity_gap == 0.0
        assert w.derivative_gap > 1e-3 * w.max_abs

    def test_node_counts_follow_level_order(self, double_levels):
        for k, record in enumerate(double_levels):
            w = sample(WellKind.DOUBLE, record.sector, 1.0, record.energy, -7.0, 7.0, 1401)
            assert node_count(w) == k

    def test_single_well_ground_has_no_nodes(self):
        ground = find_eigenvalues(WellKind.SINGLE, 0.5, 1)[0]
        w = sample(WellKind.SINGLE, ParitySector.EVEN, 0.5, ground.energy, -6.0, 6.0, 601)
        assert node_count(w) == 0
        assert np.all(w.values > 0)

    @pytest.mark.parametrize(
        "x_min, x_max, n_points",
        [(-1.0, 1.0, 1), (1.0, 2.0, 50), (1.0, -1.0, 50), (-20.0, 20.0, 50)],
    )
    def test_invalid_requests(self, x_min, x_max, n_points):
        with pytest.raises(ValidationError):
            sample(WellKind.DOUBLE, ParitySector.EVEN, 1.0, 2.0, x_min, x_max, n_points)

    def test_to_response(self, double_levels):
        record = double_levels[1]
        w = normalize(sample(WellKind.DOUBLE, record.sector, 1.0, record.energy, -5.0, 5.0, 51))
        response = w.to_response()
        assert response.node_count == 1
        assert len(response.xs) == len(response.values) == len(w.xs)
        assert response.norm == w.norm
        assert response.sector is ParitySector.ODD


@pytest.mark.unit
class TestNormalize:
    """L2 normalization by composite Gauss-Legendre quadrature."""

    def test_harmonic_ground_state(self):
        w = sample(WellKind.DOUBLE, ParitySector.EVEN, 0.0, 1.0, -3.0, 3.0, 61)
        assert normalize(w).norm == pytest.approx(np.pi ** -0.25, rel=1e-12)

    def test_unit_norm_by_trapezoid(self, double_levels):
        ground = double_levels[0]
        w = normalize(sample(WellKind.DOUBLE, ParitySector.EVEN, 1.0, ground.energy, -13.0, 13.0, 2601))
        assert integrate.trapezoid(w.values ** 2, w.xs) == pytest.approx(1.0, rel=1e-4)

    def test_idempotent(self, double_levels):
        record = double_levels[2]
        once = normalize(sample(WellKind.DOUBLE, record.sector, 1.0, record.energy, -5.0, 5.0, 101))
        twice = normalize(once)
        assert twice.norm == pytest.approx(1.0, rel=1e-12)
        np.testing.assert_allclose(twice.values, once.values, rtol=1e-12, atol=1e-15)

    def test_gaps_are_rescaled(self):
        w = sample(WellKind.DOUBLE, ParitySector.EVEN, 1.0, 2.0, -4.0, 4.0, 81)
        n = normalize(w)
        assert n.derivative_gap == pytest.approx(w.derivative_gap / n.norm, rel=1e-12)

    def test_squared_norm_is_positive(self):
        assert squared_norm(WellKind.SINGLE, ParitySector.ODD, 2.0, 10.8843) > 0

    def test_decay_error(self, monkeypatch):
        monkeypatch.setattr(wavefun, "DECAY_TOLERANCE", 1e-300)
        w = sample(WellKind.DOUBLE, ParitySector.EVEN, 0.0, 1.0, -3.0, 3.0, 61)
        with pytest.raises(DecayError) as exc_info:
            normalize(w)
        assert exc_info.value.error_code == "INSUFFICIENT_DECAY"
