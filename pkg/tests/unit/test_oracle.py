"""
Unit tests for the finite-difference reference spectra.
"""

import pytest

from mirrorwell.exceptions import GridResolutionError, ParameterRangeError, ValidationError
from mirrorwell.oracle import (
    cross_check,
    fd_spectrum,
    halfline_spectrum,
    ka_double_single_spectrum,
    oracle_records,
)
from mirrorwell.schemas.oracle import GridSpec
from mirrorwell.schemas.potential import PotentialFamily, PotentialSpec, WallSide
from mirrorwell.schemas.spectrum import Method, ParitySector, WellKind
from mirrorwell.spectrum import sector_eigenvalues


@pytest.mark.unit
class TestFdSpectrum:
    """Three-point stencil with Richardson extrapolation."""

    def test_harmonic_levels(self):
        result = fd_spectrum(PotentialSpec(family=PotentialFamily.HARMONIC_PLUS), 7)
        assert result.eigenvalues == pytest.approx([1, 3, 5, 7, 9, 11, 13], abs=1e-6)
        assert result.extrapolated
        assert result.est_error < 1e-4
        assert len(result.level_errors) == 7

    def test_shifted_harmonic_is_unchanged(self):
        result = fd_spectrum(PotentialSpec(family=PotentialFamily.HARMONIC_MINUS, d=2.0), 3)
        assert result.eigenvalues == pytest.approx([1, 3, 5], abs=1e-6)

    def test_double_well_ground(self):
        result = fd_spectrum(PotentialSpec(family=PotentialFamily.DOUBLE, d=1.0), 2)
        assert result.eigenvalues[0] == pytest.approx(0.618919, abs=1e-5)
        assert result.eigenvalues[1] == pytest.approx(1.46847, abs=1e-5)

    def test_krein_adler_levels(self):
        result = fd_spectrum(PotentialSpec(family=PotentialFamily.KREIN_ADLER), 4)
        assert result.eigenvalues == pytest.approx([0, 6, 8, 10], abs=1e-4)

    def test_without_richardson(self):
        result = fd_spectrum(PotentialSpec(family=PotentialFamily.HARMONIC_PLUS), 2, GridSpec(richardson=False))
        assert not result.extrapolated
        assert result.est_error == 0.0
        assert result.h_used == pytest.approx(2e-3)
        assert result.eigenvalues == pytest.approx([1, 3], abs=1e-5)

    def test_margin_insensitivity(self):
        spec = PotentialSpec(family=PotentialFamily.DOUBLE, d=1.0)
        narrow = fd_spectrum(spec, 3, GridSpec(margin=15.0))
        wide = fd_spectrum(spec, 3, GridSpec(margin=17.0))
        assert narrow.eigenvalues == pytest.approx(wide.eigenvalues, abs=1e-8)

    @pytest.mark.parametrize(
        "spec, sector",
        [
            (PotentialSpec(family=PotentialFamily.HARMONIC_PLUS), None),
            (PotentialSpec(family=PotentialFamily.DOUBLE, d=1.0), ParitySector.ODD),
        ],
    )
    def test_error_is_second_order_in_step(self, spec, sector):
        if sector is None:
            exact, level = 1.0, 0
        else:
            exact, level = sector_eigenvalues(WellKind.DOUBLE, sector, spec.d, 1)[0].energy, 1
        errors = [abs(fd_spectrum(spec, level + 1, GridSpec(step=step, richardson=False)).eigenvalues[level] - exact) for step in (0.02, 0.01)]
        assert errors[0] / errors[1] == pytest.approx(4.0, abs=0.3)

    def test_narrow_box_is_rejected(self):
        with pytest.raises(GridResolutionError):
            fd_spectrum(PotentialSpec(family=PotentialFamily.HARMONIC_PLUS), 7, GridSpec(half_width=5.0))

    def test_coarse_step_is_rejected(self):
        with pytest.raises(GridResolutionError):
            fd_spectrum(PotentialSpec(family=PotentialFamily.HARMONIC_PLUS), 15, GridSpec(step=0.05))

    @pytest.mark.parametrize("count", [0, 16])
    def test_count_range(self, count):
        with pytest.raises(ParameterRangeError):
            fd_spectrum(PotentialSpec(family=PotentialFamily.HARMONIC_PLUS), count)


@pytest.mark.unit
class TestWalledAndKreinAdler:
    """Half-line systems and the Krein-Adler double/single pairs."""

    def test_walled_double_is_odd_sector(self):
        result = fd_spectrum(PotentialSpec(family=PotentialFamily.WALLED_DR, d=1.0), 3)
        assert result.eigenvalues == pytest.approx([1.46847, 4.39493, 7.56038], abs=1e-5)
        assert result.eigenvalues[0] > 1.0

    def test_mirrored_walls_agree(self):
        right = halfline_spectrum(WallSide.SR, 0.5, 3)
        left = halfline_spectrum(WallSide.SL, 0.5, 3)
        assert right.eigenvalues == pytest.approx(left.eigenvalues, abs=1e-8)
        assert right.eigenvalues[0] == pytest.approx(4.32871, abs=1e-5)

    def test_single_pair_lies_above_double_pair(self):
        double = ka_double_single_spectrum(PotentialFamily.KREIN_ADLER_DOUBLE, 1.0, 3)
        single = ka_double_single_spectrum(PotentialFamily.KREIN_ADLER_SINGLE, 1.0, 3)
        for low, high in zip(double.eigenvalues, single.eigenvalues):
            assert high > low

    def test_wrong_variant(self):
        with pytest.raises(ValidationError):
            ka_double_single_spectrum(PotentialFamily.DOUBLE, 1.0, 3)

    def test_separation_limit(self):
        with pytest.raises(ParameterRangeError):
            ka_double_single_spectrum(PotentialFamily.KREIN_ADLER_DOUBLE, 4.5, 3)


@pytest.mark.unit
class TestRecordsAndCrossCheck:
    """Packaging and comparison with the connection method."""

    def test_symmetric_records_alternate(self):
        spec = PotentialSpec(family=PotentialFamily.DOUBLE, d=1.0)
        records = oracle_records(spec, fd_spectrum(spec, 4))
        assert [r.sector for r in records] == [ParitySector.EVEN, ParitySector.ODD] * 2
        assert [r.index for r in records] == [0, 0, 1, 1]
        assert all(r.method is Method.ORACLE for r in records)
        assert all(r.kind is WellKind.DOUBLE for r in records)

    def test_asymmetric_records_have_no_sector(self):
        spec = PotentialSpec(family=PotentialFamily.HARMONIC_PLUS)
        records = oracle_records(spec, fd_spectrum(spec, 3))
        assert [r.sector for r in records] == [None] * 3
        assert [r.index for r in records] == [0, 1, 2]
        assert records[0].kind is None
        assert records[0].bracket[0] <= records[0].energy <= records[0].bracket[1]

    def test_cross_check_passes(self):
        report = cross_check(WellKind.DOUBLE, 1.0, 3)
        assert report.passed
        assert report.max_deviation < 1e-5
        assert [row.sector for row in report.rows] == [ParitySector.EVEN, ParitySector.ODD, ParitySector.EVEN]

    def test_cross_check_fails_on_impossible_tolerance(self):
        report = cross_check(WellKind.SINGLE, 1.0, 2, tolerance=1e-15)
        assert not report.passed
        assert report.max_deviation > 0

    def test_single_well_far_apart_widens_grid(self):
        report = cross_check(WellKind.SINGLE, 5.0, 7)
        assert report.passed
        assert report.rows[-1].connection > 25.0

    def test_widened_grid_matches_explicit_width(self):
        spec = PotentialSpec(family=PotentialFamily.SINGLE, d=5.0)
        widened = fd_spectrum(spec, 7)
        explicit = fd_spectrum(spec, 7, GridSpec(margin=22.0))
        assert widened.eigenvalues == pytest.approx(explicit.eigenvalues, abs=1e-8)

    def test_pinned_half_width_is_not_widened(self):
        with pytest.raises(GridResolutionError):
            fd_spectrum(PotentialSpec(family=PotentialFamily.SINGLE, d=5.0), 7, GridSpec(half_width=19.0))
