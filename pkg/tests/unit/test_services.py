"""
Unit tests for the request-level operations shared by CLI and HTTP routes.
"""

import pytest

from mirrorwell.exceptions import ParameterRangeError, UnknownPotentialError, ValidationError
from mirrorwell.schemas.spectrum import Method, ParitySector, WellKind
from mirrorwell.services import compute_spectrum, default_range, resolve_states, sample_states, well_kind


@pytest.mark.unit
class TestWellKind:
    """Potential names that have connection conditions."""

    def test_known(self):
        assert well_kind("d") is WellKind.DOUBLE
        assert well_kind(" S ") is WellKind.SINGLE

    def test_catalog_member_without_conditions(self):
        with pytest.raises(ValidationError, match="use D or S"):
            well_kind("KA")

    def test_unknown(self):
        with pytest.raises(UnknownPotentialError):
            well_kind("Q")


@pytest.mark.unit
class TestComputeSpectrum:
    """Routing between the connection method and the oracle."""

    def test_connection_method(self):
        report = compute_spectrum("D", 1.0, 3)
        assert report.complete
        assert report.message is None
        assert [r.energy for r in report.records] == pytest.approx([0.618919, 1.46847, 3.0], abs=5e-6)

    def test_one_sector(self):
        report = compute_spectrum("S", 1.0, 2, sector=ParitySector.ODD)
        assert [r.energy for r in report.records] == pytest.approx([6.07439, 11.2076], abs=5e-5)

    def test_capped_window_is_reported(self):
        report = compute_spectrum("D", 1.0, 3, e_max=2.0)
        assert not report.complete
        assert len(report.records) == 2
        assert "2 of 3" in report.message

    def test_oracle_for_other_potentials(self):
        report = compute_spectrum("H+", 0.0, 3)
        assert [r.energy for r in report.records] == pytest.approx([1, 3, 5], abs=1e-6)
        assert all(r.method is Method.ORACLE for r in report.records)
        assert all(r.sector is None for r in report.records)

    def test_oracle_sector_filter(self):
        report = compute_spectrum("KA", 0.0, 2, sector=ParitySector.EVEN)
        assert [r.energy for r in report.records] == pytest.approx([0.0, 8.0], abs=1e-4)

    def test_asymmetric_potential_has_no_sectors(self):
        with pytest.raises(ValidationError, match="no parity sectors"):
            compute_spectrum("H+", 0.0, 3, sector=ParitySector.EVEN)

    def test_invalid_override(self):
        with pytest.raises(ValidationError, match="invalid solver option"):
            compute_spectrum("D", 1.0, 3, step=-0.1)

    def test_separation_out_of_range(self):
        with pytest.raises(ParameterRangeError):
            compute_spectrum("D", 7.0, 3)

    def test_unknown_potential(self):
        with pytest.raises(UnknownPotentialError):
            compute_spectrum("XYZ", 1.0, 3)


@pytest.mark.unit
class TestStates:
    """Selecting and sampling eigenfunctions."""

    def test_by_index(self):
        states = resolve_states(WellKind.DOUBLE, 1.0, indices=[0, 2])
        assert [s for s, _ in states] == [ParitySector.EVEN, ParitySector.EVEN]
        assert states[1][1] == pytest.approx(3.0, abs=1e-9)

    def test_by_sector_index(self):
        states = resolve_states(WellKind.DOUBLE, 1.0, indices=[1], sector=ParitySector.ODD)
        assert states[0][0] is ParitySector.ODD
        assert states[0][1] == pytest.approx(4.39493, abs=5e-6)

    def test_by_energy(self):
        assert resolve_states(WellKind.SINGLE, 1.0, energy=3.0, sector=ParitySector.EVEN) == [(ParitySector.EVEN, 3.0)]

    @pytest.mark.parametrize(
        "kwargs",
        [{}, {"indices": [0], "energy": 1.0}, {"energy": 1.0}],
    )
    def test_bad_selectors(self, kwargs):
        with pytest.raises(ValidationError):
            resolve_states(WellKind.DOUBLE, 1.0, **kwargs)

    def test_default_range(self):
        assert default_range(1.5) == (-7.5, 7.5)

    def test_sample_states(self):
        sampled = sample_states(WellKind.DOUBLE, 1.0, [(ParitySector.EVEN, 3.0)], points=101)
        assert len(sampled) == 1
        assert sampled[0].xs[0] == -7.0 and sampled[0].xs[-1] == 7.0
        assert sampled[0].norm is not None

    def test_sample_states_without_normalization(self):
        sampled = sample_states(WellKind.SINGLE, 1.0, [(ParitySector.EVEN, 3.0)], x_min=-2.0, x_max=2.0, points=11, unit_norm=False)
        assert sampled[0].norm is None
        assert sampled[0].xs[0] == -2.0 and sampled[0].xs[-1] == 2.0
