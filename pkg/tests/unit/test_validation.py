"""
Unit tests for input parsing and range validation.
"""

import pytest

from mirrorwell.exceptions import ParameterRangeError, ValidationError
from mirrorwell.schemas.spectrum import ParitySector
from mirrorwell.validation import (
    parse_index_list,
    parse_real,
    parse_sector,
    validate_count,
    validate_degree,
    validate_energy,
    validate_separation,
)


@pytest.mark.unit
class TestParseReal:
    """Decimal and rational literals."""

    @pytest.mark.parametrize(
        "text, expected",
        [("1/10", 0.1), ("3/2", 1.5), (" -1 / 4 ", -0.25), ("2.5", 2.5), ("-2.5e-1", -0.25), (".5", 0.5), (3, 3.0)],
    )
    def test_valid(self, text, expected):
        assert parse_real(text) == expected

    @pytest.mark.parametrize("text", ["one", "", "1/0", "inf", "nan", "1/2/3", "0x10"])
    def test_invalid(self, text):
        with pytest.raises(ValidationError):
            parse_real(text)

    def test_field_name_in_message(self):
        with pytest.raises(ValidationError, match="separation"):
            parse_real("abc", field_name="separation")

    def test_non_finite_number(self):
        with pytest.raises(ValidationError, match="finite"):
            parse_real(float("inf"))


@pytest.mark.unit
class TestRanges:
    """Range checks raise ParameterRangeError."""

    def test_separation(self):
        assert validate_separation(0.0) == 0.0
        assert validate_separation(6.0) == 6.0
        assert validate_separation(-2.0, allow_negative=True) == -2.0
        for bad in (-0.1, 6.01):
            with pytest.raises(ParameterRangeError):
                validate_separation(bad)
        with pytest.raises(ParameterRangeError):
            validate_separation(-6.5, allow_negative=True)

    def test_energy_is_open_interval(self):
        assert validate_energy(59.9) == 59.9
        for bad in (-1.0, 60.0):
            with pytest.raises(ParameterRangeError):
                validate_energy(bad)

    def test_count(self):
        assert validate_count(20) == 20
        assert validate_count(15, limit=15) == 15
        with pytest.raises(ParameterRangeError):
            validate_count(16, limit=15)

    def test_degree(self):
        assert validate_degree(100) == 100
        for bad in (0, 101):
            with pytest.raises(ParameterRangeError):
                validate_degree(bad)

    def test_range_errors_are_validation_errors(self):
        with pytest.raises(ValidationError) as exc_info:
            validate_count(0)
        assert exc_info.value.exit_code == 2


@pytest.mark.unit
class TestSelectors:
    """Index lists and sector names."""

    def test_index_list(self):
        assert parse_index_list("0,1, 2") == [0, 1, 2]
        assert parse_index_list("4") == [4]

    @pytest.mark.parametrize("text", ["", "1,,2", "-1", "a"])
    def test_bad_index_list(self, text):
        with pytest.raises(ValidationError):
            parse_index_list(text)

    def test_sector(self):
        assert parse_sector("even") is ParitySector.EVEN
        assert parse_sector(" ODD ") is ParitySector.ODD
        assert parse_sector("both") is None
        with pytest.raises(ValidationError):
            parse_sector("neither")
