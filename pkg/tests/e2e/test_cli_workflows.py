"""
End-to-end tests driving the command line through main().
"""

import json

import pytest

from mirrorwell.cli import EXIT_FAILED, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.mark.e2e
class TestSpectrumCommands:
    """spectrum, poly and splitting."""

    def test_spectrum_json(self, capsys):
        code, out, _ = run(capsys, "spectrum", "-p", "D", "-d", "1", "-n", "3", "--format", "json")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert [item["energy"] for item in payload] == pytest.approx([0.618919, 1.46847, 3.0], abs=5e-6)
        assert set(payload[0]) == {"kind", "sector", "index", "d", "energy", "residual", "method"}

    def test_spectrum_is_deterministic(self, capsys):
        argv = ("spectrum", "-p", "S", "-d", "3/2", "-n", "4", "--format", "csv")
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second
        assert first.splitlines()[0] == "kind,sector,index,d,energy,residual,method"

    def test_partial_window_warns(self, capsys):
        code, out, err = run(capsys, "spectrum", "-p", "D", "-d", "1", "-n", "3", "--e-max", "2")
        assert code == EXIT_OK
        assert len(out.splitlines()) == 2
        assert "warning: only 2 of 3" in err

    def test_unknown_potential(self, capsys):
        code, out, err = run(capsys, "spectrum", "-p", "Q", "-d", "1")
        assert code == EXIT_USAGE
        assert out == ""
        assert "error: Unknown potential 'Q'" in err

    def test_svg_is_not_a_spectrum_format(self, capsys):
        code, _, err = run(capsys, "spectrum", "-p", "D", "--format", "svg")
        assert code == EXIT_USAGE
        assert "format svg" in err

    def test_numerical_failure(self, capsys):
        code, _, err = run(capsys, "spectrum", "-p", "H+", "-n", "15", "--step", "0.05")
        assert code == EXIT_NUMERICAL
        assert "GRID_RESOLUTION" in err

    def test_poly_text(self, capsys):
        code, out, _ = run(capsys, "poly", "-n", "5")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0].startswith("n=5 even (3): 0.476251")
        assert lines[1].startswith("n=5 odd (2): 0.958572")

    def test_poly_json_one_sector(self, capsys):
        code, out, _ = run(capsys, "poly", "-n", "4", "--sector", "odd", "--format", "json")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert "even_params" not in payload
        assert payload["odd_params"] == pytest.approx([0.524648, 1.65068], abs=1e-5)

    def test_poly_degree_range(self, capsys):
        code, _, _ = run(capsys, "poly", "-n", "0")
        assert code == EXIT_USAGE

    def test_splitting_json(self, capsys):
        code, out, _ = run(capsys, "splitting", "-d", "2", "--levels", "1", "--format", "json")
        assert code == EXIT_OK
        row = json.loads(out)[0]
        assert row["even"] == pytest.approx(0.951419, abs=5e-6)


@pytest.mark.e2e
class TestTablesAndVerify:
    """tables and verify."""

    def test_table_one(self, capsys):
        code, out, _ = run(capsys, "tables", "1")
        assert code == EXIT_OK
        assert out.startswith("Even parameters\n")
        assert "8d(-195 + 330d^2 - 108d^4 + 8d^6)" in out

    def test_table_two_to_file(self, capsys, tmp_path):
        target = tmp_path / "table2.csv"
        code, out, _ = run(capsys, "tables", "2", "--format", "csv", "--out", str(target))
        assert code == EXIT_OK
        assert out == ""
        assert target.read_text().splitlines()[1].startswith("2,2(-1 + 2d^2),0.707107")

    def test_unknown_table(self):
        with pytest.raises(SystemExit) as exc_info:
            main(["tables", "5"])
        assert exc_info.value.code == 2

    def test_verify_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "-p", "D", "-d", "1", "-n", "3")
        assert code == EXIT_OK
        assert out.rstrip().endswith("PASS")

    def test_verify_fails_on_impossible_tolerance(self, capsys):
        code, out, _ = run(capsys, "verify", "-p", "S", "-d", "1", "-n", "2", "--tol", "1e-15")
        assert code == EXIT_FAILED
        assert out.rstrip().endswith("FAIL")

    def test_verify_help_lists_exit_codes(self, capsys):
        with pytest.raises(SystemExit) as exc_info:
            main(["verify", "--help"])
        assert exc_info.value.code == 0
        out = capsys.readouterr().out
        assert "1 on FAIL" in out
        for line in ("0  success", "1  verify: FAIL", "2  invalid input", "3  numerical failure"):
            assert line in out

    @pytest.mark.slow
    def test_verify_seven_levels_json(self, capsys):
        code, out, _ = run(capsys, "verify", "-p", "S", "-d", "1/2", "--format", "json")
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["passed"] is True
        assert len(report["rows"]) == 7


@pytest.mark.e2e
class TestWavefunctionAndPotential:
    """wavefn and potential exports."""

    def test_wavefn_csv(self, capsys):
        code, out, _ = run(capsys, "wavefn", "-p", "D", "-d", "1", "--index", "0", "--points", "41")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "x,psi"
        assert len(lines) >= 42

    def test_wavefn_svg_to_file(self, capsys, tmp_path):
        target = tmp_path / "states.svg"
        code, _, _ = run(capsys, "wavefn", "-p", "S", "-d", "1", "--index", "0,1", "--svg", "--points", "41", "--out", str(target))
        assert code == EXIT_OK
        svg = target.read_text()
        assert svg.count("<polyline") == 2
        assert 'stroke="red"' in svg

    def test_wavefn_json_by_energy(self, capsys):
        code, out, _ = run(capsys, "wavefn", "-p", "D", "-d", "1", "-E", "3", "--sector", "even", "--format", "json", "--points", "21")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload[0]["node_count"] == 2
        assert payload[0]["norm"] > 0

    def test_csv_needs_one_state(self, capsys):
        code, _, err = run(capsys, "wavefn", "-p", "D", "-d", "1", "--index", "0,1", "--points", "21")
        assert code == EXIT_USAGE
        assert "single state" in err

    def test_potential_csv(self, capsys):
        code, out, _ = run(capsys, "potential", "-p", "S", "-d", "1", "--points", "5")
        assert code == EXIT_OK
        assert out.splitlines() == ["x,V", "-5,36", "-2.5,12.25", "0,1", "2.5,12.25", "5,36"]

    def test_potential_svg(self, capsys):
        code, out, _ = run(capsys, "potential", "-p", "DR", "-d", "1", "--format", "svg", "--y-max", "20")
        assert code == EXIT_OK
        assert "V_DR(x), d=1" in out
