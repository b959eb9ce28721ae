# Copyright (c) 2025 Alphonce Liguori Oreny. All rights reserved.
# This software is proprietary and confidential.
# Unauthorized copying of this file, via any medium is strictly prohibited.

"""

Tests for magtm/cli.py: argument handling, exit codes and table output.
"""

import json
import math
import os
from pathlib import Path
from unittest.mock import patch

import pytest

from magtm import cli
from magtm.core import ConvergenceError
from magtm.serializers import parse_csv_table


class TestPrintFunctions:
    """Test print utility functions"""

    @pytest.mark.parametrize(
        "func,symbol",
        [
            (cli.print_success, "✓"),
            (cli.print_error, "✗"),
            (cli.print_info, "ℹ"),
            (cli.print_warning, "⚠"),
        ],
    )
    def test_messages_go_to_stderr(self, capsys, func, symbol):
        """Status lines never mix with tables on stdout"""
        func("Test message")
        captured = capsys.readouterr()
        assert "Test message" in captured.err
        assert symbol in captured.err
        assert captured.out == ""


class TestParsing:
    """Test list parsing and run configuration"""

    def test_float_list(self):
        assert cli._float_list("1e-3, 1e-6") == [1e-3, 1e-6]
        assert cli._float_list("") == []

    def test_float_list_rejects_words(self):
        with pytest.raises(Exception):
            cli._float_list("a,b")

    def test_name_list(self):
        assert cli._name_list("PHI1, phi4") == ["phi1", "phi4"]

    def test_run_config_defaults(self):
        args = cli.build_parser().parse_args(["heat-check"])
        cfg = cli.RunConfig.from_args(args)
        assert cfg.params["a"] == 0.25
        assert cfg.params["lambda"] == 1.0
        assert cfg.params["eps"] > 0
        assert cfg.out is None
        assert cfg.meta()["command"] == "heat-check"

    @pytest.mark.parametrize(
        "argv",
        [
            ["heat-check", "--a", "0.7"],
            ["heat-check", "--lambda", "0"],
            ["heat-check", "--eps", "-1"],
            ["sharpness", "--tol", "0"],
            ["sharpness", "--cap", "-2"],
        ],
    )
    def test_invalid_values_raise_usage_error(self, argv):
        args = cli.build_parser().parse_args(argv)
        with pytest.raises(cli.UsageError):
            cli.RunConfig.from_args(args)


class TestMain:
    """Test main() dispatch and exit codes"""

    def test_no_command_prints_help(self, capsys):
        assert cli.main([]) == 0
        assert "magtm" in capsys.readouterr().out

    def test_bad_format_is_usage_error(self):
        with pytest.raises(SystemExit) as exc_info:
            cli.main(["heat-check", "--format", "xml"])
        assert exc_info.value.code == 2

    def test_usage_error_maps_to_2(self):
        assert cli.main(["heat-check", "--a", "0.9"]) == 2

    def test_invalid_environment_exits_2(self):
        with patch.dict(os.environ, {"MAGTM_MAX_TERMS": "many"}):
            with pytest.raises(SystemExit) as exc_info:
                cli.main(["heat-check"])
        assert exc_info.value.code == 2

    def test_numeric_failure_maps_to_1(self):
        with patch("magtm.cli.heat_s1_spectral", side_effect=ConvergenceError("series stalled")):
            assert cli.main(["heat-check", "--t-list", "0.5"]) == 1

    def test_config_command(self, capsys):
        assert cli.main(["config"]) == 0
        assert "CONFIGURATION SUMMARY" in capsys.readouterr().out


class TestHeatCheck:
    """Test the heat-check command"""

    def test_default_run_passes(self, capsys):
        # Act
        status = cli.main(["heat-check", "--t-list", "0.01,1.0"])

        # Assert
        assert status == 0
        meta, rows = parse_csv_table(capsys.readouterr().out)
        assert meta["table"] == "heat_check"
        assert len(rows) == 2 * cli.HEAT_ANGLES
        assert all(float(r["abs_diff"]) <= cli.HEAT_TOL for r in rows)

    def test_empty_t_list_is_usage_error(self):
        assert cli.main(["heat-check", "--t-list", ""]) == 2

    def test_nonpositive_t_is_usage_error(self):
        assert cli.main(["heat-check", "--t-list", "0.1,-1"]) == 2

    def test_impossible_tolerance_fails(self, capsys):
        assert cli.main(["heat-check", "--t-list", "0.1", "--tol", "1e-30"]) == 1
        assert "exceed tolerance" in capsys.readouterr().err

    def test_writes_under_out_dir(self, tmp_path):
        status = cli.main(["heat-check", "--t-list", "1.0", "--out", str(tmp_path), "--format", "json"])

        assert status == 0
        data = json.loads((tmp_path / "heat_check.json").read_text())
        assert data["meta"]["command"] == "heat-check"
        assert len(data["rows"]) == cli.HEAT_ANGLES


class TestSharpness:
    """Test the sharpness command"""

    def test_default_run_passes(self, tmp_path):
        assert cli.main(["sharpness", "--out", str(tmp_path)]) == 0

        _, delta_rows = parse_csv_table((tmp_path / "sharpness_delta.csv").read_text())
        _, p_rows = parse_csv_table((tmp_path / "sharpness_p.csv").read_text())
        _, mu_rows = parse_csv_table((tmp_path / "sharpness_mu.csv").read_text())

        assert len(delta_rows) == 7
        assert {r["side"] for r in p_rows} <= {"above", "below"}
        assert float(mu_rows[0]["rel_err"]) <= cli.MU_TOL

    def test_blowup_table_follows_beta(self, tmp_path):
        # Act
        status = cli.main(["sharpness", "--out", str(tmp_path)])

        # Assert
        assert status == 0
        meta, rows = parse_csv_table((tmp_path / "sharpness_tm.csv").read_text())
        assert meta["table"] == "sharpness_tm"
        assert [float(r["log_delta"]) for r in rows] == [-5.0, -50.0, -500.0]
        assert all(r["overflowed"] == "false" for r in rows)
        values = [float(r["tm_value"]) for r in rows]
        assert values[0] < values[1] < values[2]
        assert float(rows[0]["beta"]) == pytest.approx(4.1 * math.pi)

    def test_subcritical_beta_stays_bounded(self, tmp_path):
        assert cli.main(["sharpness", "--beta", "6.0", "--out", str(tmp_path)]) == 0

        _, rows = parse_csv_table((tmp_path / "sharpness_tm.csv").read_text())
        assert all(float(r["tm_value"]) < 5.0 for r in rows)

    def test_nonpositive_beta_is_usage_error(self):
        assert cli.main(["sharpness", "--beta", "0"]) == 2

    def test_coarse_scan_fails_gap_tolerance(self, capsys):
        status = cli.main(["sharpness", "--delta-list", "1e-2,1e-3"])
        assert status == 1
        assert "final gap to 4 pi" in capsys.readouterr().err

    def test_out_of_range_delta_is_usage_error(self):
        assert cli.main(["sharpness", "--delta-list", "0.5,2"]) == 2

    def test_empty_p_list_is_usage_error(self):
        assert cli.main(["sharpness", "--p-list", ""]) == 2


class TestCertify:
    """Test the certify command"""

    def test_writes_certificates(self, tmp_path, capsys):
        # Act
        status = cli.main(["certify", "--kernels", "phi1,phi4", "--out", str(tmp_path)])

        # Assert
        assert status == 0
        assert (tmp_path / "certificate_phi1.json").exists()
        assert (tmp_path / "certificate_phi4.json").exists()
        _, rows = parse_csv_table(capsys.readouterr().out)
        assert [r["kernel"] for r in rows] == ["phi1", "phi1", "phi4", "phi4", "oneil"]
        assert float(rows[-1]["fitted_constant"]) >= cli.ONEIL_TOL

    def test_unknown_kernel_is_usage_error(self, tmp_path):
        assert cli.main(["certify", "--kernels", "phi3", "--out", str(tmp_path)]) == 2

    def test_empty_kernel_list_is_usage_error(self, tmp_path):
        assert cli.main(["certify", "--kernels", "", "--out", str(tmp_path)]) == 2

    def test_default_directory_warns(self, tmp_path, capsys):
        with patch.object(cli.Config, "OUTPUT_DIR", Path(tmp_path)):
            assert cli.main(["certify", "--kernels", "phi4"]) == 0
        assert (tmp_path / "certificates" / "certificate_phi4.json").exists()
        assert "--out not given" in capsys.readouterr().err
