"""Tests for the command-line entry point."""
import io
import json
import logging
import os
import sys
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

# Add the src directory to the Python path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from main import EXIT_CONFIG, EXIT_DATA, EXIT_OK, EXIT_USAGE, main
from src.ingestion.loaders import parse_weather_csv
from src.weather_stats.correlation import PLOT_COLUMNS

QUIET = ["--log-level", "WARNING"]


def last_error(stderr: str) -> dict:
    """The JSON error object written as the last stderr line."""
    return json.loads(stderr.strip().splitlines()[-1])["error"]


class CliTestCase(unittest.TestCase):
    """Runs the CLI with captured output and restores logging afterwards."""

    def setUp(self):
        self.root_handlers = logging.getLogger().handlers[:]
        self.root_level = logging.getLogger().level
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        root = logging.getLogger()
        root.handlers = self.root_handlers
        root.setLevel(self.root_level)
        self.tmp.cleanup()

    def run_cli(self, *argv):
        """Returns (exit code, stdout, stderr)."""
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = main(list(argv) + QUIET)
        return code, out.getvalue(), err.getvalue()

    def write_config(self, data):
        path = self.dir / "config.json"
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    def synth(self, days, *extra):
        code, _, _ = self.run_cli("synth", "--days", str(days), "--seed", "3", "--out", str(self.dir), *extra)
        self.assertEqual(code, EXIT_OK)
        return str(self.dir / "generation.csv"), str(self.dir / "weather.csv")


class TestValidate(CliTestCase):
    """Test the validate subcommand and exit codes."""

    def test_defaults_are_valid(self):
        """The built-in configuration validates."""
        code, out, _ = self.run_cli("validate")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(json.loads(out)["valid"])

    def test_violation_exits_with_config_code(self):
        """An out-of-range albedo exits 3 and names the field."""
        code, out, _ = self.run_cli("validate", "--config", self.write_config({"system": {"albedo": 1.5}}))
        self.assertEqual(code, EXIT_CONFIG)
        self.assertEqual(json.loads(out)["violations"][0]["field"], "system.albedo")

    def test_unknown_key(self):
        """Unknown keys fail in strict mode and are dropped when lenient."""
        path = self.write_config({"system": {"tilt": 26}})
        code, _, err = self.run_cli("validate", "--config", path)
        self.assertEqual(code, EXIT_CONFIG)
        self.assertEqual(last_error(err)["type"], "ConfigError")
        code, _, _ = self.run_cli("validate", "--config", path, "--lenient")
        self.assertEqual(code, EXIT_OK)

    def test_missing_config_file(self):
        """A missing config file is a config error with its path."""
        path = str(self.dir / "absent.json")
        code, _, err = self.run_cli("validate", "--config", path)
        self.assertEqual(code, EXIT_CONFIG)
        self.assertEqual(last_error(err)["file"], path)

    def test_usage_errors(self):
        """Missing subcommands or required flags exit 1."""
        with redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as ctx:
                main([])
            self.assertEqual(ctx.exception.code, EXIT_USAGE)
            with self.assertRaises(SystemExit) as ctx:
                main(["analyze", "--weather", "w.csv"])
            self.assertEqual(ctx.exception.code, EXIT_USAGE)

    def test_data_files_checked_by_header(self):
        """--data picks each file's schema from its header and counts records."""
        generation, weather = self.synth(2)
        code, out, _ = self.run_cli("validate", "--data", generation, weather)
        self.assertEqual(code, EXIT_OK)
        checks = json.loads(out)["data"]
        self.assertEqual([c["schema"] for c in checks], ["generation", "weather"])
        self.assertEqual([c["records"] for c in checks], [48, 48])
        self.assertEqual(checks[0]["gaps"], 0)

    def test_unrecognised_data_file(self):
        """A CSV matching neither schema is a data error."""
        other = self.dir / "other.csv"
        other.write_text("a,b\n1,2\n", encoding="utf-8")
        code, _, err = self.run_cli("validate", "--data", str(other))
        self.assertEqual(code, EXIT_DATA)
        self.assertEqual(last_error(err)["line"], 1)


class TestPipelineCommands(CliTestCase):
    """Test synth, analyze, correlate and transpose end to end."""

    def test_synth_then_analyze(self):
        """A synthetic dataset analyses into a schema-versioned report."""
        generation, weather = self.synth(59)
        report_path = self.dir / "report.json"
        code, _, _ = self.run_cli("analyze", "--generation", generation, "--weather", weather,
                                  "--out", str(report_path))
        self.assertEqual(code, EXIT_OK)
        report = json.loads(report_path.read_text(encoding="utf-8"))
        self.assertEqual(report["schema_version"], "1.0")
        self.assertEqual(report["annual"]["n_valid_months"], 2)
        self.assertIn("partial_year_annualised", report["annual"]["flags"])
        self.assertIsNotNone(report["impact"])

        code, out, _ = self.run_cli("impact", "--report", str(report_path))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["annual_energy_kwh"], report["annual"]["e_ac_total_kwh"])

        code, out, _ = self.run_cli("benchmark", "--report", str(report_path))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["benchmark"]["pr_pct"]["value"], report["annual"]["means"]["pr_pct"])

    def test_analyze_csv_format(self):
        """The csv format writes the long table."""
        generation, weather = self.synth(2)
        code, out, _ = self.run_cli("analyze", "--generation", generation, "--weather", weather,
                                    "--format", "csv")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith("section,row,field,value,unit\n"))

    def test_empty_generation_file(self):
        """An empty generation file exits 2 with a machine-readable error."""
        _, weather = self.synth(1)
        empty = self.dir / "empty.csv"
        empty.write_bytes(b"")
        code, out, err = self.run_cli("analyze", "--generation", str(empty), "--weather", weather)
        self.assertEqual(code, EXIT_DATA)
        self.assertEqual(out, "")
        error = last_error(err)
        self.assertEqual((error["type"], error["module"], error["file"]), ("DataError", "ingestion", str(empty)))

    def test_correlate_plot_data(self):
        """correlate writes the class statistics and the plot-data CSV."""
        generation, weather = self.synth(10)
        plot = self.dir / "plot.csv"
        code, out, _ = self.run_cli("correlate", "--generation", generation, "--weather", weather,
                                    "--plot-data", str(plot))
        self.assertEqual(code, EXIT_OK)
        self.assertIn("classes", json.loads(out))
        self.assertEqual(plot.read_text(encoding="utf-8").splitlines()[0], ",".join(PLOT_COLUMNS))

    def test_synth_settings_file(self):
        """Generator settings load from JSON under their documented names."""
        settings = self.dir / "synth.json"
        settings.write_text(json.dumps({
            "n_days": 5,
            "initial_probabilities": [1.0, 0.0, 0.0, 0.0],
            "class_transition_matrix": [[1.0, 0.0, 0.0, 0.0]] * 4,
        }), encoding="utf-8")
        code, _, _ = self.run_cli("synth", "--settings", str(settings), "--days", "2", "--out", str(self.dir))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual((self.dir / "weather.csv").read_bytes().count(b"\n"), 1 + 48)

        settings.write_text(json.dumps({"transition_matrix": [[0.25] * 4] * 4}), encoding="utf-8")
        code, _, err = self.run_cli("synth", "--settings", str(settings), "--out", str(self.dir))
        self.assertEqual(code, EXIT_CONFIG)
        self.assertEqual(last_error(err)["module"], "synth")

    def test_transpose_fills_gpoa(self):
        """transpose fills every empty gpoa cell."""
        _, weather = self.synth(2, "--no-gpoa")
        self.assertTrue(all(r.gpoa_w_m2 is None for r in parse_weather_csv(weather)))
        filled = self.dir / "filled.csv"
        code, _, _ = self.run_cli("transpose", "--weather", weather, "--out", str(filled))
        self.assertEqual(code, EXIT_OK)
        records = list(parse_weather_csv(str(filled)))
        self.assertEqual(len(records), 48)
        self.assertTrue(all(r.gpoa_w_m2 is not None for r in records))
        self.assertGreater(max(r.gpoa_w_m2 for r in records), 0.0)


class TestImpactAndBenchmark(CliTestCase):
    """Test the stand-alone impact and benchmark subcommands."""

    def test_impact_from_figures(self):
        """Published annual figures reproduce the NPV within 25."""
        code, out, _ = self.run_cli("impact", "--energy", "3699", "--export", "2380")
        self.assertEqual(code, EXIT_OK)
        result = json.loads(out)
        self.assertAlmostEqual(result["npv_benefits"], 4197.26, delta=25.0)
        self.assertAlmostEqual(result["annual_revenue"], 690.58, delta=0.01)
        self.assertEqual(result["reference"]["npv"], 4197.26)

    def test_impact_fit_npv(self):
        """--fit-npv solves for the discount rate."""
        code, out, _ = self.run_cli("impact", "--energy", "3699", "--export", "2380", "--fit-npv", "4197.26")
        self.assertEqual(code, EXIT_OK)
        result = json.loads(out)
        self.assertAlmostEqual(result["rate"], 0.0588, delta=0.0005)
        self.assertAlmostEqual(result["npv_benefits"], 4197.26, delta=0.01)

    def test_impact_overrides(self):
        """Tariff overrides flow into revenue."""
        code, out, _ = self.run_cli("impact", "--energy", "3699", "--export", "1000", "--tariff", "0.5")
        self.assertEqual(code, EXIT_OK)
        self.assertAlmostEqual(json.loads(out)["annual_revenue"], 500.0)

    def test_impact_needs_energy(self):
        """Without energy figures impact exits 3."""
        code, _, err = self.run_cli("impact")
        self.assertEqual(code, EXIT_CONFIG)
        self.assertEqual(last_error(err)["module"], "impact")

    def test_benchmark_rank(self):
        """PR 77.10 ranks 9 of 15."""
        code, out, _ = self.run_cli("benchmark", "--pr", "77.10")
        self.assertEqual(code, EXIT_OK)
        document = json.loads(out)
        self.assertEqual(document["benchmark"]["pr_pct"]["rank_label"], "9/15")
        self.assertEqual(len(document["entries"]), 15)

    def test_benchmark_markdown(self):
        """Non-report documents render as one flat markdown table."""
        code, out, _ = self.run_cli("benchmark", "--pr", "77.10", "--format", "md")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith("| Section | Row | Field | Value | Unit |"))


if __name__ == "__main__":
    unittest.main()
