"""Tests for configuration models, validation and the error hierarchy."""
import os
import sys
import json
import tempfile
import unittest

# Add the src directory to the Python path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from hypothesis import given, strategies as st
from pydantic import ValidationError

from src.core_model.errors import ConfigError, DataError, PVToolkitError, UndefinedValueError
from src.core_model.system_config import (
    EmissionConfig,
    FinanceConfig,
    SystemConfig,
    ToolkitConfig,
    config_from_dict,
    config_to_dict,
    load_config,
)
from src.core_model.validation import validate_all, validate_config, validate_emissions, validate_finance


class TestSystemConfig(unittest.TestCase):
    """Test the system configuration model and its invariants."""

    def test_defaults_are_valid(self):
        """Site constants validate with no violations."""
        report = validate_config(SystemConfig())
        self.assertTrue(report.ok)
        self.assertEqual(report.violations, ())

    def test_albedo_out_of_range(self):
        """An albedo of 1.5 yields exactly one violation naming albedo."""
        report = validate_config(SystemConfig(albedo=1.5))
        self.assertEqual(report.fields(), ["albedo"])

    def test_rating_inconsistent_with_modules(self):
        """8 x 340 Wp is 2.72 kWp, so 2.5 kWp is flagged."""
        report = validate_config(SystemConfig(p_rated_kwp=2.5))
        self.assertIn("p_rated_kwp", report.fields())

    def test_reference_irradiance_fixed(self):
        """The reference irradiance must be exactly 1 kW/m2."""
        report = validate_config(SystemConfig(g_o_kw_m2=0.999))
        self.assertEqual(report.fields(), ["g_o_kw_m2"])

    def test_several_violations_reported_together(self):
        """Every violated bound is listed, not just the first."""
        report = validate_config(SystemConfig(tilt_deg=95.0, surface_azimuth_deg=360.0, array_area_m2=0.0))
        self.assertEqual(set(report.fields()), {"tilt_deg", "surface_azimuth_deg", "array_area_m2"})

    def test_validation_is_pure(self):
        """Repeated validation yields identical reports and leaves the config untouched."""
        cfg = SystemConfig(albedo=0.0, latitude_deg=91.0)
        before = cfg.model_dump()
        self.assertEqual(validate_config(cfg), validate_config(cfg))
        self.assertEqual(cfg.model_dump(), before)

    def test_models_are_frozen(self):
        """Configs cannot be mutated after construction."""
        cfg = SystemConfig()
        with self.assertRaises(ValidationError):
            cfg.tilt_deg = 10.0
        self.assertEqual(cfg.model_copy(update={"tilt_deg": 10.0}).tilt_deg, 10.0)

    @given(st.floats(min_value=-2.0, max_value=3.0, allow_nan=False))
    def test_albedo_bound(self, albedo):
        """Albedo is flagged exactly when it leaves the open interval (0, 1)."""
        report = validate_config(SystemConfig(albedo=albedo))
        self.assertEqual("albedo" in report.fields(), not 0.0 < albedo < 1.0)


class TestFinanceAndEmissions(unittest.TestCase):
    """Test finance and emission validation."""

    def test_defaults_are_valid(self):
        """Default finance and emission settings validate."""
        self.assertTrue(validate_finance(FinanceConfig()).ok)
        self.assertTrue(validate_emissions(EmissionConfig()).ok)

    def test_finance_bounds(self):
        """Negative money, a rate of 1 and a zero lifetime are violations."""
        report = validate_finance(FinanceConfig(capital_cost=-1.0, discount_rate=1.0, lifetime_years=0))
        self.assertEqual(set(report.fields()), {"capital_cost", "discount_rate", "lifetime_years"})

    def test_emission_fields_positive(self):
        """Emission factors and lifetimes must be positive."""
        report = validate_emissions(EmissionConfig(grid_emission_factor_g_per_kwh=0.0, lifetime_years=0))
        self.assertEqual(set(report.fields()), {"grid_emission_factor_g_per_kwh", "lifetime_years"})

    def test_validate_all_prefixes_sections(self):
        """Section names prefix the field of each violation."""
        config = ToolkitConfig(system=SystemConfig(albedo=2.0), finance=FinanceConfig(tariff_per_kwh=-0.1))
        report = validate_all(config)
        self.assertEqual(report.fields(), ["system.albedo", "finance.tariff_per_kwh"])
        self.assertEqual(report.to_dict()["valid"], False)

    def test_co2_basis_choices(self):
        """The CO2 basis accepts generation or export only."""
        self.assertEqual(EmissionConfig(co2_basis="export").co2_basis, "export")
        with self.assertRaises(ValidationError):
            EmissionConfig(co2_basis="consumption")


class TestConfigFile(unittest.TestCase):
    """Test JSON config loading."""

    def _write(self, payload) -> str:
        handle = tempfile.NamedTemporaryFile('w', suffix='.json', delete=False, encoding='utf-8')
        with handle:
            handle.write(payload if isinstance(payload, str) else json.dumps(payload))
        self.addCleanup(os.remove, handle.name)
        return handle.name

    def test_round_trip_validates_identically(self):
        """A config written to JSON and read back validates the same way."""
        config = ToolkitConfig(system=SystemConfig(albedo=1.2, tilt_deg=15.0),
                               finance=FinanceConfig(discount_rate=0.07))
        path = self._write(config_to_dict(config))
        loaded = load_config(path)
        self.assertEqual(loaded, config)
        self.assertEqual(validate_all(loaded), validate_all(config))

    def test_partial_sections_take_defaults(self):
        """Omitted sections and fields keep their default values."""
        config = config_from_dict({"system": {"tilt_deg": 30.0}})
        self.assertEqual(config.system.tilt_deg, 30.0)
        self.assertEqual(config.system.albedo, 0.2)
        self.assertEqual(config.finance, FinanceConfig())

    def test_unknown_key_strict(self):
        """Unknown keys are a config error in strict mode."""
        with self.assertRaises(ConfigError) as ctx:
            config_from_dict({"system": {"tilt": 30.0}})
        self.assertIn("system.tilt", ctx.exception.message)

    def test_unknown_key_lenient(self):
        """Lenient mode drops unknown keys with a warning."""
        with self.assertLogs("src.core_model.system_config", level="WARNING") as logs:
            config = config_from_dict({"system": {"tilt": 30.0, "albedo": 0.3}, "extra": {}}, lenient=True)
        self.assertEqual(config.system.albedo, 0.3)
        self.assertEqual(len(logs.records), 2)

    def test_ill_typed_value(self):
        """A non-numeric value is a config error."""
        with self.assertRaises(ConfigError):
            config_from_dict({"finance": {"capital_cost": "lots"}})

    def test_missing_file(self):
        """A missing file is a config error carrying the path."""
        with self.assertRaises(ConfigError) as ctx:
            load_config("does_not_exist.json")
        self.assertEqual(ctx.exception.path, "does_not_exist.json")

    def test_invalid_json_reports_line(self):
        """Malformed JSON reports the offending line."""
        path = self._write('{\n  "system": {\n    "tilt_deg": ,\n  }\n}\n')
        with self.assertRaises(ConfigError) as ctx:
            load_config(path)
        self.assertEqual(ctx.exception.line, 3)

    def test_document_must_be_object(self):
        """A top-level JSON array is rejected."""
        with self.assertRaises(ConfigError):
            config_from_dict([1, 2, 3])


class TestErrors(unittest.TestCase):
    """Test the error hierarchy."""

    def test_hierarchy(self):
        """Config and data errors are value errors; undefined values are arithmetic errors."""
        self.assertTrue(issubclass(ConfigError, ValueError))
        self.assertTrue(issubclass(DataError, ValueError))
        self.assertTrue(issubclass(UndefinedValueError, ArithmeticError))
        for cls in (ConfigError, DataError, UndefinedValueError):
            self.assertTrue(issubclass(cls, PVToolkitError))

    def test_to_dict_and_str(self):
        """Errors render their context for humans and machines."""
        error = DataError("bad row", module="ingestion", path="gen.csv", line=7)
        self.assertEqual(str(error), "gen.csv:7: bad row")
        self.assertEqual(error.to_dict(), {"type": "DataError", "module": "ingestion",
                                           "file": "gen.csv", "line": 7, "message": "bad row"})

    def test_with_context_keeps_existing_values(self):
        """Context is only filled where missing."""
        error = DataError("bad row", line=3).with_context(module="ingestion", path="a.csv", line=9)
        self.assertEqual((error.module, error.path, error.line), ("ingestion", "a.csv", 3))


if __name__ == "__main__":
    unittest.main()
