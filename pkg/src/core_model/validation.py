"""Invariant checks for configuration models. Violations are returned, never raised."""

import math
from dataclasses import dataclass
from typing import List, Tuple

from src.core_model.system_config import (
    EmissionConfig,
    FinanceConfig,
    SystemConfig,
    ToolkitConfig,
)


@dataclass(frozen=True)
class Violation:
    """A single violated invariant."""

    field: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    """Result of validating a configuration."""

    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def fields(self) -> List[str]:
        return [v.field for v in self.violations]

    def to_dict(self) -> dict:
        return {
            "valid": self.ok,
            "violations": [{"field": v.field, "message": v.message} for v in self.violations],
        }


def validate_config(cfg: SystemConfig) -> ValidationReport:
    """
    Check the physical invariants of a system configuration.

    Args:
        cfg: System configuration to check

    Returns:
        Report listing every violated invariant (empty when valid)
    """
    found = []

    expected_kwp = cfg.module_count * cfg.module_power_wp / 1000.0
    if abs(cfg.p_rated_kwp - expected_kwp) > 1e-9:
        found.append(Violation(
            "p_rated_kwp",
            f"p_rated_kwp {cfg.p_rated_kwp} != module_count x module_power_wp / 1000 = {expected_kwp}",
        ))
    if not 0.0 < cfg.albedo < 1.0:
        found.append(Violation("albedo", f"albedo {cfg.albedo} outside (0, 1)"))
    if not 0.0 <= cfg.tilt_deg <= 90.0:
        found.append(Violation("tilt_deg", f"tilt_deg {cfg.tilt_deg} outside [0, 90]"))
    if not 0.0 <= cfg.surface_azimuth_deg < 360.0:
        found.append(Violation("surface_azimuth_deg",
                               f"surface_azimuth_deg {cfg.surface_azimuth_deg} outside [0, 360)"))
    if not -90.0 <= cfg.latitude_deg <= 90.0:
        found.append(Violation("latitude_deg", f"latitude_deg {cfg.latitude_deg} outside [-90, 90]"))
    if not -180.0 <= cfg.longitude_deg <= 180.0:
        found.append(Violation("longitude_deg", f"longitude_deg {cfg.longitude_deg} outside [-180, 180]"))
    if not cfg.array_area_m2 > 0.0:
        found.append(Violation("array_area_m2", f"array_area_m2 {cfg.array_area_m2} must be > 0"))
    if cfg.g_o_kw_m2 != 1.0:
        found.append(Violation("g_o_kw_m2", f"g_o_kw_m2 must be exactly 1.0, got {cfg.g_o_kw_m2}"))
    if not cfg.p_rated_kwp > 0.0:
        found.append(Violation("p_rated_kwp", "p_rated_kwp must be > 0"))
    if not cfg.inverter_rating_kw > 0.0:
        found.append(Violation("inverter_rating_kw", "inverter_rating_kw must be > 0"))
    if not 0.0 < cfg.module_eff <= 1.0:
        found.append(Violation("module_eff", f"module_eff {cfg.module_eff} outside (0, 1]"))
    if not 0.0 <= cfg.grid_export_fraction <= 1.0:
        found.append(Violation("grid_export_fraction",
                               f"grid_export_fraction {cfg.grid_export_fraction} outside [0, 1]"))
    if not -14.0 <= cfg.utc_offset_h <= 14.0:
        found.append(Violation("utc_offset_h", f"utc_offset_h {cfg.utc_offset_h} outside [-14, 14]"))

    return ValidationReport(tuple(found))


def validate_finance(fin: FinanceConfig) -> ValidationReport:
    """Check the invariants of a finance configuration."""
    found = []
    for name in ("capital_cost", "annual_om_cost", "tariff_per_kwh"):
        value = getattr(fin, name)
        if not (math.isfinite(value) and value >= 0.0):
            found.append(Violation(name, f"{name} {value} must be >= 0"))
    if not 0.0 <= fin.discount_rate < 1.0:
        found.append(Violation("discount_rate", f"discount_rate {fin.discount_rate} outside [0, 1)"))
    if fin.lifetime_years < 1:
        found.append(Violation("lifetime_years", "lifetime_years must be >= 1"))
    if not 0.0 <= fin.degradation_rate <= 1.0:
        found.append(Violation("degradation_rate", f"degradation_rate {fin.degradation_rate} outside [0, 1]"))
    return ValidationReport(tuple(found))


def validate_emissions(em: EmissionConfig) -> ValidationReport:
    """Check the invariants of an emission configuration."""
    found = []
    for name in ("grid_emission_factor_g_per_kwh", "lce_system_tco2", "lifetime_years"):
        value = getattr(em, name)
        if not value > 0:
            found.append(Violation(name, f"{name} {value} must be > 0"))
    return ValidationReport(tuple(found))


def validate_all(config: ToolkitConfig) -> ValidationReport:
    """Validate every section, prefixing field names with their section."""
    found = []
    for section, report in (("system", validate_config(config.system)),
                            ("finance", validate_finance(config.finance)),
                            ("emissions", validate_emissions(config.emissions))):
        found.extend(Violation(f"{section}.{v.field}", v.message) for v in report.violations)
    return ValidationReport(tuple(found))
