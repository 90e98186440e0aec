"""
Report assembly: runs ingestion, metrics, weather statistics and impact over
a pair of input files and collects the results in one schema-versioned,
unit-annotated document.
"""

import logging
import math
from dataclasses import asdict, dataclass
from datetime import date, datetime
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Set, Union

import numpy as np
import pandas as pd

from config import REPORT_CONFIG
from src import __version__
from src.core_model import published
from src.core_model.errors import ConfigError
from src.core_model.system_config import ToolkitConfig, config_to_dict
from src.core_model.validation import validate_all
from src.impact.evaluation import ImpactResult, evaluate_impact
from src.ingestion.aggregation import DailySummary, MonthlySummary, aggregate_daily, aggregate_monthly
from src.ingestion.alignment import AlignedSeries, align
from src.ingestion.loaders import parse_generation_csv, parse_weather_csv
from src.ingestion.records import ParsedSeries
from src.metrics.monthly import AnnualMetrics, MonthlyMetrics, compute_annual, compute_monthly
from src.report.benchmarks import benchmark_compare
from src.utils.data_utils import round_half_even
from src.weather_stats.correlation import CorrelationReport, correlation_report

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

_DAILY = "kWh/kWp/day"

UNITS: Dict[str, str] = {
    # configuration
    "latitude_deg": "deg", "longitude_deg": "deg", "elevation_m": "m", "utc_offset_h": "h",
    "tilt_deg": "deg", "surface_azimuth_deg": "deg clockwise from north", "albedo": "1",
    "p_rated_kwp": "kWp", "inverter_rating_kw": "kW", "array_area_m2": "m2", "module_count": "count",
    "module_power_wp": "Wp", "module_eff": "1", "g_o_kw_m2": "kW/m2", "noct_c": "degC",
    "grid_export_fraction": "1", "capital_cost": "currency", "annual_om_cost": "currency/yr",
    "tariff_per_kwh": "currency/kWh", "discount_rate": "1/yr", "lifetime_years": "yr",
    "degradation_rate": "1/yr", "grid_emission_factor_g_per_kwh": "gCO2/kWh", "lce_system_tco2": "tCO2",
    # data quality
    "n_generation_records": "count", "n_weather_records": "count",
    "missing_generation_hours": "h", "missing_weather_hours": "h",
    "generation_only_hours": "h", "weather_only_hours": "h",
    "n_days": "days", "n_valid_days": "days", "n_months": "months", "n_valid_months": "months",
    "daylight_fraction": "1", "min_valid_days": "days",
    # monthly and annual
    "year": "calendar year", "month": "calendar month", "cell_temp_c": "degC",
    "e_ac_kwh": "kWh/day", "e_dc_kwh": "kWh/day", "y_a": _DAILY, "y_r": _DAILY, "y_f": _DAILY,
    "l_c": _DAILY, "l_s": _DAILY, "e_grid_kwh": "kWh/month", "eta_array_pct": "%", "eta_inv_pct": "%",
    "capacity_factor_pct": "%", "pr_pct": "%", "eta_sys_pct": "%", "h_poa_kwh_m2": "kWh/m2/day",
    "hours": "h", "e_ac_total_kwh": "kWh/yr", "e_dc_total_kwh": "kWh/yr", "e_grid_total_kwh": "kWh/yr",
    "cuf_pct": "%",
    # correlation
    "mean_daily_e_ac_kwh": "kWh/day", "mean_daily_h_poa_kwh_m2": "kWh/m2/day", "pearson_r_hourly": "1",
    "n_hour_pairs": "count", "labeled_days": "days", "derived_days": "days", "overall_daily_r": "1",
    "unclassifiable_days": "days",
    # impact
    "rate": "1/yr", "npv_benefits": "currency", "npv": "currency", "lcoe": "currency/kWh", "roi_pct": "%",
    "payback_simple_years": "yr", "payback_discounted_years": "yr", "payback_years": "yr",
    "annual_energy_kwh": "kWh/yr", "annual_export_kwh": "kWh/yr", "annual_revenue": "currency/yr",
    "monthly_export_kwh": "kWh/month", "monthly_savings": "currency/month",
    "gross_co2_avoided_t_per_yr": "tCO2/yr", "net_co2_avoided_t_per_kwp_yr": "tCO2/kWp/yr",
    # benchmark
    "value": "unit of the benchmarked metric", "rank": "count", "n": "count", "percentile": "%",
    "min": "unit of the benchmarked metric", "median": "unit of the benchmarked metric",
    "max": "unit of the benchmarked metric",
    # published meteorology
    "temp_c": "degC", "wind_ms": "m/s", "ghi_kwh_m2": "kWh/m2/month", "dni_kwh_m2": "kWh/m2/month",
    "dhi_kwh_m2": "kWh/m2/month", "gpoa_kwh_m2_day": "kWh/m2/day",
}


def clean_value(value: Any, decimals: int) -> Any:
    """
    JSON-ready copy of a report value: floats rounded half-even, non-finite
    floats as None, enums and dates as strings, tuples as lists.
    """
    if isinstance(value, Enum):
        return value.value
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return round_half_even(value, decimals) if math.isfinite(value) else None
    if isinstance(value, (pd.Timestamp, datetime, date)):
        return value.isoformat()
    if isinstance(value, dict):
        return {str(k): clean_value(v, decimals) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [clean_value(v, decimals) for v in value]
    return value


def numeric_fields(obj: Any, key: Optional[str] = None) -> Set[str]:
    """Names of every key in a report holding a number or a list of numbers."""
    found: Set[str] = set()
    if isinstance(obj, dict):
        for k, v in obj.items():
            found |= numeric_fields(v, k)
    elif isinstance(obj, list):
        for v in obj:
            found |= numeric_fields(v, key)
    elif isinstance(obj, (int, float)) and not isinstance(obj, bool) and key is not None:
        found.add(key)
    return found


@dataclass
class Analysis:
    """Every intermediate of an analysis run plus the assembled report."""

    config: ToolkitConfig
    generation: ParsedSeries
    weather: ParsedSeries
    series: AlignedSeries
    daily: List[DailySummary]
    summaries: List[MonthlySummary]
    monthly: List[MonthlyMetrics]
    annual: AnnualMetrics
    correlation: CorrelationReport
    impact: Optional[ImpactResult]
    report: Dict[str, Any]


def reference_block() -> Dict[str, Any]:
    """Published monthly meteorology, monthly metrics and annual outcomes."""
    return {
        "meteorology": [asdict(row) for row in published.METEOROLOGY],
        "monthly_energy": [asdict(row) for row in published.ENERGY],
        "monthly_efficiency": [asdict(row) for row in published.EFFICIENCY],
        "annual": dict(published.ANNUAL),
    }


def data_quality_block(config: ToolkitConfig, generation: ParsedSeries, weather: ParsedSeries,
                       series: AlignedSeries, monthly: List[MonthlyMetrics]) -> Dict[str, Any]:
    gaps = series.gaps
    month_flags = {m.label: list(m.flags) for m in monthly if m.flags}
    return {
        "config_violations": validate_all(config).to_dict()["violations"],
        "n_generation_records": len(generation),
        "n_weather_records": len(weather),
        "missing_generation_hours": gaps.missing_generation_hours,
        "missing_weather_hours": gaps.missing_weather_hours,
        "generation_only_hours": len(gaps.generation_only),
        "weather_only_hours": len(gaps.weather_only),
        "n_days": len(series.days),
        "n_valid_days": int(series.days["valid"].sum()),
        "n_months": len(series.months),
        "n_valid_months": int(series.months["valid"].sum()),
        "daylight_fraction": series.policy.daylight_fraction,
        "min_valid_days": series.policy.min_valid_days,
        "poa_source": series.poa_source,
        "poa_provenance": "transposed POA" if series.poa_source == "transposed" else series.poa_source,
        "month_flags": month_flags,
    }


def build_report(config: ToolkitConfig, monthly: List[MonthlyMetrics], annual: AnnualMetrics,
                 correlation: CorrelationReport, impact: Optional[ImpactResult],
                 data_quality: Dict[str, Any], inputs: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """
    Assemble the report document.

    Args:
        config: Configuration used
        monthly: Monthly metric rows
        annual: Annual block
        correlation: Correlation analysis
        impact: Impact evaluation, None when annual energy is unavailable
        data_quality: Data-quality block
        inputs: Input descriptions echoed into the report

    Returns:
        Report dict with rounded numbers and a units map
    """
    report = {
        "schema_version": REPORT_CONFIG["schema_version"],
        "toolkit_version": __version__,
        "inputs": inputs or {},
        "config": config_to_dict(config),
        "data_quality": data_quality,
        "monthly": [m.to_dict() for m in monthly],
        "annual": annual.to_dict(),
        "correlation": correlation.to_dict(),
        "impact": impact.to_dict() if impact is not None else None,
        "benchmark": benchmark_compare(annual),
        "reference": reference_block(),
    }
    report = clean_value(report, REPORT_CONFIG["decimals"])
    report["units"] = {name: UNITS[name] for name in sorted(numeric_fields(report)) if name in UNITS}
    missing = numeric_fields(report) - set(UNITS)
    if missing:
        logger.warning(f"Report fields without units: {sorted(missing)}")
    return report


def run_analysis(config: ToolkitConfig, generation: ParsedSeries, weather: ParsedSeries,
                 rate: Optional[float] = None, inputs: Optional[Dict[str, Any]] = None) -> Analysis:
    """
    Full pipeline over parsed inputs.

    Args:
        config: Toolkit configuration
        generation: Parsed generation records
        weather: Parsed weather records
        rate: Discount rate override
        inputs: Input descriptions echoed into the report

    Returns:
        Analysis

    Raises:
        ConfigError: If the configuration violates an invariant
        DataError: If the inputs cannot be aligned
    """
    violations = validate_all(config)
    if not violations.ok:
        details = "; ".join(f"{v.field}: {v.message}" for v in violations.violations)
        raise ConfigError(f"invalid config: {details}", module="core_model")

    series = align(generation, weather, config.system)
    daily = aggregate_daily(series)
    summaries = aggregate_monthly(series, daily)
    monthly = compute_monthly(summaries, config.system)
    annual = compute_annual(monthly, config.system)
    correlation = correlation_report(series, daily=daily)

    impact = None
    if annual.e_ac_total_kwh is not None and annual.e_grid_total_kwh is not None:
        impact = evaluate_impact(config.finance, config.emissions, config.system,
                                 annual.e_ac_total_kwh, annual.e_grid_total_kwh, rate=rate)
    else:
        logger.warning("Annual energy unavailable; impact block omitted")

    quality = data_quality_block(config, generation, weather, series, monthly)
    report = build_report(config, monthly, annual, correlation, impact, quality, inputs)
    return Analysis(config=config, generation=generation, weather=weather, series=series, daily=daily,
                    summaries=summaries, monthly=monthly, annual=annual, correlation=correlation,
                    impact=impact, report=report)


def analyze(config: ToolkitConfig, generation_path: PathLike, weather_path: PathLike,
            rate: Optional[float] = None) -> Analysis:
    """
    Parse both input files and run the full pipeline.

    Args:
        config: Toolkit configuration
        generation_path: generation.csv path
        weather_path: weather.csv path
        rate: Discount rate override

    Returns:
        Analysis whose ``report`` is the report document
    """
    logger.info(f"Analyzing {generation_path} with {weather_path}")
    generation = parse_generation_csv(generation_path)
    weather = parse_weather_csv(weather_path)
    inputs = {"generation": str(generation_path), "weather": str(weather_path)}
    return run_analysis(config, generation, weather, rate=rate, inputs=inputs)
