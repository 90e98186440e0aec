"""
Published outcomes of the reference 2.72 kWp rooftop system (Tarlac City,
one monitoring year), embedded for side-by-side display in reports and as
fixtures for the metric acceptance tests.

Monthly rows are daily means except where the unit says otherwise.
"""

from dataclasses import dataclass
from typing import Dict, Tuple

MONTHS = ("Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec")


@dataclass(frozen=True)
class MeteorologyRow:
    """Monthly average meteorology at the site."""

    month: int
    temp_c: float
    wind_ms: float
    ghi_kwh_m2: float
    dni_kwh_m2: float
    dhi_kwh_m2: float
    gpoa_kwh_m2_day: float


@dataclass(frozen=True)
class EnergyRow:
    """Monthly average energy yield and losses."""

    month: int
    cell_temp_c: float
    e_ac_kwh: float
    e_dc_kwh: float
    y_a: float
    y_r: float
    y_f: float
    l_c: float
    l_s: float


@dataclass(frozen=True)
class EfficiencyRow:
    """Monthly grid export, efficiencies, CUF and PR."""

    month: int
    e_grid_kwh: float
    eta_array_pct: float
    eta_inv_pct: float
    cuf_pct: float
    pr_pct: float
    eta_sys_pct: float


METEOROLOGY: Tuple[MeteorologyRow, ...] = (
    MeteorologyRow(1, 23.49, 1.77, 212.85, 266.46, 57.86, 4.73),
    MeteorologyRow(2, 24.91, 2.39, 248.13, 289.47, 62.98, 4.89),
    MeteorologyRow(3, 26.80, 1.84, 286.78, 324.30, 60.58, 5.67),
    MeteorologyRow(4, 28.99, 1.90, 291.33, 296.88, 73.12, 5.81),
    MeteorologyRow(5, 28.08, 1.32, 270.51, 252.09, 84.32, 5.93),
    MeteorologyRow(6, 27.76, 1.30, 275.55, 253.43, 88.07, 5.33),
    MeteorologyRow(7, 26.78, 1.24, 262.17, 236.57, 88.80, 5.05),
    MeteorologyRow(8, 27.14, 1.36, 217.26, 132.30, 118.49, 4.49),
    MeteorologyRow(9, 26.23, 1.10, 250.43, 219.81, 89.49, 4.12),
    MeteorologyRow(10, 26.14, 1.47, 187.39, 134.76, 95.54, 3.85),
    MeteorologyRow(11, 26.09, 1.75, 185.91, 193.41, 68.46, 4.33),
    MeteorologyRow(12, 25.12, 1.31, 170.17, 181.52, 65.15, 3.68),
)

ENERGY: Tuple[EnergyRow, ...] = (
    EnergyRow(1, 34.71, 5.58, 5.85, 2.15, 2.78, 2.05, 0.63, 0.10),
    EnergyRow(2, 39.83, 7.94, 8.24, 3.03, 3.86, 2.92, 0.83, 0.11),
    EnergyRow(3, 44.48, 9.74, 10.06, 3.70, 4.64, 3.58, 0.94, 0.12),
    EnergyRow(4, 48.94, 12.00, 12.40, 4.56, 5.74, 4.41, 1.18, 0.15),
    EnergyRow(5, 45.09, 10.47, 10.85, 3.99, 4.90, 3.85, 0.91, 0.13),
    EnergyRow(6, 45.14, 10.83, 11.21, 4.12, 5.04, 3.98, 0.92, 0.14),
    EnergyRow(7, 39.86, 8.30, 8.62, 3.17, 3.84, 3.05, 0.67, 0.12),
    EnergyRow(8, 41.80, 9.19, 9.55, 3.51, 4.29, 3.38, 0.78, 0.13),
    EnergyRow(9, 36.44, 6.20, 6.47, 2.38, 2.91, 2.28, 0.53, 0.11),
    EnergyRow(10, 37.68, 6.83, 7.13, 2.62, 3.26, 2.51, 0.64, 0.11),
    EnergyRow(11, 38.96, 6.28, 6.56, 2.41, 3.14, 2.31, 0.72, 0.10),
    EnergyRow(12, 35.17, 4.81, 5.06, 1.86, 2.45, 1.77, 0.58, 0.09),
)

ENERGY_AVERAGE = EnergyRow(0, 40.80, 8.18, 8.50, 3.12, 3.90, 3.01, 0.78, 0.12)

EFFICIENCY: Tuple[EfficiencyRow, ...] = (
    EfficiencyRow(1, 159.75, 13.09, 94.7, 11.78, 73.60, 12.40),
    EfficiencyRow(2, 186.75, 13.30, 95.8, 12.36, 75.50, 12.74),
    EfficiencyRow(3, 183.00, 13.52, 96.3, 15.58, 77.10, 13.02),
    EfficiencyRow(4, 202.00, 13.47, 96.5, 15.57, 77.00, 13.00),
    EfficiencyRow(5, 226.75, 13.79, 96.3, 15.12, 78.70, 13.28),
    EfficiencyRow(6, 229.50, 13.84, 96.4, 13.32, 79.00, 13.34),
    EfficiencyRow(7, 210.50, 14.00, 95.8, 12.03, 79.50, 13.41),
    EfficiencyRow(8, 198.00, 13.86, 96.0, 12.33, 78.80, 13.31),
    EfficiencyRow(9, 206.50, 13.87, 95.0, 12.57, 78.20, 13.18),
    EfficiencyRow(10, 191.00, 13.61, 95.3, 12.03, 76.90, 12.97),
    EfficiencyRow(11, 194.50, 13.03, 95.2, 10.82, 73.70, 12.40),
    EfficiencyRow(12, 191.75, 12.89, 94.3, 11.75, 72.40, 12.16),
)

ANNUAL: Dict[str, float] = {
    "pr_pct": 77.10,
    "cuf_pct": 15.52,
    "eta_array_pct": 12.89,
    "eta_inv_pct": 94.3,
    "eta_sys_pct": 12.16,
    "e_ac_total_kwh": 3699.0,
    "e_grid_total_kwh": 2380.0,
}

# per weather class: hourly correlation and mean daily AC energy (kWh)
CLASS_STATS: Dict[str, Dict[str, float]] = {
    "clear": {"pearson_r_hourly": 0.784, "mean_daily_e_ac_kwh": 14.8},
    "partly_cloudy": {"pearson_r_hourly": 0.728, "mean_daily_e_ac_kwh": 11.9},
    "overcast": {"pearson_r_hourly": 0.636, "mean_daily_e_ac_kwh": 9.2},
    "rain": {"pearson_r_hourly": 0.445, "mean_daily_e_ac_kwh": 2.1},
}
OVERALL_DAILY_R = 0.679

IMPACT: Dict[str, float] = {
    "npv": 4197.26,
    "lcoe": 0.088,
    "roi_pct": 238.2,
    "payback_years": 6.0,
    "annual_revenue": 690.59,
    "monthly_savings": 57.55,
    "monthly_export_kwh": 198.33,
    "net_co2_avoided_t_per_kwp_yr": 0.379,
}


def energy_row(month: int) -> EnergyRow:
    return ENERGY[month - 1]


def efficiency_row(month: int) -> EfficiencyRow:
    return EFFICIENCY[month - 1]
