"""
Metrics package: yields, losses, performance ratio, CUF and efficiencies.
"""

from src.metrics.monthly import (
    AnnualMetrics,
    MonthlyMetrics,
    compute_annual,
    compute_month,
    compute_monthly,
)
from src.metrics.performance import (
    array_efficiency,
    array_yield,
    capacity_factor_pct,
    capture_loss,
    cuf,
    estimate_cell_temperature,
    final_yield,
    hours_in_year,
    inverter_efficiency,
    performance_ratio,
    reference_yield,
    system_efficiency,
    system_loss,
)

__all__ = [
    'AnnualMetrics',
    'MonthlyMetrics',
    'compute_annual',
    'compute_month',
    'compute_monthly',
    'array_efficiency',
    'array_yield',
    'capacity_factor_pct',
    'capture_loss',
    'cuf',
    'estimate_cell_temperature',
    'final_yield',
    'hours_in_year',
    'inverter_efficiency',
    'performance_ratio',
    'reference_yield',
    'system_efficiency',
    'system_loss',
]
