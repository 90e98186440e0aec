"""
Impact package: cash flows, economic indicators and the CO2 balance.
"""

from src.impact.emissions import Co2Balance, co2_balance
from src.impact.evaluation import ImpactResult, evaluate_impact
from src.impact.finance import (
    BEYOND_LIFETIME,
    CashFlowSchedule,
    annuity_factor,
    build_schedule,
    discount_factors,
    fit_discount_rate,
    lcoe,
    monthly_savings,
    npv,
    payback,
    roi,
)

__all__ = [
    'BEYOND_LIFETIME',
    'CashFlowSchedule',
    'Co2Balance',
    'ImpactResult',
    'annuity_factor',
    'build_schedule',
    'co2_balance',
    'discount_factors',
    'evaluate_impact',
    'fit_discount_rate',
    'lcoe',
    'monthly_savings',
    'npv',
    'payback',
    'roi',
]
