"""Economic and environmental evaluation of a system's annual output."""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from src.core_model import published
from src.core_model.system_config import EmissionConfig, FinanceConfig, SystemConfig
from src.impact.emissions import co2_balance
from src.impact.finance import (
    CashFlowSchedule,
    build_schedule,
    lcoe,
    monthly_savings,
    npv,
    payback,
    roi,
)

logger = logging.getLogger(__name__)

FLAG_BEYOND_LIFETIME = "payback_beyond_lifetime"
FLAG_NO_ENERGY = "no_energy"


def _finite_or_none(value: float) -> Optional[float]:
    return None if math.isinf(value) else value


@dataclass(frozen=True)
class ImpactResult:
    """Outcome of an impact evaluation, with published outcomes alongside."""

    schedule: CashFlowSchedule
    rate: float
    npv_benefits: float
    lcoe: Optional[float]
    roi_pct: float
    payback_simple_years: float
    payback_discounted_years: float
    annual_energy_kwh: float
    annual_export_kwh: float
    annual_revenue: float
    monthly_export_kwh: float
    monthly_savings: float
    gross_co2_avoided_t_per_yr: float
    net_co2_avoided_t_per_kwp_yr: float
    co2_basis: str
    currency_label: str
    flags: List[str] = field(default_factory=list)

    @property
    def reference(self) -> Dict[str, float]:
        return dict(published.IMPACT)

    def to_dict(self) -> Dict:
        """
        Plain-dict form. Paybacks that never cross are reported as None
        with the beyond-lifetime flag set.
        """
        return {
            "rate": self.rate,
            "currency": self.currency_label,
            "npv_benefits": self.npv_benefits,
            "lcoe": self.lcoe,
            "roi_pct": self.roi_pct,
            "payback_simple_years": _finite_or_none(self.payback_simple_years),
            "payback_discounted_years": _finite_or_none(self.payback_discounted_years),
            "annual_energy_kwh": self.annual_energy_kwh,
            "annual_export_kwh": self.annual_export_kwh,
            "annual_revenue": self.annual_revenue,
            "monthly_export_kwh": self.monthly_export_kwh,
            "monthly_savings": self.monthly_savings,
            "gross_co2_avoided_t_per_yr": self.gross_co2_avoided_t_per_yr,
            "net_co2_avoided_t_per_kwp_yr": self.net_co2_avoided_t_per_kwp_yr,
            "co2_basis": self.co2_basis,
            "flags": list(self.flags),
            "reference": self.reference,
        }


def evaluate_impact(fin: FinanceConfig, em: EmissionConfig, cfg: SystemConfig,
                    annual_energy_kwh: float, annual_export_kwh: float,
                    rate: Optional[float] = None) -> ImpactResult:
    """
    Run every impact indicator for one year of output.

    Args:
        fin: Finance configuration
        em: Emission configuration
        cfg: System configuration (nameplate rating)
        annual_energy_kwh: First-year AC generation, kWh
        annual_export_kwh: First-year grid export, kWh
        rate: Discount rate; defaults to ``fin.discount_rate``

    Returns:
        ImpactResult
    """
    rate = fin.discount_rate if rate is None else rate
    schedule = build_schedule(fin, annual_energy_kwh, annual_export_kwh)
    flags: List[str] = []

    npv_benefits = npv(schedule, rate)
    if annual_energy_kwh > 0:
        levelised = lcoe(fin, annual_energy_kwh, rate)
    else:
        levelised = None
        flags.append(FLAG_NO_ENERGY)

    simple = payback(schedule, 0.0)
    discounted = payback(schedule, rate)
    if math.isinf(simple) or math.isinf(discounted):
        flags.append(FLAG_BEYOND_LIFETIME)

    co2_energy = annual_export_kwh if em.co2_basis == "export" else annual_energy_kwh
    balance = co2_balance(em, co2_energy, cfg.p_rated_kwp)

    monthly_export = annual_export_kwh / 12.0
    result = ImpactResult(
        schedule=schedule,
        rate=rate,
        npv_benefits=npv_benefits,
        lcoe=levelised,
        roi_pct=roi(npv_benefits, fin.capital_cost),
        payback_simple_years=simple,
        payback_discounted_years=discounted,
        annual_energy_kwh=annual_energy_kwh,
        annual_export_kwh=annual_export_kwh,
        annual_revenue=schedule.revenue[1],
        monthly_export_kwh=monthly_export,
        monthly_savings=monthly_savings(monthly_export, fin.tariff_per_kwh),
        gross_co2_avoided_t_per_yr=balance.gross_t_per_yr,
        net_co2_avoided_t_per_kwp_yr=balance.net_t_per_kwp_yr,
        co2_basis=em.co2_basis,
        currency_label=fin.currency_label,
        flags=flags,
    )
    logger.info(f"Impact at rate {rate:.4f}: NPV {npv_benefits:.2f} {fin.currency_label}, "
                f"simple payback {simple:.2f} yr")
    return result
