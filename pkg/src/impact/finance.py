"""
Cash-flow schedule and the economic indicators derived from it.

Revenue is grid export valued at the net-metering tariff. Year 0 carries the
capital cost; years 1..lifetime carry revenue and O&M. Degradation scales
energy by (1 - d)^(t - 1), so year 1 is undegraded.
"""

import logging
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
import numpy_financial as npf
import pandas as pd
from scipy.optimize import root_scalar

from src.core_model.errors import ConfigError, UndefinedValueError
from src.core_model.system_config import FinanceConfig

logger = logging.getLogger(__name__)

BEYOND_LIFETIME = math.inf


@dataclass(frozen=True)
class CashFlowSchedule:
    """Yearly cash flows over the system lifetime, year 0 included."""

    years: Tuple[int, ...]
    capital: Tuple[float, ...]
    om_cost: Tuple[float, ...]
    revenue: Tuple[float, ...]
    energy_kwh: Tuple[float, ...]
    export_kwh: Tuple[float, ...]
    net: Tuple[float, ...]

    @classmethod
    def from_net(cls, net: Sequence[float]) -> "CashFlowSchedule":
        """Schedule carrying only net flows, for hand-built cases."""
        net = tuple(float(v) for v in net)
        zeros = tuple(0.0 for _ in net)
        capital = (max(-net[0], 0.0),) + zeros[1:] if net else ()
        return cls(years=tuple(range(len(net))), capital=capital, om_cost=zeros,
                   revenue=zeros, energy_kwh=zeros, export_kwh=zeros, net=net)

    @property
    def lifetime_years(self) -> int:
        return len(self.years) - 1

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "year": self.years,
            "capital": self.capital,
            "om_cost": self.om_cost,
            "revenue": self.revenue,
            "energy_kwh": self.energy_kwh,
            "export_kwh": self.export_kwh,
            "net": self.net,
        })


def build_schedule(fin: FinanceConfig, annual_energy_kwh: float,
                   annual_grid_export_kwh: float) -> CashFlowSchedule:
    """
    Build the lifetime cash-flow schedule.

    Args:
        fin: Finance configuration
        annual_energy_kwh: First-year AC generation, kWh
        annual_grid_export_kwh: First-year grid export, kWh

    Returns:
        CashFlowSchedule of lifetime + 1 years

    Raises:
        ConfigError: If the lifetime is shorter than one year
    """
    if fin.lifetime_years < 1:
        raise ConfigError("lifetime_years must be >= 1", module="impact")

    years = tuple(range(fin.lifetime_years + 1))
    factors = np.array([0.0] + [(1.0 - fin.degradation_rate) ** (t - 1) for t in years[1:]])
    operating = np.array([0.0] + [1.0] * fin.lifetime_years)

    energy = annual_energy_kwh * factors
    export = annual_grid_export_kwh * factors
    revenue = export * fin.tariff_per_kwh
    om_cost = fin.annual_om_cost * operating
    capital = np.zeros(len(years))
    capital[0] = fin.capital_cost
    net = revenue - om_cost - capital

    return CashFlowSchedule(
        years=years,
        capital=tuple(capital.tolist()),
        om_cost=tuple(om_cost.tolist()),
        revenue=tuple(revenue.tolist()),
        energy_kwh=tuple(energy.tolist()),
        export_kwh=tuple(export.tolist()),
        net=tuple(net.tolist()),
    )


def _check_rate(rate: float) -> None:
    if not rate > -1.0:
        raise ConfigError(f"discount rate must be > -1, got {rate}", module="impact")


def discount_factors(rate: float, n_years: int) -> np.ndarray:
    """1 / (1 + rate)^t for t = 0..n_years - 1."""
    _check_rate(rate)
    return 1.0 / (1.0 + rate) ** np.arange(n_years)


def npv(schedule: CashFlowSchedule, rate: float) -> float:
    """
    Net present value of the schedule's net flows.

    Args:
        schedule: Cash-flow schedule
        rate: Discount rate per year

    Returns:
        NPV in currency units

    Raises:
        ConfigError: If rate <= -1
    """
    _check_rate(rate)
    return float(npf.npv(rate, list(schedule.net)))


def lcoe(fin: FinanceConfig, annual_energy_kwh: float, rate: float) -> float:
    """
    Levelised cost of energy.

    Capital plus discounted O&M over discounted generation, with the
    configured degradation applied to energy.

    Args:
        fin: Finance configuration
        annual_energy_kwh: First-year AC generation, kWh
        rate: Discount rate per year

    Returns:
        Cost per kWh

    Raises:
        UndefinedValueError: If the discounted energy is zero
    """
    schedule = build_schedule(fin, annual_energy_kwh, 0.0)
    factors = discount_factors(rate, len(schedule.years))
    costs = float(np.dot(np.array(schedule.capital) + np.array(schedule.om_cost), factors))
    energy = float(np.dot(np.array(schedule.energy_kwh), factors))
    if energy <= 0.0:
        raise UndefinedValueError("LCOE undefined for zero discounted energy", module="impact")
    return costs / energy


def roi(npv_benefits: float, capital: float) -> float:
    """
    Return on investment, NPV of benefits over capital, in percent.

    Raises:
        ConfigError: If capital is not positive
    """
    if not capital > 0:
        raise ConfigError(f"capital must be > 0 for ROI, got {capital}", module="impact")
    return npv_benefits / capital * 100.0


def payback(schedule: CashFlowSchedule, rate: float = 0.0) -> float:
    """
    Years until cumulative discounted net cash flow turns non-negative,
    interpolated linearly within the crossing year.

    Args:
        schedule: Cash-flow schedule
        rate: Discount rate (0 gives simple payback)

    Returns:
        Payback in years, or BEYOND_LIFETIME (inf) when it never crosses
    """
    discounted = np.array(schedule.net) * discount_factors(rate, len(schedule.net))
    cumulative = np.cumsum(discounted)
    if cumulative[0] >= 0.0:
        return 0.0
    for t in range(1, len(cumulative)):
        if cumulative[t] >= 0.0:
            return (t - 1) + (-cumulative[t - 1]) / discounted[t]
    return BEYOND_LIFETIME


def monthly_savings(monthly_export_kwh: float, tariff: float) -> float:
    """Bill credit for one month of grid export."""
    return monthly_export_kwh * tariff


def fit_discount_rate(fin: FinanceConfig, annual_energy_kwh: float, annual_grid_export_kwh: float,
                      target_npv: float, bracket: Tuple[float, float] = (1e-6, 0.5)) -> float:
    """
    Discount rate at which the schedule's NPV equals a target, by bisection.

    Args:
        fin: Finance configuration
        annual_energy_kwh: First-year AC generation, kWh
        annual_grid_export_kwh: First-year grid export, kWh
        target_npv: NPV to reproduce
        bracket: Search interval for the rate

    Returns:
        The fitted rate

    Raises:
        ConfigError: If the target is not reachable within the bracket
    """
    schedule = build_schedule(fin, annual_energy_kwh, annual_grid_export_kwh)

    def residual(rate: float) -> float:
        return npv(schedule, rate) - target_npv

    low, high = bracket
    if residual(low) * residual(high) > 0:
        raise ConfigError(f"target NPV {target_npv} not reachable for rates in {bracket}", module="impact")
    result = root_scalar(residual, bracket=[low, high], method="bisect", xtol=1e-12)
    logger.info(f"Fitted discount rate {result.root:.6f} for target NPV {target_npv}")
    return float(result.root)


def annuity_factor(rate: float, years: int) -> float:
    """Present value of 1 per year for ``years`` years."""
    return float(discount_factors(rate, years + 1)[1:].sum())
