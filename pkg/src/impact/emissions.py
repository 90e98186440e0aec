"""CO2 balance of the PV system against grid electricity."""

import logging
from typing import NamedTuple

from src.core_model.errors import ConfigError
from src.core_model.system_config import EmissionConfig

logger = logging.getLogger(__name__)

GRAMS_PER_TONNE = 1e6


class Co2Balance(NamedTuple):
    """Avoided emissions: gross per year, and net of embodied emissions per kWp per year."""

    gross_t_per_yr: float
    net_t_per_kwp_yr: float


def co2_balance(em: EmissionConfig, annual_energy_kwh: float, p_rated_kwp: float) -> Co2Balance:
    """
    Gross and net CO2 avoided by displacing grid electricity.

    Args:
        em: Emission configuration
        annual_energy_kwh: Energy credited with displacing grid supply, kWh/yr
        p_rated_kwp: Nameplate rating, kWp

    Returns:
        Co2Balance(gross tCO2/yr, net tCO2/kWp/yr)

    Raises:
        ConfigError: If the lifetime or rating is not positive
    """
    if not em.lifetime_years > 0:
        raise ConfigError("emission lifetime_years must be > 0", module="impact")
    if not p_rated_kwp > 0:
        raise ConfigError("p_rated_kwp must be > 0", module="impact")

    gross = annual_energy_kwh * em.grid_emission_factor_g_per_kwh / GRAMS_PER_TONNE
    net = (gross - em.lce_system_tco2 / em.lifetime_years) / p_rated_kwp
    return Co2Balance(gross_t_per_yr=gross, net_t_per_kwp_yr=net)
