"""
System, finance and emission configuration models.

Azimuths are measured in degrees clockwise from true north, so the default
surface azimuth of 165 degrees faces south-southeast. All models are frozen
once constructed; use ``model_copy(update=...)`` to derive variants.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.core_model.errors import ConfigError

logger = logging.getLogger(__name__)

# 690.59 revenue / 2380 kWh export
DEFAULT_TARIFF_PER_KWH = 0.29016
# rate at which the 20-year cash flow reproduces NPV 4197.26 and LCOE 0.088
DEFAULT_DISCOUNT_RATE = 0.0588
# 2380 kWh exported of 3699 kWh generated
DEFAULT_GRID_EXPORT_FRACTION = 0.6434


class SystemConfig(BaseModel):
    """Site geometry, array and inverter ratings of the PV system."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    latitude_deg: float = 15.48
    longitude_deg: float = 120.65
    elevation_m: float = 10.0
    utc_offset_h: float = 8.0
    tilt_deg: float = 26.0
    surface_azimuth_deg: float = 165.0
    albedo: float = 0.2
    p_rated_kwp: float = 2.72
    inverter_rating_kw: float = 3.0
    array_area_m2: float = 16.1
    module_count: int = 8
    module_power_wp: float = 340.0
    module_eff: float = 0.1941
    g_o_kw_m2: float = 1.0
    noct_c: float = 45.0
    grid_export_fraction: float = DEFAULT_GRID_EXPORT_FRACTION


class FinanceConfig(BaseModel):
    """Investment, operating cost and tariff assumptions."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    capital_cost: float = 1762.12
    annual_om_cost: float = 176.21
    tariff_per_kwh: float = DEFAULT_TARIFF_PER_KWH
    discount_rate: float = DEFAULT_DISCOUNT_RATE
    lifetime_years: int = 20
    degradation_rate: float = 0.0
    currency_label: str = "USD"


class EmissionConfig(BaseModel):
    """Grid emission factor and embodied emissions of the system."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    grid_emission_factor_g_per_kwh: float = 480.0
    lce_system_tco2: float = 5.4
    lifetime_years: int = 20
    co2_basis: Literal["generation", "export"] = "generation"


class ToolkitConfig(BaseModel):
    """The three configuration sections of a config file."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    system: SystemConfig = Field(default_factory=SystemConfig)
    finance: FinanceConfig = Field(default_factory=FinanceConfig)
    emissions: EmissionConfig = Field(default_factory=EmissionConfig)


_SECTIONS = {
    "system": SystemConfig,
    "finance": FinanceConfig,
    "emissions": EmissionConfig,
}


def _drop_unknown_keys(data: Dict[str, Any]) -> Dict[str, Any]:
    """Remove keys the models do not define, logging each one."""
    cleaned = {}
    for section, payload in data.items():
        if section not in _SECTIONS:
            logger.warning(f"Ignoring unknown config section '{section}'")
            continue
        if not isinstance(payload, dict):
            cleaned[section] = payload
            continue
        known = _SECTIONS[section].model_fields
        for key in payload:
            if key not in known:
                logger.warning(f"Ignoring unknown config key '{section}.{key}'")
        cleaned[section] = {k: v for k, v in payload.items() if k in known}
    return cleaned


def config_from_dict(data: Dict[str, Any], lenient: bool = False,
                     source: str = None) -> ToolkitConfig:
    """
    Build a ToolkitConfig from a parsed JSON document.

    Args:
        data: Mapping with optional ``system``, ``finance`` and ``emissions`` objects
        lenient: Ignore unknown keys instead of rejecting them
        source: Path of the document, for error context

    Returns:
        The validated configuration

    Raises:
        ConfigError: On unknown keys (strict mode) or ill-typed values
    """
    if not isinstance(data, dict):
        raise ConfigError("config document must be a JSON object", module="core_model", path=source)
    if lenient:
        data = _drop_unknown_keys(data)
    try:
        return ToolkitConfig.model_validate(data)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()
        )
        raise ConfigError(f"invalid config: {problems}", module="core_model", path=source) from e


def load_config(path: Union[str, Path], lenient: bool = False) -> ToolkitConfig:
    """
    Load a JSON config file.

    Args:
        path: Path to the JSON document
        lenient: Ignore unknown keys instead of rejecting them

    Returns:
        The validated configuration

    Raises:
        ConfigError: If the file is missing, not JSON, or invalid
    """
    path = Path(path)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise ConfigError("config file not found", module="core_model", path=str(path)) from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"config is not valid JSON: {e.msg}", module="core_model",
                          path=str(path), line=e.lineno) from e
    logger.info(f"Loaded config from {path}")
    return config_from_dict(data, lenient=lenient, source=str(path))


def config_to_dict(config: ToolkitConfig) -> Dict[str, Any]:
    """Plain-dict form of a config, in field declaration order."""
    return config.model_dump(mode="json")
