"""
Normalised yields, losses, performance ratio, capacity factors and efficiencies.

Yields are daily values in kWh/kWp (numerically hours per day). Efficiencies
and ratios are returned in percent.
"""

import calendar

from src.core_model.errors import ConfigError, DataError, UndefinedValueError

HOURS_PER_YEAR = 8760
HOURS_PER_LEAP_YEAR = 8784


def _require_rating(p_rated_kwp: float) -> None:
    if not p_rated_kwp > 0:
        raise ConfigError(f"p_rated_kwp must be > 0, got {p_rated_kwp}", module="metrics")


def array_yield(e_dc_kwh: float, p_rated_kwp: float) -> float:
    """
    Array yield Y_A: DC energy per kWp of nameplate.

    Args:
        e_dc_kwh: Daily DC energy, kWh
        p_rated_kwp: Nameplate DC rating, kWp

    Returns:
        Y_A in kWh/kWp

    Raises:
        ConfigError: If the rating is not positive
    """
    _require_rating(p_rated_kwp)
    return e_dc_kwh / p_rated_kwp


def final_yield(e_ac_kwh: float, p_rated_kwp: float) -> float:
    """Final (specific) yield Y_F: AC energy per kWp of nameplate."""
    _require_rating(p_rated_kwp)
    return e_ac_kwh / p_rated_kwp


def reference_yield(h_poa_kwh_m2: float, g_o_kw_m2: float = 1.0) -> float:
    """Reference yield Y_R: plane-of-array insolation over the reference irradiance."""
    if not g_o_kw_m2 > 0:
        raise ConfigError(f"g_o_kw_m2 must be > 0, got {g_o_kw_m2}", module="metrics")
    return h_poa_kwh_m2 / g_o_kw_m2


def performance_ratio(y_f: float, y_r: float) -> float:
    """
    Performance ratio, final yield over reference yield.

    Args:
        y_f: Final yield, kWh/kWp
        y_r: Reference yield, hours

    Returns:
        PR in percent

    Raises:
        UndefinedValueError: If the reference yield is not positive
    """
    if not y_r > 0:
        raise UndefinedValueError("performance ratio undefined for zero reference yield", module="metrics")
    return y_f / y_r * 100.0


def capture_loss(y_r: float, y_a: float) -> float:
    """Capture loss L_C = Y_R - Y_A. Not clamped; negative values are flagged upstream."""
    return y_r - y_a


def system_loss(y_a: float, y_f: float) -> float:
    """System loss L_S = Y_A - Y_F."""
    return y_a - y_f


def hours_in_year(year: int) -> int:
    return HOURS_PER_LEAP_YEAR if calendar.isleap(year) else HOURS_PER_YEAR


def cuf(e_ac_annual_kwh: float, p_rated_kwp: float, hours: int = HOURS_PER_YEAR) -> float:
    """
    Capacity utilisation factor over an annual window.

    Args:
        e_ac_annual_kwh: AC energy over the window, kWh
        p_rated_kwp: Nameplate rating, kWp
        hours: Window length in hours (8760, or 8784 for a leap year)

    Returns:
        CUF in percent
    """
    _require_rating(p_rated_kwp)
    return e_ac_annual_kwh / (p_rated_kwp * hours) * 100.0


def capacity_factor_pct(e_ac_daily_kwh: float, p_rated_kwp: float) -> float:
    """Capacity factor of a mean day, E_AC / (P_rated x 24 h), in percent."""
    _require_rating(p_rated_kwp)
    return e_ac_daily_kwh / (p_rated_kwp * 24.0) * 100.0


def _require_insolation(h_poa_kwh_m2: float, area_m2: float) -> None:
    if not area_m2 > 0:
        raise ConfigError(f"array_area_m2 must be > 0, got {area_m2}", module="metrics")
    if not h_poa_kwh_m2 > 0:
        raise UndefinedValueError("efficiency undefined for zero insolation", module="metrics")


def array_efficiency(e_dc_kwh: float, h_poa_kwh_m2: float, area_m2: float) -> float:
    """
    Array efficiency, DC energy over the insolation received by the array.

    Args:
        e_dc_kwh: DC energy, kWh
        h_poa_kwh_m2: Plane-of-array insolation over the same period, kWh/m2
        area_m2: Gross array area, m2

    Returns:
        Efficiency in percent

    Raises:
        UndefinedValueError: If the insolation is zero
    """
    _require_insolation(h_poa_kwh_m2, area_m2)
    return e_dc_kwh / (h_poa_kwh_m2 * area_m2) * 100.0


def system_efficiency(e_ac_kwh: float, h_poa_kwh_m2: float, area_m2: float) -> float:
    """System efficiency, AC energy over the insolation received by the array, in percent."""
    _require_insolation(h_poa_kwh_m2, area_m2)
    return e_ac_kwh / (h_poa_kwh_m2 * area_m2) * 100.0


def inverter_efficiency(e_ac_kwh: float, e_dc_kwh: float) -> float:
    """
    Inverter efficiency, AC over DC energy.

    Args:
        e_ac_kwh: AC energy, kWh
        e_dc_kwh: DC energy, kWh

    Returns:
        Efficiency in percent (may exceed 100 on noisy meters)

    Raises:
        DataError: If there is AC output without DC input
        UndefinedValueError: If both energies are zero
    """
    if e_dc_kwh <= 0:
        if e_ac_kwh > 0:
            raise DataError(f"AC energy {e_ac_kwh} kWh recorded with no DC energy", module="metrics")
        raise UndefinedValueError("inverter efficiency undefined with no DC energy", module="metrics")
    return e_ac_kwh / e_dc_kwh * 100.0


def estimate_cell_temperature(temp_c, gpoa_w_m2, noct_c: float = 45.0):
    """
    Cell temperature from the NOCT model, T_amb + G (NOCT - 20) / 800.

    Accepts scalars or array-likes.
    """
    return temp_c + gpoa_w_m2 * (noct_c - 20.0) / 800.0
