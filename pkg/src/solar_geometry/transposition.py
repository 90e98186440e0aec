"""
Plane-of-array transposition with the isotropic sky model, plus the clearness
index, Erbs diffuse fraction and a clear-sky envelope.

Every function has a scalar form taking a SunPosition and a vectorised form
taking numpy arrays of zenith and azimuth, so ingestion and synth can work on
whole series.
"""

import logging

import numpy as np

from src.core_model.errors import UndefinedValueError
from src.core_model.system_config import SystemConfig
from src.solar_geometry.sun_position import SunPosition

logger = logging.getLogger(__name__)

MAX_CLEARNESS_INDEX = 1.2


def cos_aoi(zenith_deg, azimuth_deg, tilt_deg: float, surface_azimuth_deg: float) -> np.ndarray:
    """Cosine of the angle of incidence, clamped to [-1, 1]."""
    zen = np.radians(zenith_deg)
    tilt = np.radians(tilt_deg)
    value = (np.cos(zen) * np.cos(tilt)
             + np.sin(zen) * np.sin(tilt) * np.cos(np.radians(np.asarray(azimuth_deg) - surface_azimuth_deg)))
    return np.clip(value, -1.0, 1.0)


def angle_of_incidence(sun: SunPosition, tilt_deg: float, surface_azimuth_deg: float) -> float:
    """
    Angle between the sun vector and the surface normal.

    Args:
        sun: Solar position
        tilt_deg: Surface tilt from horizontal
        surface_azimuth_deg: Surface azimuth, clockwise from north

    Returns:
        Angle of incidence in degrees (may exceed 90 when the sun is behind the plane)
    """
    return float(np.degrees(np.arccos(cos_aoi(sun.zenith_deg, sun.azimuth_deg, tilt_deg, surface_azimuth_deg))))


def poa_components(ghi, dni, dhi, zenith_deg, azimuth_deg,
                   tilt_deg: float, surface_azimuth_deg: float, albedo: float) -> dict:
    """
    Beam, sky-diffuse and ground-reflected irradiance on a tilted plane.

    The beam term is suppressed when the sun is at or below the horizon or
    behind the plane.

    Returns:
        Dict of numpy arrays: poa_direct, poa_sky_diffuse, poa_ground, poa_global
    """
    ghi = np.asarray(ghi, dtype=float)
    dni = np.asarray(dni, dtype=float)
    dhi = np.asarray(dhi, dtype=float)
    cos_tilt = np.cos(np.radians(tilt_deg))

    incidence = cos_aoi(zenith_deg, azimuth_deg, tilt_deg, surface_azimuth_deg)
    sun_up = np.asarray(zenith_deg) < 90.0
    direct = np.where(sun_up, dni * np.maximum(incidence, 0.0), 0.0)
    sky = dhi * (1.0 + cos_tilt) / 2.0
    ground = ghi * albedo * (1.0 - cos_tilt) / 2.0

    return {
        "poa_direct": direct,
        "poa_sky_diffuse": sky,
        "poa_ground": ground,
        "poa_global": direct + sky + ground,
    }


def transpose_series(ghi, dni, dhi, zenith_deg, azimuth_deg, cfg: SystemConfig) -> np.ndarray:
    """Vectorised plane-of-array irradiance for the configured plane, W/m2."""
    return poa_components(ghi, dni, dhi, zenith_deg, azimuth_deg,
                          cfg.tilt_deg, cfg.surface_azimuth_deg, cfg.albedo)["poa_global"]


def transpose_poa(ghi: float, dni: float, dhi: float, sun: SunPosition, cfg: SystemConfig) -> float:
    """
    Plane-of-array irradiance from horizontal components.

    Args:
        ghi: Global horizontal irradiance, W/m2
        dni: Direct normal irradiance, W/m2
        dhi: Diffuse horizontal irradiance, W/m2
        sun: Solar position
        cfg: System configuration supplying tilt, surface azimuth and albedo

    Returns:
        Irradiance on the plane of array, W/m2
    """
    return float(transpose_series(ghi, dni, dhi, sun.zenith_deg, sun.azimuth_deg, cfg))


def extraterrestrial_horizontal(zenith_deg, extraterrestrial_normal_w_m2) -> np.ndarray:
    """Extraterrestrial irradiance on a horizontal plane, zero below the horizon."""
    cos_zen = np.cos(np.radians(zenith_deg))
    return np.where(np.asarray(zenith_deg) < 90.0, np.asarray(extraterrestrial_normal_w_m2) * cos_zen, 0.0)


def clearness_index_series(ghi, zenith_deg, extraterrestrial_normal_w_m2) -> np.ndarray:
    """Vectorised clearness index; NaN where the sun is at or below the horizon."""
    ghi = np.asarray(ghi, dtype=float)
    horizontal = extraterrestrial_horizontal(zenith_deg, extraterrestrial_normal_w_m2)
    with np.errstate(divide="ignore", invalid="ignore"):
        kt = np.where(horizontal > 0.0, ghi / horizontal, np.nan)
    return np.clip(kt, 0.0, MAX_CLEARNESS_INDEX)


def clearness_index(ghi: float, sun: SunPosition) -> float:
    """
    Ratio of global horizontal to extraterrestrial horizontal irradiance.

    Args:
        ghi: Global horizontal irradiance, W/m2
        sun: Solar position

    Returns:
        Clearness index clamped to [0, 1.2]

    Raises:
        UndefinedValueError: If the sun is at or below the horizon
    """
    if not sun.above_horizon:
        raise UndefinedValueError("clearness index undefined with the sun below the horizon",
                                  module="solar_geometry")
    return float(clearness_index_series(ghi, sun.zenith_deg, sun.extraterrestrial_normal_w_m2))


def erbs_diffuse_fraction(kt):
    """Diffuse fraction of GHI as a function of clearness index (Erbs correlation)."""
    kt = np.asarray(kt, dtype=float)
    fraction = 0.9511 - 0.1604 * kt + 4.388 * kt ** 2 - 16.638 * kt ** 3 + 12.336 * kt ** 4
    fraction = np.where(kt <= 0.22, 1.0 - 0.09 * kt, fraction)
    fraction = np.where(kt > 0.80, 0.165, fraction)
    return fraction


def split_ghi(ghi, zenith_deg, extraterrestrial_normal_w_m2):
    """
    Decompose GHI into DHI and DNI with the Erbs correlation.

    Returns:
        Tuple (dni, dhi) of numpy arrays, W/m2
    """
    ghi = np.asarray(ghi, dtype=float)
    kt = np.nan_to_num(clearness_index_series(ghi, zenith_deg, extraterrestrial_normal_w_m2), nan=0.0)
    dhi = ghi * erbs_diffuse_fraction(kt)
    cos_zen = np.cos(np.radians(zenith_deg))
    with np.errstate(divide="ignore", invalid="ignore"):
        dni = np.where(cos_zen > 0.0087, (ghi - dhi) / cos_zen, 0.0)
    return np.maximum(dni, 0.0), dhi


def clear_sky_ghi(zenith_deg):
    """Clear-sky global horizontal irradiance (Haurwitz), W/m2."""
    cos_zen = np.cos(np.radians(np.asarray(zenith_deg, dtype=float)))
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        ghi = np.where(cos_zen > 0.0, 1098.0 * cos_zen * np.exp(-0.059 / cos_zen), 0.0)
    return ghi
