"""
Solar geometry package: sun position, transposition and clearness.
"""

from src.solar_geometry.sun_position import (
    SunPosition,
    solar_noon,
    solar_positions,
    solar_positions_at,
    sun_position,
    to_utc_index,
)
from src.solar_geometry.transposition import (
    angle_of_incidence,
    clear_sky_ghi,
    clearness_index,
    clearness_index_series,
    erbs_diffuse_fraction,
    extraterrestrial_horizontal,
    poa_components,
    split_ghi,
    transpose_poa,
    transpose_series,
)

__all__ = [
    'SunPosition',
    'solar_noon',
    'solar_positions',
    'solar_positions_at',
    'sun_position',
    'to_utc_index',
    'angle_of_incidence',
    'clear_sky_ghi',
    'clearness_index',
    'clearness_index_series',
    'erbs_diffuse_fraction',
    'extraterrestrial_horizontal',
    'poa_components',
    'split_ghi',
    'transpose_poa',
    'transpose_series',
]
