"""
Seedable synthetic generation and weather datasets.

Each day draws a weather class from a Markov chain, then builds hourly sky
conditions from the site geometry: extraterrestrial irradiance attenuated by
the class clearness and mean-one lognormal noise, bounded by the clear-sky
envelope plus a cloud-enhancement margin, split into beam and diffuse with the
Erbs correlation and transposed to the array plane. DC energy follows from POA,
array area, module efficiency and a linear temperature derate; AC energy from
a flat-topped inverter curve with clipping at the inverter rating.

Random streams: SeedSequence(seed).spawn(n_days + 1) feeding PCG64. Stream 0
drives the class chain; stream i + 1 draws day i's noise, three blocks of 24
standard normals (clearness, temperature, wind).
"""

import logging
from dataclasses import dataclass
from datetime import timedelta
from typing import Dict, List, Tuple

import numpy as np
import pandas as pd
from scipy.optimize import root_scalar
from tqdm import tqdm

from src.core_model import published
from src.core_model.system_config import SystemConfig
from src.ingestion.records import GenerationRecord, WeatherLabel, WeatherRecord
from src.ingestion.writers import write_generation_csv, write_weather_csv
from src.metrics.performance import estimate_cell_temperature
from src.solar_geometry.sun_position import solar_positions_at
from src.solar_geometry.transposition import clear_sky_ghi, split_ghi, transpose_series
from src.synth.config import SynthConfig

logger = logging.getLogger(__name__)

HOURS = 24
TEMP_COEFF_PER_C = -0.004
INVERTER_FLAT_EFF = 0.96
INVERTER_KNEE_LOAD = 0.10
INVERTER_ZERO_LOAD_EFF = 0.80
TEMP_NOISE_SCALE_C = 5.0
ENERGY_DECIMALS = 4
IRRADIANCE_DECIMALS = 2
# broken cloud can lift GHI above the clear-sky envelope, by at most this factor
CLOUD_ENHANCEMENT = 1.1

# diurnal ambient swing, °C
DIURNAL_AMPLITUDE_C = {
    WeatherLabel.CLEAR: 4.0,
    WeatherLabel.PARTLY_CLOUDY: 3.5,
    WeatherLabel.OVERCAST: 2.5,
    WeatherLabel.RAIN: 1.5,
}

CLASSES = list(WeatherLabel)


def inverter_curve(load_fraction):
    """Conversion efficiency against DC load as a fraction of the inverter rating."""
    load = np.asarray(load_fraction, dtype=float)
    slope = (INVERTER_FLAT_EFF - INVERTER_ZERO_LOAD_EFF) / INVERTER_KNEE_LOAD
    return np.where(load >= INVERTER_KNEE_LOAD, INVERTER_FLAT_EFF, INVERTER_ZERO_LOAD_EFF + slope * load)


def temperature_derate(cell_temp_c):
    return np.maximum(1.0 + TEMP_COEFF_PER_C * (np.asarray(cell_temp_c, dtype=float) - 25.0), 0.0)


def max_gain(cfg: SystemConfig) -> float:
    """Largest array gain keeping DC output at or below nameplate per unit insolation."""
    return cfg.p_rated_kwp / (cfg.array_area_m2 * cfg.module_eff)


@dataclass
class SkyConditions:
    """Hourly conditions of a run, arrays shaped (n_days, 24)."""

    dates: List
    classes: np.ndarray
    stamps: pd.DatetimeIndex
    ghi: np.ndarray
    dni: np.ndarray
    dhi: np.ndarray
    poa: np.ndarray
    temp_c: np.ndarray
    wind_ms: np.ndarray

    def cell_temp_c(self, noct_c: float) -> np.ndarray:
        return estimate_cell_temperature(self.temp_c, self.poa, noct_c)


def sample_classes(rng: np.random.Generator, scfg: SynthConfig) -> np.ndarray:
    """Weather class index per day from the Markov chain."""
    matrix = np.asarray(scfg.class_transition_matrix, dtype=float)
    classes = np.empty(scfg.n_days, dtype=int)
    classes[0] = rng.choice(len(CLASSES), p=scfg.initial_probabilities)
    for i in range(1, scfg.n_days):
        classes[i] = rng.choice(len(CLASSES), p=matrix[classes[i - 1]])
    return classes


def _hour_stamps(dates, utc_offset_h: float) -> pd.DatetimeIndex:
    """UTC stamps 01:00..24:00 local of each date, hour-ending convention."""
    midnights = pd.DatetimeIndex([pd.Timestamp(d) for d in dates]) - pd.Timedelta(hours=utc_offset_h)
    stamps = (midnights.values[:, None] + np.arange(1, HOURS + 1).astype("timedelta64[h]")[None, :]).ravel()
    return pd.DatetimeIndex(stamps).tz_localize("UTC")


def simulate_sky(cfg: SystemConfig, scfg: SynthConfig, progress: bool = False) -> SkyConditions:
    """
    Draw classes and hourly sky conditions for every day of the run.

    Args:
        cfg: System configuration
        scfg: Generator settings
        progress: Show a progress bar over days

    Returns:
        SkyConditions
    """
    streams = np.random.SeedSequence(scfg.seed).spawn(scfg.n_days + 1)
    classes = sample_classes(np.random.Generator(np.random.PCG64(streams[0])), scfg)

    dates = [scfg.start_date + timedelta(days=i) for i in range(scfg.n_days)]
    stamps = _hour_stamps(dates, cfg.utc_offset_h)
    sun = solar_positions_at(cfg.latitude_deg, cfg.longitude_deg, stamps - pd.Timedelta(minutes=30))
    shape = (scfg.n_days, HOURS)
    zenith = sun["zenith_deg"].to_numpy().reshape(shape)
    azimuth = sun["azimuth_deg"].to_numpy().reshape(shape)
    ext_normal = sun["extraterrestrial_normal_w_m2"].to_numpy().reshape(shape)

    noise = np.empty((3,) + shape)
    for i in tqdm(range(scfg.n_days), desc="Simulating days", disable=not progress):
        noise[:, i, :] = np.random.Generator(np.random.PCG64(streams[i + 1])).standard_normal((3, HOURS))

    sd = scfg.noise_sd
    clearness = np.asarray(scfg.clearness_means)[classes][:, None] * np.exp(sd * noise[0] - sd ** 2 / 2.0)
    sun_up = zenith < 90.0
    cos_zen = np.cos(np.radians(zenith))
    ceiling = CLOUD_ENHANCEMENT * clear_sky_ghi(zenith)
    ghi = np.where(sun_up, np.minimum(ext_normal * cos_zen * clearness, ceiling), 0.0)
    dni, dhi = split_ghi(ghi, zenith, ext_normal)
    poa = transpose_series(ghi, dni, dhi, zenith, azimuth, cfg)

    months = np.array([d.month for d in dates])
    mean_temp = np.array([published.METEOROLOGY[m - 1].temp_c for m in months])[:, None]
    mean_wind = np.array([published.METEOROLOGY[m - 1].wind_ms for m in months])[:, None]
    amplitude = np.array([DIURNAL_AMPLITUDE_C[CLASSES[c]] for c in classes])[:, None]
    # interval midpoints, local hours; the afternoon peak sits at 15:00
    mid_hours = np.arange(HOURS) + 0.5
    diurnal = np.sin(2.0 * np.pi * (mid_hours - 9.0) / HOURS)[None, :]
    temp_c = mean_temp + amplitude * diurnal + sd * TEMP_NOISE_SCALE_C * noise[1]
    wind_ms = mean_wind * np.exp(sd * noise[2] - sd ** 2 / 2.0)

    counts = {label.value: int((classes == i).sum()) for i, label in enumerate(CLASSES)}
    logger.info(f"Simulated {scfg.n_days} days from seed {scfg.seed}: {counts}")

    return SkyConditions(
        dates=dates,
        classes=classes,
        stamps=stamps,
        ghi=np.round(ghi, IRRADIANCE_DECIMALS),
        dni=np.round(dni, IRRADIANCE_DECIMALS),
        dhi=np.round(dhi, IRRADIANCE_DECIMALS),
        poa=np.round(poa, IRRADIANCE_DECIMALS),
        temp_c=np.round(temp_c, IRRADIANCE_DECIMALS),
        wind_ms=np.round(wind_ms, IRRADIANCE_DECIMALS),
    )


def dc_energy(poa_w_m2, cell_temp_c, cfg: SystemConfig, gain) -> np.ndarray:
    """Hourly DC energy, kWh. ``gain`` broadcasts against the day axis."""
    return (np.asarray(poa_w_m2) / 1000.0 * cfg.array_area_m2 * cfg.module_eff
            * temperature_derate(cell_temp_c) * gain)


def ac_energy(e_dc_kwh, cfg: SystemConfig) -> np.ndarray:
    """Hourly AC energy, kWh, clipped at the inverter rating."""
    e_dc = np.asarray(e_dc_kwh, dtype=float)
    return np.minimum(e_dc * inverter_curve(e_dc / cfg.inverter_rating_kw), cfg.inverter_rating_kw)


def calibrate_gains(sky: SkyConditions, cfg: SystemConfig, scfg: SynthConfig) -> Dict[WeatherLabel, float]:
    """
    Per-class array gain making the class's mean daily E_AC equal its target.

    A target above what the capped gain delivers is logged and the cap used.

    Returns:
        Gain per class present in the run
    """
    cap = max_gain(cfg)
    cell_temp = sky.cell_temp_c(cfg.noct_c)
    gains: Dict[WeatherLabel, float] = {}
    for i, label in enumerate(CLASSES):
        rows = sky.classes == i
        if not rows.any():
            continue
        poa, temp = sky.poa[rows], cell_temp[rows]
        target = scfg.target_for(label)

        def shortfall(gain: float) -> float:
            daily = ac_energy(dc_energy(poa, temp, cfg, gain), cfg).sum(axis=1)
            return float(daily.mean()) - target

        if shortfall(cap) < 0:
            logger.warning(f"Class {label.value}: target {target} kWh/day unreachable, "
                           f"using gain cap {cap:.4f} ({shortfall(cap) + target:.3f} kWh/day)")
            gains[label] = cap
            continue
        result = root_scalar(shortfall, bracket=[0.0, cap], method="brentq", xtol=1e-12)
        gains[label] = float(result.root)
        logger.debug(f"Class {label.value}: gain {result.root:.6f} after {result.iterations} iterations")
    return gains


def build_records(sky: SkyConditions, cfg: SystemConfig, gains: Dict[WeatherLabel, float],
                  include_gpoa: bool = True) -> Tuple[List[GenerationRecord], List[WeatherRecord]]:
    """Hourly generation and weather records of a simulated run."""
    day_gain = np.array([gains.get(CLASSES[c], 0.0) for c in sky.classes])[:, None]
    e_dc = dc_energy(sky.poa, sky.cell_temp_c(cfg.noct_c), cfg, day_gain)
    e_ac = ac_energy(e_dc, cfg)
    e_dc = np.round(e_dc, ENERGY_DECIMALS).ravel().tolist()
    e_ac = np.round(e_ac, ENERGY_DECIMALS).ravel().tolist()

    labels = [CLASSES[c] for c in sky.classes for _ in range(HOURS)]
    ghi, dni, dhi = (a.ravel().tolist() for a in (sky.ghi, sky.dni, sky.dhi))
    poa, temp, wind = (a.ravel().tolist() for a in (sky.poa, sky.temp_c, sky.wind_ms))
    if not include_gpoa:
        poa = [None] * len(poa)

    generation, weather = [], []
    for j, stamp in enumerate(sky.stamps):
        generation.append(GenerationRecord(timestamp=stamp, e_dc_kwh=e_dc[j], e_ac_kwh=e_ac[j]))
        weather.append(WeatherRecord(timestamp=stamp, ghi_w_m2=ghi[j], dni_w_m2=dni[j], dhi_w_m2=dhi[j],
                                     gpoa_w_m2=poa[j], temp_c=temp[j], wind_ms=wind[j],
                                     weather_label=labels[j]))
    return generation, weather


def generate(cfg: SystemConfig, scfg: SynthConfig, progress: bool = False) -> Tuple[bytes, bytes]:
    """
    Generate a synthetic (generation.csv, weather.csv) pair.

    Identical settings give byte-identical output.

    Args:
        cfg: System configuration
        scfg: Generator settings
        progress: Show a progress bar over days

    Returns:
        Tuple of CSV bytes (generation, weather) in the ingestion schemas
    """
    sky = simulate_sky(cfg, scfg, progress=progress)
    gains = calibrate_gains(sky, cfg, scfg)
    generation, weather = build_records(sky, cfg, gains, include_gpoa=scfg.include_gpoa)
    logger.info(f"Generated {len(generation)} hourly records")
    return (write_generation_csv(generation, cfg.utc_offset_h, include_export=False),
            write_weather_csv(weather, cfg.utc_offset_h))
