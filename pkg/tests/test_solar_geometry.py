"""Tests for sun position, transposition and clearness."""
import os
import sys
import math
import unittest
from datetime import date

# Add the src directory to the Python path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import numpy as np
import pandas as pd
from hypothesis import given, strategies as st

from src.core_model.errors import UndefinedValueError
from src.core_model.system_config import SystemConfig
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
    erbs_diffuse_fraction,
    poa_components,
    split_ghi,
    transpose_poa,
)


def noaa_sun_vector(utc: pd.Timestamp, latitude_deg: float, longitude_deg: float) -> np.ndarray:
    """East-north-up unit vector of the sun from the NOAA solar equations (no refraction)."""
    jc = (utc.to_julian_date() - 2451545.0) / 36525.0
    mean_long = (280.46646 + jc * (36000.76983 + jc * 0.0003032)) % 360.0
    mean_anom = 357.52911 + jc * (35999.05029 - 0.0001537 * jc)
    ecc = 0.016708634 - jc * (0.000042037 + 0.0000001267 * jc)
    m = math.radians(mean_anom)
    centre = (math.sin(m) * (1.914602 - jc * (0.004817 + 0.000014 * jc))
              + math.sin(2 * m) * (0.019993 - 0.000101 * jc)
              + math.sin(3 * m) * 0.000289)
    omega = math.radians(125.04 - 1934.136 * jc)
    app_long = mean_long + centre - 0.00569 - 0.00478 * math.sin(omega)
    mean_obliq = 23.0 + (26.0 + (21.448 - jc * (46.815 + jc * (0.00059 - jc * 0.001813))) / 60.0) / 60.0
    obliq = math.radians(mean_obliq + 0.00256 * math.cos(omega))
    decl = math.asin(math.sin(obliq) * math.sin(math.radians(app_long)))

    y = math.tan(obliq / 2.0) ** 2
    l0 = math.radians(mean_long)
    eot_min = 4.0 * math.degrees(y * math.sin(2 * l0) - 2 * ecc * math.sin(m)
                                 + 4 * ecc * y * math.sin(m) * math.cos(2 * l0)
                                 - 0.5 * y * y * math.sin(4 * l0) - 1.25 * ecc * ecc * math.sin(2 * m))
    utc_minutes = utc.hour * 60.0 + utc.minute + utc.second / 60.0
    true_solar = (utc_minutes + eot_min + 4.0 * longitude_deg) % 1440.0
    ha = math.radians(true_solar / 4.0 - 180.0)

    lat = math.radians(latitude_deg)
    return np.array([
        -math.cos(decl) * math.sin(ha),
        math.cos(lat) * math.sin(decl) - math.sin(lat) * math.cos(decl) * math.cos(ha),
        math.sin(lat) * math.sin(decl) + math.cos(lat) * math.cos(decl) * math.cos(ha),
    ])


def position_vector(zenith_deg: float, azimuth_deg: float) -> np.ndarray:
    z, a = math.radians(zenith_deg), math.radians(azimuth_deg)
    return np.array([math.sin(z) * math.sin(a), math.sin(z) * math.cos(a), math.cos(z)])


def separation_deg(u: np.ndarray, v: np.ndarray) -> float:
    return math.degrees(math.acos(max(-1.0, min(1.0, float(np.dot(u, v))))))


def _sun(zenith, azimuth, g_on=1367.0) -> SunPosition:
    return SunPosition(zenith_deg=zenith, azimuth_deg=azimuth, declination_deg=0.0,
                       hour_angle_deg=0.0, extraterrestrial_normal_w_m2=g_on)


class TestSunPosition(unittest.TestCase):
    """Test solar position against geometry and an independent reference."""

    def setUp(self):
        self.cfg = SystemConfig()

    def test_equator_equinox_noon(self):
        """At the equator on the equinox the noon sun is overhead."""
        cfg = SystemConfig(latitude_deg=0.0, longitude_deg=0.0, utc_offset_h=0.0)
        sun = sun_position(cfg, solar_noon(cfg, date(2021, 3, 20)))
        self.assertLess(sun.zenith_deg, 0.6)

    def test_june_solstice_noon(self):
        """At 15.48N the June solstice noon zenith is about 7.97 degrees."""
        sun = sun_position(self.cfg, solar_noon(self.cfg, date(2021, 6, 21)))
        self.assertAlmostEqual(sun.zenith_deg, abs(15.48 - 23.45), delta=0.6)
        self.assertAlmostEqual(sun.hour_angle_deg, 0.0, delta=0.05)

    def test_site_reference_instant(self):
        """Mid-April local noon at the site matches the reference within half a degree."""
        stamp = pd.Timestamp("2021-04-15T12:00:00+08:00")
        sun = sun_position(self.cfg, stamp)
        reference = noaa_sun_vector(stamp.tz_convert("UTC").tz_localize(None), 15.48, 120.65)
        self.assertLess(separation_deg(position_vector(sun.zenith_deg, sun.azimuth_deg), reference), 0.5)
        self.assertTrue(sun.above_horizon)
        self.assertAlmostEqual(sun.elevation_deg, 90.0 - sun.zenith_deg)

    def test_naive_times_are_local(self):
        """Naive timestamps are read at the configured offset."""
        naive = sun_position(self.cfg, "2021-04-15 12:00")
        aware = sun_position(self.cfg, pd.Timestamp("2021-04-15T04:00:00Z"))
        self.assertEqual(naive, aware)

    def test_random_samples_against_reference(self):
        """100 random instants and latitudes agree with the reference within half a degree."""
        rng = np.random.default_rng(20210415)
        latitudes = rng.uniform(-60.0, 60.0, 100)
        longitudes = rng.uniform(-180.0, 180.0, 100)
        seconds = rng.integers(0, 365 * 86400, 100)
        start = pd.Timestamp("2021-01-01")
        for lat, lon, sec in zip(latitudes, longitudes, seconds):
            utc = start + pd.Timedelta(seconds=int(sec))
            frame = solar_positions_at(float(lat), float(lon), pd.DatetimeIndex([utc]).tz_localize("UTC"))
            row = frame.iloc[0]
            got = position_vector(row["zenith_deg"], row["azimuth_deg"])
            self.assertLess(separation_deg(got, noaa_sun_vector(utc, lat, lon)), 0.5,
                            msg=f"lat={lat:.2f} lon={lon:.2f} t={utc}")

    def test_value_ranges(self):
        """Zenith, azimuth and declination stay inside their ranges over a year."""
        times = pd.date_range("2021-01-01", "2021-12-31 23:00", freq="7h")
        frame = solar_positions(self.cfg, times)
        self.assertTrue(((frame["zenith_deg"] >= 0) & (frame["zenith_deg"] <= 180)).all())
        self.assertTrue(((frame["azimuth_deg"] >= 0) & (frame["azimuth_deg"] < 360)).all())
        self.assertLessEqual(frame["declination_deg"].abs().max(), 23.55)

    def test_solar_noon_on_local_day(self):
        """Solar noon falls on the requested local date, near 11:57 local at the site."""
        noon = solar_noon(self.cfg, date(2021, 4, 15))
        local = noon.tz_convert("Etc/GMT-8")
        self.assertEqual(local.date(), date(2021, 4, 15))
        self.assertLess(abs((local.hour * 60 + local.minute) - (12 * 60 - 3)), 10)

    def test_to_utc_index(self):
        """Naive values shift by the offset; mixing naive and aware is refused."""
        index = to_utc_index(["2021-04-15 12:00"], 8.0)
        self.assertEqual(index[0], pd.Timestamp("2021-04-15T04:00:00Z"))
        with self.assertRaises(ValueError):
            to_utc_index(["2021-04-15 12:00", pd.Timestamp("2021-04-15T04:00:00Z")])


class TestTransposition(unittest.TestCase):
    """Test angle of incidence and isotropic transposition."""

    def setUp(self):
        self.cfg = SystemConfig()

    def test_horizontal_plane(self):
        """On a horizontal plane the angle of incidence is the zenith."""
        self.assertAlmostEqual(angle_of_incidence(_sun(37.0, 212.0), 0.0, 165.0), 37.0, places=9)

    def test_sun_along_normal(self):
        """The sun along the plane normal gives zero incidence."""
        self.assertAlmostEqual(angle_of_incidence(_sun(26.0, 165.0), 26.0, 165.0), 0.0, places=4)

    def test_coplanar_angles_subtract(self):
        """Zenith 30 in the plane's azimuth gives 30 - 26 = 4 degrees."""
        self.assertAlmostEqual(angle_of_incidence(_sun(30.0, 165.0), 26.0, 165.0), 4.0, places=6)

    def test_incidence_may_exceed_ninety(self):
        """A sun behind the plane gives an angle above 90 degrees."""
        self.assertGreater(angle_of_incidence(_sun(80.0, 345.0), 26.0, 165.0), 90.0)

    def test_worked_example(self):
        """GHI 650, DNI 720, DHI 110 at 20 degrees incidence on the site plane."""
        sun = _sun(46.0, 165.0)
        self.assertAlmostEqual(angle_of_incidence(sun, 26.0, 165.0), 20.0, places=6)
        self.assertAlmostEqual(transpose_poa(650.0, 720.0, 110.0, sun, self.cfg), 787.59, delta=0.01)

    def test_tilt_zero_reduces_to_horizontal(self):
        """A flat plane receives DNI cos(zenith) + DHI."""
        cfg = SystemConfig(tilt_deg=0.0)
        poa = transpose_poa(500.0, 600.0, 120.0, _sun(40.0, 120.0), cfg)
        self.assertAlmostEqual(poa, 600.0 * math.cos(math.radians(40.0)) + 120.0, places=9)

    def test_zero_inputs(self):
        """No irradiance in, none out."""
        self.assertEqual(transpose_poa(0.0, 0.0, 0.0, _sun(40.0, 120.0), self.cfg), 0.0)

    def test_beam_suppressed_below_horizon(self):
        """Below the horizon only the diffuse terms remain."""
        parts = poa_components(20.0, 300.0, 20.0, 95.0, 165.0, 26.0, 165.0, 0.2)
        self.assertEqual(float(parts["poa_direct"]), 0.0)
        self.assertGreater(float(parts["poa_global"]), 0.0)

    @given(st.floats(0.0, 1200.0), st.floats(0.0, 1000.0), st.floats(0.0, 600.0),
           st.floats(0.0, 89.0), st.floats(0.0, 359.9), st.floats(0.0, 10.0))
    def test_homogeneous_of_degree_one(self, ghi, dni, dhi, zenith, azimuth, k):
        """Scaling every component scales the result."""
        sun = _sun(zenith, azimuth)
        base = transpose_poa(ghi, dni, dhi, sun, self.cfg)
        scaled = transpose_poa(k * ghi, k * dni, k * dhi, sun, self.cfg)
        self.assertAlmostEqual(scaled, k * base, delta=1e-9 * max(1.0, abs(k * base)))

    @given(st.floats(0.0, 1200.0), st.floats(0.0, 1000.0), st.floats(0.0, 600.0),
           st.floats(0.0, 180.0), st.floats(0.0, 359.9))
    def test_never_below_sky_diffuse(self, ghi, dni, dhi, zenith, azimuth):
        """Plane-of-array irradiance is at least the sky-diffuse term."""
        poa = transpose_poa(ghi, dni, dhi, _sun(zenith, azimuth), self.cfg)
        floor = dhi * (1.0 + math.cos(math.radians(26.0))) / 2.0
        self.assertGreaterEqual(poa, floor - 1e-9)


class TestClearness(unittest.TestCase):
    """Test clearness index, diffuse fraction and clear-sky envelope."""

    def test_worked_example(self):
        """650 / (1360 cos 30) is about 0.552."""
        self.assertAlmostEqual(clearness_index(650.0, _sun(30.0, 180.0, 1360.0)), 0.552, delta=0.001)

    def test_bounds(self):
        """Extraterrestrial-level GHI gives 1, zero gives 0, the ceiling is 1.2."""
        sun = _sun(30.0, 180.0, 1360.0)
        self.assertAlmostEqual(clearness_index(1360.0 * math.cos(math.radians(30.0)), sun), 1.0)
        self.assertEqual(clearness_index(0.0, sun), 0.0)
        self.assertEqual(clearness_index(5000.0, sun), 1.2)

    def test_below_horizon_is_undefined(self):
        """The index is undefined at night."""
        with self.assertRaises(UndefinedValueError):
            clearness_index(10.0, _sun(95.0, 270.0))

    def test_erbs_branches(self):
        """Overcast skies are nearly all diffuse; clear skies settle at 0.165."""
        self.assertAlmostEqual(float(erbs_diffuse_fraction(0.1)), 0.991)
        self.assertAlmostEqual(float(erbs_diffuse_fraction(0.9)), 0.165)
        middle = float(erbs_diffuse_fraction(0.5))
        self.assertTrue(0.165 < middle < 0.98)

    def test_split_closes_on_ghi(self):
        """Decomposed DNI and DHI add back up to GHI."""
        zenith = np.array([30.0, 60.0, 100.0])
        ghi = np.array([650.0, 300.0, 0.0])
        dni, dhi = split_ghi(ghi, zenith, np.full(3, 1360.0))
        closure = dni * np.cos(np.radians(zenith)) + dhi
        np.testing.assert_allclose(closure[:2], ghi[:2], rtol=1e-9)
        self.assertEqual((dni[2], dhi[2]), (0.0, 0.0))

    def test_clear_sky_envelope(self):
        """The clear-sky curve falls with zenith and is zero at night."""
        values = clear_sky_ghi([0.0, 30.0, 60.0, 89.0, 90.0, 120.0])
        self.assertTrue(np.all(np.diff(values[:5]) < 0))
        self.assertEqual(values[4], 0.0)
        self.assertEqual(values[5], 0.0)


if __name__ == "__main__":
    unittest.main()
