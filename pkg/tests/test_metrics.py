"""Tests for yields, losses, PR, efficiencies and the monthly/annual tables."""
import os
import sys
import calendar
import unittest

# Add the src directory to the Python path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from hypothesis import given, strategies as st

from src.core_model.errors import ConfigError, DataError, UndefinedValueError
from src.core_model.published import ENERGY, ENERGY_AVERAGE, efficiency_row
from src.core_model.system_config import SystemConfig
from src.ingestion.aggregation import MonthlySummary
from src.metrics.monthly import (
    FLAG_CAPTURE_LOSS_NEGATIVE,
    FLAG_INVALID_MONTH,
    FLAG_METERING_ERROR,
    FLAG_NO_VALID_MONTHS,
    FLAG_PARTIAL_YEAR,
    FLAG_PR_ABOVE_100,
    FLAG_UNDEFINED_PR,
    compute_annual,
    compute_month,
    compute_monthly,
)
from src.metrics.performance import (
    array_efficiency,
    array_yield,
    capture_loss,
    cuf,
    estimate_cell_temperature,
    final_yield,
    inverter_efficiency,
    performance_ratio,
    reference_yield,
    system_efficiency,
    system_loss,
)

CFG = SystemConfig()
P = CFG.p_rated_kwp
AREA = CFG.array_area_m2


def published_summaries(year: int = 2021):
    """Daily-mean rows of the reference system as monthly summaries."""
    summaries = []
    for row in ENERGY:
        days = calendar.monthrange(year, row.month)[1]
        summaries.append(MonthlySummary.from_daily_means(
            year, row.month, e_dc_kwh=row.e_dc_kwh, e_ac_kwh=row.e_ac_kwh, h_poa_kwh_m2=row.y_r,
            e_export_kwh=efficiency_row(row.month).e_grid_kwh / days, cell_temp_c=row.cell_temp_c,
        ))
    return summaries


def constant_months(months, year: int, e_ac: float = 10.0):
    return [MonthlySummary.from_daily_means(year, m, e_dc_kwh=e_ac * 1.03, e_ac_kwh=e_ac, h_poa_kwh_m2=5.0)
            for m in months]


class TestPerformanceFunctions(unittest.TestCase):
    """Test the single-value metric functions."""

    def test_yields(self):
        """Yields normalise energy by the nameplate rating."""
        self.assertAlmostEqual(array_yield(12.40, P), 4.559, places=3)
        self.assertAlmostEqual(final_yield(12.00, P), 4.412, places=3)
        self.assertAlmostEqual(final_yield(5.58, P), 2.051, places=3)
        self.assertEqual(final_yield(0.0, P), 0.0)
        self.assertEqual(reference_yield(5.74, 1.0), 5.74)
        self.assertEqual(reference_yield(0.0, 1.0), 0.0)

    def test_rating_must_be_positive(self):
        """A zero rating is a configuration error."""
        with self.assertRaises(ConfigError):
            array_yield(1.0, 0.0)
        with self.assertRaises(ConfigError):
            reference_yield(1.0, 0.0)

    def test_performance_ratio(self):
        """PR is the final over the reference yield."""
        self.assertAlmostEqual(performance_ratio(3.01, 3.9), 77.18, places=2)
        self.assertAlmostEqual(performance_ratio(2.05, 2.78), 73.74, places=2)
        self.assertEqual(performance_ratio(2.5, 2.5), 100.0)
        with self.assertRaises(UndefinedValueError):
            performance_ratio(1.0, 0.0)

    def test_losses(self):
        """Losses are plain differences of yields."""
        self.assertAlmostEqual(capture_loss(5.74, 4.56), 1.18)
        self.assertAlmostEqual(capture_loss(3.9, 3.12), 0.78)
        self.assertAlmostEqual(system_loss(4.56, 4.41), 0.15)
        self.assertAlmostEqual(system_loss(1.86, 1.77), 0.09)
        self.assertEqual(capture_loss(2.0, 2.0), 0.0)
        self.assertLess(capture_loss(3.0, 3.5), 0.0)

    def test_cuf(self):
        """Annual AC energy of 3699 kWh gives 15.52%."""
        self.assertAlmostEqual(cuf(3699.0, P), 15.52, delta=0.01)
        self.assertEqual(cuf(0.0, P), 0.0)
        self.assertAlmostEqual(cuf(P * 8760, P), 100.0)
        self.assertAlmostEqual(cuf(P * 8784, P, hours=8784), 100.0)

    def test_efficiencies(self):
        """Efficiencies over plane-of-array insolation on the gross area."""
        self.assertAlmostEqual(array_efficiency(5.06, 2.45, AREA), 12.83, delta=0.01)
        self.assertAlmostEqual(array_efficiency(12.40, 5.74, AREA), 13.42, delta=0.01)
        self.assertAlmostEqual(array_efficiency(5.0 * AREA, 5.0, AREA), 100.0)
        self.assertAlmostEqual(system_efficiency(4.81, 2.45, AREA), 12.19, delta=0.01)
        self.assertAlmostEqual(system_efficiency(10.47, 4.90, AREA), 13.27, delta=0.01)
        self.assertEqual(system_efficiency(0.0, 5.0, AREA), 0.0)
        with self.assertRaises(UndefinedValueError):
            array_efficiency(1.0, 0.0, AREA)

    def test_inverter_efficiency(self):
        """AC over DC, with errors for missing DC."""
        self.assertAlmostEqual(inverter_efficiency(12.00, 12.40), 96.77, delta=0.01)
        self.assertEqual(inverter_efficiency(0.0, 5.0), 0.0)
        self.assertEqual(inverter_efficiency(5.0, 5.0), 100.0)
        with self.assertRaises(DataError):
            inverter_efficiency(1.0, 0.0)
        with self.assertRaises(UndefinedValueError):
            inverter_efficiency(0.0, 0.0)

    def test_cell_temperature(self):
        """NOCT cell temperature model."""
        self.assertEqual(estimate_cell_temperature(25.0, 0.0, 45.0), 25.0)
        self.assertEqual(estimate_cell_temperature(25.0, 800.0, 45.0), 50.0)
        self.assertAlmostEqual(estimate_cell_temperature(28.99, 600.0, 45.0), 47.74)

    @given(st.floats(0.1, 20.0), st.floats(0.1, 20.0), st.floats(0.5, 8.0))
    def test_pr_increasing_in_ac_energy(self, e_ac, extra, h_poa):
        """More AC energy with everything else fixed means a higher PR."""
        low = performance_ratio(final_yield(e_ac, P), reference_yield(h_poa))
        high = performance_ratio(final_yield(e_ac + extra, P), reference_yield(h_poa))
        self.assertGreater(high, low)


class TestPublishedRows(unittest.TestCase):
    """Reproduce the derived columns of the published monthly tables."""

    @classmethod
    def setUpClass(cls):
        cls.rows = compute_monthly(published_summaries(), CFG)

    def test_yields_and_losses(self):
        """Y_A and Y_F within 0.01, L_C and L_S within 0.015 for every month."""
        for row, ref in zip(self.rows, ENERGY):
            with self.subTest(month=ref.month):
                self.assertAlmostEqual(row.y_a, ref.y_a, delta=0.01)
                self.assertAlmostEqual(row.y_f, ref.y_f, delta=0.01)
                self.assertAlmostEqual(row.l_c, ref.l_c, delta=0.015)
                self.assertAlmostEqual(row.l_s, ref.l_s, delta=0.015)

    def test_performance_ratio(self):
        """Monthly PR within 0.25 pp of the published values."""
        for row in self.rows:
            with self.subTest(month=row.month):
                self.assertAlmostEqual(row.pr_pct, efficiency_row(row.month).pr_pct, delta=0.25)

    def test_annual_pr_pair(self):
        """The averaged yields reproduce the headline PR within 0.2 pp."""
        self.assertAlmostEqual(performance_ratio(ENERGY_AVERAGE.y_f, ENERGY_AVERAGE.y_r), 77.10, delta=0.2)

    def test_efficiencies(self):
        """Array and system efficiency within 0.15 pp; inverter efficiency within 1 pp."""
        for row in self.rows:
            ref = efficiency_row(row.month)
            with self.subTest(month=row.month):
                self.assertAlmostEqual(row.eta_array_pct, ref.eta_array_pct, delta=0.15)
                self.assertAlmostEqual(row.eta_sys_pct, ref.eta_sys_pct, delta=0.15)
                self.assertAlmostEqual(row.eta_inv_pct, ref.eta_inv_pct, delta=1.0)

    def test_grid_export_round_trips(self):
        """Monthly grid export is the daily mean times the days in the month."""
        for row in self.rows:
            self.assertAlmostEqual(row.e_grid_kwh, efficiency_row(row.month).e_grid_kwh, places=9)

    def test_identities(self):
        """Loss identities hold to machine precision and no month is flagged."""
        for row in self.rows:
            self.assertAlmostEqual(row.y_a - row.y_f, row.l_s, places=12)
            self.assertAlmostEqual(row.y_r - row.y_a, row.l_c, places=12)
            self.assertAlmostEqual(row.pr_pct * row.y_r, 100.0 * row.y_f, places=9)
            self.assertLessEqual(row.eta_sys_pct, row.eta_array_pct)
            self.assertEqual(row.flags, ())

    def test_annual_block(self):
        """A 2021 calendar year of published rows sums to 2984.14 kWh."""
        annual = compute_annual(self.rows, CFG, "auto")
        self.assertEqual(annual.hours_basis, "calendar 2021")
        self.assertEqual(annual.hours, 8760)
        self.assertAlmostEqual(annual.e_ac_total_kwh, 2984.14, places=6)
        self.assertAlmostEqual(annual.cuf_pct, 12.524, delta=0.001)
        self.assertAlmostEqual(annual.e_grid_total_kwh, sum(efficiency_row(m).e_grid_kwh for m in range(1, 13)))
        self.assertEqual((annual.start, annual.end, annual.n_valid_months), ("2021-01", "2021-12", 12))
        self.assertAlmostEqual(annual.pr_pct, sum(r.pr_pct for r in self.rows) / 12)
        self.assertEqual(annual.flags, ())


class TestMonthlyFlags(unittest.TestCase):
    """Test flags raised on suspicious months."""

    def test_invalid_month_has_no_metrics(self):
        """An invalid month is kept as a flagged row without values."""
        summary = MonthlySummary.from_daily_means(2021, 4, 12.4, 12.0, 5.74, valid=False)
        row = compute_month(summary, CFG)
        self.assertFalse(row.valid)
        self.assertEqual(row.flags, (FLAG_INVALID_MONTH,))
        self.assertIsNone(row.pr_pct)

    def test_constant_days_match_single_day(self):
        """A month of identical days has the metrics of one such day."""
        (row,) = compute_monthly([MonthlySummary.from_daily_means(2021, 4, 12.4, 12.0, 5.74)], CFG)
        self.assertAlmostEqual(row.pr_pct, performance_ratio(final_yield(12.0, P), 5.74))
        self.assertAlmostEqual(row.eta_sys_pct, system_efficiency(12.0, 5.74, AREA))

    def test_metering_error(self):
        """AC above DC beyond the tolerance is flagged."""
        row = compute_month(MonthlySummary.from_daily_means(2021, 4, 10.0, 10.2, 5.0), CFG)
        self.assertIn(FLAG_METERING_ERROR, row.flags)
        within = compute_month(MonthlySummary.from_daily_means(2021, 4, 10.0, 10.04, 5.0), CFG)
        self.assertNotIn(FLAG_METERING_ERROR, within.flags)

    def test_negative_capture_loss_and_high_pr(self):
        """Array yield above reference yield is flagged, not clamped."""
        row = compute_month(MonthlySummary.from_daily_means(2021, 4, 10.0, 9.6, 3.0), CFG)
        self.assertLess(row.l_c, 0.0)
        self.assertIn(FLAG_CAPTURE_LOSS_NEGATIVE, row.flags)
        self.assertIn(FLAG_PR_ABOVE_100, row.flags)

    def test_zero_insolation(self):
        """No insolation leaves PR undefined."""
        row = compute_month(MonthlySummary.from_daily_means(2021, 4, 1.0, 0.9, 0.0), CFG)
        self.assertIsNone(row.pr_pct)
        self.assertIn(FLAG_UNDEFINED_PR, row.flags)

    @given(st.floats(1.0, 20.0), st.floats(0.8, 1.0), st.floats(1.0, 8.0), st.floats(0.1, 10.0))
    def test_scaling(self, e_dc, ratio, h_poa, k):
        """Scaling energies and insolation keeps ratios and scales yields."""
        base = compute_month(MonthlySummary.from_daily_means(2021, 4, e_dc, e_dc * ratio, h_poa), CFG)
        scaled = compute_month(MonthlySummary.from_daily_means(2021, 4, k * e_dc, k * e_dc * ratio, k * h_poa), CFG)
        for name in ("pr_pct", "eta_array_pct", "eta_sys_pct", "eta_inv_pct"):
            self.assertAlmostEqual(getattr(scaled, name), getattr(base, name), delta=1e-9 * getattr(base, name))
        for name in ("y_a", "y_f", "y_r", "l_c", "l_s"):
            self.assertAlmostEqual(getattr(scaled, name), k * getattr(base, name), delta=1e-9 * max(1.0, k * e_dc))


class TestAnnual(unittest.TestCase):
    """Test the annual block."""

    def test_leap_year(self):
        """A single leap calendar year uses 8784 hours and 29 February days."""
        annual = compute_annual(compute_monthly(constant_months(range(1, 13), 2020), CFG), CFG, "auto")
        self.assertEqual((annual.hours_basis, annual.hours), ("calendar 2020", 8784))
        self.assertAlmostEqual(annual.e_ac_total_kwh, 3660.0)
        self.assertAlmostEqual(annual.cuf_pct, 3660.0 / (P * 8784) * 100.0)

    def test_generic_basis(self):
        """The generic basis always uses 8760 hours."""
        annual = compute_annual(compute_monthly(constant_months(range(1, 13), 2020), CFG), CFG, "generic")
        self.assertEqual((annual.hours_basis, annual.hours), ("generic", 8760))
        self.assertAlmostEqual(annual.e_ac_total_kwh, 3650.0)

    def test_partial_year_annualised(self):
        """Half a year is scaled up to a full one and flagged."""
        annual = compute_annual(compute_monthly(constant_months(range(1, 7), 2021), CFG), CFG, "auto")
        self.assertAlmostEqual(annual.e_ac_total_kwh, 3650.0)
        self.assertIn(FLAG_PARTIAL_YEAR, annual.flags)

    def test_multi_year_window(self):
        """Months from two years average per calendar month on a generic basis."""
        months = constant_months(range(7, 13), 2021, e_ac=10.0) + constant_months(range(1, 13), 2022, e_ac=20.0)
        annual = compute_annual(compute_monthly(months, CFG), CFG, "auto")
        self.assertEqual(annual.hours_basis, "generic")
        second_half = sum(calendar.monthrange(2021, m)[1] for m in range(7, 13))
        first_half = 365 - second_half
        self.assertAlmostEqual(annual.e_ac_total_kwh, 20.0 * first_half + 15.0 * second_half)

    def test_no_valid_months(self):
        """Without valid months the annual block is empty and flagged."""
        invalid = [MonthlySummary.from_daily_means(2021, 1, 1.0, 1.0, 1.0, valid=False)]
        annual = compute_annual(compute_monthly(invalid, CFG), CFG, "auto")
        self.assertIsNone(annual.e_ac_total_kwh)
        self.assertIsNone(annual.pr_pct)
        self.assertEqual(annual.flags, (FLAG_NO_VALID_MONTHS,))

    def test_unknown_basis(self):
        """Only auto and generic are accepted."""
        with self.assertRaises(ValueError):
            compute_annual([], CFG, "fiscal")


if __name__ == "__main__":
    unittest.main()
