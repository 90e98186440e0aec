"""
Monthly and annual metric tables built from monthly summaries.

Undefined or suspicious values never raise here: they are recorded as flags
on the row so one bad month does not hide the others.
"""

import calendar
import logging
from dataclasses import dataclass, fields
from typing import TYPE_CHECKING, Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import METRICS_CONFIG
from src.core_model.errors import DataError, UndefinedValueError
from src.core_model.system_config import SystemConfig
from src.metrics.performance import (
    HOURS_PER_LEAP_YEAR,
    HOURS_PER_YEAR,
    array_efficiency,
    array_yield,
    capacity_factor_pct,
    capture_loss,
    cuf,
    final_yield,
    inverter_efficiency,
    performance_ratio,
    reference_yield,
    system_efficiency,
    system_loss,
)

if TYPE_CHECKING:
    from src.ingestion.aggregation import MonthlySummary

logger = logging.getLogger(__name__)

FLAG_INVALID_MONTH = "invalid_month"
FLAG_UNDEFINED_PR = "undefined_pr"
FLAG_UNDEFINED_EFFICIENCY = "undefined_efficiency"
FLAG_CAPTURE_LOSS_NEGATIVE = "capture_loss_negative"
FLAG_SYSTEM_LOSS_NEGATIVE = "system_loss_negative"
FLAG_METERING_ERROR = "metering_error"
FLAG_PR_ABOVE_100 = "pr_above_100"
FLAG_PARTIAL_YEAR = "partial_year_annualised"
FLAG_NO_VALID_MONTHS = "no_valid_months"

# fields averaged into the annual block, in report column order
AVERAGED_FIELDS = (
    "cell_temp_c", "e_ac_kwh", "e_dc_kwh", "y_a", "y_r", "y_f", "l_c", "l_s",
    "eta_array_pct", "eta_inv_pct", "capacity_factor_pct", "pr_pct", "eta_sys_pct",
)


@dataclass(frozen=True)
class MonthlyMetrics:
    """One row of the monthly yield, loss and efficiency tables."""

    year: int
    month: int
    valid: bool
    n_valid_days: int
    cell_temp_c: Optional[float] = None
    e_ac_kwh: Optional[float] = None
    e_dc_kwh: Optional[float] = None
    y_a: Optional[float] = None
    y_r: Optional[float] = None
    y_f: Optional[float] = None
    l_c: Optional[float] = None
    l_s: Optional[float] = None
    e_grid_kwh: Optional[float] = None
    eta_array_pct: Optional[float] = None
    eta_inv_pct: Optional[float] = None
    capacity_factor_pct: Optional[float] = None
    pr_pct: Optional[float] = None
    eta_sys_pct: Optional[float] = None
    h_poa_kwh_m2: Optional[float] = None
    poa_source: Optional[str] = None
    export_source: Optional[str] = None
    flags: Tuple[str, ...] = ()

    @property
    def label(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"

    def to_dict(self) -> Dict:
        data = {f.name: getattr(self, f.name) for f in fields(self)}
        data["flags"] = list(self.flags)
        return data


@dataclass(frozen=True)
class AnnualMetrics:
    """Annual totals and the means of the valid monthly rows."""

    start: Optional[str]
    end: Optional[str]
    n_months: int
    n_valid_months: int
    hours_basis: str
    hours: int
    e_ac_total_kwh: Optional[float]
    e_dc_total_kwh: Optional[float]
    e_grid_total_kwh: Optional[float]
    cuf_pct: Optional[float]
    means: Dict[str, Optional[float]]
    flags: Tuple[str, ...] = ()

    def __getattr__(self, name: str):
        # expose monthly means as attributes (annual.pr_pct, annual.y_f, ...)
        means = self.__dict__.get("means", {})
        if name in means:
            return means[name]
        raise AttributeError(name)

    def to_dict(self) -> Dict:
        data = {f.name: getattr(self, f.name) for f in fields(self) if f.name != "means"}
        data["flags"] = list(self.flags)
        data["means"] = dict(self.means)
        return data


def _tolerance(meter_tolerance: Optional[float]) -> float:
    return METRICS_CONFIG["meter_tolerance"] if meter_tolerance is None else meter_tolerance


def compute_month(summary: "MonthlySummary", cfg: SystemConfig,
                  meter_tolerance: Optional[float] = None) -> MonthlyMetrics:
    """
    Metrics for one monthly summary.

    Args:
        summary: Monthly summary
        cfg: System configuration
        meter_tolerance: Relative tolerance before flagging E_AC > E_DC

    Returns:
        MonthlyMetrics; invalid months carry flags and no metric values
    """
    tolerance = _tolerance(meter_tolerance)
    base = dict(year=summary.year, month=summary.month, n_valid_days=summary.n_valid_days)
    if not summary.valid or summary.e_ac_mean_kwh is None:
        return MonthlyMetrics(valid=False, flags=(FLAG_INVALID_MONTH,), **base)

    flags: List[str] = []
    e_dc = summary.e_dc_mean_kwh
    e_ac = summary.e_ac_mean_kwh
    h_poa = summary.h_poa_mean_kwh_m2

    y_a = array_yield(e_dc, cfg.p_rated_kwp)
    y_f = final_yield(e_ac, cfg.p_rated_kwp)
    y_r = reference_yield(h_poa, cfg.g_o_kw_m2)
    l_c = capture_loss(y_r, y_a)
    l_s = system_loss(y_a, y_f)
    if l_c < 0:
        flags.append(FLAG_CAPTURE_LOSS_NEGATIVE)
    if l_s < -tolerance * y_a:
        flags.append(FLAG_SYSTEM_LOSS_NEGATIVE)

    pr = None
    try:
        pr = performance_ratio(y_f, y_r)
        if pr > 100.0:
            flags.append(FLAG_PR_ABOVE_100)
    except UndefinedValueError:
        flags.append(FLAG_UNDEFINED_PR)

    eta_array = eta_sys = None
    try:
        eta_array = array_efficiency(e_dc, h_poa, cfg.array_area_m2)
        eta_sys = system_efficiency(e_ac, h_poa, cfg.array_area_m2)
    except UndefinedValueError:
        flags.append(FLAG_UNDEFINED_EFFICIENCY)

    eta_inv = None
    try:
        eta_inv = inverter_efficiency(e_ac, e_dc)
        if eta_inv > 100.0 * (1.0 + tolerance):
            flags.append(FLAG_METERING_ERROR)
    except DataError:
        flags.append(FLAG_METERING_ERROR)
    except UndefinedValueError:
        flags.append(FLAG_UNDEFINED_EFFICIENCY)

    days_in_month = calendar.monthrange(summary.year, summary.month)[1]
    e_grid = summary.e_export_mean_kwh * days_in_month if summary.e_export_mean_kwh is not None else None

    if flags:
        logger.warning(f"Month {summary.label}: {', '.join(flags)}")

    return MonthlyMetrics(
        valid=True,
        cell_temp_c=summary.cell_temp_c,
        e_ac_kwh=e_ac,
        e_dc_kwh=e_dc,
        y_a=y_a,
        y_r=y_r,
        y_f=y_f,
        l_c=l_c,
        l_s=l_s,
        e_grid_kwh=e_grid,
        eta_array_pct=eta_array,
        eta_inv_pct=eta_inv,
        capacity_factor_pct=capacity_factor_pct(e_ac, cfg.p_rated_kwp),
        pr_pct=pr,
        eta_sys_pct=eta_sys,
        h_poa_kwh_m2=h_poa,
        poa_source=summary.poa_source,
        export_source=summary.export_source,
        flags=tuple(flags),
        **base,
    )


def compute_monthly(summaries: Sequence["MonthlySummary"], cfg: SystemConfig,
                    meter_tolerance: Optional[float] = None) -> List[MonthlyMetrics]:
    """
    Metrics for each monthly summary, in input order.

    Args:
        summaries: Monthly summaries
        cfg: System configuration
        meter_tolerance: Relative tolerance before flagging E_AC > E_DC

    Returns:
        One MonthlyMetrics per summary; invalid months are present without metrics
    """
    rows = [compute_month(s, cfg, meter_tolerance) for s in summaries]
    logger.info(f"Computed metrics for {sum(r.valid for r in rows)} of {len(rows)} months")
    return rows


def _hours_basis(valid: Sequence[MonthlyMetrics], hours_basis: str) -> Tuple[str, int]:
    if hours_basis == "generic":
        return "generic", HOURS_PER_YEAR
    years = {m.year for m in valid}
    if len(years) == 1:
        year = years.pop()
        if calendar.isleap(year):
            return f"calendar {year}", HOURS_PER_LEAP_YEAR
        return f"calendar {year}", HOURS_PER_YEAR
    return "generic", HOURS_PER_YEAR


def compute_annual(monthly: Sequence[MonthlyMetrics], cfg: SystemConfig,
                   hours_basis: Optional[str] = None) -> AnnualMetrics:
    """
    Annual block from monthly rows.

    Annual energies are built per calendar month as mean daily energy times
    days in month, averaging a calendar month that appears in several years.
    A window that misses calendar months is scaled up to a full year and
    flagged.

    Args:
        monthly: Monthly metric rows
        cfg: System configuration
        hours_basis: "auto" (8784 h for a single leap calendar year) or "generic" (8760 h)

    Returns:
        AnnualMetrics
    """
    hours_basis = hours_basis or METRICS_CONFIG["hours_basis"]
    if hours_basis not in ("auto", "generic"):
        raise ValueError(f"hours_basis must be 'auto' or 'generic', got {hours_basis!r}")

    valid = [m for m in monthly if m.valid]
    labels = [m.label for m in monthly]
    start = min(labels) if labels else None
    end = max(labels) if labels else None

    if not valid:
        logger.warning("No valid months; annual metrics unavailable")
        return AnnualMetrics(
            start=start, end=end, n_months=len(monthly), n_valid_months=0,
            hours_basis=hours_basis, hours=HOURS_PER_YEAR,
            e_ac_total_kwh=None, e_dc_total_kwh=None, e_grid_total_kwh=None, cuf_pct=None,
            means={name: None for name in AVERAGED_FIELDS}, flags=(FLAG_NO_VALID_MONTHS,),
        )

    basis_label, hours = _hours_basis(valid, hours_basis)
    february_days = 29 if hours == HOURS_PER_LEAP_YEAR else 28

    def days_in(month: int) -> int:
        return february_days if month == 2 else calendar.monthrange(2001, month)[1]

    by_month: Dict[int, List[MonthlyMetrics]] = {}
    for m in valid:
        by_month.setdefault(m.month, []).append(m)

    def annual_total(attr: str) -> Optional[float]:
        total = 0.0
        for month, rows in by_month.items():
            values = [getattr(r, attr) for r in rows if getattr(r, attr) is not None]
            if not values:
                return None
            total += float(np.mean(values)) * days_in(month)
        return total

    e_ac_total = annual_total("e_ac_kwh")
    e_dc_total = annual_total("e_dc_kwh")
    e_grid_total = None
    grid = [r for r in valid if r.e_grid_kwh is not None]
    if len(grid) == len(valid):
        e_grid_total = 0.0
        for month, rows in by_month.items():
            e_grid_total += float(np.mean([r.e_grid_kwh / calendar.monthrange(r.year, r.month)[1]
                                           for r in rows])) * days_in(month)

    flags: List[str] = []
    covered_days = sum(days_in(month) for month in by_month)
    year_days = hours // 24
    if covered_days < year_days:
        scale = year_days / covered_days
        e_ac_total = e_ac_total * scale if e_ac_total is not None else None
        e_dc_total = e_dc_total * scale if e_dc_total is not None else None
        e_grid_total = e_grid_total * scale if e_grid_total is not None else None
        flags.append(FLAG_PARTIAL_YEAR)
        logger.warning(f"Only {len(by_month)} calendar months valid; annual totals scaled by {scale:.3f}")

    means = {}
    for name in AVERAGED_FIELDS:
        values = [getattr(m, name) for m in valid if getattr(m, name) is not None]
        means[name] = float(np.mean(values)) if values else None

    cuf_pct = cuf(e_ac_total, cfg.p_rated_kwp, hours) if e_ac_total is not None else None

    return AnnualMetrics(
        start=start,
        end=end,
        n_months=len(monthly),
        n_valid_months=len(valid),
        hours_basis=basis_label,
        hours=hours,
        e_ac_total_kwh=e_ac_total,
        e_dc_total_kwh=e_dc_total,
        e_grid_total_kwh=e_grid_total,
        cuf_pct=cuf_pct,
        means=means,
        flags=tuple(flags),
    )
