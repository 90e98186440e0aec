"""
Report renderers. All three formats carry the same rounded numbers.

csv is a long table ``section,row,field,value,unit``; md reproduces the
monthly yield and efficiency tables plus the annual, correlation, impact and
benchmark blocks.
"""

import csv
import io
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import pandas as pd

from config import REPORT_CONFIG
from src.report.report_builder import clean_value
from src.utils.data_utils import format_number
from src.utils.file_utils import dump_json
from src.weather_stats.correlation import PLOT_COLUMNS

FORMATS = ("json", "csv", "md")
CSV_COLUMNS = ("section", "row", "field", "value", "unit")

YIELD_COLUMNS: Sequence[Tuple[str, str]] = (
    ("cell_temp_c", "T_cell (°C)"),
    ("e_ac_kwh", "E_AC (kWh)"),
    ("e_dc_kwh", "E_DC (kWh)"),
    ("y_a", "Y_A"),
    ("y_r", "Y_R"),
    ("y_f", "Y_F"),
    ("l_c", "L_C"),
    ("l_s", "L_S"),
)

EFFICIENCY_COLUMNS: Sequence[Tuple[str, str]] = (
    ("e_grid_kwh", "E_grid (kWh)"),
    ("eta_array_pct", "η_array (%)"),
    ("eta_inv_pct", "η_inv (%)"),
    ("capacity_factor_pct", "CF (%)"),
    ("pr_pct", "PR (%)"),
    ("eta_sys_pct", "η_sys (%)"),
)


def render_cell(value: Any) -> str:
    """Text form of a report value shared by the csv and md renderers."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        return format_number(value)
    if isinstance(value, list):
        return ";".join(render_cell(v) for v in value)
    return str(value)


def _row_id(item: Any, index: int) -> str:
    if isinstance(item, dict):
        if "year" in item and "month" in item:
            return f"{item['year']:04d}-{item['month']:02d}"
        if "month" in item:
            return str(item["month"])
        if "location" in item:
            return str(item["location"])
    return str(index)


def _is_scalar_list(value: Any) -> bool:
    return isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value)


def _flatten(obj: Any, field: str, row: str) -> Iterator[Tuple[str, str, Any]]:
    if isinstance(obj, dict):
        for key, value in obj.items():
            yield from _flatten(value, f"{field}.{key}" if field else key, row)
    elif isinstance(obj, list) and not _is_scalar_list(obj):
        for i, item in enumerate(obj):
            sub_row = _row_id(item, i)
            yield from _flatten(item, field if isinstance(item, dict) else f"{field}.{i}",
                                f"{row}/{sub_row}" if row else sub_row)
    else:
        yield row, field, obj


def to_json(report: Dict[str, Any]) -> str:
    return dump_json(report)


def to_csv(report: Dict[str, Any]) -> str:
    """Long-format CSV: one line per leaf value, unit looked up by field name."""
    units = report.get("units", {})
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for section, block in report.items():
        if section == "units":
            continue
        if not isinstance(block, (dict, list)):
            writer.writerow(["report", "", section, render_cell(block), units.get(section, "")])
            continue
        for row, field, value in _flatten(block, "", ""):
            leaf = field.rsplit(".", 1)[-1]
            writer.writerow([section, row, field, render_cell(value), units.get(leaf, "")])
    return buffer.getvalue()


def _md_table(headers: Sequence[str], rows: List[Sequence[str]]) -> List[str]:
    lines = ["| " + " | ".join(headers) + " |", "|" + "|".join("---" for _ in headers) + "|"]
    lines.extend("| " + " | ".join(row) + " |" for row in rows)
    return lines


def _monthly_table(monthly: List[Dict], columns: Sequence[Tuple[str, str]]) -> List[str]:
    rows = []
    for m in monthly:
        label = f"{m['year']:04d}-{m['month']:02d}"
        if not m["valid"]:
            rows.append([label] + ["invalid"] + [""] * (len(columns) - 1))
            continue
        rows.append([label] + [render_cell(m[name]) for name, _ in columns])
    return _md_table(["Month"] + [title for _, title in columns], rows)


def _key_values(block: Dict[str, Any], units: Dict[str, str], skip=()) -> List[str]:
    rows = []
    for key, value in block.items():
        if key in skip or isinstance(value, dict):
            continue
        if isinstance(value, list) and not _is_scalar_list(value):
            continue
        rows.append([key, render_cell(value), units.get(key, "")])
    return _md_table(["Field", "Value", "Unit"], rows)


def _flat_markdown(document: Dict[str, Any]) -> str:
    units = document.get("units", {})
    rows = []
    for section, block in document.items():
        if section == "units":
            continue
        for row, field, value in _flatten(block, "" if isinstance(block, (dict, list)) else section, ""):
            rows.append([section, row, field, render_cell(value), units.get(field.rsplit(".", 1)[-1], "")])
    return "\n".join(_md_table(["Section", "Row", "Field", "Value", "Unit"], rows)) + "\n"


def to_markdown(report: Dict[str, Any]) -> str:
    """
    Markdown document of the main report blocks. Documents other than a full
    analysis report are rendered as one flat table.
    """
    if "monthly" not in report:
        return _flat_markdown(report)
    units = report.get("units", {})
    lines = ["# PV performance report", "",
             f"Schema {report['schema_version']}, toolkit {report['toolkit_version']}", ""]

    monthly = report.get("monthly") or []
    lines += ["## Monthly energy yield and losses", ""] + _monthly_table(monthly, YIELD_COLUMNS) + [""]
    lines += ["## Monthly efficiency", ""] + _monthly_table(monthly, EFFICIENCY_COLUMNS) + [""]

    annual = report.get("annual") or {}
    lines += ["## Annual", ""] + _key_values(annual, units)
    lines += [""] + _key_values(annual.get("means", {}), units) + [""]

    correlation = report.get("correlation") or {}
    class_rows = [
        [name, render_cell(c["n_days"]), render_cell(c["mean_daily_e_ac_kwh"]),
         render_cell(c["mean_daily_h_poa_kwh_m2"]), render_cell(c["pearson_r_hourly"])]
        for name, c in (correlation.get("classes") or {}).items()
    ]
    lines += ["## Weather classes", ""]
    lines += _md_table(["Class", "Days", "E_AC (kWh/day)", "H_POA (kWh/m2/day)", "r (hourly)"], class_rows)
    lines += ["", f"Overall daily r: {render_cell(correlation.get('overall_daily_r'))}", ""]

    impact = report.get("impact")
    lines += ["## Impact", ""]
    lines += (_key_values(impact, units) if impact else ["Annual energy unavailable."]) + [""]

    bench_rows = [
        [metric, render_cell(b["value"]), b["rank_label"], render_cell(b["min"]),
         render_cell(b["median"]), render_cell(b["max"])]
        for metric, b in (report.get("benchmark") or {}).items() if b is not None
    ]
    lines += ["## Benchmark", ""]
    lines += _md_table(["Metric", "Value", "Rank", "Min", "Median", "Max"], bench_rows) + [""]

    quality = report.get("data_quality") or {}
    lines += ["## Data quality", ""] + _key_values(quality, units) + [""]
    return "\n".join(lines)


RENDERERS: Dict[str, Callable[[Dict[str, Any]], str]] = {
    "json": to_json,
    "csv": to_csv,
    "md": to_markdown,
}


def render(report: Dict[str, Any], fmt: str = "json") -> str:
    """
    Render a report.

    Raises:
        ValueError: If the format is unknown
    """
    if fmt not in RENDERERS:
        raise ValueError(f"unknown format {fmt!r}, expected one of {', '.join(FORMATS)}")
    return RENDERERS[fmt](report)


def plot_data_csv(frame: Optional[pd.DataFrame]) -> str:
    """Plot-data table as CSV with the numbers in report form."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(PLOT_COLUMNS)
    if frame is not None:
        for row in frame[PLOT_COLUMNS].itertuples(index=False):
            writer.writerow([render_cell(clean_value(v, REPORT_CONFIG["decimals"])) for v in row])
    return buffer.getvalue()
