"""
Cross-study comparison of annual PR, CUF and system efficiency against
published rooftop PV systems.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

Span = Optional[Tuple[float, float]]

METRICS = ("pr_pct", "cuf_pct", "eta_sys_pct")


class ModuleType(str, Enum):
    MONO_SI = "mono-Si"
    POLY_SI = "poly-Si"
    MIXED = "mixed"


def _span(low: Optional[float], high: Optional[float] = None) -> Span:
    if low is None:
        return None
    return (float(low), float(low if high is None else high))


@dataclass(frozen=True)
class BenchmarkEntry:
    """
    One published system. Metric values are (low, high) spans; a point
    value has low == high.
    """

    location: str
    capacity_kwp: float
    pr_pct: Span
    cuf_pct: Span
    module_type: ModuleType
    eta_sys_pct: Span
    citation: Optional[int] = None

    def __post_init__(self):
        for name in METRICS:
            span = getattr(self, name)
            if span is not None and span[0] > span[1]:
                raise ValueError(f"{self.location}: {name} range {span} is not ordered low <= high")

    def value(self, metric: str) -> Optional[float]:
        """Point value of a metric, the midpoint for ranges."""
        span = getattr(self, metric)
        return None if span is None else (span[0] + span[1]) / 2.0

    def is_point(self, metric: str) -> bool:
        span = getattr(self, metric)
        return span is not None and span[0] == span[1]

    def to_dict(self) -> Dict:
        return {
            "location": self.location,
            "capacity_kwp": self.capacity_kwp,
            "pr_pct": list(self.pr_pct) if self.pr_pct else None,
            "cuf_pct": list(self.cuf_pct) if self.cuf_pct else None,
            "module_type": self.module_type.value,
            "eta_sys_pct": list(self.eta_sys_pct) if self.eta_sys_pct else None,
            "citation": self.citation,
        }


PRESENT_STUDY = "Present Study"

BENCHMARKS: Tuple[BenchmarkEntry, ...] = (
    BenchmarkEntry("Kuala Terengganu, Malaysia", 7.8, _span(75.72), _span(13, 16),
                   ModuleType.MONO_SI, _span(10, 12), 38),
    BenchmarkEntry("Jakarta, Indonesia", 5.0, _span(76.07), _span(11.13), ModuleType.POLY_SI, None, 39),
    BenchmarkEntry("Hue, Vietnam", 1.32, _span(78.11), _span(15.07), ModuleType.POLY_SI, _span(12.89), 40),
    BenchmarkEntry("Cebu, Philippines", 8.36, _span(40.1, 77.8), _span(18.96), ModuleType.POLY_SI, None, 41),
    BenchmarkEntry("Tak province, Thailand", 3.5, _span(59, 76.4), None, ModuleType.POLY_SI, None, 42),
    BenchmarkEntry("Northern India", 5.0, _span(76.97), _span(16.39), ModuleType.POLY_SI, _span(10.02), 43),
    BenchmarkEntry("Male, Maldives", 6.6, _span(81.56), _span(18.89), ModuleType.POLY_SI, _span(13.87), 44),
    BenchmarkEntry("Central Java, Indonesia", 30.0, _span(79.40), None, ModuleType.POLY_SI, None, 45),
    BenchmarkEntry("Mae Hong Son, Thailand", 11.0, _span(73.45), _span(14), ModuleType.MIXED, _span(10.41), 46),
    BenchmarkEntry("Singapore", 142.5, _span(81.00), _span(15.70), ModuleType.POLY_SI, _span(11.20), 47),
    BenchmarkEntry("Norway", 2.07, _span(83.03), _span(10.58), ModuleType.MIXED, _span(11.60), 48),
    BenchmarkEntry("Port Elizabeth, South Africa", 3.2, _span(64.30), _span(20.41), ModuleType.POLY_SI, None, 49),
    BenchmarkEntry("Turkey", 2.73, _span(72), _span(15.69), ModuleType.POLY_SI, None, 50),
    BenchmarkEntry("Ireland", 1.72, _span(81.50), _span(10.10), ModuleType.MONO_SI, _span(13.30), 51),
    BenchmarkEntry(PRESENT_STUDY, 2.72, _span(77.10), _span(15.52), ModuleType.POLY_SI, _span(13.00)),
)


def metric_position(value: float, entries: Sequence[BenchmarkEntry], metric: str) -> Dict:
    """
    Where a value falls among the entries reporting a metric.

    The rank counts entries whose value (range midpoint) is at or below
    ``value``. Min, median and max are taken over point values only.

    Args:
        value: Value to place
        entries: Benchmark entries
        metric: One of pr_pct, cuf_pct, eta_sys_pct

    Returns:
        Dict with value, rank, n, rank_label, percentile, min, median, max
    """
    values = [e.value(metric) for e in entries if e.value(metric) is not None]
    points = [e.value(metric) for e in entries if e.is_point(metric)]
    rank = sum(v <= value for v in values)
    n = len(values)
    return {
        "value": value,
        "rank": rank,
        "n": n,
        "rank_label": f"{rank}/{n}",
        "percentile": rank / n * 100.0 if n else None,
        "min": float(np.min(points)) if points else None,
        "median": float(np.median(points)) if points else None,
        "max": float(np.max(points)) if points else None,
    }


def benchmark_values(pr_pct: Optional[float] = None, cuf_pct: Optional[float] = None,
                     eta_sys_pct: Optional[float] = None,
                     entries: Sequence[BenchmarkEntry] = BENCHMARKS) -> Dict:
    """Benchmark block for raw metric values; absent values are skipped."""
    block = {}
    for metric, value in zip(METRICS, (pr_pct, cuf_pct, eta_sys_pct)):
        block[metric] = None if value is None else metric_position(value, entries, metric)
    return block


def benchmark_compare(annual, entries: Sequence[BenchmarkEntry] = BENCHMARKS) -> Dict:
    """
    Place a system's annual PR, CUF and system efficiency among published systems.

    Args:
        annual: AnnualMetrics of the analysed system
        entries: Benchmark entries (the embedded table by default)

    Returns:
        Dict keyed by metric, each a metric_position block or None when the
        annual value is unavailable
    """
    block = benchmark_values(annual.pr_pct, annual.cuf_pct, annual.eta_sys_pct, entries)
    placed = ", ".join(f"{m} {b['rank_label']}" for m, b in block.items() if b is not None)
    logger.info(f"Benchmark ranks: {placed or 'no annual metrics'}")
    return block
