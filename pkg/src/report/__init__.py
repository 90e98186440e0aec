"""
Report package: pipeline assembly, renderers and the cross-study benchmark.
"""

from src.report.benchmarks import (
    BENCHMARKS,
    BenchmarkEntry,
    ModuleType,
    benchmark_compare,
    benchmark_values,
    metric_position,
)
from src.report.formatters import FORMATS, plot_data_csv, render
from src.report.report_builder import UNITS, Analysis, analyze, build_report, numeric_fields, run_analysis

__all__ = [
    'Analysis',
    'BENCHMARKS',
    'BenchmarkEntry',
    'FORMATS',
    'ModuleType',
    'UNITS',
    'analyze',
    'benchmark_compare',
    'benchmark_values',
    'build_report',
    'metric_position',
    'numeric_fields',
    'plot_data_csv',
    'render',
    'run_analysis',
]
