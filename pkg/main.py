"""Main entry point for the PV performance toolkit."""
import argparse
import json
import sys
from dataclasses import replace
from datetime import date
from pathlib import Path
from typing import Any, Dict, List, Optional

# Add the project root to the Python path
sys.path.insert(0, str(Path(__file__).resolve().parent))

from config.config import LOG_FILE, LOG_LEVEL, REPORT_CONFIG, logger
from src.core_model.errors import ConfigError, DataError, PVToolkitError
from src.core_model.system_config import FinanceConfig, ToolkitConfig, config_to_dict, load_config
from src.core_model.validation import validate_all
from src.impact.evaluation import evaluate_impact
from src.impact.finance import fit_discount_rate
from src.ingestion.aggregation import aggregate_daily
from src.ingestion.alignment import HALF_HOUR, align
from src.ingestion.loaders import LoaderFactory, parse_generation_csv, parse_weather_csv
from src.ingestion.writers import write_weather_csv
from src.report.benchmarks import BENCHMARKS, benchmark_values
from src.report.formatters import FORMATS, plot_data_csv, render
from src.report.report_builder import analyze, clean_value
from src.solar_geometry.sun_position import solar_positions
from src.solar_geometry.transposition import transpose_series
from src.synth.config import make_synth_config
from src.synth.generator import generate
from src.utils.file_utils import atomic_write_bytes, atomic_write_text, load_json
from src.utils.logging_utils import setup_logging
from src.weather_stats.correlation import correlation_report

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_CONFIG = 3


class CliParser(argparse.ArgumentParser):
    """ArgumentParser reporting usage errors with the toolkit's exit code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command line arguments."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, help="JSON config file (defaults when omitted)")
    common.add_argument("--out", type=str, help="Output file (stdout when omitted)")
    common.add_argument("--format", choices=FORMATS, default="json", help="Output format")
    common.add_argument("--lenient", action="store_true", help="Ignore unknown config keys")
    common.add_argument("--log-level", type=str, default=None, help="Logging level")

    parser = CliParser(prog="pvperf", description="Rooftop PV performance, economic and environmental analysis")
    subparsers = parser.add_subparsers(dest="command", required=True, help="Command to run")

    validate_parser = subparsers.add_parser("validate", parents=[common],
                                            help="Check a configuration file and, optionally, data files")
    validate_parser.add_argument("--data", nargs="+", default=[], metavar="CSV",
                                 help="generation or weather CSV files to check, schema picked from the header")

    transpose_parser = subparsers.add_parser("transpose", parents=[common],
                                             help="Fill gpoa_w_m2 of a weather file by transposition")
    transpose_parser.add_argument("--weather", required=True, help="weather.csv path")
    transpose_parser.add_argument("--overwrite", action="store_true", help="Replace measured gpoa values too")

    for name, help_text in (("analyze", "Full performance, correlation and impact report"),
                            ("correlate", "Weather-class correlation statistics")):
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("--generation", required=True, help="generation.csv path")
        sub.add_argument("--weather", required=True, help="weather.csv path")
        sub.add_argument("--plot-data", type=str, help="Write hourly plot data CSV to this path")
        if name == "analyze":
            sub.add_argument("--rate", type=float, help="Discount rate override")

    impact_parser = subparsers.add_parser("impact", parents=[common], help="Economic and CO2 evaluation")
    impact_parser.add_argument("--report", type=str, help="analyze JSON report supplying annual energy")
    impact_parser.add_argument("--energy", type=float, help="Annual AC energy, kWh")
    impact_parser.add_argument("--export", type=float, help="Annual grid export, kWh")
    impact_parser.add_argument("--rate", type=float, help="Discount rate override")
    impact_parser.add_argument("--tariff", type=float, help="Tariff per kWh override")
    impact_parser.add_argument("--degradation", type=float, help="Yearly degradation rate override")
    impact_parser.add_argument("--fit-npv", type=float, help="Fit the discount rate reproducing this NPV")

    synth_parser = subparsers.add_parser("synth", parents=[common],
                                         help="Write a synthetic generation.csv and weather.csv pair")
    synth_parser.add_argument("--seed", type=int, help="Random seed")
    synth_parser.add_argument("--days", type=int, help="Number of days")
    synth_parser.add_argument("--start", type=date.fromisoformat, help="First local date, YYYY-MM-DD")
    synth_parser.add_argument("--no-gpoa", action="store_true", help="Leave gpoa_w_m2 empty")
    synth_parser.add_argument("--progress", action="store_true", help="Show a progress bar")
    synth_parser.add_argument("--settings", type=str, help="JSON file of generator settings, flags take precedence")

    bench_parser = subparsers.add_parser("benchmark", parents=[common],
                                         help="Rank annual PR, CUF and system efficiency against published systems")
    bench_parser.add_argument("--report", type=str, help="analyze JSON report supplying annual metrics")
    bench_parser.add_argument("--pr", type=float, help="Annual performance ratio, %%")
    bench_parser.add_argument("--cuf", type=float, help="Capacity utilization factor, %%")
    bench_parser.add_argument("--eta-sys", type=float, help="System efficiency, %%")

    return parser.parse_args(argv)


def _load_toolkit_config(args: argparse.Namespace) -> ToolkitConfig:
    if args.config:
        return load_config(args.config, lenient=args.lenient)
    return ToolkitConfig()


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        atomic_write_text(text, out)
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_document(document: Dict[str, Any], args: argparse.Namespace) -> None:
    _emit(render(clean_value(document, REPORT_CONFIG["decimals"]), args.format), args.out)


def _load_report(path: str) -> Dict[str, Any]:
    try:
        return load_json(path)
    except FileNotFoundError as e:
        raise DataError("report file not found", module="cli_report", path=path) from e
    except json.JSONDecodeError as e:
        raise DataError(f"report is not valid JSON: {e.msg}", module="cli_report", path=path, line=e.lineno) from e


def _check_data_file(path: str) -> Dict[str, Any]:
    loader = LoaderFactory.get_loader(path)
    series = loader.load(path)
    return {
        "file": path,
        "schema": loader.source_name,
        "records": len(series),
        "gaps": len(series.gaps),
        "missing_hours": sum(g.missing_hours for g in series.gaps),
    }


def cmd_validate(args: argparse.Namespace) -> int:
    config = _load_toolkit_config(args)
    report = validate_all(config)
    document = {**report.to_dict(), "config": config_to_dict(config)}
    if args.data:
        document["data"] = [_check_data_file(path) for path in args.data]
    _emit_document(document, args)
    if not report.ok:
        logger.warning(f"Config has {len(report.violations)} violation(s)")
        return EXIT_CONFIG
    return EXIT_OK


def cmd_transpose(args: argparse.Namespace) -> int:
    cfg = _load_toolkit_config(args).system
    weather = parse_weather_csv(args.weather)
    records = list(weather)
    # hour-ending stamps: geometry at the interval midpoint
    midpoint = solar_positions(cfg, [r.timestamp - HALF_HOUR for r in records])
    poa = transpose_series([r.ghi_w_m2 for r in records], [r.dni_w_m2 for r in records],
                           [r.dhi_w_m2 for r in records], midpoint["zenith_deg"].to_numpy(),
                           midpoint["azimuth_deg"].to_numpy(), cfg)
    filled = 0
    out = []
    for record, value in zip(records, poa.tolist()):
        if record.gpoa_w_m2 is None or args.overwrite:
            record = replace(record, gpoa_w_m2=round(value, 2))
            filled += 1
        out.append(record)
    logger.info(f"Filled gpoa for {filled} of {len(records)} records")
    data = write_weather_csv(out, cfg.utc_offset_h)
    if args.out:
        atomic_write_bytes(data, args.out)
    else:
        sys.stdout.write(data.decode("utf-8"))
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> int:
    config = _load_toolkit_config(args)
    analysis = analyze(config, args.generation, args.weather, rate=args.rate)
    if args.plot_data:
        atomic_write_text(plot_data_csv(analysis.correlation.plot_data), args.plot_data)
    _emit(render(analysis.report, args.format), args.out)
    return EXIT_OK


def cmd_correlate(args: argparse.Namespace) -> int:
    config = _load_toolkit_config(args)
    series = align(parse_generation_csv(args.generation), parse_weather_csv(args.weather), config.system)
    correlation = correlation_report(series, daily=aggregate_daily(series))
    if args.plot_data:
        atomic_write_text(plot_data_csv(correlation.plot_data), args.plot_data)
    _emit_document(correlation.to_dict(), args)
    return EXIT_OK


def _finance_overrides(fin: FinanceConfig, args: argparse.Namespace) -> FinanceConfig:
    updates = {"tariff_per_kwh": args.tariff, "degradation_rate": args.degradation}
    updates = {k: v for k, v in updates.items() if v is not None}
    if not updates:
        return fin
    try:
        return FinanceConfig.model_validate({**fin.model_dump(), **updates})
    except ValueError as e:
        raise ConfigError(f"invalid finance override: {e}", module="impact") from e


def cmd_impact(args: argparse.Namespace) -> int:
    config = _load_toolkit_config(args)
    energy, export = args.energy, args.export
    if args.report:
        annual = _load_report(args.report).get("annual") or {}
        energy = annual.get("e_ac_total_kwh") if energy is None else energy
        export = annual.get("e_grid_total_kwh") if export is None else export
    if energy is None:
        raise ConfigError("annual energy required: pass --energy or --report", module="impact")
    if export is None:
        export = energy * config.system.grid_export_fraction
        logger.info(f"Annual export estimated as {export:.2f} kWh from grid_export_fraction")

    fin = _finance_overrides(config.finance, args)
    rate = args.rate
    if args.fit_npv is not None:
        rate = fit_discount_rate(fin, energy, export, args.fit_npv)
    result = evaluate_impact(fin, config.emissions, config.system, energy, export, rate=rate)
    _emit_document(result.to_dict(), args)
    return EXIT_OK


def _load_synth_settings(path: Optional[str]) -> Dict[str, Any]:
    if not path:
        return {}
    try:
        settings = load_json(path)
    except FileNotFoundError as e:
        raise ConfigError("synth settings file not found", module="synth", path=path) from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"synth settings are not valid JSON: {e.msg}", module="synth", path=path,
                          line=e.lineno) from e
    if not isinstance(settings, dict):
        raise ConfigError("synth settings must be a JSON object", module="synth", path=path)
    return settings


def cmd_synth(args: argparse.Namespace) -> int:
    config = _load_toolkit_config(args)
    scfg = make_synth_config({
        **_load_synth_settings(args.settings),
        "seed": args.seed,
        "n_days": args.days,
        "start_date": args.start,
        "include_gpoa": False if args.no_gpoa else None,
    })
    generation, weather = generate(config.system, scfg, progress=args.progress)
    out_dir = Path(args.out or ".")
    atomic_write_bytes(generation, out_dir / "generation.csv")
    atomic_write_bytes(weather, out_dir / "weather.csv")
    logger.info(f"Wrote synthetic dataset to {out_dir}")
    return EXIT_OK


def cmd_benchmark(args: argparse.Namespace) -> int:
    pr, cuf, eta_sys = args.pr, args.cuf, args.eta_sys
    if args.report:
        annual = _load_report(args.report).get("annual") or {}
        means = annual.get("means") or {}
        pr = means.get("pr_pct") if pr is None else pr
        cuf = annual.get("cuf_pct") if cuf is None else cuf
        eta_sys = means.get("eta_sys_pct") if eta_sys is None else eta_sys
    block = benchmark_values(pr, cuf, eta_sys)
    _emit_document({"benchmark": block, "entries": [e.to_dict() for e in BENCHMARKS]}, args)
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "transpose": cmd_transpose,
    "analyze": cmd_analyze,
    "correlate": cmd_correlate,
    "impact": cmd_impact,
    "synth": cmd_synth,
    "benchmark": cmd_benchmark,
}


def _report_error(error: PVToolkitError) -> None:
    sys.stderr.write(json.dumps({"error": error.to_dict()}) + "\n")


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    args = parse_arguments(argv)
    setup_logging(args.log_level or LOG_LEVEL, LOG_FILE)
    logger.info(f"Running command: {args.command}")

    try:
        return COMMANDS[args.command](args)
    except ConfigError as e:
        _report_error(e)
        return EXIT_CONFIG
    except PVToolkitError as e:
        _report_error(e)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
