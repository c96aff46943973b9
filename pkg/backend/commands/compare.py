"""
Compare Commands
`compare` runs an analytic-versus-simulation check, `history` lists the saved runs
"""
import argparse
import logging

import pandas as pd

import config
from commands.common import EXIT_COMPARISON, EXIT_OK, emit, settings_from_args
from result_displays import format_report, format_table, report_frame, report_parameters
from services.checks import CHECKS, execute_check, get_available_checks

logger = logging.getLogger(__name__)

# checks whose reference model has a Rayleigh link distance
RANDOM_DISTANCE_CHECKS = ("random_distance", "independent_mean_delay")


def check_arguments(check_id: str, settings: dict) -> dict:
    """
    Keyword arguments of a check from the merged settings

    Network keys replace the check's reference parameters only when given.
    """
    if check_id not in CHECKS:
        raise ValueError(f"Check '{check_id}' not found. Available checks: {list(CHECKS.keys())}")
    if CHECKS[check_id]['category'] == 'analytic':
        return {}

    kwargs = {"seed": settings["seed"], "workers": settings["workers"]}
    for key in ("n_realizations", "window_radius"):
        if settings.get(key) is not None:
            kwargs[key] = settings[key]
    if config.has_network(settings):
        if check_id in RANDOM_DISTANCE_CHECKS:
            kwargs["model"] = config.delay_model(settings, rayleigh=True)
        else:
            kwargs["params"] = config.network_params(settings)
    return kwargs


def _save(report: dict, args: argparse.Namespace) -> int:
    import database
    import database_helpers

    if args.db:
        database.configure(args.db)
    return database_helpers.save_comparison_to_database(report, notes=args.notes)


def run_compare(args: argparse.Namespace) -> int:
    if args.list or not args.check:
        frame = pd.DataFrame([{"check": name, **info} for name, info in get_available_checks().items()])
        print(frame.to_string(index=False))
        return EXIT_OK

    settings = settings_from_args(args)
    report = execute_check(args.check, **check_arguments(args.check, settings))

    if args.out is None and args.format == "csv":
        print(format_report(report))
    else:
        emit(report_frame(report), args.check, report_parameters(report), args)

    if args.save:
        run_id = _save(report, args)
        logger.info(f"[CLI] Saved comparison run {run_id}")

    if report["overall_result"] == "FAIL":
        logger.warning(f"[CLI] {args.check} failed: at least one quantity outside tolerance")
        return EXIT_COMPARISON
    return EXIT_OK


def run_history(args: argparse.Namespace) -> int:
    import database
    from result_displays.comparison_display import display_comparison_run, history_frame

    if args.db:
        database.configure(args.db)

    if args.delete is not None:
        if not database.delete_comparison_run(args.delete):
            raise ValueError(f"comparison run {args.delete} not found")
        logger.info(f"[DB] Deleted comparison run {args.delete}")
        return EXIT_OK

    if args.show is not None:
        run = display_comparison_run(args.show)
        if run is None:
            raise ValueError(f"comparison run {args.show} not found")
        print(f"run {run['run_id']}: {run['check_name']} {run['overall_result']} "
              f"(seed {run['seed']}, {run['run_date']})")
        if run["notes"]:
            print(f"notes: {run['notes']}")
        for key, value in run["parameters"].items():
            print(f"  {key} = {value}")
        if not run["results"].empty:
            print(format_table(run["results"]))
        return EXIT_OK

    frame = history_frame(limit=args.limit, check_name=args.check)
    if frame.empty:
        print("no saved comparison runs")
    else:
        print(format_table(frame))
    return EXIT_OK


def add_parsers(subparsers):
    parser = subparsers.add_parser("compare", help="Analytic result against the Monte Carlo oracle")
    parser.add_argument("check", nargs="?", help="Check name (see --list)")
    parser.add_argument("--list", action="store_true", help="List the available checks")
    parser.add_argument("--save", action="store_true", help="Store the report in the run database")
    parser.add_argument("--notes", help="Notes stored with --save")
    parser.set_defaults(func=run_compare)

    history = subparsers.add_parser("history", help="Saved comparison runs")
    history.add_argument("--limit", type=int, default=50, help="Number of runs listed (default: 50)")
    history.add_argument("--check", help="Only runs of this check")
    history.add_argument("--show", type=int, metavar="ID", help="Show one run with its results")
    history.add_argument("--delete", type=int, metavar="ID", help="Delete one run")
    history.set_defaults(func=run_history)
