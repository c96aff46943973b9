"""
Figure Command
Data tables behind the published curves
"""
import argparse
import logging

import pandas as pd

from commands.common import EXIT_OK, emit, parse_assignments
from services.figures import build_figure, get_available_figures

logger = logging.getLogger(__name__)


def run_figure(args: argparse.Namespace) -> int:
    if args.list or not args.name:
        frame = pd.DataFrame([{"figure": name, "description": info["description"], "columns": info["columns"]}
                              for name, info in get_available_figures().items()])
        print(frame.to_string(index=False))
        return EXIT_OK

    figure = build_figure(args.name, parse_assignments(args.set))
    parameters = dict(figure.parameters, figure=figure.name)
    emit(figure.frame, figure.name, parameters, args)
    return EXIT_OK


def add_parsers(subparsers):
    parser = subparsers.add_parser("figure", help="Data table of a published figure",
                                   description="Figure defaults are the published parameters; the global "
                                               "network flags do not apply, use --set instead.")
    parser.add_argument("name", nargs="?", help="Figure name (fig1..fig7, cond_outage)")
    parser.add_argument("--set", action="append", metavar="KEY=VALUE",
                        help="Override a figure parameter (repeatable)")
    parser.add_argument("--list", action="store_true", help="List the available figures")
    parser.set_defaults(func=run_figure)
