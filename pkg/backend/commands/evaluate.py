"""
Evaluate Commands
`eval` computes analytic quantities at one parameter point, `curve` sweeps them over a grid
"""
import argparse
import logging

import pandas as pd

import config
from commands.common import EXIT_OK, emit, parameter_block, parse_grid, settings_from_args
from commands.quantities import QUANTITIES, add_quantity_options, compute, get_available_quantities

logger = logging.getLogger(__name__)

# sweep axis -> settings key or quantity option
SWEEP_AXES = {
    "p": "p",
    "delta": "delta",
    "lambda": "lambda",
    "theta": "theta",
    "r": "r",
    "n": "n",
    "nu": "nu",
    "theta_bar": "theta_bar",
}
OPTION_AXES = ("n", "nu", "theta_bar")


def _list_quantities():
    frame = pd.DataFrame([{"quantity": name, "description": text}
                          for name, text in get_available_quantities().items()])
    print(frame.to_string(index=False))
    return EXIT_OK


def run_eval(args: argparse.Namespace) -> int:
    if args.list:
        return _list_quantities()
    if not args.quantities:
        raise ValueError("name at least one quantity (see `tempcorr eval --list`)")
    settings = settings_from_args(args)
    params = config.network_params(settings)
    rows = [{"quantity": name, "n": args.n, "value": compute(name, params, args)} for name in args.quantities]
    logger.info(f"[CLI] Evaluated {len(rows)} quantit{'y' if len(rows) == 1 else 'ies'}")
    emit(pd.DataFrame(rows), "eval", parameter_block(settings, **_option_block(args)), args)
    return EXIT_OK


def _option_block(args: argparse.Namespace) -> dict:
    block = {"n": args.n, "form": args.form, "mode": args.mode, "nu": args.nu}
    for name in ("theta_bar", "theta1", "theta2"):
        if getattr(args, name) is not None:
            block[name] = getattr(args, name)
    return block


def run_curve(args: argparse.Namespace) -> int:
    if not args.quantities:
        raise ValueError("name at least one quantity (see `tempcorr eval --list`)")
    for name in args.quantities:
        if name not in QUANTITIES:
            raise ValueError(f"Quantity '{name}' not found. Available quantities: {list(QUANTITIES.keys())}")
    grid = parse_grid(args.values, args.start, args.stop, args.points)
    axis = args.sweep
    settings = settings_from_args(args)

    rows = []
    for value in grid:
        options = argparse.Namespace(**vars(args))
        point = dict(settings)
        if axis in OPTION_AXES:
            setattr(options, axis, int(value) if axis == "n" else value)
        else:
            point[SWEEP_AXES[axis]] = value
            if axis == "delta":
                point.pop("alpha", None)
        params = config.network_params(point)
        row = {axis: value}
        for name in args.quantities:
            row[name] = compute(name, params, options)
        rows.append(row)

    logger.info(f"[CLI] Swept {', '.join(args.quantities)} over {len(grid)} value(s) of {axis}")
    block = parameter_block(settings, sweep=axis, **_option_block(args))
    block.pop(SWEEP_AXES[axis], None)
    emit(pd.DataFrame(rows), "curve", block, args)
    return EXIT_OK


def add_parsers(subparsers):
    eval_parser = subparsers.add_parser("eval", help="Evaluate analytic quantities at one parameter point")
    eval_parser.add_argument("quantities", nargs="*", help="Quantity names")
    eval_parser.add_argument("--list", action="store_true", help="List the available quantities")
    add_quantity_options(eval_parser)
    eval_parser.set_defaults(func=run_eval)

    curve_parser = subparsers.add_parser("curve", help="Sweep analytic quantities over a parameter grid")
    curve_parser.add_argument("quantities", nargs="+", help="Quantity names")
    curve_parser.add_argument("--sweep", required=True, choices=sorted(SWEEP_AXES), help="Swept variable")
    curve_parser.add_argument("--values", help="Comma-separated grid values")
    curve_parser.add_argument("--start", type=float, help="First grid value")
    curve_parser.add_argument("--stop", type=float, help="Last grid value")
    curve_parser.add_argument("--points", type=int, default=21, help="Number of grid values (default: 21)")
    add_quantity_options(curve_parser)
    curve_parser.set_defaults(func=run_curve)
