"""
Simulate Command
Monte Carlo estimate of one quantity, optionally with per-realization records
"""
import argparse
import logging

import pandas as pd

import config
from commands.common import EXIT_OK, emit, parameter_block, settings_from_args
from services.montecarlo import simulator
from services.montecarlo.records import write_records
from services.montecarlo.simulator import SimConfig

logger = logging.getLogger(__name__)

DEFAULT_REALIZATIONS = 100_000
ESTIMATORS = ["joint_success", "at_least_once", "joint_cdf", "local_delay", "correlation",
              "cond_after_success", "cond_after_failure"]


def build_config(args: argparse.Namespace, settings: dict) -> SimConfig:
    """SimConfig from the merged settings and the simulate options"""
    params = config.network_params(settings)
    thresholds = None
    if args.theta1 is not None or args.theta2 is not None:
        if args.theta1 is None or args.theta2 is None:
            raise ValueError("--theta1 and --theta2 go together")
        thresholds = (args.theta1, args.theta2)
    options = dict(
        params=params,
        n_slots=args.n_slots,
        n_realizations=settings.get("n_realizations") or DEFAULT_REALIZATIONS,
        window_radius=settings.get("window_radius"),
        seed=settings["seed"],
        workers=settings["workers"],
        path_loss="bounded" if args.bounded else "unbounded",
        estimator=args.estimator,
        thresholds=thresholds,
        max_slots=args.max_slots if args.estimator == "local_delay" else None,
        independent_interference=args.independent,
    )
    if args.rayleigh:
        model = config.delay_model(settings, rayleigh=True)
        options.update(distance_mode="rayleigh", mu=model.mu)
    return SimConfig(**options)


def run_simulate(args: argparse.Namespace) -> int:
    settings = settings_from_args(args)
    sim_config = build_config(args, settings)
    result = simulator.simulate(sim_config)
    estimate = simulator.estimate(result)
    logger.info(f"[CLI] {estimate.estimator}: {estimate.mean:.6g} ± {estimate.std_error:.2g}")

    if args.records:
        write_records(result, args.records)

    row = {
        "estimator": estimate.estimator,
        "mean": estimate.mean,
        "std_error": estimate.std_error,
        "ci_lo": estimate.ci95[0],
        "ci_hi": estimate.ci95[1],
        "n_effective": estimate.n_effective,
    }
    if args.tail_slope:
        row["interference_tail_slope"] = simulator.interference_tail_slope(sim_config)

    block = parameter_block(settings, n_realizations=sim_config.n_realizations,
                            window_radius=result.window_radius, estimator=sim_config.estimator,
                            slots=sim_config.slots, path_loss=sim_config.path_loss,
                            distance_mode=sim_config.distance_mode,
                            independent_interference=sim_config.independent_interference)
    emit(pd.DataFrame([row]), "simulate", block, args)
    return EXIT_OK


def add_parsers(subparsers):
    parser = subparsers.add_parser("simulate", help="Monte Carlo estimate in a simulated Poisson field")
    parser.add_argument("--estimator", default="joint_success", choices=ESTIMATORS,
                        help="Estimated quantity (default: joint_success)")
    parser.add_argument("--n-slots", type=int, default=2, dest="n_slots", help="Transmissions per realization")
    parser.add_argument("--max-slots", type=int, default=10, dest="max_slots",
                        help="Delay truncation for the local_delay estimator (default: 10)")
    parser.add_argument("--theta1", type=float, help="First-slot threshold (joint_cdf)")
    parser.add_argument("--theta2", type=float, help="Second-slot threshold (joint_cdf)")
    parser.add_argument("--rayleigh", action="store_true", help="Rayleigh link distance with intensity --mu")
    parser.add_argument("--independent", action="store_true", help="Redraw the interferers in every slot")
    parser.add_argument("--bounded", action="store_true", help="Bounded path loss min(1, d^-α)")
    parser.add_argument("--records", help="Also write per-realization records to this CSV path")
    parser.add_argument("--tail-slope", action="store_true", dest="tail_slope",
                        help="Also estimate the log-log slope of the interference tail")
    parser.set_defaults(func=run_simulate)
