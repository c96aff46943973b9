"""
Delay Command
Local-delay distribution, mean, critical probabilities and the exact identity oracle
"""
import argparse
import logging
import math

import pandas as pd

import config
from commands.common import EXIT_OK, emit, parameter_block, settings_from_args
from services.analytic import local_delay

logger = logging.getLogger(__name__)

VIEWS = ("tail", "mean", "critical", "identity", "taylor")


def _fixed_tail(params, max_slots: int) -> pd.DataFrame:
    return pd.DataFrame([{
        "n": n,
        "tail": local_delay.delay_tail_fixed(params, n),
        "pmf": local_delay.delay_pmf_fixed(params, n),
    } for n in range(1, max_slots + 1)])


def _random_tail(model, max_slots: int) -> pd.DataFrame:
    rows = []
    for n in range(1, max_slots + 1):
        pmf = local_delay.delay_pmf_independent(model, n)
        rows.append({
            "n": n,
            "ps_random": local_delay.joint_success_random_distance(model, n),
            "tail_independent": local_delay.delay_tail_independent(model, n),
            "pmf_independent": pmf.value,
            "pmf_asymptotic": pmf.bound,
            "pmf_ratio": pmf.ratio,
        })
    return pd.DataFrame(rows)


def _tail(args, settings):
    if args.rayleigh:
        model = config.delay_model(settings, rayleigh=True)
        probabilities = local_delay.critical_probabilities(model)
        extra = dict(distance_mode="rayleigh", p_c=probabilities.p_c, p_c_ind=probabilities.p_c_ind,
                     regime=local_delay.regime(model))
        return _random_tail(model, args.max_slots), extra
    params = config.network_params(settings)
    mean = local_delay.mean_delay_fixed(params) if params.p < 1.0 else math.inf
    return _fixed_tail(params, args.max_slots), dict(distance_mode="fixed", mean_delay=mean)


def _mean(args, settings):
    if not args.rayleigh:
        params = config.network_params(settings)
        value = local_delay.mean_delay_fixed(params) if params.p < 1.0 else math.inf
        frame = pd.DataFrame([{"mode": "fixed", "value": value, "finite": math.isfinite(value)}])
        return frame, dict(distance_mode="fixed")
    model = config.delay_model(settings, rayleigh=True)
    rows = [local_delay.mean_delay_random(model, mode=mode, max_terms=args.max_terms).model_dump()
            for mode in ("dependent", "independent")]
    return pd.DataFrame(rows), dict(distance_mode="rayleigh", regime=local_delay.regime(model))


def _critical(args, settings):
    model = config.delay_model(settings, rayleigh=True)
    probabilities = local_delay.critical_probabilities(model)
    frame = pd.DataFrame([{"p_c": probabilities.p_c, "p_c_ind": probabilities.p_c_ind,
                           "delta_prime_ratio": model.delta_prime_ratio}])
    return frame, dict(distance_mode="rayleigh")


def _identity(args, settings):
    if not 1 <= args.step <= args.n_max:
        raise ValueError(f"--step must lie in [1, --n-max], got {args.step}")
    rows = []
    for n_max in range(args.step, args.n_max + 1, args.step):
        check = local_delay.binomial_identity_check(args.beta, n_max)
        rows.append({
            "n_max": n_max,
            "partial": float(check.partial),
            "target": float(check.target),
            "residual": check.residual,
            "analytic_tail": check.analytic_tail,
            "completed_residual": check.completed_residual,
        })
    return pd.DataFrame(rows), dict(beta=args.beta)


def _taylor(args, settings):
    params = config.network_params(settings)
    exact = local_delay.mean_delay_fixed(params)
    rows = []
    for n in range(0, args.max_slots + 1):
        estimate = local_delay.taylor_mean_delay(params, n)
        rows.append({"n": n, "m_hat_n": estimate.m_hat_n, "m_hat": estimate.m_hat, "exact": exact})
    return pd.DataFrame(rows), dict(distance_mode="fixed")


_VIEWS = {
    "tail": _tail,
    "mean": _mean,
    "critical": _critical,
    "identity": _identity,
    "taylor": _taylor,
}


def run_delay(args: argparse.Namespace) -> int:
    settings = settings_from_args(args)
    frame, extra = _VIEWS[args.view](args, settings)
    logger.info(f"[CLI] Delay view '{args.view}': {len(frame)} row(s)")
    block = dict(extra) if args.view == "identity" else parameter_block(settings, **extra)
    emit(frame, f"delay_{args.view}", dict(block, view=args.view), args)
    return EXIT_OK


def add_parsers(subparsers):
    parser = subparsers.add_parser("delay", help="Local delay: distribution, mean, critical probabilities")
    parser.add_argument("view", nargs="?", default="tail", choices=VIEWS, help="What to compute (default: tail)")
    parser.add_argument("--rayleigh", action="store_true", help="Rayleigh link distance with intensity --mu")
    parser.add_argument("--max-slots", type=int, default=10, dest="max_slots",
                        help="Largest delay index or Taylor order (default: 10)")
    parser.add_argument("--max-terms", type=int, default=local_delay.MEAN_MAX_TERMS, dest="max_terms",
                        help="Series terms for the dependent random-distance mean")
    parser.add_argument("--beta", default="1/2", help="β of the binomial identity, exact fraction (default: 1/2)")
    parser.add_argument("--n-max", type=int, default=60, dest="n_max", help="Identity partial-sum length")
    parser.add_argument("--step", type=int, default=10, help="Identity rows every STEP terms (default: 10)")
    parser.set_defaults(func=run_delay)
