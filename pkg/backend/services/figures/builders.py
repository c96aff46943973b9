"""
Figure Data Builders
Tables behind the published curves, computed from the analytic modules
"""
from typing import Any, Dict, Mapping, Optional
import logging
import math

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict

from services.analytic import diversity, joint_stats, local_delay, two_threshold
from services.analytic.local_delay import DelayModel
from services.analytic.network import NetworkParams

logger = logging.getLogger(__name__)


class FigureData(BaseModel):
    """Named table with the parameter block that produced it"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str
    description: str
    parameters: Dict[str, Any]
    frame: pd.DataFrame


def merge_parameters(name: str, defaults: Mapping[str, Any], overrides: Optional[Mapping[str, Any]]) -> Dict[str, Any]:
    """
    Defaults updated with overrides; only keys the figure knows are accepted

    Raises:
        ValueError: On an unknown override key
    """
    merged = dict(defaults)
    for key, value in (overrides or {}).items():
        if key not in defaults:
            raise ValueError(f"figure '{name}' has no parameter '{key}'. Parameters: {sorted(defaults)}")
        merged[key] = type(defaults[key])(value)
    return merged


def _grid(lo: float, hi: float, points: int) -> np.ndarray:
    if points < 2:
        raise ValueError(f"a grid needs at least 2 points, got {points}")
    return np.linspace(lo, hi, points)


def figure_fig1(overrides=None) -> FigureData:
    parameters = merge_parameters("fig1", {"n": 5, "points": 21, "delta_points": 19}, overrides)
    n = parameters["n"]
    rows = []
    for delta in _grid(0.05, 0.95, parameters["delta_points"]):
        for p in _grid(0.0, 1.0, parameters["points"]):
            rows.append({"p": p, "delta": delta, f"D{n}": diversity.div_poly(n, p, delta)})
    for p in _grid(0.0, 1.0, parameters["points"]):
        rows.append({"p": p, "delta": 0.0, f"D{n}": diversity.div_poly_delta_zero(n, p)})
        rows.append({"p": p, "delta": 1.0, f"D{n}": diversity.div_poly_delta_one(n, p)})
    return FigureData(name="fig1", description=f"Diversity polynomial D_{n}(p, δ)",
                      parameters=parameters, frame=pd.DataFrame(rows))


def figure_fig2(overrides=None) -> FigureData:
    parameters = merge_parameters("fig2", {"delta": 0.5, "Delta": 0.5, "n_max": 4, "points": 101}, overrides)
    rows = []
    for p in _grid(0.0, 1.0, parameters["points"]):
        params = NetworkParams.from_contention(parameters["Delta"], parameters["delta"], p)
        row = {"p": p}
        for n in range(1, parameters["n_max"] + 1):
            row[f"cond_success_n{n}"] = joint_stats.cond_success_after_successes(params, n)
        row["baseline"] = math.exp(-parameters["Delta"] * p)
        rows.append(row)
    return FigureData(name="fig2", description="P(S_{n+1} | S_1..S_n) versus p",
                      parameters=parameters, frame=pd.DataFrame(rows))


def figure_fig3(overrides=None) -> FigureData:
    parameters = merge_parameters("fig3", {"lambda_pi_r2": 0.5, "theta": 5.0, "points": 21, "delta_points": 19},
                                  overrides)
    lam = parameters["lambda_pi_r2"] / math.pi
    rows = []
    for delta in _grid(0.05, 0.95, parameters["delta_points"]):
        for p in _grid(0.0, 1.0, parameters["points"]):
            params = NetworkParams(lam=lam, r=1.0, theta=parameters["theta"], delta=delta, p=p)
            rows.append({"p": p, "delta": delta, "zeta": joint_stats.correlation_coefficient(params)})
    return FigureData(name="fig3", description="Correlation coefficient ζ(p, δ)",
                      parameters=parameters, frame=pd.DataFrame(rows))


def figure_fig4(overrides=None) -> FigureData:
    parameters = merge_parameters("fig4", {"delta": 0.5, "r": 1.0, "theta": 1.0, "lambda": math.pi ** -2,
                                           "n_max": 4, "points": 51}, overrides)
    rows = []
    for p in _grid(0.0, 1.0, parameters["points"]):
        params = NetworkParams(lam=parameters["lambda"], r=parameters["r"], theta=parameters["theta"],
                               delta=parameters["delta"], p=p)
        row = {"p": p}
        previous = joint_stats.joint_success_bounded(params, 1)
        for n in range(1, parameters["n_max"] + 1):
            current = joint_stats.joint_success_bounded(params, n + 1)
            row[f"cond_success_bounded_n{n}"] = current / previous
            row[f"cond_success_n{n}"] = joint_stats.cond_success_after_successes(params, n)
            previous = current
        row["baseline"] = joint_stats.joint_success_bounded(params, 1)
        rows.append(row)
    return FigureData(name="fig4", description="Conditional success with bounded path gain",
                      parameters=parameters, frame=pd.DataFrame(rows))


def figure_fig5(overrides=None) -> FigureData:
    parameters = merge_parameters("fig5", {"delta": 2.0 / 3.0, "Delta_hat_theta_bar_delta": 2.0,
                                           "nu_max": 2.0, "points": 81}, overrides)
    rows = []
    bases = {}
    for p in (0.5, 0.25):
        # unit θ̄, so Δ̂ carries the whole product Δ̂θ̄^δ
        bases[p] = NetworkParams.from_contention(parameters["Delta_hat_theta_bar_delta"], parameters["delta"], p)
    coeffs = {p: two_threshold.quadratic_coeffs(base, 1.0) for p, base in bases.items()}
    for nu in _grid(-parameters["nu_max"], parameters["nu_max"], parameters["points"]):
        row = {"nu": nu}
        for p, base in bases.items():
            a_coeff, b_coeff = coeffs[p]
            row[f"psi2_p{p:g}"] = two_threshold.psi_two(base, 1.0, nu)
            row[f"approx_p{p:g}"] = a_coeff + b_coeff * nu * nu
        rows.append(row)
    parameters = dict(parameters, B={f"p{p:g}": coeffs[p][1] for p in bases})
    return FigureData(name="fig5", description="At-least-once success with asymmetric thresholds, A + Bν²",
                      parameters=parameters, frame=pd.DataFrame(rows))


def figure_fig6(overrides=None) -> FigureData:
    parameters = merge_parameters("fig6", {"theta_bar": 10.0, "Delta_hat": 1.0 / 3.0, "p": 1.0 / 3.0,
                                           "delta": 0.4, "nu_max": 2.0, "points": 81}, overrides)
    base = NetworkParams.from_contention(parameters["Delta_hat"], parameters["delta"], parameters["p"])
    theta_bar = parameters["theta_bar"]
    a_coeff, _ = two_threshold.quadratic_coeffs(base, theta_bar)
    rows = []
    for nu in _grid(-parameters["nu_max"], parameters["nu_max"], parameters["points"]):
        single = math.exp(-parameters["Delta_hat"] * parameters["p"] * (theta_bar * math.exp(-nu)) ** parameters["delta"])
        rows.append({
            "nu": nu,
            "psi2": two_threshold.psi_two(base, theta_bar, nu),
            "independent": 1.0 - (1.0 - single) ** 2,
            "psi2_at_0": two_threshold.psi_two(base, theta_bar, 0.0),
        })
    design = two_threshold.design_thresholds(base, theta_bar)
    parameters = dict(parameters, A=a_coeff, design=design.model_dump())
    return FigureData(name="fig6", description="Threshold design for two transmissions",
                      parameters=parameters, frame=pd.DataFrame(rows))


def figure_fig7(overrides=None) -> FigureData:
    parameters = merge_parameters("fig7", {"theta": 10.0, "ratios": "1,0.25", "points": 91}, overrides)
    ratios = [float(value) for value in str(parameters["ratios"]).split(",")]
    rows = []
    for delta in _grid(0.05, 0.95, parameters["points"]):
        row = {"delta": delta}
        for ratio in ratios:
            base = NetworkParams(lam=ratio, r=1.0, theta=parameters["theta"], delta=delta, p=0.0)
            probabilities = local_delay.critical_probabilities(DelayModel(base=base, distance_mode="rayleigh", mu=1.0))
            row[f"p_c_ratio{ratio:g}"] = probabilities.p_c
            row[f"p_c_ind_ratio{ratio:g}"] = probabilities.p_c_ind
        rows.append(row)
    return FigureData(name="fig7", description="Critical transmit probabilities versus δ",
                      parameters=parameters, frame=pd.DataFrame(rows))


def figure_cond_outage(overrides=None) -> FigureData:
    parameters = merge_parameters("cond_outage", {"delta": 0.5, "Delta": 0.5, "n_max": 4, "points": 100}, overrides)
    rows = []
    # p = 0 has no outage to condition on
    for p in _grid(0.01, 1.0, parameters["points"]):
        params = NetworkParams.from_contention(parameters["Delta"], parameters["delta"], p)
        row = {"p": p}
        for n in range(1, parameters["n_max"] + 1):
            row[f"cond_outage_n{n}"] = joint_stats.cond_outage_after_failures(params, n)
        row["baseline"] = -math.expm1(-parameters["Delta"] * p)
        rows.append(row)
    return FigureData(name="cond_outage", description="Outage after n failures versus p",
                      parameters=parameters, frame=pd.DataFrame(rows))
