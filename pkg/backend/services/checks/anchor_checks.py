"""
Anchor Checks
Published reference numbers reproduced from the analytic modules alone
"""
from datetime import datetime
from fractions import Fraction
import logging

from services.analytic import joint_stats, local_delay, two_threshold
from services.analytic.local_delay import DelayModel
from services.analytic.network import NetworkParams
from services.checks.base_check import BaseCheck

logger = logging.getLogger(__name__)


def design_params() -> NetworkParams:
    """Δ̂ = 1/3, p = 1/3, δ = 2/5 (unit threshold so Δ = Δ̂)"""
    return NetworkParams.from_contention(1.0 / 3.0, 0.4, 1.0 / 3.0)


def curvature_params(p: float) -> NetworkParams:
    """δ = 2/3 with Δ̂θ̄^δ = 2 at θ̄ = 1"""
    return NetworkParams.from_contention(2.0, 2.0 / 3.0, p)


class AnchorCheck(BaseCheck):
    """Threshold design, curvature, diversity, outage, delay and identity anchors"""

    def __init__(self):
        super().__init__(check_name="anchors", description="Published quantitative anchors")

    def execute(self):
        self.set_run_info(seed=None, run_date=datetime.now())
        self._threshold_design()
        self._curvature()
        self._diversity_gain()
        self._asymptotic_outage()
        self._delay()
        self._binomial_identity()
        self.calculate_overall_result()
        logger.info(f"[CHECK] anchors: {self.overall_result}")
        return self.to_dict()

    def _threshold_design(self):
        params = design_params()
        theta_bar = 10.0
        self.add_input("design_theta_bar", theta_bar)
        self.add_tolerance("psi2_at_nu0", two_threshold.psi_two(params, theta_bar, 0.0), 0.908, 0.001)
        design = two_threshold.design_thresholds(params, theta_bar)
        self.add_tolerance("design_nu", design.nu, -0.649, 0.002)
        self.add_tolerance("design_theta1", design.theta1, 19.1, 0.1)
        self.add_tolerance("design_theta2", design.theta2, 5.23, 0.1)
        self.add_tolerance("design_success", design.success, 0.91, 0.005)

    def _curvature(self):
        for p, expected in ((0.5, 0.075), (0.25, 0.02)):
            _, b_coeff = two_threshold.quadratic_coeffs(curvature_params(p), 1.0)
            self.add_tolerance(f"B(p={p:g})", b_coeff, expected, 0.001)
        maximum = two_threshold.max_curvature()
        self.add_tolerance("B_max", maximum.b_max, 0.3248, 0.001)
        self.add_tolerance("B_max_x", maximum.x, 2.456, 0.01)
        self.add_tolerance("B_max_delta", maximum.delta, 1.0, 0.01)

    def _diversity_gain(self):
        params = NetworkParams.from_contention(0.5, 0.5, 0.5)
        for n in (2, 3):
            self.add_tolerance(f"diversity_gain_{n}", joint_stats.diversity_gain_estimate(params, n),
                               params.delta, 0.01)
            self.add_tolerance(f"diversity_gain_{n}_vary_p",
                               joint_stats.diversity_gain_estimate(params, n, mode="vary_p"), n * params.delta, 0.03)
            self.add_tolerance(f"diversity_gain_{n}_independent",
                               joint_stats.independent_diversity_reference(params, n), n * params.delta, 0.03)

    def _asymptotic_outage(self):
        worst = 0.0
        for delta in (0.25, 0.75):
            for p in (0.3, 0.7):
                params = NetworkParams.from_contention(1e-6, delta, p)
                for n in range(1, 5):
                    ratio = joint_stats.cond_outage_after_failures(params, n)
                    worst = max(worst, abs(ratio - joint_stats.asymptotic_cond_outage(p, delta, n)))
        self.add_result("asymptotic_cond_outage", worst, "PASS" if worst <= 1e-3 else "FAIL",
                        tolerance="max |ratio - p(1-δ/n)| <= 1e-3")

    def _delay(self):
        # mean-delay expansion error is second order in Δ
        errors = []
        for big_delta in (0.1, 0.05):
            params = NetworkParams.from_contention(big_delta, 0.5, 0.5)
            exact = local_delay.mean_delay_fixed(params)
            errors.append(exact - local_delay.taylor_mean_delay(params, 0).m_hat)
        self.add_tolerance("taylor_error_ratio", errors[0] / errors[1], 4.0, 0.5)

        base = NetworkParams(lam=1.0, r=1.0, theta=10.0, delta=0.8, p=0.01)
        probabilities = local_delay.critical_probabilities(DelayModel(base=base, distance_mode="rayleigh", mu=1.0))
        gap = (probabilities.p_c_ind - probabilities.p_c) / probabilities.p_c_ind
        self.add_result("p_c_relative_gap", gap,
                        "PASS" if 0.0 <= gap < 0.05 else "FAIL", tolerance="0 <= gap < 5%",
                        details={'p_c': probabilities.p_c, 'p_c_ind': probabilities.p_c_ind})

    def _binomial_identity(self):
        check = local_delay.binomial_identity_check(Fraction(1, 2), 60)
        exact_tail = check.partial - check.target == Fraction(-2, 62)
        self.add_result("identity_tail_beta_half", check.residual, "PASS" if exact_tail else "FAIL",
                        tolerance="residual = -2/(n_max + 2)")
        for beta in (Fraction(1, 2), Fraction(1, 4)):
            completed = local_delay.binomial_identity_check(beta, 60).completed_residual
            self.add_result(f"identity_completed_beta_{beta}", completed,
                            "PASS" if abs(completed) <= 1e-12 else "FAIL", tolerance="<= 1e-12")


def check_anchors():
    return AnchorCheck().execute()
