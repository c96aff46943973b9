"""
Check Registry Tests
"""
import math

import pytest

from services.analytic import local_delay
from services.checks import CHECKS, create_check_instance, execute_check, get_available_checks
from services.checks.base_check import BaseCheck
from services.checks.simulation_checks import random_distance_reference
from services.montecarlo.estimators import normal_estimate


def test_registry_lists_every_check():
    available = get_available_checks()
    assert len(available) == 11
    assert set(available) == set(CHECKS)
    assert available['anchors']['category'] == 'analytic'
    assert available['joint_success']['class_name'] == 'JointSuccessCheck'


def test_unknown_check():
    with pytest.raises(ValueError, match="not found"):
        create_check_instance("no_such_check")
    with pytest.raises(ValueError):
        execute_check("no_such_check")


def test_overall_result_ignores_info():
    check = BaseCheck("demo", "Demo")
    check.add_result("a", 1.0, "PASS")
    check.add_result("b", 2.0, "INFO")
    check.calculate_overall_result()
    assert check.overall_result == "PASS"
    check.add_result("c", 3.0, "FAIL")
    check.calculate_overall_result()
    assert check.overall_result == "FAIL"


def test_overall_result_unknown_without_graded_results():
    check = BaseCheck("demo", "Demo")
    check.add_result("b", 2.0, "INFO")
    check.calculate_overall_result()
    assert check.overall_result == "UNKNOWN"


def test_comparison_thresholds():
    check = BaseCheck("demo", "Demo")
    check.add_comparison("close", 0.5, normal_estimate("x", 0.52, 0.01, 100))
    check.add_comparison("far", 0.5, normal_estimate("x", 0.56, 0.01, 100))
    assert check.results["close"]["status"] == "PASS"
    assert check.results["close"]["details"]["within_3_sigma"]
    assert check.results["far"]["status"] == "FAIL"
    assert check.results["far"]["details"]["z"] == pytest.approx(6.0)


def test_tolerance_and_summary():
    check = BaseCheck("demo", "Demo")
    check.set_run_info(seed=3)
    check.add_tolerance("value", 1.004, 1.0, 0.005)
    check.add_tolerance("other", 1.2, 1.0, 0.005)
    check.calculate_overall_result()
    summary = check.get_summary()
    assert summary['total_checks'] == 2
    assert summary['passed_checks'] == 1
    assert summary['seed'] == 3
    assert '"check_name": "demo"' in check.to_json()


def test_anchors_pass():
    report = execute_check("anchors")
    failed = [name for name, result in report['results'].items() if result['status'] == 'FAIL']
    assert failed == []
    assert report['overall_result'] == 'PASS'
    assert report['seed'] is None


def test_joint_success_check_small_run():
    report = execute_check("joint_success", n_max=2, n_realizations=5000, seed=0)
    assert set(report['results']) == {'ps_1', 'ps_2'}
    assert report['inputs']['n_realizations']['value'] == 5000
    assert report['overall_result'] in ('PASS', 'FAIL')
    for result in report['results'].values():
        assert result['details']['n_effective'] == 5000


def test_small_window_fails_comparison():
    # a window of one link distance drops most of the interference
    report = execute_check("joint_success", n_max=1, n_realizations=5000, seed=0, window_radius=1.0)
    assert report['results']['ps_1']['status'] == 'FAIL'
    assert report['overall_result'] == 'FAIL'


def test_no_transmitters_pass():
    from services.checks.simulation_checks import reference_params
    report = execute_check("at_least_once", params=reference_params(p=0.0), n_max=2,
                           n_realizations=500, window_radius=10.0)
    assert report['overall_result'] == 'PASS'
    assert all(result['details']['z'] == 0.0 for result in report['results'].values())


def test_independent_mean_delay_reports_closed_form():
    report = execute_check("independent_mean_delay", max_slots=5, n_realizations=500, seed=0)
    assert set(report['results']) == {'truncated_mean_delay', 'closed_form_mean_delay'}
    row = report['results']['closed_form_mean_delay']
    assert row['status'] == 'INFO'
    model = random_distance_reference(p=2.0 / (3.0 * math.pi))
    assert row['value'] == pytest.approx(local_delay.mean_delay_random(model, mode="independent").closed_form)
    assert row['details']['finite']
    assert row['value'] >= row['details']['truncated_mean_delay']


def test_registry_is_exported():
    import services.checks as checks
    for name in ('BaseCheck', 'CHECKS', 'get_available_checks', 'create_check_instance', 'execute_check'):
        assert name in checks.__all__
        assert hasattr(checks, name)
