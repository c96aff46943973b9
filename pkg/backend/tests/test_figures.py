"""
Figure Data Tests
Parameter blocks, column layout and reference values of each figure table
"""
import math

import numpy as np
import pytest

from services.figures import FIGURES, build_figure, get_available_figures
from services.figures.builders import merge_parameters


def test_every_figure_is_listed():
    assert set(get_available_figures()) == {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "cond_outage"}
    assert set(FIGURES) == set(get_available_figures())


def test_unknown_figure():
    with pytest.raises(ValueError, match="not found"):
        build_figure("fig99")


def test_merge_parameters_rejects_unknown_key():
    with pytest.raises(ValueError, match="no parameter"):
        merge_parameters("fig2", {"delta": 0.5}, {"alpha": 4})
    assert merge_parameters("fig2", {"points": 101}, {"points": "11"}) == {"points": 11}


def test_fig1_limits():
    figure = build_figure("fig1", {"points": 5, "delta_points": 3})
    frame = figure.frame
    assert list(frame.columns) == ["p", "delta", "D5"]
    assert len(frame) == 5 * 3 + 2 * 5
    at_one = frame[frame["delta"] == 1.0]
    assert np.allclose(at_one["D5"], 5 * at_one["p"], atol=1e-14)
    at_zero = frame[frame["delta"] == 0.0]
    assert np.allclose(at_zero["D5"], 1 - (1 - at_zero["p"]) ** 5, atol=1e-14)


def test_fig2_parameter_block_and_baseline():
    figure = build_figure("fig2")
    assert figure.parameters == {"delta": 0.5, "Delta": 0.5, "n_max": 4, "points": 101}
    frame = figure.frame
    assert list(frame.columns) == ["p", "cond_success_n1", "cond_success_n2", "cond_success_n3",
                                   "cond_success_n4", "baseline"]
    assert len(frame) == 101
    # conditioning on successes never lowers the success probability
    assert (frame["cond_success_n1"] >= frame["baseline"] - 1e-15).all()
    assert (frame["cond_success_n4"] >= frame["cond_success_n1"] - 1e-15).all()


def test_fig2_overrides():
    figure = build_figure("fig2", {"n_max": 2, "points": 3})
    assert figure.parameters["n_max"] == 2
    assert "cond_success_n3" not in figure.frame.columns
    assert len(figure.frame) == 3


def test_fig3_bounds():
    frame = build_figure("fig3", {"points": 6, "delta_points": 4}).frame
    assert (frame["zeta"] >= 0).all() and (frame["zeta"] <= 1).all()
    assert (frame.loc[frame["p"] == 0.0, "zeta"] == 0.0).all()


def test_fig4_columns_and_zero_load():
    frame = build_figure("fig4", {"points": 6}).frame
    for column in ("cond_success_bounded_n1", "cond_success_bounded_n4", "cond_success_n1", "baseline"):
        assert column in frame.columns
    assert ((frame["baseline"] > 0) & (frame["baseline"] <= 1)).all()
    assert frame.loc[frame["p"] == 0.0, "cond_success_bounded_n1"].iloc[0] == 1.0


def test_fig5_curvature_block():
    figure = build_figure("fig5", {"points": 5})
    assert figure.parameters["B"]["p0.5"] == pytest.approx(0.075, abs=1e-3)
    assert figure.parameters["B"]["p0.25"] == pytest.approx(0.02, abs=1e-3)
    middle = figure.frame[figure.frame["nu"] == 0.0].iloc[0]
    assert middle["psi2_p0.5"] == pytest.approx(middle["approx_p0.5"], rel=1e-12)


def test_fig6_design():
    figure = build_figure("fig6", {"points": 9})
    assert figure.parameters["A"] == pytest.approx(0.908, abs=1e-3)
    assert figure.frame["psi2_at_0"].iloc[0] == pytest.approx(0.908, abs=1e-3)
    assert figure.parameters["design"]["nu"] == pytest.approx(-0.649, abs=2e-3)
    assert (figure.frame["psi2"] >= figure.frame["psi2_at_0"] - 1e-13).all()


def test_fig7_ordering():
    frame = build_figure("fig7", {"points": 10}).frame
    assert list(frame.columns) == ["delta", "p_c_ratio1", "p_c_ind_ratio1", "p_c_ratio0.25", "p_c_ind_ratio0.25"]
    assert (frame["p_c_ratio1"] <= frame["p_c_ind_ratio1"] + 1e-10).all()
    # fewer interferers per receiver allow a larger transmit probability
    assert (frame["p_c_ratio0.25"] >= frame["p_c_ratio1"]).all()


def test_cond_outage_bounds():
    figure = build_figure("cond_outage", {"points": 4})
    frame = figure.frame
    assert frame["p"].iloc[0] == pytest.approx(0.01)
    for n in range(1, 5):
        assert (frame[f"cond_outage_n{n}"] <= 1.0).all()
        assert (frame[f"cond_outage_n{n}"] >= frame["baseline"] - 1e-12).all()
    assert math.isfinite(frame["cond_outage_n4"].iloc[-1])
