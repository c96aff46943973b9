"""
Settings File Tests
"""
import pytest

import config


def test_parse_config_text():
    text = """
    # reference network
    lambda = 0.1
    r = 1        # unit link
    theta = 2.5
    alpha = 4
    p = 0.5
    seed = 42
    """
    values = config.parse_config_text(text)
    assert values == {"lambda": 0.1, "r": 1.0, "theta": 2.5, "alpha": 4.0, "p": 0.5, "seed": 42}
    assert isinstance(values["seed"], int)


@pytest.mark.parametrize("text, message", [
    ("lambda 0.1", "expected 'key = value'"),
    ("gamma = 1", "unknown key"),
    ("p = half", "needs a number"),
    ("seed = 1.5", "needs a number"),
])
def test_parse_errors_name_the_line(text, message):
    with pytest.raises(ValueError, match=message) as excinfo:
        config.parse_config_text("r = 1\n" + text, source="net.cfg")
    assert "net.cfg:2" in str(excinfo.value)


def test_load_config(tmp_path):
    path = tmp_path / "net.cfg"
    path.write_text("delta = 0.5\nmu = 0.1\n", encoding="utf-8")
    assert config.load_config(path) == {"delta": 0.5, "mu": 0.1}
    with pytest.raises(ValueError, match="not found"):
        config.load_config(tmp_path / "missing.cfg")


def test_merge_order():
    file_values = {"lambda": 0.1, "p": 0.5, "seed": 3}
    merged = config.merge_settings(file_values, {"p": 0.2, "theta": None, "workers": 4})
    assert merged["p"] == 0.2
    assert merged["lambda"] == 0.1
    assert merged["seed"] == 3
    assert merged["workers"] == 4
    assert "theta" not in merged
    assert config.merge_settings({}, {})["seed"] == 0


def test_exponent_flag_replaces_file_exponent():
    merged = config.merge_settings({"delta": 0.5}, {"alpha": 3.0})
    assert merged["alpha"] == 3.0 and "delta" not in merged
    merged = config.merge_settings({"alpha": 4.0}, {"delta": 0.4})
    assert merged["delta"] == 0.4 and "alpha" not in merged


def test_network_params_and_delay_model():
    settings = config.merge_settings({"lambda": 0.1, "r": 1, "theta": 1, "delta": 0.5, "p": 0.5}, {})
    assert config.has_network(settings)
    assert not config.has_network(config.merge_settings({}, {}))
    params = config.network_params(settings)
    assert params.lam == 0.1
    with pytest.raises(ValueError, match="mu"):
        config.delay_model(settings)
    model = config.delay_model(dict(settings, mu=0.1))
    assert model.distance_mode == "rayleigh"
    assert config.delay_model(settings, rayleigh=False).distance_mode == "fixed"
