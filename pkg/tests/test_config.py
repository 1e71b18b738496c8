from fractions import Fraction

import pytest

from zeeman_qo.config import REQUIRED, SCHEMAS, parse_config
from zeeman_qo.errors import ConfigError

MINIMAL = {
    "pump": {"jg": "1", "je": "0", "polarization": "x"},
    "burshtein": {"case": "4"},
    "dml": {"n": "1e17", "L": "0.05", "R": "0.001", "wavelength": "780e-9"},
    "scan": {"omega": "1", "n": "1e17", "L": "0.05", "R": "0.001", "wavelength": "780e-9"},
}


def text(scenario, **kv):
    return "\n".join([f"scenario = {scenario}"] + [f"{k} = {v}" for k, v in kv.items()])


def test_pump_defaults():
    cfg = parse_config("# comment\n\n" + text("pump", **MINIMAL["pump"]) + "  # trailing\n")
    p = cfg.parameters
    assert cfg.scenario == "pump" and cfg.output_format == "csv" and cfg.output_path is None
    assert p["jg"] == 1 and p["je"] == 0 and p["polarization"] == "x"
    assert p["gamma"] == 1.0 and p["omega"] == 1.0 and p["delta"] == 0.0
    assert p["initial_populations"] is None


def test_omega_follows_gamma():
    assert parse_config(text("pump", **MINIMAL["pump"], gamma="2.5")).parameters["omega"] == 2.5


def test_half_integer_and_lists():
    p = parse_config(text("pump", jg="3/2", je="1.5", polarization="z",
                          initial_populations="0.1, 0.2, 0.3, 0.4")).parameters
    assert p["jg"] == Fraction(3, 2) == p["je"]
    assert p["initial_populations"] == [0.1, 0.2, 0.3, 0.4]
    s = parse_config(text("scan", **{**MINIMAL["scan"], "omega": "0.1,1 , 10"})).parameters
    assert s["omega"] == [0.1, 1.0, 10.0] and s["delta"] == [0.0]


def test_burshtein_case():
    p = parse_config(text("burshtein", case="4")).parameters
    assert p["case"] == "4" and p["gamma_factor"] == 10.0 and p["samples"] == 1000


def test_unknown_key_is_named():
    with pytest.raises(ConfigError, match="line 5.*'omeg'"):
        parse_config(text("pump", **MINIMAL["pump"], omeg="2"))


@pytest.mark.parametrize("body,line", [
    ("scenario = pump\njg = 1\njg = 2", 3),
    ("scenario = pump\njust words", 2),
    ("scenario = pump\njg =", 2),
    ("scenario = pump\n\njg = one", 3),
    ("scenario = pump\njg = 1/3", 2),
    ("scenario = dml\nn = 1e17\ndirection = up", 3),
    ("scenario = burshtein\ncase = 5", 2),
    ("scenario = burshtein\ncase = 1\nsamples = 0", 3),
    ("\nscenario = lasing", 2),
])
def test_errors_carry_line_numbers(body, line):
    with pytest.raises(ConfigError) as info:
        parse_config(body)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}: ")


def test_missing_scenario():
    with pytest.raises(ConfigError, match="scenario"):
        parse_config("jg = 1")


@pytest.mark.parametrize("scenario", sorted(SCHEMAS))
def test_every_required_key_is_enforced(scenario):
    required = [k for k, spec in SCHEMAS[scenario].items() if spec.default is REQUIRED]
    assert sorted(required) == sorted(MINIMAL[scenario])
    parse_config(text(scenario, **MINIMAL[scenario]))
    for key in required:
        kv = {k: v for k, v in MINIMAL[scenario].items() if k != key}
        with pytest.raises(ConfigError, match=f"missing required key '{key}' for scenario '{scenario}'"):
            parse_config(text(scenario, **kv))
