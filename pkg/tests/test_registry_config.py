import json

import pytest

from soficent.config import ExperimentConfig, parse_cover, parse_measure
from soficent.odometer import OdometerSystem
from soficent.registry import (ConfigError, builtin, default_d, default_schedule, load_system,
                               odometer_levels)
from soficent.reports import cells_csv, dumps, normalize


def test_builtins():
    assert builtin("full-shift-3").k == 3
    assert builtin("golden-mean@Z2").group.rank == 2
    assert builtin("fixed-point@Z/4").group.modulus == 4
    assert isinstance(builtin("odometer-2adic", 3), OdometerSystem)
    for bad in ("nope", "odometer-2adic@Z2", "golden-mean@Q"):
        with pytest.raises(ConfigError):
            builtin(bad)


def test_system_file(tmp_path):
    f = tmp_path / "sys.json"
    f.write_text(json.dumps({"group": "Z", "alphabet": ["a", "b"], "name": "no-bb",
                             "forbidden": [{"shape": [0, 1], "pattern": ["b", "b"]}]}))
    sys = load_system(str(f))
    assert sys.name == "no-bb" and sys.k == 2 and len(sys.forbidden) == 1
    f.write_text(json.dumps({"alphabet": ["a"]}))
    with pytest.raises(ConfigError):
        load_system(str(f))


def test_odometer_schedule():
    assert odometer_levels(1) == (4, 5)
    assert odometer_levels(6) == (7, 8)
    for depth in range(1, 7):
        d = default_d(builtin("odometer-2adic", depth))
        assert depth * 0.6931471805599453 / d[0] <= 0.05
    with pytest.raises(ConfigError):
        default_schedule(builtin("odometer-2adic", 3), d_list=(8,))


def test_schedule_errors():
    fs = builtin("full-shift-2")
    with pytest.raises(ConfigError):
        default_schedule(fs, delta_list=(0.25, 0.5))
    with pytest.raises(ConfigError):
        default_schedule(builtin("full-shift-2@Z/3"), d_list=(4,))
    assert [s.d for s in default_schedule(builtin("golden-mean@Z2")).sigmas] == [4, 6, 9]


def test_config_round_trip():
    cfg = ExperimentConfig(system="golden-mean", d=[4, 8], delta=[0.5])
    assert ExperimentConfig.from_json(cfg.to_json()) == cfg
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"sytem": "x"})
    with pytest.raises(ConfigError):
        ExperimentConfig(quantity="h_bogus")
    with pytest.raises(ConfigError):
        ExperimentConfig.from_json("[1]")


def test_parsers():
    fs = builtin("full-shift-2")
    assert len(parse_cover(fs, "window-r1")) == 8
    assert len(parse_cover(fs, "trivial")) == 1
    with pytest.raises(ConfigError):
        parse_cover(fs, "round")
    assert parse_measure(fs, "bernoulli:0.1").p == (0.9, 0.1)
    with pytest.raises(ConfigError):
        parse_measure(fs, "bernoulli:0.2,0.3,0.5")
    with pytest.raises(ConfigError):
        parse_measure(fs, "gibbs")


def test_report_serialization():
    text = dumps({"b": 1 / 3, "a": float("-inf"), "c": [0.1 + 0.2]})
    assert text.index('"a"') < text.index('"b"') and '"-inf"' in text
    assert normalize(0.1 + 0.2) == normalize(0.3)
    assert cells_csv({"cells": [{"d": 4, "lo": 0.5, "hi": None}]}) == "d,lo,hi\n4,0.5,\n"
