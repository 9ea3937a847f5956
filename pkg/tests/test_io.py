import json
import math

import numpy as np
import pytest

from rggbetween import csvio
from rggbetween.config import (
    domain_from_settings,
    experiment_from_settings,
    load_config,
    parse_config_text,
    parse_holes,
    resolve,
)
from rggbetween.errors import ConfigError
from rggbetween.geometry import Disk, Holed


def test_fmt():
    assert csvio.fmt(0.1) == "0.10000000000000001"
    assert csvio.fmt(np.float64(1 / 3)) == "0.33333333333333331"
    assert csvio.fmt(True) == "1" and csvio.fmt(np.bool_(False)) == "0"
    assert csvio.fmt(np.int64(7)) == "7"
    assert csvio.fmt(float("nan")) == "nan"


def test_points_round_trip_bytes(tmp_path):
    pts = np.random.default_rng(0).random((25, 2)) * [3.0, 1e-7]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    csvio.write_points(a, pts)
    back = csvio.read_points(a)
    assert np.array_equal(back, pts)
    csvio.write_points(b, back)
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()
    assert a.read_text().splitlines()[0] == "id,x,y"


def test_edges_round_trip(tmp_path):
    p = tmp_path / "e.csv"
    csvio.write_edges(p, [(0, 3), (1, 2)])
    assert csvio.read_edges(p).tolist() == [[0, 3], [1, 2]]
    csvio.write_edges(p, [])
    assert csvio.read_edges(p).shape == (0, 2)


def test_read_rejects_bad_header_and_ids(tmp_path):
    p = tmp_path / "p.csv"
    p.write_text("id,x,z\n0,1,2\n")
    with pytest.raises(ValueError):
        csvio.read_points(p)
    p.write_text("id,x,y\n1,1,2\n")
    with pytest.raises(ValueError):
        csvio.read_points(p)


def test_manifest_sorted(tmp_path):
    p = tmp_path / "run.json"
    csvio.write_manifest(p, {"b": 1, "a": [1.5]})
    assert p.read_text().index('"a"') < p.read_text().index('"b"')
    assert csvio.read_manifest(p) == {"a": [1.5], "b": 1}


def test_config_grammar():
    s = parse_config_text("""
# a comment
Domain = holed-square   # inline
beta-mode = fixed
densities = 10, 50 500
holes = 0.3,0.5,0.15; 0.7,0.5,0.15
""")
    assert s == {"domain": "holed-square", "beta_mode": "fixed", "densities": "10, 50 500",
                 "holes": "0.3,0.5,0.15; 0.7,0.5,0.15"}


def test_config_errors():
    with pytest.raises(ConfigError):
        parse_config_text("colour = red\n")
    with pytest.raises(ConfigError):
        parse_config_text("just some words\n")
    with pytest.raises(ConfigError):
        parse_holes("0.3,0.5")
    with pytest.raises(ConfigError):
        experiment_from_settings(resolve(None, {"realizations": "many"}))
    with pytest.raises(ConfigError):
        experiment_from_settings(resolve(None, {"beta_mode": "sometimes"}))
    with pytest.raises(ConfigError):
        domain_from_settings(resolve(None, {"radius": -1.0}))
    with pytest.raises(ConfigError):
        load_config("/nonexistent/run.cfg")


def test_resolve_precedence(tmp_path):
    p = tmp_path / "run.cfg"
    p.write_text("radius = 2\nrealizations = 7\n")
    s = resolve(load_config(p), {"radius": 3.0, "seed": None, "densities": [1.0, 2.5]})
    assert s["radius"] == "3.0" and s["realizations"] == "7" and s["seed"] == "0"
    cfg = experiment_from_settings(s)
    assert cfg.domain == Disk(3.0) and cfg.densities == (1.0, 2.5) and cfg.realizations == 7


def test_manifest_as_config(tmp_path):
    p = tmp_path / "run.json"
    p.write_text(json.dumps({"settings": {"domain": "holed-square", "side": "2"}, "seed": 3}))
    d = domain_from_settings(resolve(load_config(p), {}))
    assert isinstance(d, Holed)
    # default holes scale with the side
    assert d.area == pytest.approx(4 - 2 * math.pi * 0.3**2)
    p.write_text("{}")
    with pytest.raises(ConfigError):
        load_config(p)
