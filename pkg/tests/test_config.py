import json

import pytest

from steklov.config import RunConfig, load_config, parse_medium
from steklov.errors import ConfigError, ExpressionError
from steklov.medium import Constant, DiskInclusion, Expression, PolarInclusion


def test_defaults():
    cfg = RunConfig.from_dict({})
    assert cfg.wavenumber == 1.0
    assert len(cfg.build_basis()) == 25
    assert isinstance(cfg.profile(), Constant) and cfg.profile().value == 2.0


def test_round_trip():
    cfg = RunConfig.from_dict(
        {
            "wavenumber": 1.5,
            "basis": {"p_max": 3, "q_max": 4, "include_sin": True, "truncation": 12, "ordering": "sigma_ascending"},
            "quadrature": {"radial_points": 32, "angular_points": 128},
            "medium": {"type": "polar", "rho": "0.35*(2+0.3*sin(2*theta))", "inner": {"re": 2, "im": 0.5}},
            "outputs": {"format": "json", "path": "out.json"},
        }
    )
    again = RunConfig.from_dict(json.loads(cfg.to_json()))
    assert again == cfg
    assert again.to_json() == cfg.to_json()


@pytest.mark.parametrize(
    "medium,cls",
    [
        ({"type": "constant", "value": 2}, Constant),
        ({"type": "disk", "radius": 0.5, "inner": 2}, DiskInclusion),
        ({"type": "disk", "radius": 0.5, "inner": "2+r*(sin(theta)-cos(theta))"}, DiskInclusion),
        ({"type": "polar", "rho": "0.3*(2+0.3*cos(3*theta))", "inner": 2}, PolarInclusion),
        ({"type": "expression", "expr": "2+r"}, Expression),
    ],
)
def test_media(medium, cls):
    assert isinstance(parse_medium(medium), cls)
    RunConfig.from_dict({"medium": medium})


@pytest.mark.parametrize(
    "doc",
    [
        {"bogus": 1},
        {"wavenumber": 0},
        {"wavenumber": True},
        {"basis": {"p_max": "4"}},
        {"basis": {"truncation": 99}},
        {"basis": {"ordering": "random"}},
        {"quadrature": {"radial_points": 4}},
        {"quadrature": {"angular_rule": "simpson"}},
        {"outputs": {"format": "xml"}},
        {"medium": {"type": "blob"}},
        {"medium": {"type": "constant", "value": {"re": 2, "imag": 1}}},
        {"medium": {"type": "constant", "value": -1}},
        {"medium": {"type": "disk", "radius": 1.5, "inner": 2}},
        {"medium": {"type": "polar", "rho": "0.9+0.2*cos(theta)", "inner": 2}},
    ],
)
def test_rejected(doc):
    with pytest.raises(ConfigError):
        RunConfig.from_dict(doc)


def test_expression_error_has_offset():
    with pytest.raises(ExpressionError) as info:
        RunConfig.from_dict({"medium": {"type": "expression", "expr": "2+*r"}})
    assert info.value.offset == 3


def test_load_config(tmp_path):
    p = tmp_path / "c.json"
    p.write_text('{"wavenumber": 2}')
    assert load_config(p).wavenumber == 2.0
    p.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(p)
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json")
