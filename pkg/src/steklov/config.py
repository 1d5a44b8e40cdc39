"""Run configuration: a JSON document validated before any computation.

Example::

    {
      "wavenumber": 1.0,
      "basis": {"p_max": 4, "q_max": 5, "include_sin": false,
                "truncation": 25, "ordering": "radial_major"},
      "quadrature": {"radial_points": 64, "angular_points": 256,
                     "split_at_interface": true, "angular_rule": "trapezoid"},
      "medium": {"type": "polar", "rho": "0.3*(2+0.3*cos(3*theta))",
                 "inner": 2, "outer": 1},
      "outputs": {"format": "csv", "path": null}
    }

Complex numbers are written as ``{"re": 2, "im": 1}``; inclusion values may
also be expression strings.
"""

from dataclasses import asdict, dataclass, field
import json
from pathlib import Path
from typing import Optional

from .assembly import QuadratureRule
from .diskbasis import ORDERINGS, build_basis
from .errors import ConfigError
from .medium import Constant, DiskInclusion, Expression, PolarInclusion, check_admissible

__all__ = ["BasisConfig", "QuadratureConfig", "OutputConfig", "RunConfig", "load_config"]


def _check_keys(d, allowed, where):
    if not isinstance(d, dict):
        raise ConfigError(f"{where}: expected an object")
    unknown = set(d) - set(allowed)
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")


def _int(d, key, where, default):
    v = d.get(key, default)
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{where}.{key}: expected an integer")
    return v


def _bool(d, key, where, default):
    v = d.get(key, default)
    if not isinstance(v, bool):
        raise ConfigError(f"{where}.{key}: expected true or false")
    return v


@dataclass(frozen=True)
class BasisConfig:
    p_max: int = 4
    q_max: int = 5
    include_sin: bool = False
    truncation: Optional[int] = None
    ordering: str = "radial_major"

    @classmethod
    def from_dict(cls, d):
        _check_keys(d, ("p_max", "q_max", "include_sin", "truncation", "ordering"), "basis")
        trunc = d.get("truncation")
        if trunc is not None and (isinstance(trunc, bool) or not isinstance(trunc, int)):
            raise ConfigError("basis.truncation: expected an integer or null")
        ordering = d.get("ordering", "radial_major")
        if ordering not in ORDERINGS:
            raise ConfigError(f"basis.ordering: expected one of {ORDERINGS}")
        return cls(
            _int(d, "p_max", "basis", 4),
            _int(d, "q_max", "basis", 5),
            _bool(d, "include_sin", "basis", False),
            trunc,
            ordering,
        )


@dataclass(frozen=True)
class QuadratureConfig:
    radial_points: int = 64
    angular_points: int = 256
    split_at_interface: bool = True
    angular_rule: str = "trapezoid"

    @classmethod
    def from_dict(cls, d):
        _check_keys(d, ("radial_points", "angular_points", "split_at_interface", "angular_rule"), "quadrature")
        rule = d.get("angular_rule", "trapezoid")
        if rule not in ("trapezoid", "gauss"):
            raise ConfigError("quadrature.angular_rule: expected 'trapezoid' or 'gauss'")
        return cls(
            _int(d, "radial_points", "quadrature", 64),
            _int(d, "angular_points", "quadrature", 256),
            _bool(d, "split_at_interface", "quadrature", True),
            rule,
        )

    def rule(self):
        return QuadratureRule(self.radial_points, self.angular_points, self.split_at_interface, self.angular_rule)


@dataclass(frozen=True)
class OutputConfig:
    format: str = "csv"
    path: Optional[str] = None

    @classmethod
    def from_dict(cls, d):
        _check_keys(d, ("format", "path"), "outputs")
        fmt = d.get("format", "csv")
        if fmt not in ("csv", "json"):
            raise ConfigError("outputs.format: expected 'csv' or 'json'")
        path = d.get("path")
        if path is not None and not isinstance(path, str):
            raise ConfigError("outputs.path: expected a string or null")
        return cls(fmt, path)


def _value(v, where, allow_expr=False):
    if isinstance(v, bool):
        raise ConfigError(f"{where}: expected a number")
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, dict):
        _check_keys(v, ("re", "im"), where)
        try:
            return complex(float(v.get("re", 0.0)), float(v.get("im", 0.0)))
        except (TypeError, ValueError):
            raise ConfigError(f"{where}: re/im must be numbers") from None
    if allow_expr and isinstance(v, str):
        return v
    raise ConfigError(f"{where}: expected a number{' or expression' if allow_expr else ''}")


def _value_json(v):
    if isinstance(v, str):
        return v
    v = complex(v)
    return {"re": v.real, "im": v.imag}


MEDIUM_KEYS = {
    "constant": ("type", "value"),
    "disk": ("type", "radius", "inner", "outer"),
    "polar": ("type", "rho", "inner", "outer"),
    "expression": ("type", "expr"),
}


def parse_medium(d):
    """Medium description (JSON object) to a profile instance."""
    if not isinstance(d, dict) or "type" not in d:
        raise ConfigError("medium: expected an object with a 'type'")
    kind = d["type"]
    if kind not in MEDIUM_KEYS:
        raise ConfigError(f"medium.type: expected one of {sorted(MEDIUM_KEYS)}")
    _check_keys(d, MEDIUM_KEYS[kind], "medium")
    if kind == "constant":
        return Constant(_value(d.get("value"), "medium.value"))
    if kind == "expression":
        if not isinstance(d.get("expr"), str):
            raise ConfigError("medium.expr: expected a string")
        return Expression(d["expr"])
    inner = _value(d.get("inner"), "medium.inner", allow_expr=True)
    outer = _value(d.get("outer", 1.0), "medium.outer", allow_expr=True)
    if kind == "disk":
        radius = d.get("radius")
        if isinstance(radius, bool) or not isinstance(radius, (int, float)):
            raise ConfigError("medium.radius: expected a number")
        return DiskInclusion(float(radius), inner, outer)
    if not isinstance(d.get("rho"), str):
        raise ConfigError("medium.rho: expected an expression string in theta")
    return PolarInclusion(d["rho"], inner, outer)


@dataclass(frozen=True)
class RunConfig:
    wavenumber: float = 1.0
    basis: BasisConfig = field(default_factory=BasisConfig)
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    medium: dict = field(default_factory=lambda: {"type": "constant", "value": {"re": 2.0, "im": 0.0}})
    outputs: OutputConfig = field(default_factory=OutputConfig)

    @classmethod
    def from_dict(cls, d):
        _check_keys(d, ("wavenumber", "basis", "quadrature", "medium", "outputs"), "config")
        k = d.get("wavenumber", 1.0)
        if isinstance(k, bool) or not isinstance(k, (int, float)) or not k > 0:
            raise ConfigError("wavenumber: expected a positive number")
        medium = d.get("medium", {"type": "constant", "value": {"re": 2.0, "im": 0.0}})
        cfg = cls(
            float(k),
            BasisConfig.from_dict(d.get("basis", {})),
            QuadratureConfig.from_dict(d.get("quadrature", {})),
            _normalise_medium(medium),
            OutputConfig.from_dict(d.get("outputs", {})),
        )
        cfg.validate()
        return cfg

    def validate(self):
        """Build every derived object once so errors surface before computing."""
        self.build_basis()
        self.quadrature.rule()
        check_admissible(self.profile())
        return self

    def profile(self):
        return parse_medium(self.medium)

    def build_basis(self, truncation=None):
        b = self.basis
        return build_basis(
            b.p_max, b.q_max, b.include_sin, truncation if truncation is not None else b.truncation, b.ordering
        )

    def rule(self):
        return self.quadrature.rule()

    def to_dict(self):
        return {
            "wavenumber": self.wavenumber,
            "basis": asdict(self.basis),
            "quadrature": asdict(self.quadrature),
            "medium": self.medium,
            "outputs": asdict(self.outputs),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def replace(self, **changes):
        d = self.to_dict()
        for key, value in changes.items():
            d[key] = value
        return RunConfig.from_dict(d)


def _normalise_medium(d):
    # canonical JSON form: complex values as {re, im}, defaults filled in
    parse_medium(d)
    out = {"type": d["type"]}
    if d["type"] == "constant":
        out["value"] = _value_json(_value(d["value"], "medium.value"))
    elif d["type"] == "expression":
        out["expr"] = d["expr"]
    else:
        if d["type"] == "disk":
            out["radius"] = float(d["radius"])
        else:
            out["rho"] = d["rho"]
        out["inner"] = _value_json(_value(d.get("inner"), "medium.inner", True))
        out["outer"] = _value_json(_value(d.get("outer", 1.0), "medium.outer", True))
    return out


def load_config(path):
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from None
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return RunConfig.from_dict(data)
