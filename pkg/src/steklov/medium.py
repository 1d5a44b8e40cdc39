"""Refractive-index profiles n(r, theta) on the unit disk.

Four kinds are supported: a constant, a centred disk inclusion, a star-shaped
inclusion bounded by a polar curve ``r = rho(theta)``, and a free expression
in ``r, theta, x, y``. Inclusion values (``inner``) may themselves be
expressions; the background defaults to 1.
"""

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ConfigError, DomainError, ExpressionError
from .expr import evaluate, is_constant, parse_expression, to_text

__all__ = [
    "Constant",
    "DiskInclusion",
    "PolarInclusion",
    "Expression",
    "MediumProfile",
    "eval_medium",
    "boundary_radius",
    "inclusion_area",
    "parse_value",
    "AREA_NODES",
    "check_admissible",
    "describe",
]

AREA_NODES = 512
DISK_AREA = np.pi


def parse_value(value):
    """Normalise an inner/outer value: numbers stay complex, strings are parsed."""
    if isinstance(value, str):
        ast = parse_expression(value)
        if is_constant(ast):
            return complex(evaluate(ast))
        return ast
    if isinstance(value, (int, float, complex, np.number)):
        return complex(value)
    # already an expression tree
    return value


def _value_at(value, r, theta):
    if isinstance(value, complex):
        return np.full(np.broadcast(r, theta).shape, value)
    try:
        out = evaluate(value, r, theta)
    except ExpressionError as exc:
        raise ExpressionError(f"{exc} while evaluating medium") from exc
    return np.broadcast_to(np.asarray(out, dtype=complex), np.broadcast(r, theta).shape)


def _describe(value):
    return repr(value) if isinstance(value, complex) else repr(to_text(value))


@dataclass(frozen=True)
class Constant:
    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))


@dataclass(frozen=True)
class DiskInclusion:
    radius: float
    inner: Union[complex, object]
    outer: Union[complex, object] = 1.0

    def __post_init__(self):
        if not 0.0 < self.radius < 1.0:
            raise ConfigError(f"inclusion radius must lie in (0, 1), got {self.radius}")
        object.__setattr__(self, "inner", parse_value(self.inner))
        object.__setattr__(self, "outer", parse_value(self.outer))


@dataclass(frozen=True)
class PolarInclusion:
    """Inclusion ``{r <= rho(theta)}``; ``rho`` is an expression in theta."""

    rho: object
    inner: Union[complex, object]
    outer: Union[complex, object] = 1.0

    def __post_init__(self):
        rho = self.rho
        if isinstance(rho, str):
            rho = parse_expression(rho, rational_powers=True)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "inner", parse_value(self.inner))
        object.__setattr__(self, "outer", parse_value(self.outer))


@dataclass(frozen=True)
class Expression:
    ast: object

    def __post_init__(self):
        if isinstance(self.ast, str):
            object.__setattr__(self, "ast", parse_expression(self.ast))


MediumProfile = Union[Constant, DiskInclusion, PolarInclusion, Expression]


def boundary_radius(profile, theta):
    """Inclusion radius at each angle; raises if it leaves (0, 1)."""
    theta = np.asarray(theta, dtype=float)
    if isinstance(profile, DiskInclusion):
        return np.full(theta.shape, profile.radius)
    if isinstance(profile, PolarInclusion):
        rho = evaluate(profile.rho, np.zeros_like(theta), theta)
        if np.iscomplexobj(rho):
            raise ConfigError("inclusion boundary rho(theta) must be real")
        rho = np.broadcast_to(np.asarray(rho, dtype=float), theta.shape)
        if np.any(rho <= 0) or np.any(rho >= 1):
            raise ConfigError("inclusion boundary rho(theta) must stay inside (0, 1)")
        return rho
    raise ConfigError(f"{type(profile).__name__} has no inclusion boundary")


def eval_medium(profile, r, theta):
    """Refractive index at polar points (vectorised, always complex).

    Inclusions are closed: points with ``r <= rho(theta)`` take the inner
    value.
    """
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if np.any(r < 0) or np.any(r > 1):
        raise DomainError("the medium is defined on the closed unit disk, r in [0, 1]")
    shape = np.broadcast(r, theta).shape
    if isinstance(profile, Constant):
        out = np.full(shape, profile.value)
    elif isinstance(profile, Expression):
        try:
            out = evaluate(profile.ast, r, theta)
        except ExpressionError as exc:
            raise ExpressionError(f"{exc} at (r, theta) in the sampled set") from exc
        out = np.broadcast_to(np.asarray(out, dtype=complex), shape).copy()
    elif isinstance(profile, (DiskInclusion, PolarInclusion)):
        rb, tb = np.broadcast_arrays(r, theta)
        inside = rb <= boundary_radius(profile, tb)
        out = np.where(inside, _value_at(profile.inner, rb, tb), _value_at(profile.outer, rb, tb))
    else:
        raise TypeError(f"not a medium profile: {profile!r}")
    return out.item() if out.ndim == 0 else out


def inclusion_area(profile):
    """Area of the inclusion; pi for a constant medium (inclusion = disk).

    Uses the 512-node periodic trapezoid rule for ``(1/2) * int rho^2``.
    """
    if isinstance(profile, Constant):
        return DISK_AREA
    if isinstance(profile, (DiskInclusion, PolarInclusion)):
        theta = np.arange(AREA_NODES) * (2.0 * np.pi / AREA_NODES)
        rho = boundary_radius(profile, theta)
        return 0.5 * np.sum(rho**2) * (2.0 * np.pi / AREA_NODES)
    raise ConfigError("inclusion area is undefined for a free expression profile")


def check_admissible(profile, n_samples=64):
    """Check Re(n) > 0 and Im(n) >= 0 on a polar sample grid."""
    r = np.linspace(0.0, 1.0, n_samples)
    theta = np.arange(n_samples) * (2.0 * np.pi / n_samples)
    vals = np.asarray(eval_medium(profile, r[:, None], theta[None, :]))
    if np.any(vals.real <= 0) or np.any(vals.imag < 0):
        raise ConfigError("refractive index must satisfy Re(n) > 0 and Im(n) >= 0")


def describe(profile):
    """One-line human-readable description."""
    if isinstance(profile, Constant):
        return f"constant n = {profile.value}"
    if isinstance(profile, DiskInclusion):
        return (f"disk inclusion rho = {profile.radius}, inner {_describe(profile.inner)}, "
                f"outer {_describe(profile.outer)}")
    if isinstance(profile, PolarInclusion):
        return (f"polar inclusion rho(theta) = {to_text(profile.rho)}, inner "
                f"{_describe(profile.inner)}, outer {_describe(profile.outer)}")
    return f"n = {to_text(profile.ast)}"
