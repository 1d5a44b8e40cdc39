"""Estimate a real refractive index from the leading Steklov eigenvalue.

Step 1 finds the constant index whose m = 0 separation-of-variables
eigenvalue equals the target. Step 2 treats that constant as the average of
n over the disk and, knowing n = 1 outside the inclusion, redistributes it
over the inclusion area.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import specfun
from .errors import BracketError, DomainError, PoleError
from .medium import DISK_AREA, inclusion_area
from .oracles import sov_eigenvalue

__all__ = [
    "EstimationResult",
    "estimate_constant",
    "area_correction",
    "estimate_two_step",
    "DEFAULT_BRACKET",
]

DEFAULT_BRACKET = (1.0001, 25.0)
_POLE_GAP = 1e-9
# the lower bracket end only keeps the solver off the background value n = 1;
# roots within this relative slack below it are still accepted
EDGE_SLACK = 1e-3


@dataclass(frozen=True)
class EstimationResult:
    lambda_target: float
    n_approx: float
    n_approx2: Optional[float]
    iterations: int
    residual: float

    def as_dict(self):
        return {
            "lambda_target": self.lambda_target,
            "n_approx": self.n_approx,
            "n_approx2": self.n_approx2,
            "iterations": self.iterations,
            "residual": self.residual,
        }


def _branch(k, n):
    return sov_eigenvalue(k, n, 0).real


def _poles(k, lo, hi):
    """Indices n in (lo, hi) with J_0(k sqrt(n)) = 0, ascending."""
    zmax = k * np.sqrt(hi)
    grid = np.linspace(k * np.sqrt(lo), zmax, max(64, int(40 * zmax)))
    vals = specfun.bessel_j(0, grid)
    poles = []
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if fa * fb < 0:
            while b - a > 1e-15 * b:
                mid = 0.5 * (a + b)
                fm = specfun.bessel_j(0, mid)
                if fa * fm <= 0:
                    b = mid
                else:
                    a, fa = mid, fm
            poles.append((0.5 * (a + b) / k) ** 2)
    return poles


def _solve_branch(g, a, b, ga, gb, tol):
    iterations = 0
    # bisection to a 1e-6 bracket
    while b - a > 1e-6:
        mid = 0.5 * (a + b)
        gm = g(mid)
        iterations += 1
        if gm == 0.0:
            return mid, iterations
        if (gm < 0) == (ga < 0):
            a, ga = mid, gm
        else:
            b, gb = mid, gm
    # secant polish, kept inside the bracket
    x0, g0, x1, g1 = a, ga, b, gb
    x = x1 if abs(g1) < abs(g0) else x0
    for _ in range(50):
        gx = g(x)
        if abs(gx) <= tol:
            return x, iterations
        if g1 == g0:
            break
        x2 = x1 - g1 * (x1 - x0) / (g1 - g0)
        if not a <= x2 <= b:
            x2 = 0.5 * (a + b)
        g2 = g(x2)
        iterations += 1
        if (g2 < 0) == (ga < 0):
            a, ga = x2, g2
        else:
            b, gb = x2, g2
        x0, g0, x1, g1 = x1, g1, x2, g2
        x = x2
    return x, iterations


def estimate_constant(lambda_target, k, n_bracket=DEFAULT_BRACKET, tol=1e-10):
    """Constant index ``n`` with ``lambda_1(n) = lambda_target``.

    Returns ``(n_approx, iterations, residual)``. The bracket is split at the
    poles of the m = 0 branch; the lowest sub-bracket with a sign change
    holds the root.
    """
    lo, hi = map(float, n_bracket)
    if not 0 < lo < hi:
        raise DomainError(f"invalid bracket {n_bracket}")
    lambda_target = float(np.real(lambda_target))

    def g(n):
        return _branch(k, n) - lambda_target

    edges = [lo * (1 - EDGE_SLACK)]
    for p in _poles(k, lo, hi):
        edges += [p * (1 - _POLE_GAP), p * (1 + _POLE_GAP)]
    edges.append(hi)
    for a, b in zip(edges[::2], edges[1::2]):
        try:
            ga, gb = g(a), g(b)
        except PoleError:
            continue
        if ga == 0.0:
            return a, 0, 0.0
        if gb == 0.0:
            return b, 0, 0.0
        if ga * gb < 0:
            n, its = _solve_branch(g, a, b, ga, gb, tol)
            return n, its, abs(g(n))
    raise BracketError(
        f"lambda_1 = {lambda_target} is not attained for n in [{lo}, {hi}] at k = {k}"
    )


def area_correction(n_approx, area_D, area_Omega):
    """Index inside the inclusion assuming ``n_approx`` is the disk average
    and n = 1 outside the inclusion."""
    if not area_Omega > 0 or not area_D > 0:
        raise DomainError("areas must be positive")
    if area_Omega > area_D:
        raise DomainError("inclusion area exceeds the disk area")
    if area_Omega == area_D:
        return n_approx
    return (n_approx * area_D - (area_D - area_Omega)) / area_Omega


def estimate_two_step(lambda_target, k, geometry=None, n_bracket=DEFAULT_BRACKET):
    """Constant estimate followed by the area correction.

    ``geometry`` is an inclusion profile (disk or polar) or ``None`` / a
    constant profile for an inclusion filling the disk.
    """
    n1, its, res = estimate_constant(lambda_target, k, n_bracket)
    area = DISK_AREA if geometry is None else inclusion_area(geometry)
    n2 = area_correction(n1, DISK_AREA, area)
    return EstimationResult(float(np.real(lambda_target)), n1, n2, its, res)
