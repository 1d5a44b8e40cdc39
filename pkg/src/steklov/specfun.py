"""Bessel functions of integer order and the zeros of J'_p.

Evaluation is delegated to :mod:`scipy.special` (AMOS / Cephes), wrapped so
that the supported range and the derivative identities are enforced in one
place. Zeros of J'_p are located here by a sign scan followed by bisection
and a Newton polish.
"""

from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import DomainError, NumericalError

__all__ = [
    "BesselRootTable",
    "bessel_j",
    "bessel_j_prime",
    "bessel_y",
    "bessel_y_prime",
    "jprime_zeros",
    "MAX_ORDER",
    "MAX_ARG",
]

MAX_ORDER = 20
MAX_ARG = 200.0
MIN_Y_ARG = 1e-6

_SCAN_STEP = 0.05


def _check_order(m):
    if int(m) != m or m < 0 or m > MAX_ORDER:
        raise DomainError(f"Bessel order must be an integer in [0, {MAX_ORDER}], got {m}")
    return int(m)


def _check_arg(z):
    z = np.asarray(z)
    if not np.all(np.isfinite(z)):
        raise DomainError("Bessel argument must be finite")
    if np.any(np.abs(z) > MAX_ARG):
        raise DomainError(f"|z| must not exceed {MAX_ARG}")
    return z


def _scalar_or_array(out, like):
    return out.item() if np.ndim(like) == 0 else out


def bessel_j(m, z):
    """J_m(z) for integer ``0 <= m <= 20`` and real or complex ``z``."""
    m = _check_order(m)
    z = _check_arg(z)
    out = special.jv(m, z)
    return _scalar_or_array(np.asarray(out), z)


def bessel_j_prime(m, z):
    """J'_m(z) via J'_m = J_{m-1} - (m/z) J_m, with J'_0 = -J_1.

    The removable singularity at ``z = 0`` takes the series value
    (1/2 for ``m = 1``, 0 otherwise).
    """
    m = _check_order(m)
    z = _check_arg(z)
    if m == 0:
        out = -special.jv(1, z)
        return _scalar_or_array(np.asarray(out), z)
    zz = np.atleast_1d(z)
    zero = zz == 0
    safe = np.where(zero, 1.0, zz)
    out = special.jv(m - 1, safe) - (m / safe) * special.jv(m, safe)
    out = np.where(zero, 0.5 if m == 1 else 0.0, out)
    return out.item() if np.ndim(z) == 0 else out.reshape(np.shape(z))


def _check_y_arg(x):
    x = np.asarray(x)
    if np.iscomplexobj(x):
        raise DomainError("Y_m is only supported for real arguments")
    if np.any(x <= 0):
        raise DomainError("Y_m has a logarithmic singularity at x <= 0")
    if np.any(x < MIN_Y_ARG) or np.any(x > MAX_ARG):
        raise DomainError(f"Y_m argument must lie in [{MIN_Y_ARG}, {MAX_ARG}]")
    return x


def bessel_y(m, x):
    """Y_m(x) for real ``x > 0``."""
    m = _check_order(m)
    x = _check_y_arg(x)
    return _scalar_or_array(np.asarray(special.yv(m, x)), x)


def bessel_y_prime(m, x):
    """Y'_m(x) via Y'_m = Y_{m-1} - (m/x) Y_m (Y'_0 = -Y_1)."""
    m = _check_order(m)
    x = _check_y_arg(x)
    if m == 0:
        out = -special.yv(1, x)
    else:
        out = special.yv(m - 1, x) - (m / x) * special.yv(m, x)
    return _scalar_or_array(np.asarray(out), x)


@dataclass(frozen=True)
class BesselRootTable:
    """The first non-negative roots of J'_p, ascending.

    For ``p = 0`` the table starts with the root at 0 (the constant Neumann
    mode). For ``p >= 1`` it holds positive roots only, since the basis
    function J_p(0 * r) vanishes identically.
    """

    p: int
    roots: tuple

    def __len__(self):
        return len(self.roots)

    def __getitem__(self, q):
        return self.roots[q]

    def as_array(self):
        return np.array(self.roots, dtype=float)


def _jpp(p, x):
    # J''_p from Bessel's equation: x^2 J'' + x J' + (x^2 - p^2) J = 0
    return -bessel_j_prime(p, x) / x - (1.0 - p * p / (x * x)) * bessel_j(p, x)


def _scan_bound(p, count):
    # McMahon-type bound: j'_{p,q} < p + pi*(q + p/2 + 1) comfortably
    return p + np.pi * (count + 0.5 * p + 2.0)


def jprime_zeros(p, count):
    """First ``count`` non-negative zeros of J'_p.

    Sign changes of J'_p are located on a 0.05-step grid, refined by
    bisection to width 1e-10 and polished with one Newton step that uses
    J''_p from the Bessel ODE.
    """
    p = _check_order(p)
    if int(count) != count or count < 1 or count > 30:
        raise DomainError(f"count must be an integer in [1, 30], got {count}")
    count = int(count)

    roots = [0.0] if p == 0 else []
    if len(roots) >= count:
        return BesselRootTable(p, tuple(roots))

    bound = _scan_bound(p, count)
    grid = np.arange(_SCAN_STEP, bound + _SCAN_STEP, _SCAN_STEP)
    vals = bessel_j_prime(p, grid)
    for i in range(len(grid) - 1):
        if len(roots) == count:
            break
        fa, fb = vals[i], vals[i + 1]
        if fa == 0.0:
            roots.append(float(grid[i]))
            continue
        if fa * fb > 0:
            continue
        a, b = float(grid[i]), float(grid[i + 1])
        while b - a > 1e-10:
            mid = 0.5 * (a + b)
            fm = bessel_j_prime(p, mid)
            if fm == 0.0:
                a = b = mid
                break
            if fa * fm < 0:
                b = mid
            else:
                a, fa = mid, fm
        x = 0.5 * (a + b)
        x -= bessel_j_prime(p, x) / _jpp(p, x)
        roots.append(float(x))

    if len(roots) < count:
        raise NumericalError(
            f"scan bound {bound:.2f} exhausted with {len(roots)} of {count} zeros of J'_{p}"
        )
    return BesselRootTable(p, tuple(roots))
