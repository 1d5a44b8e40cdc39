"""Reference Steklov eigenvalues on the unit disk.

* constant medium: separation of variables, one eigenvalue per angular order m;
* small centred disk inclusion: two-term small-radius expansion;
* centred disk inclusion of any radius: exact two-layer Bessel matching.
"""

import cmath
import warnings

import numpy as np

from . import specfun
from .errors import DomainError, PoleError, ResonanceError

__all__ = ["sov_eigenvalue", "sov_first", "asym_first", "annulus_exact"]

POLE_EPS = 1e-12


def _sqrt(n):
    # principal branch; Im(n) >= 0 gives Im(sqrt(n)) >= 0
    return cmath.sqrt(complex(n))


def sov_eigenvalue(k, n, m):
    """Eigenvalue of angular order ``m`` for constant ``n``:
    ``-k sqrt(n) J'_m(k sqrt(n)) / J_m(k sqrt(n))``."""
    if not k > 0:
        raise DomainError("wavenumber must be positive")
    z = k * _sqrt(n)
    jm = specfun.bessel_j(m, z)
    if abs(jm) <= POLE_EPS:
        raise PoleError(f"J_{m}(k sqrt(n)) = {jm:.3e}: k sqrt(n) = {z} is near a Bessel zero")
    return complex(-z * specfun.bessel_j_prime(m, z) / jm)


def sov_first(k, n, m_max=10):
    """Largest-real-part eigenvalue over angular orders ``0..m_max``."""
    best = None
    for m in range(m_max + 1):
        try:
            lam = sov_eigenvalue(k, n, m)
        except PoleError as exc:
            warnings.warn(f"skipping order {m}: {exc}")
            continue
        if best is None or lam.real > best.real:
            best = lam
    if best is None:
        raise PoleError(f"every angular order 0..{m_max} hit a pole")
    return best


def asym_first(k, n1, rho):
    """Two-term small-inclusion expansion of the leading eigenvalue for an
    inclusion of radius ``rho`` with index ``(1 + n1)^2``."""
    j0 = specfun.bessel_j(0, k)
    if abs(j0) <= POLE_EPS:
        raise PoleError("J_0(k) vanishes: k is a Dirichlet eigenvalue of the background")
    base = -k * specfun.bessel_j_prime(0, k) / j0
    return float(np.real(base) + 0.5 * n1 * (2.0 + n1) * (k * rho) ** 2)


def annulus_exact(k, n_in, rho, m=0):
    """Exact eigenvalue of order ``m`` for a centred disk of radius ``rho``
    and index ``n_in`` in a unit-index background.

    Inside, ``w = J_m(kappa r)`` with ``kappa = k sqrt(n_in)``; outside,
    ``w = alpha J_m(k r) + beta Y_m(k r)``. Value and slope are matched at
    ``r = rho`` and ``lambda = -w'(1)/w(1)``.
    """
    if not 0 < rho < 1:
        raise DomainError("rho must lie in (0, 1)")
    if not n_in > 0:
        raise DomainError("annulus_exact needs a real positive inner index")
    kappa = k * np.sqrt(n_in)
    kr = k * rho
    # rows: continuity of w and of dw/dr at r = rho
    M = np.array(
        [
            [specfun.bessel_j(m, kr), specfun.bessel_y(m, kr)],
            [k * specfun.bessel_j_prime(m, kr), k * specfun.bessel_y_prime(m, kr)],
        ]
    )
    rhs = np.array([specfun.bessel_j(m, kappa * rho), kappa * specfun.bessel_j_prime(m, kappa * rho)])
    alpha, beta = _solve2(M, rhs)
    w1 = alpha * specfun.bessel_j(m, k) + beta * specfun.bessel_y(m, k)
    dw1 = k * (alpha * specfun.bessel_j_prime(m, k) + beta * specfun.bessel_y_prime(m, k))
    scale = abs(alpha * specfun.bessel_j(m, k)) + abs(beta * specfun.bessel_y(m, k))
    if abs(w1) <= POLE_EPS * max(scale, 1.0):
        raise PoleError("w(1) vanishes: no finite Steklov eigenvalue for this order")
    return float(-dw1 / w1)


def _solve2(M, rhs):
    # Gaussian elimination with partial pivoting on a 2x2 system
    M = M.astype(float).copy()
    rhs = rhs.astype(float).copy()
    if abs(M[1, 0]) > abs(M[0, 0]):
        M = M[::-1]
        rhs = rhs[::-1]
    scale = np.max(np.abs(M))
    if abs(M[0, 0]) <= 1e-14 * scale:
        raise ResonanceError("singular matching system")
    f = M[1, 0] / M[0, 0]
    d = M[1, 1] - f * M[0, 1]
    if abs(d) <= 1e-14 * scale:
        raise ResonanceError("singular matching system")
    beta = (rhs[1] - f * rhs[0]) / d
    alpha = (rhs[0] - M[0, 1] * beta) / M[0, 0]
    return alpha, beta
