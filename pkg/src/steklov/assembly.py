"""Galerkin pencil (A, B) for the Steklov problem on the unit disk.

With Neumann eigenfunctions as trial and test functions, Green's identity
collapses the stiffness part to ``sigma_j delta_ij``, so

    A_ij = sigma_j delta_ij - k^2 int_D n phi_i phi_j dx,
    B_ij = int_{unit circle} phi_i phi_j ds.

Only the weighted mass term needs quadrature; B is known in closed form.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .diskbasis import BasisSet, boundary_trace_coefficient, eval_basis_set
from .errors import ConfigError, ExpressionError
from .medium import Constant, DiskInclusion, PolarInclusion, boundary_radius, eval_medium

__all__ = [
    "QuadratureRule",
    "GalerkinSystem",
    "assemble",
    "boundary_mass_analytic",
    "quadrature_nodes",
    "write_matrix",
    "read_matrix",
]

ANGULAR_RULES = ("trapezoid", "gauss")


@dataclass(frozen=True)
class QuadratureRule:
    """Tensor rule in polar coordinates.

    Radial direction: Gauss-Legendre with ``radial_points`` nodes per
    segment; the segment is split at the inclusion boundary when
    ``split_at_interface`` is set. Angular direction: periodic trapezoid
    (default) or Gauss-Legendre on [0, 2pi].
    """

    radial_points: int = 64
    angular_points: int = 256
    split_at_interface: bool = True
    angular_rule: str = "trapezoid"

    def __post_init__(self):
        if self.angular_rule not in ANGULAR_RULES:
            raise ConfigError(f"unknown angular rule {self.angular_rule!r}")
        if self.angular_rule == "trapezoid":
            if self.radial_points < 16 or self.angular_points < 64:
                raise ConfigError("trapezoid quadrature needs radial_points >= 16 and angular_points >= 64")
        elif self.radial_points < 1 or self.angular_points < 1:
            raise ConfigError("quadrature needs at least one node per direction")

    @classmethod
    def tensor_gauss(cls, points=12):
        """Unsplit ``points x points`` Gauss-Legendre rule on [0,1] x [0,2pi].

        This coarse rule does not resolve inclusion interfaces. It reproduces
        the commonly tabulated reference eigenvalues for inclusion media,
        which carry its quadrature error.
        """
        return cls(points, points, split_at_interface=False, angular_rule="gauss")

    def refined(self, factor=2):
        return QuadratureRule(
            self.radial_points * factor,
            self.angular_points * factor,
            self.split_at_interface,
            self.angular_rule,
        )


@dataclass(frozen=True, eq=False)
class GalerkinSystem:
    A: np.ndarray
    B: np.ndarray
    basis: BasisSet
    k: float
    medium: object
    quadrature: QuadratureRule

    @property
    def size(self):
        return self.A.shape[0]


def _angular_nodes(rule):
    n = rule.angular_points
    if rule.angular_rule == "trapezoid":
        theta = np.arange(n) * (2.0 * np.pi / n)
        return theta, np.full(n, 2.0 * np.pi / n)
    x, w = np.polynomial.legendre.leggauss(n)
    return np.pi * (x + 1.0), np.pi * w


def _split_radius(medium, theta, rule):
    if not rule.split_at_interface or not isinstance(medium, (DiskInclusion, PolarInclusion)):
        return None
    return boundary_radius(medium, theta)


def quadrature_nodes(medium, rule):
    """Polar nodes ``(r, theta)`` and weights (Jacobian ``r`` included).

    Arrays have shape ``(angular_points, radial nodes per ray)``.
    """
    theta, wt = _angular_nodes(rule)
    x, w = np.polynomial.legendre.leggauss(rule.radial_points)
    rho = _split_radius(medium, theta, rule)
    if rho is None:
        r = np.broadcast_to(0.5 * (x + 1.0), (theta.size, x.size))
        wr = np.broadcast_to(0.5 * w, (theta.size, x.size))
    else:
        rho = rho[:, None]
        r_in = 0.5 * rho * (x + 1.0)
        r_out = rho + 0.5 * (1.0 - rho) * (x + 1.0)
        r = np.concatenate([r_in, r_out], axis=1)
        wr = np.concatenate([0.5 * rho * w, 0.5 * (1.0 - rho) * w], axis=1)
    th = np.broadcast_to(theta[:, None], r.shape)
    weights = wr * r * wt[:, None]
    return np.ascontiguousarray(r), np.ascontiguousarray(th), weights


def boundary_mass_analytic(basis):
    """Closed-form boundary mass matrix.

    Traces on the unit circle are ``t_i cos(p theta)`` (or ``sin``), so
    distinct (p, kind) blocks are orthogonal and each block is the rank-one
    matrix ``c_p t t^T`` with c_p = 2pi for p = 0 and pi otherwise.
    """
    n = len(basis)
    t = np.array([boundary_trace_coefficient(b) for b in basis])
    c = np.array([b.angular_weight for b in basis])
    keys = basis.blocks
    same = np.array([[keys[i] == keys[j] for j in range(n)] for i in range(n)])
    return np.where(same, c[:, None] * np.outer(t, t), 0.0)


def _mass_constant(basis, value):
    # L2 orthonormality makes the n-weighted mass matrix n * I
    return value * np.eye(len(basis), dtype=complex)


def weighted_mass(basis, medium, rule):
    """Quadrature of ``int_D n phi_i phi_j dx`` (symmetrised)."""
    r, theta, w = quadrature_nodes(medium, rule)
    try:
        nvals = np.asarray(eval_medium(medium, r, theta), dtype=complex)
    except ExpressionError as exc:
        raise ExpressionError(f"medium evaluation failed during assembly: {exc}") from exc
    phi = eval_basis_set(basis, r, theta).reshape(len(basis), -1)
    nw = (nvals * w).ravel()
    # einsum without BLAS keeps the summation order fixed
    Q = np.einsum("ip,jp->ij", phi * nw.real, phi, optimize=False)
    if np.any(nw.imag):
        Q = Q + 1j * np.einsum("ip,jp->ij", phi * nw.imag, phi, optimize=False)
    return 0.5 * (Q + Q.T)


def assemble(basis, medium, k, quad=None, exact_constant=False):
    """Build the Galerkin pencil for ``basis``, ``medium`` and wavenumber ``k``.

    ``exact_constant`` short-cuts the quadrature for constant media, where
    the weighted mass matrix is exactly ``n I``.
    """
    if len(basis) == 0:
        raise ConfigError("empty basis")
    if not k > 0:
        raise ConfigError(f"wavenumber must be positive, got {k}")
    quad = quad or QuadratureRule()
    if exact_constant and isinstance(medium, Constant):
        Q = _mass_constant(basis, medium.value)
    else:
        Q = weighted_mass(basis, medium, quad)
    A = np.diag(basis.sigmas).astype(complex) - k * k * Q
    B = boundary_mass_analytic(basis)
    A.setflags(write=False)
    B.setflags(write=False)
    return GalerkinSystem(A, B, basis, float(k), medium, quad)


def _fmt(z):
    return f"{z.real:.17g}{z.imag:+.17g}i"


def write_matrix(path, M):
    """Write a matrix as text: one row per line, entries ``re+imi``."""
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    lines = [" ".join(_fmt(z) for z in row) for row in M]
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def read_matrix(path):
    rows = []
    for line in Path(path).read_text(encoding="ascii").splitlines():
        if line.strip():
            rows.append([complex(tok.replace("i", "j")) for tok in line.split()])
    return np.array(rows, dtype=complex)
