"""L2-orthonormal Neumann eigenfunctions of the Laplacian on the unit disk.

Each function has the form ``N_pq * J_p(sqrt(sigma_pq) r) * cos(p theta)``
(or ``sin``), where ``sqrt(sigma_pq)`` is the q-th non-negative zero of
J'_p. The constant mode (p, q) = (0, 1) equals ``1/sqrt(pi)``.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import specfun
from .errors import ConfigError, DomainError

__all__ = [
    "BasisFunction",
    "BasisSet",
    "ORDERINGS",
    "build_basis",
    "eval_basis",
    "radial_part",
    "angular_part",
    "eval_basis_set",
    "boundary_trace_coefficient",
]

ORDERINGS = ("radial_major", "sigma_ascending", "p_major")
KINDS = ("cos", "sin")


@dataclass(frozen=True)
class BasisFunction:
    p: int
    q: int
    kind: str
    sigma: float
    norm_const: float

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown angular kind {self.kind!r}")
        if self.kind == "sin" and self.p == 0:
            raise ConfigError("sine modes require p >= 1")

    @property
    def root(self):
        """sqrt(sigma), the zero of J'_p this mode is built on."""
        return float(np.sqrt(self.sigma))

    @property
    def angular_weight(self):
        """Integral of the squared angular factor over [0, 2pi)."""
        return 2.0 * np.pi if self.p == 0 else np.pi

    @property
    def label(self):
        return f"({self.p},{self.q},{self.kind})"


@dataclass(frozen=True)
class BasisSet:
    functions: tuple
    ordering: str

    def __len__(self):
        return len(self.functions)

    def __iter__(self):
        return iter(self.functions)

    def __getitem__(self, i):
        return self.functions[i]

    @property
    def truncation(self):
        return len(self.functions)

    @property
    def sigmas(self):
        return np.array([b.sigma for b in self.functions])

    @property
    def blocks(self):
        """Block key ``(p, kind)`` of every function, in basis order."""
        return [(b.p, b.kind) for b in self.functions]

    def indices(self):
        return [(b.p, b.q, b.kind) for b in self.functions]


@lru_cache(maxsize=None)
def _roots(p, count):
    return specfun.jprime_zeros(p, count).roots


def _norm_const(p, root):
    if root == 0.0:
        return 1.0 / np.sqrt(np.pi)
    c_p = 2.0 * np.pi if p == 0 else np.pi
    jp = specfun.bessel_j(p, root)
    # valid because J'_p(root) = 0
    return 1.0 / np.sqrt(c_p * (1.0 - p * p / root**2) * jp * jp / 2.0)


def _sort_key(ordering):
    kind_rank = {"cos": 0, "sin": 1}
    if ordering == "sigma_ascending":
        return lambda b: (b.sigma, b.p, kind_rank[b.kind], b.q)
    if ordering == "p_major":
        return lambda b: (b.p, kind_rank[b.kind], b.q)
    # radial_major: all angular orders for q = 1, then q = 2, ...
    return lambda b: (b.q, b.p, kind_rank[b.kind])


def build_basis(p_max=4, q_max=5, include_sin=False, truncation=None, ordering="radial_major"):
    """Enumerate the Neumann modes with ``p <= p_max``, ``q <= q_max``.

    Parameters
    ----------
    p_max, q_max : int
        Largest angular order and radial index.
    include_sin : bool
        Add the ``sin(p theta)`` partners for ``p >= 1``.
    truncation : int, optional
        Keep the first ``truncation`` functions under ``ordering``;
        all of them when omitted.
    ordering : {"radial_major", "sigma_ascending", "p_major"}
        ``radial_major`` lists q = 1 for every p before q = 2, so the first
        ``5 q`` functions of the default 5 x 5 set are the ``q``-truncated
        tensor basis.
    """
    if ordering not in ORDERINGS:
        raise ConfigError(f"unknown ordering {ordering!r}; expected one of {ORDERINGS}")
    if p_max < 0 or q_max < 1:
        raise ConfigError("need p_max >= 0 and q_max >= 1")
    if p_max > specfun.MAX_ORDER or q_max > 30:
        raise ConfigError(f"basis limited to p <= {specfun.MAX_ORDER}, q <= 30")

    funcs = []
    for p in range(p_max + 1):
        roots = _roots(p, q_max)
        for q, x in enumerate(roots, start=1):
            norm = _norm_const(p, x)
            funcs.append(BasisFunction(p, q, "cos", x * x, norm))
            if include_sin and p >= 1:
                funcs.append(BasisFunction(p, q, "sin", x * x, norm))
    funcs.sort(key=_sort_key(ordering))

    if truncation is None:
        truncation = len(funcs)
    if truncation < 1 or truncation > len(funcs):
        raise ConfigError(
            f"truncation {truncation} outside 1..{len(funcs)} available basis functions"
        )
    return BasisSet(tuple(funcs[:truncation]), ordering)


def radial_part(b, r):
    """``N_pq J_p(sqrt(sigma) r)`` (no range check)."""
    if b.sigma == 0.0:
        return np.full(np.shape(r), b.norm_const) if np.ndim(r) else b.norm_const
    return b.norm_const * specfun.bessel_j(b.p, b.root * np.asarray(r))


def angular_part(b, theta):
    if b.kind == "sin":
        return np.sin(b.p * np.asarray(theta))
    return np.cos(b.p * np.asarray(theta))


def eval_basis(b, r, theta):
    """Evaluate one basis function at polar points ``(r, theta)``, r in [0, 1]."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0) or np.any(r > 1):
        raise DomainError("basis functions are defined on the closed unit disk, r in [0, 1]")
    out = radial_part(b, r) * angular_part(b, theta)
    return float(out) if np.ndim(out) == 0 else out


def eval_basis_set(basis, r, theta):
    """Matrix of shape ``(len(basis),) + broadcast(r, theta).shape``."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0) or np.any(r > 1):
        raise DomainError("basis functions are defined on the closed unit disk, r in [0, 1]")
    r, theta = np.broadcast_arrays(r, np.asarray(theta, dtype=float))
    out = np.empty((len(basis),) + r.shape)
    # tensor grids repeat radii, so Bessel functions are evaluated once per
    # distinct radius; radial factors are shared between cos/sin partners
    r_unique, inverse = np.unique(r, return_inverse=True)
    inverse = inverse.reshape(r.shape)
    cache = {}
    for i, b in enumerate(basis):
        key = (b.p, b.q)
        if key not in cache:
            cache[key] = radial_part(b, r_unique)[inverse]
        out[i] = cache[key] * angular_part(b, theta)
    return out


def boundary_trace_coefficient(b):
    """Coefficient of cos(p theta) / sin(p theta) in the trace on the unit circle."""
    if b.sigma == 0.0:
        return b.norm_const
    return float(b.norm_const * specfun.bessel_j(b.p, b.root))
