"""Finite Steklov spectrum of the Galerkin pencil ``(A + lambda B) c = 0``.

B has rank equal to the number of angular blocks, so the pencil has only
that many finite eigenvalues. They are obtained through the discrete
Neumann-to-Dirichlet matrix ``M = A^{-1} B``: each non-zero eigenvalue tau
of M gives ``lambda = -1/tau``.
"""

from dataclasses import dataclass
from pathlib import Path
import warnings

import numpy as np

from .diskbasis import eval_basis_set
from .errors import ConfigError, NumericalError, ResonanceError

__all__ = [
    "EigenPair",
    "SteklovSpectrum",
    "Field",
    "solve_spectrum",
    "eigenfunction_field",
    "convergence_residual",
    "condition_number",
    "COND_LIMIT",
]

COND_LIMIT = 1e12
RESIDUAL_FACTOR = 1e-8


@dataclass(frozen=True, eq=False)
class EigenPair:
    lam: complex
    coeffs: np.ndarray
    residual: float


@dataclass(frozen=True, eq=False)
class SteklovSpectrum:
    pairs: tuple
    basis: object

    @property
    def count(self):
        return len(self.pairs)

    @property
    def eigenvalues(self):
        return np.array([p.lam for p in self.pairs])

    def __len__(self):
        return len(self.pairs)

    def __getitem__(self, i):
        return self.pairs[i]


def condition_number(A):
    return float(np.linalg.cond(A))


def convergence_residual(sys, pair):
    """``||(A + lambda B) c|| / ||c||``."""
    c = pair.coeffs
    return float(np.linalg.norm((sys.A + pair.lam * sys.B) @ c) / np.linalg.norm(c))


def _normalise(c, B):
    # boundary normalisation c^H B c = 1, then make the largest entry real > 0
    nrm2 = np.real(np.conj(c) @ (B @ c))
    c = c / np.sqrt(nrm2)
    j = int(np.argmax(np.abs(c)))
    return c * (np.abs(c[j]) / c[j])


def solve_spectrum(sys, tau_tol=1e-10, cond_limit=COND_LIMIT):
    """Finite eigenvalues of the pencil, sorted by descending real part.

    Raises :class:`ResonanceError` when ``A`` is numerically singular, i.e.
    ``k^2`` sits near an interior eigenvalue of the medium.
    """
    A, B = sys.A, sys.B
    cond = condition_number(A)
    if not np.isfinite(cond) or cond > cond_limit:
        raise ResonanceError(
            f"wavenumber near interior eigenvalue: cond(A) = {cond:.3e} exceeds {cond_limit:.0e}"
        )
    # real pencils stay real so real eigenvalues carry no rounding-level Im
    if not np.any(np.imag(A)):
        A = np.real(A)
    M = np.linalg.solve(A, B)
    try:
        tau, V = np.linalg.eig(M)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed to converge: {exc}") from exc
    if tau.size == 0:
        return SteklovSpectrum((), sys.basis)
    keep = np.abs(tau) > tau_tol * np.max(np.abs(tau))

    normA = np.linalg.norm(A)
    normB = np.linalg.norm(B)
    pairs = []
    for t, v in zip(tau[keep], V.T[keep]):
        lam = -1.0 / t
        c = _normalise(v, B)
        res = float(np.linalg.norm((A + lam * B) @ c) / np.linalg.norm(c))
        bound = RESIDUAL_FACTOR * (normA + abs(lam) * normB)
        if res > bound:
            warnings.warn(f"eigenpair residual {res:.2e} above {bound:.2e} for lambda = {lam}")
        lam = complex(lam.real + 0.0, lam.imag + 0.0)  # no signed zeros
        pairs.append(EigenPair(lam, c, res))
    pairs.sort(key=lambda p: (-p.lam.real, -p.lam.imag))
    return SteklovSpectrum(tuple(pairs), sys.basis)


@dataclass(frozen=True, eq=False)
class Field:
    """Eigenfunction sampled on a Cartesian grid; NaN outside the disk."""

    x: np.ndarray
    y: np.ndarray
    values: np.ndarray

    def to_csv(self, path=None):
        """CSV with header ``x,y,re,im``; points outside the disk have empty values.

        Returns the text and writes it to ``path`` when given.
        """
        lines = ["x,y,re,im"]
        for j, yy in enumerate(self.y):
            for i, xx in enumerate(self.x):
                v = self.values[j, i]
                if np.isnan(v.real):
                    lines.append(f"{xx:.12g},{yy:.12g},,")
                else:
                    lines.append(f"{xx:.12g},{yy:.12g},{v.real:.12g},{v.imag:.12g}")
        text = "\n".join(lines) + "\n"
        if path is not None:
            Path(path).write_text(text, encoding="ascii")
        return text


def eigenfunction_field(spectrum, index, grid_size):
    """Sample ``w_N = sum_j c_j phi_j`` for the ``index``-th (1-based) eigenpair."""
    if not 1 <= index <= spectrum.count:
        raise ConfigError(f"eigenfunction index {index} outside 1..{spectrum.count}")
    if grid_size < 2:
        raise ConfigError("grid_size must be at least 2")
    c = spectrum[index - 1].coeffs
    x = np.linspace(-1.0, 1.0, grid_size)
    y = np.linspace(-1.0, 1.0, grid_size)
    X, Y = np.meshgrid(x, y)
    R = np.hypot(X, Y)
    inside = R <= 1.0 + 1e-12
    r = np.minimum(R[inside], 1.0)
    theta = np.arctan2(Y[inside], X[inside])
    phi = eval_basis_set(spectrum.basis, r, theta)
    values = np.full(X.shape, np.nan + 1j * np.nan, dtype=complex)
    values[inside] = c @ phi
    return Field(x, y, values)


def eval_eigenfunction(spectrum, index, r, theta):
    """``w_N`` at arbitrary polar points inside the disk."""
    c = spectrum[index - 1].coeffs
    phi = eval_basis_set(spectrum.basis, r, theta)
    return np.tensordot(c, phi, axes=1)
