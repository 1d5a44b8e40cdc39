"""Numerical studies: eigenvalue convergence in N, projection error rates,
boundary eigenfunction errors, and the invariant validation suite."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
import warnings

import numpy as np

from . import specfun
from .assembly import QuadratureRule, assemble, weighted_mass
from .diskbasis import BasisSet, angular_part, build_basis, eval_basis_set, radial_part
from .eigensolve import RESIDUAL_FACTOR, COND_LIMIT, condition_number, solve_spectrum
from .errors import ConfigError, InconclusiveError
from .medium import Constant, DiskInclusion, Expression, PolarInclusion, eval_medium
from .oracles import sov_eigenvalue, sov_first

__all__ = [
    "standard_media",
    "loglog_slope",
    "ConvergenceTable",
    "convergence_study",
    "ProjectionStudy",
    "projection_rate_study",
    "BoundaryErrorTable",
    "boundary_eigenfunction_error",
    "Check",
    "ValidationReport",
    "ResonanceWarning",
    "validate",
]

WARN_COND = 1e6


class ResonanceWarning(UserWarning):
    """A wavenumber close to an interior eigenvalue (ill-conditioned A)."""


def standard_media():
    """Named media used throughout the demos and the acceptance suite."""
    variable = "2+r*(sin(theta)-cos(theta))"
    return {
        "constant_2": Constant(2.0),
        "constant_2+i": Constant(2.0 + 1.0j),
        "variable_full": Expression(variable),
        "variable_half": DiskInclusion(0.5, variable),
        "pear": PolarInclusion("0.3*(2+0.3*cos(3*theta))", 2.0),
        "elliptical": PolarInclusion("0.35*(2+0.3*sin(2*theta))", 2.0),
        "rounded_square": PolarInclusion("0.75*(abs(sin(theta))^5+abs(cos(theta))^5)^(-1/5)", 2.0),
    }


def loglog_slope(xs, ys):
    """Unweighted least-squares slope of log(y) against log(x); NaN if fewer
    than two positive samples."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    ok = (ys > 0) & (xs > 0)
    if ok.sum() < 2:
        return float("nan")
    return float(np.polyfit(np.log(xs[ok]), np.log(ys[ok]), 1)[0])


def _fmt(x):
    return "" if x is None or (isinstance(x, float) and np.isnan(x)) else f"{x:.15g}"


def _map(fn, items, threads):
    if threads and threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


@dataclass
class ConvergenceTable:
    N: list
    lam: list
    rel_error: list
    exact: complex = None

    @property
    def slope(self):
        """Slope of log|lambda_1 - lambda_1,N| against log N."""
        if self.exact is None:
            return float("nan")
        errs = [abs(l - self.exact) for l in self.lam]
        return loglog_slope(self.N, errs)

    def to_csv(self, path=None):
        lines = ["N,lambda_re,lambda_im,rel_error"]
        for n, lam, err in zip(self.N, self.lam, self.rel_error):
            lines.append(f"{n},{lam.real:.15g},{lam.imag:.15g},{_fmt(err)}")
        text = "\n".join(lines) + "\n"
        if path is not None:
            Path(path).write_text(text, encoding="ascii")
        return text


def _leading(cfg_k, basis, profile, rule):
    spec = solve_spectrum(assemble(basis, profile, cfg_k, rule))
    return spec[0].lam


def convergence_study(config, N_list, threads=None):
    """Leading eigenvalue for each truncation in ``N_list``.

    For constant media the relative error against the separation-of-variables
    value is filled in.
    """
    N_list = [int(n) for n in N_list]
    if sorted(N_list) != N_list:
        raise ConfigError("N values must be ascending")
    profile = config.profile()
    rule = config.rule()
    k = config.wavenumber
    exact = sov_first(k, profile.value) if isinstance(profile, Constant) else None

    def run(N):
        return _leading(k, config.build_basis(truncation=N), profile, rule)

    lams = [complex(v) for v in _map(run, N_list, threads)]
    rel = [abs(l - exact) / abs(exact) if exact is not None else None for l in lams]
    return ConvergenceTable(N_list, lams, rel, exact)


@dataclass
class ProjectionStudy:
    N: list
    l2_error: list
    h1_error: list
    reference_terms: int
    tail: float

    @property
    def l2_slope(self):
        return loglog_slope(self.N, self.l2_error)

    @property
    def h1_slope(self):
        return loglog_slope(self.N, self.h1_error)

    def to_csv(self, path=None):
        lines = ["N,l2_error,h1_error"]
        for n, a, b in zip(self.N, self.l2_error, self.h1_error):
            lines.append(f"{n},{a:.15g},{b:.15g}")
        text = "\n".join(lines) + "\n"
        if path is not None:
            Path(path).write_text(text, encoding="ascii")
        return text


def projection_basis(reference_terms=256):
    """Cosine Neumann modes with p <= 20, q <= 30 in ascending sigma."""
    return build_basis(20, 30, False, reference_terms, "sigma_ascending")


def _test_function(name, basis):
    if name == "quartic":
        return lambda r, theta: (1.0 - r * r) ** 2 + 0.0 * theta
    if name.startswith("basis:"):
        j = int(name.split(":", 1)[1])
        if not 1 <= j <= len(basis):
            raise ConfigError(f"basis index {j} outside 1..{len(basis)}")
        b = BasisSet((basis[j - 1],), basis.ordering)
        return lambda r, theta: eval_basis_set(b, r, theta)[0]
    raise ConfigError(f"unknown test function {name!r}; use 'quartic' or 'basis:<j>'")


def projection_coefficients(f, basis, radial_points=160, angular_points=128):
    """L2(D) inner products of ``f`` with every basis function, plus ||f||^2."""
    x, w = np.polynomial.legendre.leggauss(radial_points)
    r = 0.5 * (x + 1.0)
    theta = np.arange(angular_points) * (2.0 * np.pi / angular_points)
    R, T = np.meshgrid(r, theta, indexing="ij")
    W = np.outer(0.5 * w * r, np.full(angular_points, 2.0 * np.pi / angular_points))
    fv = f(R, T)
    # tensor structure: phi_j(r, theta) = radial_j(r) * angular_j(theta)
    radial = np.array([radial_part(b, r) for b in basis])
    angular = np.array([angular_part(b, theta) for b in basis])
    G = (fv * W) @ angular.T
    coeffs = np.einsum("jr,rj->j", radial, G)
    return coeffs, float(np.sum(fv * fv * W))


def projection_rate_study(test_function="quartic", N_list=(8, 16, 32, 64), reference_terms=256, tail_tol=1e-8):
    """Errors of the orthogonal projection onto the first N modes.

    Errors are measured against a ``reference_terms``-mode expansion of the
    test function: L2 error ``sqrt(sum_{N<j<=ref} c_j^2)`` and the H1
    surrogate ``sqrt(sum (1 + sigma_j) c_j^2)``. The relative energy left
    outside the reference expansion must stay below ``tail_tol``.
    """
    N_list = [int(n) for n in N_list]
    if not N_list or max(N_list) > reference_terms:
        raise ConfigError("N values must not exceed the reference expansion size")
    basis = projection_basis(reference_terms)
    f = _test_function(test_function, basis)
    c, norm2 = projection_coefficients(f, basis)
    tail = max(norm2 - float(np.sum(c * c)), 0.0) / norm2
    if tail > tail_tol:
        raise InconclusiveError(
            f"reference expansion misses a relative energy {tail:.2e} > {tail_tol:.0e}; "
            "increase reference_terms"
        )
    sig = basis.sigmas
    l2, h1 = [], []
    for N in N_list:
        rest = slice(N, reference_terms)
        l2.append(float(np.sqrt(np.sum(c[rest] ** 2))))
        h1.append(float(np.sqrt(np.sum((1.0 + sig[rest]) * c[rest] ** 2))))
    return ProjectionStudy(N_list, l2, h1, reference_terms, tail)


@dataclass
class BoundaryErrorTable:
    """Boundary L2 errors per N; ``interior_error`` holds the L2(D) errors of
    the same boundary-normalised functions."""

    N: list
    error: list
    interior_error: list = field(default_factory=list)

    def to_csv(self, path=None):
        lines = ["N,l2_boundary_error"] + [f"{n},{e:.15g}" for n, e in zip(self.N, self.error)]
        text = "\n".join(lines) + "\n"
        if path is not None:
            Path(path).write_text(text, encoding="ascii")
        return text


BOUNDARY_NODES = 512


def _align(values, exact, weights):
    inner = np.sum(values * exact * weights)
    if abs(inner) > 0:
        values = values * (np.conj(inner) / abs(inner))
    return values


def boundary_eigenfunction_error(config, N_list):
    """``||w - w_N||_{L2(unit circle)}`` for the leading eigenfunction of a
    constant real medium.

    The exact eigenfunction ``J_0(k sqrt(n) r)`` has a constant trace, which
    after boundary normalisation is ``1/sqrt(2 pi)``. Each ``w_N`` is rotated
    by the unimodular factor that best aligns it with the exact trace. The
    discrete trace of the radially symmetric mode is itself constant, so the
    boundary error sits at rounding level; the interior L2(D) error is
    reported alongside.
    """
    profile = config.profile()
    if not isinstance(profile, Constant) or profile.value.imag != 0:
        raise ConfigError("boundary eigenfunction errors need a constant real medium")
    k, n = config.wavenumber, profile.value.real
    lead = sov_first(k, n)
    if abs(lead - sov_eigenvalue(k, n, 0)) > 1e-12:
        raise ConfigError("the leading eigenvalue is not the radially symmetric one")
    kappa = k * np.sqrt(n)
    scale = 1.0 / (specfun.bessel_j(0, kappa) * np.sqrt(2.0 * np.pi))

    theta = np.arange(BOUNDARY_NODES) * (2.0 * np.pi / BOUNDARY_NODES)
    h = np.full(theta.shape, 2.0 * np.pi / BOUNDARY_NODES)
    exact_b = np.full(theta.shape, scale * specfun.bessel_j(0, kappa))

    x, w = np.polynomial.legendre.leggauss(64)
    r = 0.5 * (x + 1.0)
    t = np.arange(64) * (2.0 * np.pi / 64)
    R, T = np.meshgrid(r, t, indexing="ij")
    W = np.outer(0.5 * w * r, np.full(t.shape, 2.0 * np.pi / 64))
    exact_i = scale * specfun.bessel_j(0, kappa * R)

    rule = config.rule()
    errors, interior = [], []
    for N in N_list:
        basis = config.build_basis(truncation=int(N))
        spec = solve_spectrum(assemble(basis, profile, k, rule))
        c = spec[0].coeffs
        trace = _align(c @ eval_basis_set(basis, np.ones_like(theta), theta), exact_b, h)
        errors.append(float(np.sqrt(np.sum(np.abs(trace - exact_b) ** 2 * h))))
        vals = np.tensordot(c, eval_basis_set(basis, R, T), axes=1)
        # same unimodular factor as on the boundary
        inner = np.sum(c @ eval_basis_set(basis, np.ones_like(theta), theta) * exact_b * h)
        if abs(inner) > 0:
            vals = vals * (np.conj(inner) / abs(inner))
        interior.append(float(np.sqrt(np.sum(np.abs(vals - exact_i) ** 2 * W))))
    return BoundaryErrorTable([int(n) for n in N_list], errors, interior)


@dataclass
class Check:
    name: str
    passed: bool
    measured: str
    threshold: str = ""

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        extra = f" (limit {self.threshold})" if self.threshold else ""
        return f"[{status}] {self.name}: {self.measured}{extra}"


@dataclass
class ValidationReport:
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def add(self, name, passed, measured, threshold=""):
        self.checks.append(Check(name, bool(passed), measured, threshold))

    def text(self):
        return "\n".join(c.line() for c in self.checks) + "\n"


def _block_union(basis, value, k):
    lams = []
    for key in dict.fromkeys(basis.blocks):
        sub = BasisSet(tuple(b for b in basis if (b.p, b.kind) == key), basis.ordering)
        lams.extend(solve_spectrum(assemble(sub, Constant(value), k, exact_constant=True)).eigenvalues)
    return np.array(sorted(lams, key=lambda z: (-z.real, -z.imag)))


def validate(config):
    """Run the invariant suite for ``config`` and report pass/fail lines."""
    report = ValidationReport()
    basis = config.build_basis()
    if len(basis) == 0:
        raise ConfigError("empty basis")
    profile = config.profile()
    rule = config.rule()
    k = config.wavenumber

    # Wronskian J Y' - J' Y = 2/(pi x)
    xs = np.logspace(np.log10(0.1), np.log10(40.0), 20)
    wr = 0.0
    for m in (0, 1, 2):
        w = specfun.bessel_j(m, xs) * specfun.bessel_y_prime(m, xs) - specfun.bessel_j_prime(m, xs) * specfun.bessel_y(m, xs)
        wr = max(wr, float(np.max(np.abs(w - 2.0 / (np.pi * xs)))))
    report.add("wronskian", wr <= 1e-10, f"max deviation {wr:.2e}", "1e-10")

    gram = weighted_mass(basis, Constant(1.0), QuadratureRule())
    dev = float(np.max(np.abs(gram - np.eye(len(basis)))))
    report.add("orthonormality", dev <= 1e-9, f"max |G - I| {dev:.2e}", "1e-9")

    sys = assemble(basis, profile, k, rule)
    cond = condition_number(sys.A)
    if cond > WARN_COND:
        warnings.warn(f"cond(A) = {cond:.2e}: wavenumber close to an interior eigenvalue", ResonanceWarning)
    report.add("assumption1", cond <= COND_LIMIT, f"cond(A) {cond:.3e}", f"{COND_LIMIT:.0e}")
    if cond > COND_LIMIT:
        return report

    sv = np.linalg.svd(sys.B, compute_uv=False)
    rank = int(np.sum(sv > 1e-12 * sv.max()))
    blocks = len(set(basis.blocks))
    report.add("rank_B", rank == blocks, f"rank {rank}, blocks {blocks}")
    report.add("symmetry_A", np.array_equal(sys.A, sys.A.T), "A == A^T exactly")

    spec = solve_spectrum(sys)
    report.add("spectrum_count", spec.count == rank, f"{spec.count} eigenvalues, rank(B) {rank}")
    normA, normB = np.linalg.norm(sys.A), np.linalg.norm(sys.B)
    worst = max(p.residual / (RESIDUAL_FACTOR * (normA + abs(p.lam) * normB)) for p in spec.pairs)
    report.add("residuals", worst <= 1.0, f"worst residual / bound {worst:.2e}", "1")
    bnorm = max(abs(np.real(np.conj(p.coeffs) @ sys.B @ p.coeffs) - 1.0) for p in spec.pairs)
    report.add("boundary_normalisation", bnorm <= 1e-10, f"max |c^H B c - 1| {bnorm:.2e}", "1e-10")

    r = np.linspace(0.0, 1.0, 17)
    t = np.linspace(0.0, 2.0 * np.pi, 33)
    real_medium = not np.any(np.imag(eval_medium(profile, r[:, None], t[None, :])))
    if real_medium:
        im = float(np.max(np.abs(spec.eigenvalues.imag)))
        report.add("real_spectrum", im <= 1e-8, f"max |Im lambda| {im:.2e}", "1e-8")

    grid = [1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0]
    lead = [solve_spectrum(assemble(basis, Constant(v), k, exact_constant=True))[0].lam.real for v in grid]
    mono = all(b > a for a, b in zip(lead, lead[1:]))
    report.add("monotonicity", mono, "lambda_1(n) on n = 1..4: " + ", ".join(f"{v:.6f}" for v in lead))

    value = profile.value if isinstance(profile, Constant) else 2.0
    full = solve_spectrum(assemble(basis, Constant(value), k, exact_constant=True)).eigenvalues
    union = _block_union(basis, value, k)
    gap = float(np.max(np.abs(full - union))) if full.size == union.size else np.inf
    report.add("block_decoupling", gap <= 1e-10, f"max difference {gap:.2e}", "1e-10")

    again = assemble(basis, profile, k, rule)
    same = again.A.tobytes() == sys.A.tobytes() and again.B.tobytes() == sys.B.tobytes()
    spec2 = solve_spectrum(again)
    same = same and spec2.eigenvalues.tobytes() == spec.eigenvalues.tobytes()
    report.add("determinism", same, "bit-identical rerun" if same else "rerun differs")

    if rule.angular_rule == "trapezoid":
        fine = assemble(basis, profile, k, rule.refined(2))
        change = float(np.max(np.abs(fine.A - sys.A)))
        report.add("quadrature_convergence", change <= 1e-10, f"max change on refinement {change:.2e}", "1e-10")
    return report
