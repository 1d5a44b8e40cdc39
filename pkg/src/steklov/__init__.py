"""Steklov eigenvalues for inverse scattering on the unit disk.

A Neumann-Galerkin spectral method: the approximation space is spanned by
Neumann eigenfunctions of the Laplacian on the disk, the discrete problem is
a small complex matrix pencil, and closed-form Bessel solutions serve as
reference values. The leading eigenvalue can be inverted for a constant
refractive-index estimate.
"""

from .assembly import GalerkinSystem, QuadratureRule, assemble, boundary_mass_analytic
from .config import RunConfig, load_config
from .diskbasis import BasisFunction, BasisSet, build_basis, eval_basis, boundary_trace_coefficient
from .eigensolve import SteklovSpectrum, convergence_residual, eigenfunction_field, solve_spectrum
from .errors import (
    BracketError,
    ConfigError,
    DomainError,
    ExpressionError,
    InconclusiveError,
    NumericalError,
    PoleError,
    ResonanceError,
    SteklovError,
)
from .expr import parse_expression
from .inverse import EstimationResult, area_correction, estimate_constant, estimate_two_step
from .medium import Constant, DiskInclusion, Expression, PolarInclusion, eval_medium, inclusion_area
from .oracles import annulus_exact, asym_first, sov_eigenvalue, sov_first

__version__ = "0.1.0"

__all__ = [
    "GalerkinSystem",
    "QuadratureRule",
    "assemble",
    "boundary_mass_analytic",
    "RunConfig",
    "load_config",
    "BasisFunction",
    "BasisSet",
    "build_basis",
    "eval_basis",
    "boundary_trace_coefficient",
    "SteklovSpectrum",
    "convergence_residual",
    "eigenfunction_field",
    "solve_spectrum",
    "BracketError",
    "ConfigError",
    "DomainError",
    "ExpressionError",
    "InconclusiveError",
    "NumericalError",
    "PoleError",
    "ResonanceError",
    "SteklovError",
    "parse_expression",
    "EstimationResult",
    "area_correction",
    "estimate_constant",
    "estimate_two_step",
    "Constant",
    "DiskInclusion",
    "Expression",
    "PolarInclusion",
    "eval_medium",
    "inclusion_area",
    "annulus_exact",
    "asym_first",
    "sov_eigenvalue",
    "sov_first",
]
