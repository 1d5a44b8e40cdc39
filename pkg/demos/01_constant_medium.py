"""Constant refractive index: Galerkin eigenvalues against separation of variables.

Run: python3 demos/01_constant_medium.py
"""

from steklov import Constant, assemble, build_basis, solve_spectrum, sov_eigenvalue
from steklov.harness import loglog_slope

k = 1.0

# The default space: cosine modes with p <= 4, q <= 5.
basis = build_basis(4, 5)
print(f"{len(basis)} basis functions; first ten (p, q):", [(b.p, b.q) for b in basis][:10])

# For constant n the pencil decouples by angular order, and each block
# approximates the separated eigenvalue of that order.
for n in (2.0, 2.0 + 1.0j):
    spec = solve_spectrum(assemble(basis, Constant(n), k))
    print(f"\nn = {n}")
    for p, pair in enumerate(spec.pairs):
        print(f"  lambda_{p + 1} = {pair.lam:.7f}   residual {pair.residual:.1e}")
    print(f"  separated m = 0 value {sov_eigenvalue(k, n, 0):.7f}")

# Convergence of lambda_1 as more radial modes enter. The error falls
# roughly like 1/N.
exact = sov_eigenvalue(k, 2.0, 0)
Ns = [10, 15, 20, 25]
errs = []
for N in Ns:
    lam = solve_spectrum(assemble(build_basis(4, 5, truncation=N), Constant(2.0), k))[0].lam
    errs.append(abs(lam - exact))
    print(f"N = {N:2d}  lambda_1 = {lam.real:.7f}  rel. error {errs[-1] / abs(exact):.7f}")
print("log-log slope", round(loglog_slope(Ns, errs), 3))

# With many radial modes the limit is approached much more closely.
big = build_basis(0, 30)
lam = solve_spectrum(assemble(big, Constant(2.0), k))[0].lam.real
print(f"30 radial modes: lambda_1 = {lam:.7f} (gap {abs(lam - exact.real):.1e})")
