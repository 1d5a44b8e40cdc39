"""Disk and star-shaped inclusions: eigenvalues, reference values, eigenfunction fields.

Run: python3 demos/02_inclusions.py [--plot]
"""

import math
import sys

import numpy as np

from steklov import DiskInclusion, QuadratureRule, annulus_exact, assemble, asym_first, build_basis, solve_spectrum
from steklov.eigensolve import eigenfunction_field
from steklov.harness import standard_media

k = 1.0
basis = build_basis(4, 5)
converged = QuadratureRule()            # interface-split, 64 x 256 nodes
coarse = QuadratureRule.tensor_gauss()  # unsplit 12 x 12 Gauss rule


def leading(medium, rule):
    return solve_spectrum(assemble(basis, medium, k, rule))


# Centred disks of radius 1/2^p with index 2 inside.
print("rho       Galerkin   12x12 rule  two-term   matched")
for p in range(1, 5):
    rho = 0.5**p
    m = DiskInclusion(rho, 2.0)
    print(
        f"{rho:<8} {leading(m, converged)[0].lam.real:.6f}   {leading(m, coarse)[0].lam.real:.6f}"
        f"    {asym_first(k, math.sqrt(2) - 1, rho):.6f}   {annulus_exact(k, 2.0, rho):.6f}"
    )

# Non-circular inclusions. An unsplit rule smears the jump in n across
# the interface, so the two quadratures differ in the third digit.
for name in ("variable_full", "variable_half", "pear", "elliptical", "rounded_square"):
    a = leading(standard_media()[name], converged)
    b = leading(standard_media()[name], coarse)
    print(f"\n{name}")
    print("  split rule  ", np.round(a.eigenvalues[:3].real, 6))
    print("  12x12 rule  ", np.round(b.eigenvalues[:3].real, 6))

# Fields of the first three eigenfunctions for the pear-shaped inclusion.
spec = leading(standard_media()["pear"], converged)
fields = [eigenfunction_field(spec, i, 101) for i in (1, 2, 3)]
print("\nfield samples at the centre:", [round(float(f.values[50, 50].real), 4) for f in fields])

if "--plot" in sys.argv:
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 3, figsize=(12, 4))
    t = np.linspace(0, 2 * np.pi, 400)
    rho = 0.3 * (2 + 0.3 * np.cos(3 * t))
    for ax, f, i in zip(axes, fields, (1, 2, 3)):
        ax.contourf(f.x, f.y, f.values.real, 30)
        ax.plot(rho * np.cos(t), rho * np.sin(t), "k:")
        ax.set_aspect("equal")
        ax.set_title(f"w_{i}")
    plt.savefig("pear_eigenfunctions.png", dpi=120)
    print("wrote pear_eigenfunctions.png")
