"""How fast Neumann-series truncations converge for a smooth function.

f(r) = (1 - r^2)^2 has zero normal derivative on the circle, so its
coefficients decay quickly; the L2 error of the N-term projection falls
faster than N^(-1/2).

Run: python3 demos/04_projection_rates.py
"""

from steklov import harness

study = harness.projection_rate_study("quartic", (8, 16, 32, 64), reference_terms=256)
print(study.to_csv(), end="")
print(f"L2 slope {study.l2_slope:.3f}, H1 slope {study.h1_slope:.3f}, reference tail {study.tail:.1e}")

# A basis element is reproduced exactly once it is inside the space.
exact = harness.projection_rate_study("basis:3", (3, 8), reference_terms=256)
print("projection error of phi_3:", [f"{e:.1e}" for e in exact.l2_error])
