"""Estimate the refractive index from lambda_1.

Step 1 inverts the separated m = 0 eigenvalue for a constant index; step 2
spreads that disk average over the known inclusion area.

Run: python3 demos/03_estimate_index.py
"""

from steklov import QuadratureRule, assemble, build_basis, estimate_two_step, inclusion_area, solve_spectrum
from steklov.harness import standard_media

k = 1.0
basis = build_basis(4, 5)
media = standard_media()

rows = [
    ("variable_full", None),
    ("variable_half", "variable_half"),
    ("constant_2", None),
    ("pear", "pear"),
    ("elliptical", "elliptical"),
    ("rounded_square", "rounded_square"),
]

print(f"{'medium':16s} {'lambda_1':>10s} {'n_const':>9s} {'area':>7s} {'n_approx2':>10s}")
for name, geometry in rows:
    lam = solve_spectrum(assemble(basis, media[name], k, QuadratureRule()))[0].lam.real
    geo = media[geometry] if geometry else None
    res = estimate_two_step(lam, k, geo)
    area = inclusion_area(geo) if geo else 3.14159265
    print(f"{name:16s} {lam:10.6f} {res.n_approx:9.6f} {area:7.4f} {res.n_approx2:10.6f}")

# Every inclusion has average index 2, and n_approx2 lands near that value.
