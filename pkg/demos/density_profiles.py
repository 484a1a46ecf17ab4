#!/usr/bin/env python3
"""Radial perturbation densities and their convergence with truncation order.

Squaring the correlation function and integrating out one coordinate gives
the radial factor of the induced density change on one atom.  There are four
of them: one for the dipole-dipole channel, two for the asymmetric
dipole-quadrupole channel, one for the quadrupole-quadrupole channel.  Being
integrals of squares they are non-negative everywhere, and successive
truncations converge onto a limiting profile - monotonically at short range,
bracketing the limit from both sides at large range.
"""

from fractions import Fraction

from dispersion import default_grid, density_coeffs, emit_density_grid, solve_channel
from dispersion.densities import DENSITY_SOURCE

print(__doc__)

records = {tag: {n: solve_channel(tag, n) for n in range(5, 11)} for tag in "ABC"}

print("non-negativity and short-range convergence ([0, 10], step 0.1):")
for which, (source, _) in DENSITY_SOURCE.items():
    grid = default_grid("short")
    values = {}
    for order in range(5, 11):
        fn = density_coeffs(records[source][order], which)
        rows = emit_density_grid(fn, grid)
        assert all(v >= 0 for _, v in rows)
        values[order] = [v for _, v in rows]
    gaps = [
        float(max(abs(a - b) for a, b in zip(values[o], values[o + 1]))) for o in range(5, 10)
    ]
    print(f"  f{which:<3} max gap between successive orders: "
          + "  ".join(f"{g:.2e}" for g in gaps))

print()
print("large-range bracketing for the dipole-dipole density on [15, 20]:")
grid = [Fraction(k, 10) for k in range(150, 201, 10)]
f5 = emit_density_grid(density_coeffs(records["A"][5], "A"), grid)
f6 = emit_density_grid(density_coeffs(records["A"][6], "A"), grid)
f10 = emit_density_grid(density_coeffs(records["A"][10], "A"), grid)
print(f"{'xi':>6} {'order 5':>12} {'order 10':>12} {'order 6':>12}")
for (x, a), (_, b), (_, c) in zip(f5, f6, f10):
    print(f"{float(x):>6.1f} {float(a):>12.6f} {float(c):>12.6f} {float(b):>12.6f}")
print("order 5 runs below the converged curve, order 6 above it.")
