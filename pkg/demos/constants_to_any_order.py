#!/usr/bin/env python3
"""Dispersion constants of two ground-state hydrogen atoms, exactly.

The long-range interaction energy expands as -A/R^6 - B/R^8 - C/R^10 in the
internuclear separation R.  Each constant comes from an inhomogeneous radial
equation solved here by Laguerre-basis projection in exact rational
arithmetic: truncate, solve, and watch the constants stabilize digit by
digit.  The wavefunction normalization constants D come along for free from
the same coefficients and certify that the perturbed state stays
normalizable.
"""

from fractions import Fraction

from dispersion import decimal_string, solve_channel

print(__doc__)

for tag, power in (("A", 6), ("B", 8), ("C", 10)):
    print(f"channel {tag}  (energy term -{tag}/R^{power})")
    print(f"{'order':>5} {'constant':>18} {'normalization':>18}")
    previous = None
    for order in range(1, 11):
        rec = solve_channel(tag, order)
        e = decimal_string(rec.energy_constant, 10)
        d = decimal_string(rec.normalization_constant, 10)
        stable = ""
        if previous is not None:
            gap = abs(rec.energy_constant - previous)
            stable = f"  |delta| ~ 1e{len(str(int(1 / gap))) * -1}" if gap else "  converged"
        print(f"{order:>5} {e:>18} {d:>18}{stable}")
        previous = rec.energy_constant
    print()

rec = solve_channel("A", 10)
print("the order-10 constants are exact fractions, for example")
print(f"  A = {rec.energy_constant}")
print(f"    = {decimal_string(rec.energy_constant, 25)}...")
print()
print("every truncation is solved exactly: the residual of each projected")
print("equation vanishes identically, so the printed digits are limited only")
print("by the truncation order, never by arithmetic.")
small = solve_channel("A", 4)
print(f"\norder-4 coefficients (exact): {dict((k, str(v)) for k, v in small.coeffs.items())}")
