"""Radial perturbation densities computed from solved expansions.

Each density is the square of the correlation function integrated over one
coordinate against that coordinate's weight, so it is a quadratic form in
the solved coefficients:

    f(xi) = sum_{i,j} alpha_{i,j} B_i(xi) B_j(xi)

with an exact rational alpha table.  Four densities exist: one for channel A,
two for the asymmetric channel B (one per coordinate), one for channel C.
All contractions are exact; floats appear only when a value is emitted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import BasisSpec, Poly, Rational
from .solver import SolutionRecord, _gram, channel, recurrence_q

# density selector -> (source channel, coordinate integrated out)
DENSITY_SOURCE = {
    "A": ("A", 1),
    "B1": ("B", 1),
    "B2": ("B", 0),
    "C": ("C", 1),
}


@dataclass
class DensityFn:
    """Exact alpha table of one density plus its evaluation basis."""

    which: str
    channel: str
    order: int
    alpha: dict
    basis: BasisSpec

    _poly_cache: Poly | None = None

    def polynomial(self) -> Poly:
        """The density as a single exact polynomial in xi."""
        if self._poly_cache is None:
            total = Poly()
            for (i, j), c in self.alpha.items():
                total = total + (self.basis.function(i) * self.basis.function(j)).scale(c)
            self._poly_cache = total
        return self._poly_cache


def density_coeffs(record: SolutionRecord, which: str = "A") -> DensityFn:
    """Contract a solved expansion into a density's exact alpha table.

    The coordinate being integrated out contributes its Gram matrix
    (tridiagonal, from the weighted inner products of its basis family).
    """
    try:
        source, drop_axis = DENSITY_SOURCE[which]
    except KeyError:
        raise ValueError(f"unknown density {which!r}; expected A, B1, B2 or C") from None
    if record.channel != source:
        raise ValueError(f"density {which} requires a channel-{source} record")
    keep_axis = 1 - drop_axis
    keep_basis = record.bases[keep_axis]
    drop_basis = record.bases[drop_axis]
    alpha: dict = {}
    for pair, a in record.coeffs.items():
        if a == 0:
            continue
        for pair2, a2 in record.coeffs.items():
            if a2 == 0 or abs(pair[drop_axis] - pair2[drop_axis]) > 1:
                continue
            g = _gram(drop_basis, pair[drop_axis], pair2[drop_axis])
            if not g:
                continue
            key = (pair[keep_axis], pair2[keep_axis])
            alpha[key] = alpha.get(key, Rational(0)) + a * a2 * g
    return DensityFn(
        which=which, channel=record.channel, order=record.order, alpha=alpha, basis=keep_basis
    )


def channel_a_alpha_recurrence(record: SolutionRecord) -> dict:
    """Channel-A alpha table from the closed-form three-term contraction.

    Independent of the generic Gram contraction; serves as its oracle:
    alpha_{n,m} = sum_l a_{n,l} [2 l q_l a_{m,l} - (l+1) q_{l-1} a_{m,l-1}
                                 - (l-1) q_{l+1} a_{m,l+1}].
    """
    if record.channel != "A":
        raise ValueError("closed-form contraction applies to channel A only")
    a = record.coeffs
    rows = sorted({l for l, _ in a})
    cols = sorted({n for _, n in a})
    z = Rational(0)
    alpha = {}
    for n in rows:
        for m in rows:
            total = Rational(0)
            for l in cols:
                total += a.get((n, l), z) * (
                    2 * l * recurrence_q(l) * a.get((m, l), z)
                    - (l + 1) * recurrence_q(l - 1) * a.get((m, l - 1), z)
                    - (l - 1) * recurrence_q(l + 1) * a.get((m, l + 1), z)
                )
            if total:
                alpha[(n, m)] = total
    return alpha


def eval_density(f: DensityFn, xi):
    """Density value at xi >= 0.

    Evaluation is exact (rational Horner); the result is rounded to float
    once at the end iff xi came in as a float.
    """
    as_float = isinstance(xi, float)
    x = Fraction(xi)
    if x < 0:
        raise ValueError("xi must be non-negative")
    val = f.polynomial()(x)
    return float(val) if as_float else val


def emit_density_grid(f: DensityFn, grid) -> list[tuple[Fraction, Rational]]:
    """Rows (xi, f(xi)) for a strictly increasing non-negative grid."""
    pts = [Fraction(x) for x in grid]
    if not pts:
        raise ValueError("empty grid")
    if pts[0] < 0 or any(b <= a for a, b in zip(pts, pts[1:])):
        raise ValueError("grid must be strictly increasing and non-negative")
    poly = f.polynomial()
    return [(x, poly(x)) for x in pts]


def default_grid(regime: str = "short") -> list[Fraction]:
    """Default evaluation grids: [0, 10] and [10, 20], both at step 1/10."""
    step = Fraction(1, 10)
    if regime == "short":
        return [k * step for k in range(0, 101)]
    if regime == "long":
        return [k * step for k in range(100, 201)]
    raise ValueError("regime must be 'short' or 'long'")


def densities_for_channel(tag: str) -> tuple[str, ...]:
    return {"A": ("A",), "B": ("B1", "B2"), "C": ("C",)}[channel(tag).tag]
