"""Exact rational scalars, dense polynomials, and weighted Laguerre integrals.

Everything in this module is exact: the only scalar is `Rational`
(an arbitrary-precision fraction, always in lowest terms with positive
denominator) and every operation on polynomials or integrals returns a
Rational.  Floating point enters the pipeline only at output boundaries,
never here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

Rational = Fraction

ZERO = Rational(0)
ONE = Rational(1)


class Poly:
    """Dense univariate polynomial over Rational, index = power of xi.

    Immutable; the coefficient tuple never carries trailing zeros, so the
    leading coefficient is nonzero unless the polynomial is identically zero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Rational) else Rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + other.scale(-1)

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    def scale(self, c) -> "Poly":
        c = Rational(c)
        return Poly([a * c for a in self.coeffs])

    def shift(self, k: int) -> "Poly":
        """Multiply by xi**k."""
        if not self.coeffs:
            return self
        return Poly((ZERO,) * k + self.coeffs)

    def deriv(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation; exact for Rational/int x, float for float x."""
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"


POLY_ONE = Poly([ONE])


@lru_cache(maxsize=None)
def laguerre(alpha: int, n: int) -> Poly:
    """Associated Laguerre polynomial L^alpha_n via the three-term recurrence.

    Convention: L^alpha_0 = 1 and the natural-weight norm is
    integral xi^alpha e^-xi (L^alpha_n)^2 dxi = (n+alpha)!/n!.
    """
    if alpha < 0 or n < 0:
        raise ValueError("laguerre requires alpha >= 0 and n >= 0")
    prev = POLY_ONE
    if n == 0:
        return prev
    cur = Poly([1 + alpha, -1])
    for k in range(1, n):
        # (k+1) L_{k+1} = (2k + alpha + 1 - xi) L_k - (k + alpha) L_{k-1}
        nxt = (cur.scale(2 * k + alpha + 1) - cur.shift(1) - prev.scale(k + alpha)).scale(
            Rational(1, k + 1)
        )
        prev, cur = cur, nxt
    return cur


def moment(k: int) -> Rational:
    """integral_0^inf xi^k e^-xi dxi = k!"""
    if k < 0:
        raise ValueError("moment requires k >= 0")
    return Rational(factorial(k))


def weighted_inner(p: Poly, q: Poly, w: int) -> Rational:
    """integral_0^inf xi^w e^-xi p(xi) q(xi) dxi, term by term via moment()."""
    if w < 0:
        raise ValueError("weight exponent must be non-negative")
    pq = p * q
    return sum((c * moment(i + w) for i, c in enumerate(pq.coeffs)), ZERO)


def laguerre_series(alpha: int, n: int) -> Poly:
    """Series-definition form sum_k (-1)^k C(n+alpha, n-k) xi^k / k!.

    Independent of the recurrence path; used as a cross-check oracle.
    """
    return Poly([Rational((-1) ** k * comb(n + alpha, n - k), factorial(k)) for k in range(n + 1)])


@dataclass(frozen=True)
class BasisSpec:
    """A family of radial basis functions indexed the way the solver labels them.

    Member m (m >= min_index) is the normalized associated Laguerre
    polynomial L^alpha of degree m - min_index; `weight_exponent` is the power
    of xi in the projection weight xi^w e^-xi the family is tested against.
    `shift` records the labelling offset (min_index = alpha - shift).
    """

    alpha: int
    shift: int
    weight_exponent: int

    @property
    def min_index(self) -> int:
        return self.alpha - self.shift

    def function(self, m: int) -> Poly:
        if m < self.min_index:
            raise ValueError(f"basis index {m} below minimum {self.min_index}")
        return laguerre(self.alpha, m - self.min_index)


# The four basis families used by the radial channels and the density orbitals.
H_BASIS = BasisSpec(alpha=3, shift=1, weight_exponent=4)
PHI_BASIS = BasisSpec(alpha=4, shift=0, weight_exponent=4)
G_BASIS = BasisSpec(alpha=5, shift=2, weight_exponent=6)
CHI_BASIS = BasisSpec(alpha=6, shift=0, weight_exponent=6)


def fraction_json(x: Rational) -> dict:
    """Exact fraction as numerator/denominator decimal strings."""
    return {"num": str(x.numerator), "den": str(x.denominator)}


def decimal_string(x: Rational, digits: int) -> str:
    """Render an exact fraction as a decimal with `digits` places, correctly
    rounded (half-to-even), never truncated."""
    if not 1 <= digits <= 50:
        raise ValueError("digits must be in [1, 50]")
    sign = "-" if x < 0 else ""
    x = abs(x)
    scaled = x * 10**digits
    q, r = divmod(scaled.numerator, scaled.denominator)
    if 2 * r > scaled.denominator or (2 * r == scaled.denominator and q % 2 == 1):
        q += 1
    s = str(q).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"
