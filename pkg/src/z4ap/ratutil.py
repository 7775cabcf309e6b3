"""Exact rational helpers: directed log/sqrt bounds, base-2 logs, parsing.

Everything returns Fractions; callers pick the rounding direction that
weakens the inequality they are about to assert, so no claim ever rests
on an approximation.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

# rational brackets of ln 2 (18 decimal digits)
LN2_LO = Fraction(693147180559945309, 10**18)
LN2_HI = Fraction(693147180559945310, 10**18)


def frac_to_str(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def frac_from_str(s: str) -> Fraction:
    return Fraction(s.strip())


def floor_log2(q: Fraction) -> int:
    """Largest k with 2^k <= q (q > 0)."""
    if q <= 0:
        raise ValueError("floor_log2 needs a positive argument")
    p, d = q.numerator, q.denominator
    t = p.bit_length() - d.bit_length()
    if t >= 0:
        return t if p >= (d << t) else t - 1
    return t if (p << -t) >= d else t - 1


def ceil_log2(q: Fraction) -> int:
    """Smallest k with 2^k >= q (q > 0)."""
    k = floor_log2(q)
    return k if Fraction(1) * (1 << k) == q or (k < 0 and Fraction(1, 1 << -k) == q) else k + 1


def floor_sqrt(q: Fraction, bits: int = 8) -> Fraction:
    """Largest multiple of 2^-bits that is <= sqrt(q) (q >= 0)."""
    if q < 0:
        raise ValueError("floor_sqrt needs a non-negative argument")
    p, d = q.numerator, q.denominator
    return Fraction(isqrt(p * d << (2 * bits)) // d, 1 << bits)


def _ln_mantissa_bounds(r: Fraction, terms: int) -> tuple[Fraction, Fraction]:
    # r in [1, 2); ln r = 2*atanh(z), z = (r-1)/(r+1) in [0, 1/3)
    z = (r - 1) / (r + 1)
    z2 = z * z
    acc = Fraction(0)
    power = z
    for j in range(terms):
        acc += power / (2 * j + 1)
        power *= z2
    lo = 2 * acc
    # tail: 2 * sum_{k>=terms} z^(2k+1)/(2k+1) <= 2*z^(2*terms+1)/((2*terms+1)*(1-z2))
    tail = 2 * power / ((2 * terms + 1) * (1 - z2))
    return lo, lo + tail


def ln_bounds(q: Fraction, terms: int = 14) -> tuple[Fraction, Fraction]:
    """Rational (lower, upper) bounds for ln q, q > 0."""
    if q <= 0:
        raise ValueError("ln_bounds needs a positive argument")
    q = Fraction(q)
    if q == 1:
        return Fraction(0), Fraction(0)
    e = floor_log2(q)
    r = q / Fraction(2) ** e
    mlo, mhi = _ln_mantissa_bounds(r, terms)
    if e >= 0:
        return mlo + e * LN2_LO, mhi + e * LN2_HI
    return mlo + e * LN2_HI, mhi + e * LN2_LO


def ln_lower(q: Fraction) -> Fraction:
    return ln_bounds(q)[0]


def ln_upper(q: Fraction) -> Fraction:
    return ln_bounds(q)[1]


def ceil_frac(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)
