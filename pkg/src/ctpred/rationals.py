"""Exact rational helpers: fraction (de)serialization and pinned constants.

All costs, probabilities and ratios in this package are `fractions.Fraction`.
The single irrational constant used by the error-1 analysis for k=2,
(3 + sqrt(17)) / 2, is pinned as a 50-digit rational approximation so that
every downstream computation stays exact; comparisons against the true
irrational value are made at tolerance 1e-9, far coarser than the 1e-50
approximation error.
"""

from __future__ import annotations

import math
from fractions import Fraction

_SCALE = 10**50

# floor(sqrt(17) * 10^50) / 10^50, accurate to 1e-50.
SQRT17 = Fraction(math.isqrt(17 * _SCALE * _SCALE), _SCALE)

# (3 + sqrt(17)) / 2 ~= 3.5615528128...; worst-case ratio constant for k=2, error <= 1.
ALPHA_K2 = (3 + SQRT17) / 2

# Tolerance used wherever ALPHA_K2 stands in for the true irrational value.
IRRATIONAL_TOL = Fraction(1, 10**9)


def parse_fraction(value) -> Fraction:
    """Parse "num/den" strings (also bare integers / ints) into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise ValueError(f"cannot parse exact fraction from {value!r}")


def format_fraction(value: Fraction) -> str:
    """Render a Fraction as "num/den", always including the denominator."""
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def decimal_str(value: Fraction, digits: int = 12) -> str:
    """Decimal rendering with the given number of significant digits."""
    return f"{float(value):.{digits}g}"
