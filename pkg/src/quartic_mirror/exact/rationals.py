"""Rational scalars and harmonic-number helpers.

``fractions.Fraction`` already provides canonical reduced rationals with a
positive denominator, which is exactly the invariant we need, so it serves
as the package-wide rational type.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

Rational = Fraction


def rational_to_str(q: Fraction) -> str:
    """Serialize a rational as ``"p"`` or ``"p/q"`` in lowest terms."""
    q = Fraction(q)
    return str(q)


def rational_from_str(s: str) -> Fraction:
    """Parse the output of :func:`rational_to_str`."""
    return Fraction(s.strip())


@lru_cache(maxsize=None)
def harmonic_number(n: int) -> Fraction:
    """H_n = 1 + 1/2 + ... + 1/n, with H_0 = 0."""
    if n < 0:
        raise ValueError("harmonic_number needs n >= 0")
    if n == 0:
        return Fraction(0)
    return harmonic_number(n - 1) + Fraction(1, n)


def harmonic_difference(n: int) -> Fraction:
    """H_{4n} - H_n, the digamma difference Psi(4n+1) - Psi(n+1).

    The Euler constants cancel, leaving an exact rational.
    """
    if n < 0:
        raise ValueError("harmonic_difference needs n >= 0")
    return harmonic_number(4 * n) - harmonic_number(n)
