"""Gamma values at rational arguments via shifted Stirling series.

Only a handful of fixed positive rational arguments are needed (1/8, 5/8,
1/2, 3/2, ...).  The argument is shifted up by an integer so the Stirling
series applies, the Bernoulli sum is evaluated as one exact rational, and
the truncation error is bounded by the first omitted term, which is valid
for real positive arguments.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

import mpmath as mp

from quartic_mirror.errors import DomainError
from quartic_mirror.flow.balls import Ball


@lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    """Exact Bernoulli number B_n (B_1 = -1/2 convention)."""
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2 == 1:
        return Fraction(0)
    acc = Fraction(0)
    for k in range(n):
        acc += comb(n + 1, k) * bernoulli_number(k)
    return -acc / (n + 1)


def _log_2pi_ball():
    two_pi = Ball.pi() * 2
    return two_pi.log()


def log_gamma_shifted(y: Fraction, terms: int) -> Ball:
    """ln Gamma(y) for rational y large enough that `terms` suffice.

    (y - 1/2) ln y - y + ln(2 pi)/2 + sum_{k=1..K} B_2k/(2k(2k-1) y^{2k-1}),
    remainder bounded by the first omitted term (real y > 0).
    """
    if y <= 0:
        raise DomainError("shifted Stirling needs y > 0")
    acc = Fraction(0)
    ypow = y  # y^(2k-1)
    y2 = y * y
    for k in range(1, terms + 1):
        acc += bernoulli_number(2 * k) / (2 * k * (2 * k - 1) * ypow)
        ypow *= y2
    kk = terms + 1
    bound = abs(bernoulli_number(2 * kk)) / (2 * kk * (2 * kk - 1) * ypow)
    yb = Ball.from_fraction(y)
    series = Ball.from_fraction(acc) + Ball(0, mp.mpf(bound.numerator) / mp.mpf(bound.denominator))
    return (
        (yb - Fraction(1, 2)) * yb.log()
        - yb
        + _log_2pi_ball() * Fraction(1, 2)
        + series
    )


def gamma_ball(q, prec_bits: int) -> Ball:
    """Gamma(q) for positive rational q, inside an ambient ball context."""
    q = Fraction(q)
    if q <= 0:
        raise DomainError("gamma_ball expects a positive rational argument")
    # shift so the Stirling series reaches the target accuracy;
    # error bits ~ 6.18 * shift (with terms = shift)
    target = max(32, prec_bits // 6 + 16)
    shift = 0
    y = q
    while y < target:
        y += 1
        shift += 1
    terms = max(24, int(target))
    lg = log_gamma_shifted(y, terms)
    out = lg.exp()
    if shift:
        prod = Fraction(1)
        for j in range(shift):
            prod *= q + j
        out = out / Ball.from_fraction(prod)
    return out
