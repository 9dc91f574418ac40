"""The explicit series around the large complex structure point.

Everything here works in the variable w = z/256 (z the hypergeometric
variable), in which the holomorphic solution has coefficients (4n)!/(n!)^4
and all mirror-map data is rational with no stray powers of 4.  The
q-coordinate is q = w * exp(A(w)/W1(w)) with A the analytic part of the
logarithmic solution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from quartic_mirror.errors import DomainError
from quartic_mirror.exact import (
    LogSeries,
    TruncatedSeries,
    harmonic_difference,
    lagrange_invert,
)

VAR_W = "w"
VAR_Q = "q"


@lru_cache(maxsize=None)
def _factorial(n: int) -> int:
    if n == 0:
        return 1
    return n * _factorial(n - 1)


@lru_cache(maxsize=None)
def quadruple_factorial_ratio(n: int) -> int:
    """(4n)! / (n!)^4, the coefficient of w^n in the holomorphic period."""
    return _factorial(4 * n) // _factorial(n) ** 4


def w1_series(order: int) -> TruncatedSeries:
    """Holomorphic solution W1 = sum (4n)!/(n!)^4 w^n."""
    if order < 0:
        raise DomainError("order must be >= 0")
    return TruncatedSeries(
        [Fraction(quadruple_factorial_ratio(n)) for n in range(order + 1)],
        VAR_W,
    )


def w2_analytic_part(order: int) -> TruncatedSeries:
    """Analytic part of the logarithmic solution:

    4 * sum (4n)!/(n!)^4 (H_{4n} - H_n) w^n.
    """
    if order < 0:
        raise DomainError("order must be >= 0")
    return TruncatedSeries(
        [
            4 * quadruple_factorial_ratio(n) * harmonic_difference(n)
            for n in range(order + 1)
        ],
        VAR_W,
    )


def w2_series(order: int) -> LogSeries:
    """The full logarithmic solution W2 = log(w) W1 + analytic part."""
    w1 = w1_series(order)
    return LogSeries({0: w2_analytic_part(order), 1: w1}, VAR_W)


@dataclass(frozen=True)
class MirrorExpansion:
    """The period map germ at w=0 and its exponential coordinate.

    p_series  -- log(w) + analytic part of 2*pi*i times the period map
    q_series  -- expansion of exp(2*pi*i * period map) in w
    w_of_q    -- compositional inverse of q_series
    """

    p_series: LogSeries
    q_series: TruncatedSeries
    w_of_q: TruncatedSeries

    @property
    def order(self) -> int:
        return self.q_series.order


def mirror_expansion(order: int) -> MirrorExpansion:
    if order < 1:
        raise DomainError("mirror expansion needs order >= 1")
    w1 = w1_series(order)
    analytic = w2_analytic_part(order).divide(w1)
    p = LogSeries({0: analytic, 1: TruncatedSeries.one(order, VAR_W)}, VAR_W)
    q = TruncatedSeries.x(order, VAR_W) * analytic.exp()
    inv = lagrange_invert(q)
    w_of_q = TruncatedSeries(inv.coeffs, VAR_Q)
    return MirrorExpansion(p_series=p, q_series=q, w_of_q=w_of_q)


@dataclass(frozen=True)
class IntegralityReport:
    order: int
    q_offenders: tuple  # (index, Fraction) pairs with non-integral entries
    inverse_offenders: tuple

    @property
    def all_integral(self) -> bool:
        return not self.q_offenders and not self.inverse_offenders


def integrality_audit(order: int) -> IntegralityReport:
    """List any non-integral coefficients of q(w) and w(q) through order."""
    exp = mirror_expansion(order)
    q_bad = tuple(
        (k, c)
        for k, c in enumerate(exp.q_series.coeffs)
        if c.denominator != 1
    )
    inv_bad = tuple(
        (k, c)
        for k, c in enumerate(exp.w_of_q.coeffs)
        if c.denominator != 1
    )
    return IntegralityReport(order, q_bad, inv_bad)


def hypergeometric_coeffs(uppers, lowers, order, var="z") -> TruncatedSeries:
    """Taylor coefficients of pFq(uppers; lowers; z) as exact rationals."""
    coeffs = [Fraction(1)]
    c = Fraction(1)
    for n in range(order):
        for a in uppers:
            c *= Fraction(a) + n
        for b in lowers:
            c /= Fraction(b) + n
        c /= n + 1
        coeffs.append(c)
    return TruncatedSeries(coeffs, var)


def clausen_check(order: int) -> bool:
    """Squared Gauss series against the 3F2 series, coefficient by coefficient.

    3F2(1/4, 2/4, 3/4; 1, 1; z) versus 2F1(1/8, 3/8; 1; z)^2 through the
    given order.  The lower parameter of the Gauss function is 1, matching
    the second-order operator with local exponent 0 (doubled) at z = 0.
    """
    f32 = hypergeometric_coeffs(
        (Fraction(1, 4), Fraction(2, 4), Fraction(3, 4)), (1, 1), order
    )
    f21 = hypergeometric_coeffs((Fraction(1, 8), Fraction(3, 8)), (1,), order)
    return f21 * f21 == f32
