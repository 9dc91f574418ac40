"""Exact arithmetic foundation.

Arbitrary-precision rationals (stdlib ``fractions.Fraction``), dense
univariate polynomials and rational functions over Q, truncated power
series, and log-series (truncated series with polynomial log dependence).
All values are immutable after construction.
"""

from quartic_mirror.exact.rationals import (
    Rational,
    harmonic_difference,
    harmonic_number,
    rational_from_str,
    rational_to_str,
)
from quartic_mirror.exact.poly import Poly, RationalFunction
from quartic_mirror.exact.series import TruncatedSeries, lagrange_invert
from quartic_mirror.exact.logseries import LogSeries

__all__ = [
    "Rational",
    "harmonic_difference",
    "harmonic_number",
    "rational_from_str",
    "rational_to_str",
    "Poly",
    "RationalFunction",
    "TruncatedSeries",
    "lagrange_invert",
    "LogSeries",
]
