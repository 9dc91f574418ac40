"""Series with polynomial dependence on a formal logarithm.

A LogSeries represents sum_k S_k(x) * L^k where L stands for log x and
each S_k is a TruncatedSeries.  The formal symbol never needs a branch;
branch data lives with the numerical evaluators.
"""

from __future__ import annotations

from fractions import Fraction

from quartic_mirror.errors import TagMismatchError
from quartic_mirror.exact.series import TruncatedSeries


class LogSeries:
    __slots__ = ("parts", "var", "_order")

    def __init__(self, parts, var=None, order=None):
        """parts: mapping log-power -> TruncatedSeries (zero parts dropped).

        An explicit order is required when parts may be empty, so the
        truncation information survives cancellation to zero.
        """
        cleaned = {}
        for k, s in parts.items():
            if k < 0:
                raise ValueError("negative log powers are not supported")
            if var is None:
                var = s.var
            elif s.var != var:
                raise TagMismatchError("mixed variable tags in LogSeries")
            order = s.order if order is None else min(order, s.order)
            cleaned[k] = s
        if var is None:
            raise ValueError("empty LogSeries needs an explicit variable")
        if order is None:
            raise ValueError("empty LogSeries needs an explicit order")
        # Propagate the minimum truncation across parts.
        self.parts = {
            k: s.truncate(order) for k, s in cleaned.items() if not s.is_zero()
        }
        self.var = var
        self._order = order

    @classmethod
    def from_series(cls, s):
        return cls({0: s}, s.var)

    @classmethod
    def log_term(cls, order, var="x"):
        """The bare formal logarithm: L * 1."""
        return cls({1: TruncatedSeries.one(order, var)}, var)

    @property
    def order(self):
        return self._order

    def max_log_power(self):
        return max(self.parts, default=0)

    def part(self, k):
        if k in self.parts:
            return self.parts[k]
        return TruncatedSeries.zero(self._order, self.var)

    def is_zero(self):
        return not self.parts

    def __eq__(self, other):
        if not isinstance(other, LogSeries):
            return NotImplemented
        return self.var == other.var and self.parts == other.parts

    def _common_order(self, other):
        if self.var != other.var:
            raise TagMismatchError(
                f"log-series in {self.var!r} and {other.var!r}"
            )
        return min(self._order, other._order)

    def __neg__(self):
        return LogSeries(
            {k: -s for k, s in self.parts.items()}, self.var, self._order
        )

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            other = LogSeries.from_series(other)
        if isinstance(other, (int, Fraction)):
            other = LogSeries.from_series(
                TruncatedSeries.constant(other, self._order, self.var)
            )
        if not isinstance(other, LogSeries):
            return NotImplemented
        n = self._common_order(other)
        out = {}
        for k in set(self.parts) | set(other.parts):
            out[k] = self.part(k).truncate(n) + other.part(k).truncate(n)
        return LogSeries(out, self.var, n)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (TruncatedSeries, int, Fraction)):
            return self + (-other if not isinstance(other, TruncatedSeries)
                           else -other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LogSeries(
                {k: s * other for k, s in self.parts.items()},
                self.var,
                self._order,
            )
        if isinstance(other, TruncatedSeries):
            other = LogSeries.from_series(other)
        if not isinstance(other, LogSeries):
            return NotImplemented
        n = self._common_order(other)
        out = {}
        for i, a in self.parts.items():
            for j, b in other.parts.items():
                prod = a.truncate(n) * b.truncate(n)
                if i + j in out:
                    out[i + j] = out[i + j] + prod
                else:
                    out[i + j] = prod
        return LogSeries(out, self.var, n)

    __rmul__ = __mul__

    def theta(self):
        """Apply x d/dx, using theta(L^k) = k L^{k-1}."""
        out = {}

        def acc(k, s):
            if k in out:
                out[k] = out[k] + s
            else:
                out[k] = s

        for k, s in self.parts.items():
            acc(k, s.theta())
            if k >= 1:
                acc(k - 1, s * k)
        return LogSeries(out, self.var, self._order)

    def mul_by_power(self, j):
        return LogSeries(
            {k: s.mul_by_power(j) for k, s in self.parts.items()},
            self.var,
            self._order,
        )

    def __repr__(self):
        if not self.parts:
            return f"0 + O({self.var}^{self._order + 1})"
        bits = []
        for k in sorted(self.parts):
            s = self.parts[k]
            if k == 0:
                bits.append(f"({s!r})")
            elif k == 1:
                bits.append(f"({s!r})*log({self.var})")
            else:
                bits.append(f"({s!r})*log({self.var})^{k}")
        return " + ".join(bits)
