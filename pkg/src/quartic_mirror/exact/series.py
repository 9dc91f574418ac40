"""Truncated power series with exact rational coefficients.

The truncation order is a per-value attribute: arithmetic on operands of
different orders truncates the result to the minimum, so a coefficient is
only ever reported when it is exact.
"""

from __future__ import annotations

from fractions import Fraction

from quartic_mirror.errors import DomainError, TagMismatchError


class TruncatedSeries:
    """Power series known exactly through x^order."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs, var="x"):
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("a truncated series needs at least order 0")
        self.var = var

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, order, var="x"):
        return cls((Fraction(0),) * (order + 1), var)

    @classmethod
    def one(cls, order, var="x"):
        return cls((Fraction(1),) + (Fraction(0),) * order, var)

    @classmethod
    def constant(cls, c, order, var="x"):
        return cls((Fraction(c),) + (Fraction(0),) * order, var)

    @classmethod
    def x(cls, order, var="x"):
        if order < 1:
            raise DomainError("order too small to hold the variable")
        return cls((0, 1) + (0,) * (order - 1), var)

    @classmethod
    def from_function(cls, f, order, var="x"):
        return cls([Fraction(f(n)) for n in range(order + 1)], var)

    # -- structure ------------------------------------------------------

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        if not 0 <= k <= self.order:
            raise IndexError(
                f"coefficient {k} beyond truncation order {self.order}"
            )
        return self.coeffs[k]

    def truncate(self, order):
        if order > self.order:
            raise DomainError("cannot extend a truncated series")
        return TruncatedSeries(self.coeffs[: order + 1], self.var)

    def _common(self, other):
        if self.var != other.var:
            raise TagMismatchError(
                f"series in {self.var!r} and {other.var!r}"
            )
        n = min(self.order, other.order)
        return n

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    # -- ring operations --------------------------------------------------

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.var)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            out = list(self.coeffs)
            out[0] += other
            return TruncatedSeries(out, self.var)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = self._common(other)
        return TruncatedSeries(
            [self.coeffs[k] + other.coeffs[k] for k in range(n + 1)], self.var
        )

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([c * other for c in self.coeffs], self.var)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = self._common(other)
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return TruncatedSeries(out, self.var)

    __rmul__ = __mul__

    def mul_by_power(self, k):
        """Multiply by x^k. The top k coefficients fall off the truncation."""
        if k == 0:
            return self
        if k < 0 or k > self.order:
            raise DomainError("power shift outside truncation window")
        return TruncatedSeries(
            (Fraction(0),) * k + self.coeffs[: self.order + 1 - k], self.var
        )

    def reciprocal(self):
        if self.coeffs[0] == 0:
            raise DomainError("reciprocal of a series with zero constant term")
        n = self.order
        inv0 = 1 / self.coeffs[0]
        out = [inv0] + [Fraction(0)] * n
        for k in range(1, n + 1):
            acc = Fraction(0)
            for j in range(1, k + 1):
                if self.coeffs[j]:
                    acc += self.coeffs[j] * out[k - j]
            out[k] = -acc * inv0
        return TruncatedSeries(out, self.var)

    def divide(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(other, self.order, self.var)
        if other.coeffs[0] == 0:
            raise DomainError("division by a series with zero constant term")
        n = self._common(other)
        inv0 = 1 / other.coeffs[0]
        out = [Fraction(0)] * (n + 1)
        for k in range(n + 1):
            acc = self.coeffs[k]
            for j in range(1, k + 1):
                if other.coeffs[j]:
                    acc -= other.coeffs[j] * out[k - j]
            out[k] = acc * inv0
        return TruncatedSeries(out, self.var)

    def compose(self, inner):
        """self(inner(x)); inner must have zero constant term."""
        if inner.coeffs[0] != 0:
            raise DomainError("composition needs inner constant term 0")
        n = min(self.order, inner.order)
        acc = TruncatedSeries.zero(n, inner.var)
        inner = inner.truncate(n)
        for c in reversed(self.coeffs[: n + 1]):
            acc = acc * inner + c
        return acc

    def derivative(self):
        """Term-wise d/dx; the result is exact through order-1."""
        if self.order == 0:
            return TruncatedSeries.zero(0, self.var)
        return TruncatedSeries(
            [k * self.coeffs[k] for k in range(1, self.order + 1)], self.var
        )

    def theta(self):
        """x d/dx, exact through the same truncation order."""
        return TruncatedSeries(
            [k * c for k, c in enumerate(self.coeffs)], self.var
        )

    def integrate(self):
        """Antiderivative with zero constant term; gains one order."""
        out = [Fraction(0)] * (self.order + 2)
        for k in range(self.order + 1):
            out[k + 1] = self.coeffs[k] / (k + 1)
        return TruncatedSeries(out, self.var)

    def exp(self):
        """exp of a series with zero constant term."""
        if self.coeffs[0] != 0:
            raise DomainError("exp needs constant term 0")
        n = self.order
        out = [Fraction(1)] + [Fraction(0)] * n
        # y' = s' y termwise: k*y_k = sum_{j=1..k} j*s_j*y_{k-j}
        for k in range(1, n + 1):
            acc = Fraction(0)
            for j in range(1, k + 1):
                if self.coeffs[j]:
                    acc += j * self.coeffs[j] * out[k - j]
            out[k] = acc / k
        return TruncatedSeries(out, self.var)

    def log(self):
        """log of a series with constant term 1."""
        if self.coeffs[0] != 1:
            raise DomainError("log needs constant term 1")
        if self.order == 0:
            return TruncatedSeries.zero(0, self.var)
        # log(a) = integral of a'/a; the quotient is exact to order-1,
        # so the integral is exact through the original order.
        return self.derivative().divide(self.truncate(self.order - 1)).integrate()

    def __call__(self, x):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        return acc

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*{self.var}")
            else:
                terms.append(f"{c}*{self.var}^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O({self.var}^{self.order + 1})"

    def to_json_dict(self):
        from quartic_mirror.exact.rationals import rational_to_str

        return {
            "order": self.order,
            "variable": self.var,
            "coefficients": [rational_to_str(c) for c in self.coeffs],
        }

    @classmethod
    def from_json_dict(cls, d):
        from quartic_mirror.exact.rationals import rational_from_str

        s = cls([rational_from_str(c) for c in d["coefficients"]],
                d.get("variable", "x"))
        if s.order != d["order"]:
            raise ValueError("series order field disagrees with coefficients")
        return s


def lagrange_invert(s: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse of a series with s(0)=0, s'(0)=1.

    Uses the Lagrange inversion formula [q^n] r = (1/n) [x^{n-1}] (x/s)^n,
    building the powers (x/s)^n incrementally.
    """
    if s.coeffs[0] != 0:
        raise DomainError("inversion needs zero constant term")
    if s.order < 1 or s.coeffs[1] == 0:
        raise DomainError("inversion needs a unit linear coefficient")
    if s.coeffs[1] != 1:
        raise DomainError("normalize the linear coefficient to 1 first")
    n = s.order
    # u = x/s(x) as a series (shift the coefficients down one).
    u = TruncatedSeries(s.coeffs[1:], s.var).reciprocal()
    out = [Fraction(0), Fraction(1)] + [Fraction(0)] * (n - 1)
    p = u
    for k in range(2, n + 1):
        p = p * u
        out[k] = p.coeffs[k - 1] / k
    return TruncatedSeries(out, s.var)
