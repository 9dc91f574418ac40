"""Dense univariate polynomials and rational functions over Q."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from quartic_mirror.errors import DomainError, TagMismatchError


def _trim(coeffs):
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    """Polynomial with Fraction coefficients, indexed by degree.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs, var="x"):
        self.coeffs = _trim([Fraction(c) for c in coeffs])
        self.var = var

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, var="x"):
        return cls((), var)

    @classmethod
    def one(cls, var="x"):
        return cls((1,), var)

    @classmethod
    def constant(cls, c, var="x"):
        return cls((Fraction(c),), var)

    @classmethod
    def x(cls, var="x"):
        return cls((0, 1), var)

    @classmethod
    def monomial(cls, degree, c=1, var="x"):
        return cls((0,) * degree + (Fraction(c),), var)

    # -- basic structure ----------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def leading(self):
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def _check_var(self, other):
        if self.var != other.var:
            raise TagMismatchError(
                f"polynomials in {self.var!r} and {other.var!r}"
            )

    # -- arithmetic ----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.var == other.var and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(other, self.var)
        return NotImplemented

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.var)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other, self.var)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_var(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[k] + other[k] for k in range(n)], self.var)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs], self.var)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_var(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise DomainError("negative polynomial power")
        out = Poly.one(self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other):
        """Exact polynomial division with remainder."""
        self._check_var(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        r = list(self.coeffs)
        d = other.degree
        lead = other.leading()
        for k in range(len(r) - 1, d - 1, -1):
            if r[k] == 0:
                continue
            c = r[k] / lead
            q[k - d] = c
            for j, b in enumerate(other.coeffs):
                r[k - d + j] -= c * b
        return Poly(q, self.var), Poly(r, self.var)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    # -- algebra helpers -----------------------------------------------

    def monic(self):
        if self.is_zero():
            return self
        lead = self.leading()
        return Poly([c / lead for c in self.coeffs], self.var)

    def content(self):
        """Positive rational c with self/c integral and primitive."""
        if self.is_zero():
            return Fraction(1)
        num = 0
        den = 1
        for c in self.coeffs:
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    def primitive(self):
        """Integer-coefficient primitive part with positive leading term."""
        if self.is_zero():
            return self
        p = self * (1 / self.content())
        if p.leading() < 0:
            p = -p
        return p

    def gcd(self, other):
        self._check_var(other)
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a.monic()

    def derivative(self):
        return Poly(
            [k * c for k, c in enumerate(self.coeffs)][1:], self.var
        )

    def __call__(self, x):
        """Horner evaluation; works for any ring element x."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return Fraction(0) if isinstance(x, (int, Fraction)) else x * 0
        return acc

    def shifted(self, a):
        """Taylor shift: returns p(x + a) as a Poly."""
        out = Poly.zero(self.var)
        xa = Poly((Fraction(a), Fraction(1)), self.var)
        for c in reversed(self.coeffs):
            out = out * xa + Poly.constant(c, self.var)
        return out

    def substitute_rf(self, r):
        """Evaluate at a RationalFunction, returning a RationalFunction."""
        out = RationalFunction.constant(0, r.var)
        for c in reversed(self.coeffs):
            out = out * r + RationalFunction.constant(c, r.var)
        return out

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*{self.var}")
            else:
                parts.append(f"{c}*{self.var}^{k}")
        return " + ".join(parts)


class RationalFunction:
    """Quotient of two polynomials, kept coprime with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, var=None):
        if isinstance(num, (int, Fraction)):
            num = Poly.constant(num, var if var is not None else "x")
        if den is None:
            den = Poly.one(num.var)
        elif isinstance(den, (int, Fraction)):
            den = Poly.constant(den, num.var)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        num._check_var(den)
        g = num.gcd(den)
        if not g.is_zero() and g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lead = den.leading()
        if lead != 1:
            num = num * (1 / lead)
            den = den * (1 / lead)
        self.num = num
        self.den = den

    @property
    def var(self):
        return self.num.var

    @classmethod
    def constant(cls, c, var="x"):
        return cls(Poly.constant(c, var))

    @classmethod
    def x(cls, var="x"):
        return cls(Poly.x(var))

    @classmethod
    def from_poly(cls, p):
        return cls(p)

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.degree == 0

    def to_poly(self):
        if not self.is_polynomial():
            raise DomainError("rational function is not a polynomial")
        return self.num

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Poly):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction.constant(other, self.var)
        return None

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n):
        if n < 0:
            return RationalFunction(self.den, self.num) ** (-n)
        return RationalFunction(self.num**n, self.den**n)

    def derivative(self):
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __call__(self, x):
        den = self.den(x)
        if isinstance(den, Fraction) and den == 0:
            raise DomainError(f"pole of rational function at {x}")
        return self.num(x) / den

    def substitute(self, r):
        """Substitute a RationalFunction for the variable."""
        return self.num.substitute_rf(r) / self.den.substitute_rf(r)

    def __repr__(self):
        if self.is_polynomial():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"
