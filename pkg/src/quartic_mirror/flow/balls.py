"""Complex ball arithmetic on top of mpmath.

A Ball is a midpoint (mpc) with an error radius (mpf).  Radii are
propagated with first-order formulas plus a conservative rounding
inflation on every operation; the package-level tolerance policy (spec'd
safety margins far above the achievable radii) absorbs the difference
between this and fully outward-rounded interval arithmetic.

All operations must run inside ``ball_context(prec_bits)`` (or any caller
supplied mpmath working precision).
"""

from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction

import mpmath as mp

# extra working bits beyond the requested precision
GUARD_BITS = 24


@contextmanager
def ball_context(prec_bits: int):
    with mp.workprec(prec_bits + GUARD_BITS):
        yield


_EPS_CACHE = {}


def _eps():
    # generous per-operation rounding allowance at current precision
    prec = mp.mp.prec
    out = _EPS_CACHE.get(prec)
    if out is None:
        out = mp.mpf(2) ** (8 - prec)
        _EPS_CACHE[prec] = out
    return out


class Ball:
    __slots__ = ("mid", "rad")

    def __init__(self, mid, rad=0):
        self.mid = mp.mpc(mid)
        self.rad = mp.mpf(rad)
        if self.rad < 0:
            raise ValueError("negative ball radius")

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_fraction(cls, q):
        q = Fraction(q)
        mid = mp.mpf(q.numerator) / mp.mpf(q.denominator)
        sign, man, exp, _ = mp.mpf(mid)._mpf_
        if man and Fraction((-man if sign else man), 1) * Fraction(2) ** exp == q:
            return cls(mid, 0)
        if man == 0 and q == 0:
            return cls(mid, 0)
        return cls(mid, abs(mid) * _eps())

    @classmethod
    def from_pair(cls, re, im):
        re = cls.from_fraction(re)
        im = cls.from_fraction(im)
        return cls(mp.mpc(re.mid.real, im.mid.real), re.rad + im.rad)

    @classmethod
    def exact_int(cls, n):
        return cls(mp.mpc(n), 0)

    @classmethod
    def pi(cls):
        v = +mp.pi
        return cls(v, abs(v) * _eps())

    @classmethod
    def two_pi_i(cls):
        p = cls.pi()
        return Ball(mp.mpc(0, 2) * p.mid, 2 * p.rad + _eps())

    # -- bounds ----------------------------------------------------------

    def abs_upper(self):
        return abs(self.mid) + self.rad

    def abs_lower(self):
        lo = abs(self.mid) - self.rad
        return lo if lo > 0 else mp.mpf(0)

    def contains_zero(self):
        return abs(self.mid) <= self.rad

    def excludes_zero(self):
        return abs(self.mid) > self.rad

    def contains(self, value):
        return abs(self.mid - mp.mpc(value)) <= self.rad

    def distance_to(self, value):
        """Upper bound for |self - value| over the ball."""
        return abs(self.mid - mp.mpc(value)) + self.rad

    # -- arithmetic --------------------------------------------------------

    def _bump(self, mid, rad):
        return Ball(mid, rad * (1 + _eps()) + abs(mid) * _eps())

    def __neg__(self):
        return Ball(-self.mid, self.rad)

    def conj(self):
        return Ball(mp.conj(self.mid), self.rad)

    def __add__(self, other):
        other = as_ball(other)
        return self._bump(self.mid + other.mid, self.rad + other.rad)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_ball(other)
        return self._bump(self.mid - other.mid, self.rad + other.rad)

    def __rsub__(self, other):
        return as_ball(other) - self

    def __mul__(self, other):
        other = as_ball(other)
        rad = (
            abs(self.mid) * other.rad
            + abs(other.mid) * self.rad
            + self.rad * other.rad
        )
        return self._bump(self.mid * other.mid, rad)

    __rmul__ = __mul__

    def inverse(self):
        lo = abs(self.mid) - self.rad
        if lo <= 0:
            raise ZeroDivisionError("ball contains zero")
        mid = 1 / self.mid
        rad = self.rad / (abs(self.mid) * lo)
        return self._bump(mid, rad)

    def __truediv__(self, other):
        return self * as_ball(other).inverse()

    def __rtruediv__(self, other):
        return as_ball(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = Ball(1, 0)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def sqrt(self):
        """Principal square root; the ball must avoid the branch cut."""
        lo = abs(self.mid) - self.rad
        if lo <= 0:
            raise ZeroDivisionError("sqrt of a ball containing zero")
        if self.mid.real < 0 and abs(self.mid.imag) <= self.rad:
            raise ValueError("sqrt ball straddles the negative real axis")
        mid = mp.sqrt(self.mid)
        rad = self.rad / (2 * mp.sqrt(lo))
        return self._bump(mid, rad)

    def exp(self):
        mid = mp.exp(self.mid)
        # |exp(z)-exp(m)| <= |exp(m)| (e^r - 1)
        r = self.rad
        grow = mp.expm1(r) if r < 1 else mp.exp(r) - 1
        return self._bump(mid, abs(mid) * grow)

    def log(self):
        """Principal log; ball must avoid the cut and zero."""
        lo = abs(self.mid) - self.rad
        if lo <= 0:
            raise ZeroDivisionError("log of a ball containing zero")
        if self.mid.real < 0 and abs(self.mid.imag) <= self.rad:
            raise ValueError("log ball straddles the negative real axis")
        mid = mp.log(self.mid)
        rad = self.rad / lo
        return self._bump(mid, rad)

    def real_part(self):
        return Ball(self.mid.real, self.rad)

    def imag_part(self):
        return Ball(self.mid.imag, self.rad)

    def mul_i(self):
        return Ball(self.mid * mp.mpc(0, 1), self.rad)

    def __repr__(self):
        return f"Ball({mp.nstr(self.mid, 20)}, rad={mp.nstr(self.rad, 3)})"


def as_ball(x):
    if isinstance(x, Ball):
        return x
    if isinstance(x, int):
        return Ball.exact_int(x)
    if isinstance(x, Fraction):
        return Ball.from_fraction(x)
    return Ball(mp.mpc(x), 0)


def sqrt2_ball():
    return Ball.exact_int(2).sqrt()


# -- small ball matrices ----------------------------------------------------


def mat_identity(n):
    return [
        [Ball.exact_int(1 if i == j else 0) for j in range(n)] for i in range(n)
    ]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for s in range(1, k):
                acc = acc + a[i][s] * b[s][j]
            row.append(acc)
        out.append(row)
    return out


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_solve(a, b):
    """Solve a X = b for ball matrices (Gaussian elimination, pivot by
    largest lower-magnitude bound)."""
    n = len(a)
    m = len(b[0])
    aug = [list(a[i]) + list(b[i]) for i in range(n)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: aug[r][col].abs_lower())
        if aug[piv][col].abs_lower() <= 0:
            raise ZeroDivisionError("ball matrix is not invertibly pivoted")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col:
                f = aug[r][col]
                if f.abs_upper() == 0:
                    continue
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def mat_inverse(a):
    return mat_solve(a, mat_identity(len(a)))


def mat_max_radius(a):
    return max(x.rad for row in a for x in row)


def mat_contains(a, exact):
    """Does each ball entry contain the corresponding exact entry?"""
    return all(
        a[i][j].contains(exact[i][j])
        for i in range(len(a))
        for j in range(len(a[0]))
    )


def charpoly_3x3(m):
    """Coefficients (c0, c1, c2) of x^3 + c2 x^2 + c1 x + c0."""
    tr = m[0][0] + m[1][1] + m[2][2]
    minors = (
        m[1][1] * m[2][2] - m[1][2] * m[2][1]
    ) + (
        m[0][0] * m[2][2] - m[0][2] * m[2][0]
    ) + (
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    )
    det = (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
    return (-det, minors, -tr)
