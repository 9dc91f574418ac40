"""Moebius transformations induced by the transport matrices.

The period chart sends z to the coefficient row (a,b,c) = (z, -1, 2 z^2);
transport acts by (a,b,c) -> (a,b,c).N with N = G M G^{-1}, and the image
point is read back through [a:b:c] -> -a/b.  For an isometry the induced
map on z is fractional-linear; the quadratic numerator and denominator
share an exact linear factor which is cancelled here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from quartic_mirror.errors import DomainError
from quartic_mirror.exact import linalg
from quartic_mirror.exact.poly import Poly
from quartic_mirror.lattice.monodromy_data import abc_monodromy


@dataclass(frozen=True)
class MoebiusTransform:
    """z -> (a z + b)/(c z + d), stored with integer entries in canonical
    form: content divided out, first nonzero of (a,b,c,d) positive."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c == 0:
            raise DomainError("degenerate Moebius transform")

    @classmethod
    def canonical(cls, a, b, c, d):
        entries = [Fraction(x) for x in (a, b, c, d)]
        den = lcm(*(x.denominator for x in entries))
        ints = [int(x * den) for x in entries]
        g = gcd(*ints)
        if g:
            ints = [x // g for x in ints]
        first = next((x for x in ints if x != 0), 1)
        if first < 0:
            ints = [-x for x in ints]
        return cls(*ints)

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    def is_identity(self):
        return self.b == 0 and self.c == 0 and self.a == self.d

    def __call__(self, z):
        den = self.c * z + self.d
        return (self.a * z + self.b) / den

    def compose(self, other):
        """self after other."""
        return MoebiusTransform.canonical(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self):
        return MoebiusTransform.canonical(self.d, -self.b, -self.c, self.a)

    def __repr__(self):
        return f"z -> ({self.a}z + {self.b})/({self.c}z + {self.d})"


@dataclass(frozen=True)
class QuadraticPoint:
    """x + sign * i sqrt(r) with rational x, r >= 0; r = 0 means rational."""

    x: Fraction
    r: Fraction
    sign: int

    def approx(self):
        import math

        return complex(float(self.x), self.sign * math.sqrt(float(self.r)))

    def __repr__(self):
        if self.r == 0:
            return f"{self.x}"
        s = "+" if self.sign > 0 else "-"
        return f"{self.x} {s} i*sqrt({self.r})"


def mobius_from_monodromy(m) -> MoebiusTransform:
    """Induced fractional-linear action on -a/b for a transport matrix m.

    Substituting the chart point (z, -1, 2z^2) and reading off -a'/b'
    yields a ratio of quadratics; the isometry property forces an exact
    common factor, leaving a degree <= 1 ratio.
    """
    n = abc_monodromy(m)
    z = Poly.x("z")
    chart = (z, Poly.constant(-1, "z"), 2 * z * z)
    a_img = sum((chart[i] * n[i][0] for i in range(3)), Poly.zero("z"))
    b_img = sum((chart[i] * n[i][1] for i in range(3)), Poly.zero("z"))
    c_img = sum((chart[i] * n[i][2] for i in range(3)), Poly.zero("z"))
    # the image must stay on the isotropy quadric 4a^2 + 2bc = 0
    if not (4 * a_img * a_img + 2 * b_img * c_img).is_zero():
        raise DomainError("matrix does not preserve the period quadric")
    num = -a_img
    den = b_img
    g = num.gcd(den)
    if g.degree > 0:
        num = num.divmod(g)[0]
        den = den.divmod(g)[0]
    if num.degree > 1 or den.degree > 1:
        raise DomainError("induced map is not fractional-linear")
    return MoebiusTransform.canonical(num[1], num[0], den[1], den[0])


def fixed_points(m: MoebiusTransform):
    """Exact fixed-point data of z -> (az+b)/(cz+d).

    Returns ("infinity",) extras for parabolic translations, otherwise the
    monic quadratic (p, q) with z^2 + p z + q = 0 and, when the
    discriminant is negative, the two QuadraticPoints x +- i sqrt(r).
    """
    if m.is_identity():
        raise DomainError("identity transform fixes everything")
    a, b, c, d = m.a, m.b, m.c, m.d
    if c == 0:
        # az + b = dz: (a-d) z = -b
        if a == d:
            return {"kind": "parabolic-infinity", "points": ("inf",)}
        z0 = Fraction(-b, a - d)
        return {"kind": "linear", "points": ("inf", QuadraticPoint(z0, Fraction(0), 1))}
    # c z^2 + (d-a) z - b = 0
    p = Fraction(d - a, c)
    q = Fraction(-b, c)
    disc = p * p - 4 * q
    out = {"kind": "quadratic", "monic": (p, q), "discriminant": disc}
    if disc < 0:
        x = -p / 2
        r = -disc / 4
        out["points"] = (QuadraticPoint(x, r, 1), QuadraticPoint(x, r, -1))
    else:
        out["points"] = ()
    return out
