"""Linear differential operators with rational-function coefficients.

Operators come in two coordinate forms: sums of c_i(x) d^i (partial form)
and sums of c_i(x) theta^i with theta = x d/dx (theta form).  Conversion
between the two is exact and involutive.  Composition is the
noncommutative operator product via the Leibniz rule.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from quartic_mirror.errors import DomainError, TagMismatchError
from quartic_mirror.exact.logseries import LogSeries
from quartic_mirror.exact.poly import Poly, RationalFunction
from quartic_mirror.exact.series import TruncatedSeries

PARTIAL = "partial"
THETA = "theta"


def _rf(value, var):
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, Poly):
        return RationalFunction(value)
    return RationalFunction.constant(value, var)


class DiffOp:
    """coeffs[i] multiplies the i-th power of d/dx (or of theta)."""

    __slots__ = ("coeffs", "var", "form")

    def __init__(self, coeffs, var, form=PARTIAL):
        if form not in (PARTIAL, THETA):
            raise ValueError(f"unknown operator form {form!r}")
        coeffs = [_rf(c, var) for c in coeffs]
        while len(coeffs) > 1 and coeffs[-1].is_zero():
            coeffs.pop()
        if not coeffs:
            coeffs = [RationalFunction.constant(0, var)]
        self.coeffs = tuple(coeffs)
        self.var = var
        self.form = form

    @property
    def order(self):
        if len(self.coeffs) == 1 and self.coeffs[0].is_zero():
            return -1
        return len(self.coeffs) - 1

    def leading(self):
        return self.coeffs[-1]

    def is_zero(self):
        return self.order == -1

    def _check(self, other):
        if self.var != other.var:
            raise TagMismatchError(
                f"operators in {self.var!r} and {other.var!r}"
            )

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        a = self.to_partial()
        b = other.to_partial()
        return a.var == b.var and a.coeffs == b.coeffs

    def __add__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        self._check(other)
        if self.form != other.form:
            other = other.to_partial() if self.form == PARTIAL else other.to_theta()
        n = max(len(self.coeffs), len(other.coeffs))
        zero = RationalFunction.constant(0, self.var)

        def get(op, k):
            return op.coeffs[k] if k < len(op.coeffs) else zero

        return DiffOp(
            [get(self, k) + get(other, k) for k in range(n)], self.var, self.form
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return DiffOp([x * c for x in self.coeffs], self.var, self.form)

    # -- form conversion ----------------------------------------------

    def to_partial(self):
        if self.form == PARTIAL:
            return self
        # theta^i = sum_k S2(i,k) x^k d^k (Stirling numbers, second kind)
        out = [RationalFunction.constant(0, self.var)] * len(self.coeffs)
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            for k, s in enumerate(_stirling2_row(i)):
                if s == 0:
                    continue
                term = c * RationalFunction(Poly.monomial(k, s, self.var))
                out[k] = out[k] + term
        return DiffOp(out, self.var, PARTIAL)

    def to_theta(self):
        if self.form == THETA:
            return self
        # d^i = x^{-i} theta (theta-1) ... (theta-i+1)
        out = [RationalFunction.constant(0, self.var)] * len(self.coeffs)
        xi = RationalFunction.x(self.var)
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            scale = c / xi**i
            for k, s in enumerate(_falling_factorial_row(i)):
                if s == 0:
                    continue
                out[k] = out[k] + scale * s
        return DiffOp(out, self.var, THETA)

    # -- normal forms ---------------------------------------------------

    def monic(self):
        op = self.to_partial()
        if op.is_zero():
            raise DomainError("zero operator has no monic form")
        lead = op.leading()
        return DiffOp([c / lead for c in op.coeffs], op.var, PARTIAL)

    def clear_denominators(self):
        """Primitive polynomial coefficients of the partial form.

        Returns a list of Poly sharing no common polynomial factor with
        integer coefficients; the leading one fixes the sign.
        """
        op = self.to_partial()
        den = Poly.one(op.var)
        for c in op.coeffs:
            g = den.gcd(c.den)
            den = den * (c.den.divmod(g)[0] if not g.is_zero() else c.den)
        polys = []
        for c in op.coeffs:
            p = c.num * den.divmod(c.den)[0]
            polys.append(p)
        # strip content
        content = Fraction(0)
        for p in polys:
            for coeff in p.coeffs:
                content = _frac_gcd(content, coeff)
        if content not in (0, 1):
            polys = [p * (1 / content) for p in polys]
        if polys[-1].leading() < 0:
            polys = [-p for p in polys]
        return polys

    def __repr__(self):
        sym = "D" if self.form == PARTIAL else "theta"
        bits = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if i == 0:
                bits.append(f"({c!r})")
            else:
                bits.append(f"({c!r})*{sym}^{i}")
        return " + ".join(bits) if bits else "0"


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    from math import gcd, lcm

    if a == 0:
        return abs(b)
    if b == 0:
        return abs(a)
    return Fraction(
        gcd(a.numerator, b.numerator), lcm(a.denominator, b.denominator)
    )


@lru_cache(maxsize=None)
def _stirling2_row(n):
    """Coefficients of theta^n = sum_k S(n,k) x^k d^k."""
    if n == 0:
        return (1,)
    prev = _stirling2_row(n - 1)
    out = [0] * (n + 1)
    # theta (x^k d^k) = k x^k d^k + x^{k+1} d^{k+1}
    for k, s in enumerate(prev):
        out[k] += k * s
        out[k + 1] += s
    return tuple(out)


@lru_cache(maxsize=None)
def _falling_factorial_row(n):
    """Coefficients of theta(theta-1)...(theta-n+1) in powers of theta."""
    if n == 0:
        return (1,)
    prev = _falling_factorial_row(n - 1)
    out = [0] * (n + 1)
    for k, s in enumerate(prev):
        out[k + 1] += s
        out[k] += -(n - 1) * s
    return tuple(out)


def compose(a: DiffOp, b: DiffOp) -> DiffOp:
    """Operator product a . b, acting as f -> a(b(f))."""
    if a.var != b.var:
        raise TagMismatchError(f"operators in {a.var!r} and {b.var!r}")
    a = a.to_partial()
    b = b.to_partial()
    n = a.order + b.order
    zero = RationalFunction.constant(0, a.var)
    out = [zero] * (max(n, 0) + 1)
    for j, bj in enumerate(b.coeffs):
        if bj.is_zero():
            continue
        # derivatives of the coefficient b_j, reused across i
        derivs = [bj]
        for i, ai in enumerate(a.coeffs):
            if ai.is_zero():
                continue
            while len(derivs) <= i:
                derivs.append(derivs[-1].derivative())
            binom = 1
            for k in range(i + 1):
                term = ai * derivs[k] * binom
                out[i + j - k] = out[i + j - k] + term
                binom = binom * (i - k) // (k + 1)
    return DiffOp(out, a.var, PARTIAL)


def left_multiply(op: DiffOp, f) -> DiffOp:
    """f . op, multiplication by a function from the left."""
    f = _rf(f, op.var)
    return DiffOp([f * c for c in op.coeffs], op.var, op.form)


def right_multiply_by_function(op: DiffOp, f) -> DiffOp:
    """op . f, i.e. the operator g -> op(f g)."""
    f = _rf(f, op.var)
    return compose(op, DiffOp([f], op.var, PARTIAL))


def derivation(var) -> DiffOp:
    return DiffOp([0, 1], var, PARTIAL)


def theta_operator(var) -> DiffOp:
    return DiffOp([0, 1], var, THETA)


# -- the operators of the quartic story ---------------------------------


def build_pf_operator() -> DiffOp:
    """Picard-Fuchs operator of the Dwork quartic pencil, in t.

    d^3 - (1/(1-t^4)) (6 t^3 d^2 + 7 t^2 d + t)
    """
    t = "t"
    den = Poly((1, 0, 0, 0, -1), t)  # 1 - t^4
    return DiffOp(
        [
            RationalFunction(Poly.monomial(1, -1, t), den),
            RationalFunction(Poly.monomial(2, -7, t), den),
            RationalFunction(Poly.monomial(3, -6, t), den),
            RationalFunction.constant(1, t),
        ],
        t,
        PARTIAL,
    )


def _theta_cubic(a, b, c, var, scale):
    """scale * x * (theta+a)(theta+b)(theta+c) expanded in theta powers."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    e1 = a + b + c
    e2 = a * b + a * c + b * c
    e3 = a * b * c
    x = Poly.monomial(1, scale, var)
    return [
        RationalFunction(x * e3),
        RationalFunction(x * e2),
        RationalFunction(x * e1),
        RationalFunction(x),
    ]


def build_hypergeometric_operator(var="z") -> DiffOp:
    """theta^3 - z (theta+1/4)(theta+2/4)(theta+3/4), annihilating the
    holomorphic period 3F2(1/4,2/4,3/4;1,1;z)."""
    lower = _theta_cubic(Fraction(1, 4), Fraction(2, 4), Fraction(3, 4), var, -1)
    coeffs = [
        lower[0],
        lower[1],
        lower[2],
        lower[3] + 1,
    ]
    return DiffOp(coeffs, var, THETA)


def build_hypergeometric_operator_w(var="w") -> DiffOp:
    """The same third-order operator in the coordinate w = z/256."""
    lower = _theta_cubic(
        Fraction(1, 4), Fraction(2, 4), Fraction(3, 4), var, -256
    )
    coeffs = [lower[0], lower[1], lower[2], lower[3] + 1]
    return DiffOp(coeffs, var, THETA)


def build_gauss_operator(var="z") -> DiffOp:
    """theta^2 - z (theta+1/8)(theta+3/8), the Gauss operator with
    parameters ( 1/8, 3/8; 1 )."""
    a, b = Fraction(1, 8), Fraction(3, 8)
    x = Poly.monomial(1, -1, var)
    coeffs = [
        RationalFunction(x * (a * b)),
        RationalFunction(x * (a + b)),
        RationalFunction(x) + 1,
    ]
    return DiffOp(coeffs, var, THETA)


def pullback_inverse_quartic(op: DiffOp, target_var="t") -> DiffOp:
    """Pull back an operator in z along z = t^{-4}.

    The chain rule gives d/dz = (-t^5/4) d/dt on functions f(t^{-4});
    coefficients are substituted exactly.
    """
    op = op.to_partial()
    t = target_var
    z_of_t = RationalFunction(Poly.one(t), Poly.monomial(4, 1, t))
    dz = DiffOp(
        [RationalFunction.constant(0, t),
         RationalFunction(Poly.monomial(5, Fraction(-1, 4), t))],
        t,
        PARTIAL,
    )
    out = DiffOp([0], t, PARTIAL)
    power = DiffOp([1], t, PARTIAL)
    for i, c in enumerate(op.coeffs):
        if i > 0:
            power = compose(dz, power)
        if c.is_zero():
            continue
        out = out + left_multiply(power, c.substitute(z_of_t))
    return out


def symmetric_square(op: DiffOp) -> DiffOp:
    """Monic third-order operator annihilating products of solutions.

    For a monic second-order operator d^2 + a d + b the symmetric square
    is d^3 + 3a d^2 + (2a^2 + a' + 4b) d + (4ab + 2b').
    """
    op = op.to_partial()
    if op.order != 2:
        raise DomainError("symmetric square needs an operator of order 2")
    monic = op.monic()
    a = monic.coeffs[1]
    b = monic.coeffs[0]
    return DiffOp(
        [
            4 * a * b + 2 * b.derivative(),
            2 * a * a + a.derivative() + 4 * b,
            3 * a,
            RationalFunction.constant(1, op.var),
        ],
        op.var,
        PARTIAL,
    )


# -- applying operators to series ----------------------------------------


def _coeff_as_series(c: RationalFunction, order, var) -> TruncatedSeries:
    num = TruncatedSeries(
        [c.num[k] for k in range(order + 1)], var
    )
    if c.is_polynomial():
        return num
    den = TruncatedSeries([c.den[k] for k in range(order + 1)], var)
    return num.divide(den)


def apply_to_series(op: DiffOp, s: TruncatedSeries) -> TruncatedSeries:
    """Apply the operator to a series; coefficients must be regular at 0.

    Each application of d/dx costs one order of truncation, theta costs
    none, so the result is exact through order - (partial order of op).
    """
    if op.var != s.var:
        raise TagMismatchError(f"operator in {op.var!r}, series in {s.var!r}")
    if op.form == THETA:
        acc = None
        cur = s
        for c in op.coeffs:
            if not c.is_zero():
                cs = _coeff_as_series(c, s.order, s.var)
                term = cs * cur
                acc = term if acc is None else acc + term
            cur = cur.theta()
        return acc if acc is not None else TruncatedSeries.zero(s.order, s.var)
    acc = None
    cur = s
    for c in op.coeffs:
        if not c.is_zero():
            cs = _coeff_as_series(c, cur.order, s.var)
            term = cs * cur
            acc = term if acc is None else acc + term
        cur = cur.derivative()
    return acc if acc is not None else TruncatedSeries.zero(s.order, s.var)


def apply_theta_to_logseries(op: DiffOp, ls: LogSeries) -> LogSeries:
    """Apply a theta-form operator (coefficients regular at 0) to a
    LogSeries; exact through the common truncation order."""
    op = op.to_theta()
    if op.var != ls.var:
        raise TagMismatchError(
            f"operator in {op.var!r}, log-series in {ls.var!r}"
        )
    acc = None
    cur = ls
    for c in op.coeffs:
        if not c.is_zero():
            cs = _coeff_as_series(c, ls.order, ls.var)
            term = cur * cs
            acc = term if acc is None else acc + term
        cur = cur.theta()
    if acc is None:
        return LogSeries(
            {0: TruncatedSeries.zero(ls.order, ls.var)}, ls.var
        )
    return acc
