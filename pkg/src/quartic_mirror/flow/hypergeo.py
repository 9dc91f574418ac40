"""Gauss-series ball evaluation and the closed form of the period map
near the degenerate fiber t = 1, with the ODE cross-check.

The closed form is

    P(t) = (i/sqrt2) (U1 + cot(pi/8) U2) / (U1 - cot(pi/8) U2)
    U1 = Gamma(1/8)^2/Gamma(1/2) 2F1(1/8,3/8;1/2; 1-t^4)
    U2 = Gamma(5/8)^2/Gamma(3/2) (t^4-1)^{1/2} 2F1(5/8,5/8;3/2; 1-t^4),

with cot(pi/8) = 1 + sqrt2 exact.  The square-root branch is the
principal one on the slit plane; its sign is fixed once against the ODE
transport of (1/2 pi i) W2/W1 from the base point z = 1/4 and recorded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from quartic_mirror.errors import DomainError, PrecisionExhausted
from quartic_mirror.diffop.operators import build_hypergeometric_operator
from quartic_mirror.flow.balls import Ball, as_ball, ball_context, sqrt2_ball
from quartic_mirror.flow.continuation import (
    PathPolyline,
    PreparedOperator,
    continue_solutions,
)
from quartic_mirror.flow.frobenius import frobenius_basis_at_zero, frobenius_jets_at
from quartic_mirror.flow.gammafn import gamma_ball


def hyp2f1_ball(a, b, c, x: Ball, prec_bits: int) -> Ball:
    """2F1(a,b;c;x) with |x| < 1 and (n+a)(n+b) <= (n+c)(n+1) for n >= 0,
    so the term ratios are bounded by |x| and the geometric tail bound

        |tail after N| <= |t_{N+1}| / (1 - |x|)

    is valid.  Parameters are positive rationals."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a <= 0 or b <= 0 or c <= 0:
        raise DomainError("positive parameters expected")
    if a + b >= c + 1 or a * b > c:
        raise DomainError("parameter range violates the tail-ratio bound")
    xu = x.abs_upper()
    if xu >= 1:
        raise DomainError("2F1 series needs |x| < 1")
    target = mp.mpf(2) ** (-(prec_bits + 16))
    acc = Ball.exact_int(1)
    term = Ball.exact_int(1)
    n = 0
    nmax = 64 * (prec_bits + 64)
    while True:
        ratio = Fraction((a + n) * (b + n), (c + n) * (n + 1))
        term = term * ratio * x
        acc = acc + term
        n += 1
        if term.abs_upper() <= target * (1 - xu):
            break
        if n > nmax:
            raise PrecisionExhausted("2F1 series did not reach the target")
    tail = term.abs_upper() * xu / (1 - xu)
    return Ball(acc.mid, acc.rad + tail)


def cot_pi_over_8() -> Ball:
    return sqrt2_ball() + 1


# -- the closed form -------------------------------------------------------


@dataclass(frozen=True)
class NSClosedForm:
    """Gamma prefactors cached at one precision."""

    prec_bits: int
    gamma_factor_u1: Ball
    gamma_factor_u2: Ball
    kappa: Ball
    i_over_sqrt2: Ball

    @classmethod
    def build(cls, prec_bits: int):
        g18 = gamma_ball(Fraction(1, 8), prec_bits)
        g12 = gamma_ball(Fraction(1, 2), prec_bits)
        g58 = gamma_ball(Fraction(5, 8), prec_bits)
        g32 = gamma_ball(Fraction(3, 2), prec_bits)
        return cls(
            prec_bits=prec_bits,
            gamma_factor_u1=g18 * g18 / g12,
            gamma_factor_u2=g58 * g58 / g32,
            kappa=cot_pi_over_8(),
            i_over_sqrt2=Ball.exact_int(1).mul_i() / sqrt2_ball(),
        )

    def u_pair(self, x: Ball, root: Ball):
        """U1 and U2 at argument x = 1 - t^4 with the supplied square root
        of t^4 - 1 (branch chosen by the caller)."""
        f1 = hyp2f1_ball(
            Fraction(1, 8), Fraction(3, 8), Fraction(1, 2), x, self.prec_bits
        )
        f2 = hyp2f1_ball(
            Fraction(5, 8), Fraction(5, 8), Fraction(3, 2), x, self.prec_bits
        )
        return self.gamma_factor_u1 * f1, self.gamma_factor_u2 * root * f2

    def value(self, x: Ball, root: Ball) -> Ball:
        u1, u2 = self.u_pair(x, root)
        ku2 = self.kappa * u2
        return self.i_over_sqrt2 * (u1 + ku2) / (u1 - ku2)


def ns_closed_form(t, prec_bits: int, branch_sign: int = 1) -> Ball:
    """P(t) near t = 1 on the principal branch of (t^4-1)^{1/2}, times the
    recorded branch sign.  Must run inside ball_context(prec_bits)."""
    cf = NSClosedForm.build(prec_bits)
    if isinstance(t, (int, Fraction)):
        x_exact = 1 - Fraction(t) ** 4
        if x_exact == 0:
            # U2 vanishes identically and P degenerates to i/sqrt2
            return cf.i_over_sqrt2
        x = Ball.from_fraction(x_exact)
        root = Ball.from_fraction(-x_exact).sqrt() * branch_sign
    else:
        tb = as_ball(t)
        t4 = tb**4
        x = Ball.exact_int(1) - t4
        root = (t4 - 1).sqrt() * branch_sign
    if x.abs_upper() >= 1:
        raise DomainError("outside the convergence region |1 - t^4| < 1")
    return cf.value(x, root)


# -- ODE transport of the same germ ---------------------------------------


_OP_SING = ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)))
BASE_POINT = (Fraction(1, 4), Fraction(0))


def prepared_pf_pullback():
    return PreparedOperator(build_hypergeometric_operator(), _OP_SING)


def base_frobenius_jets(order=220):
    """Exact Frobenius basis evaluated at the base point z = 1/4 with the
    real branch of the logarithm (the paper's normalization there)."""
    basis = frobenius_basis_at_zero(order)
    z0 = Ball.from_fraction(Fraction(1, 4))
    log_z0 = z0.log()
    return frobenius_jets_at(basis, z0, log_z0, njets=3)


FOUR_LOG_FOUR = None  # computed per context


def _four_log_four():
    return Ball.exact_int(4) * Ball.exact_int(4).log()


def period_from_w_jets(f0_value: Ball, f1_value: Ball) -> Ball:
    """(1/2 pi i) (f1/f0 - 4 log 4): the period map germ from the
    Frobenius values (W2 = f1 - 4 log(4) f0, W1 = f0)."""
    two_pi_i = Ball.two_pi_i()
    return (f1_value / f0_value - _four_log_four()) / two_pi_i


def ns_period_via_ode(t: Fraction, prec_bits: int, jets=None, prep=None) -> Ball:
    """Transport (1/2 pi i) W2/W1 from z = 1/4 to z = t^{-4} along the
    real axis; t must be rational with t^{-4} in (0, 1)."""
    t = Fraction(t)
    z_target = 1 / t**4
    if not 0 < z_target < 1:
        raise DomainError("target must satisfy 0 < t^-4 < 1")
    if prep is None:
        prep = prepared_pf_pullback()
    if jets is None:
        jets = base_frobenius_jets()
    path = PathPolyline.from_points([Fraction(1, 4), z_target])
    out = continue_solutions(prep, path, jets, prec_bits)
    return period_from_w_jets(out[0][0], out[0][1])


@dataclass(frozen=True)
class NSComparison:
    t: Fraction
    difference: object  # mpf upper bound for |P_closed - P_ODE|
    closed_value: Ball
    ode_value: Ball


@dataclass(frozen=True)
class NSConsistencyReport:
    branch_sign: int
    calibration_t: Fraction
    comparisons: tuple
    value_at_one: Ball
    limit_error: object

    def max_difference(self):
        return max(c.difference for c in self.comparisons)


def ns_consistency_check(points, prec_bits: int) -> NSConsistencyReport:
    """Calibrate the square-root branch sign at the first point, then
    compare closed form and ODE transport at every point.  Also evaluates
    the t = 1 limit, where U2 vanishes and P = i/sqrt2 exactly."""
    points = [Fraction(p) for p in points]
    if not points:
        raise DomainError("need at least one comparison point")
    with ball_context(prec_bits):
        prep = prepared_pf_pullback()
        order = max(220, prec_bits)
        basis = frobenius_basis_at_zero(order)
        z0 = Ball.from_fraction(Fraction(1, 4))
        jets = frobenius_jets_at(basis, z0, z0.log(), njets=3)

        t0 = points[0]
        ode0 = ns_period_via_ode(t0, prec_bits, jets=jets, prep=prep)
        candidates = {}
        for sign in (1, -1):
            closed = ns_closed_form(t0, prec_bits, branch_sign=sign)
            candidates[sign] = (closed - ode0).abs_upper()
        branch = 1 if candidates[1] <= candidates[-1] else -1

        comparisons = []
        for t in points:
            closed = ns_closed_form(t, prec_bits, branch_sign=branch)
            ode = ns_period_via_ode(t, prec_bits, jets=jets, prep=prep)
            comparisons.append(
                NSComparison(
                    t=t,
                    difference=(closed - ode).abs_upper(),
                    closed_value=closed,
                    ode_value=ode,
                )
            )
        at_one = ns_closed_form(Fraction(1), prec_bits, branch_sign=branch)
        i_sqrt2 = Ball.exact_int(1).mul_i() / sqrt2_ball()
        limit_err = (at_one - i_sqrt2).abs_upper()
    return NSConsistencyReport(
        branch_sign=branch,
        calibration_t=points[0],
        comparisons=tuple(comparisons),
        value_at_one=at_one,
        limit_error=limit_err,
    )
