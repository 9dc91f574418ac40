"""Rigorous-style analytic continuation of Fuchsian operators.

Solution jets are transported along rational polylines by repeated Taylor
re-expansion.  Expansion points and step vectors are exact Gaussian
rationals, so all step-size and distance comparisons are exact; the Taylor
recurrence itself runs in ball arithmetic.  The step radius is bounded by
eta times the distance to the nearest singularity and the Taylor order is
chosen adaptively so the observed tail at the step radius falls below the
working precision; the geometric tail allowance is added to every jet's
radius.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import mpmath as mp

from quartic_mirror.errors import (
    DomainError,
    PrecisionExhausted,
    SingularPathError,
)
from quartic_mirror.flow.balls import Ball, mat_solve

# Gaussian rationals are (Fraction, Fraction) pairs


def gauss(x, y=0):
    return (Fraction(x), Fraction(y))


def g_sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def g_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def g_scale(a, s):
    return (a[0] * s, a[1] * s)


def g_norm2(a):
    return a[0] * a[0] + a[1] * a[1]


def g_ball(a) -> Ball:
    return Ball.from_pair(a[0], a[1])


@dataclass(frozen=True)
class PathPolyline:
    vertices: tuple  # of Gaussian rationals

    def __post_init__(self):
        if len(self.vertices) < 2:
            raise ValueError("a path needs at least two vertices")

    @classmethod
    def from_points(cls, pts):
        out = []
        for p in pts:
            if isinstance(p, tuple):
                out.append((Fraction(p[0]), Fraction(p[1])))
            else:
                out.append((Fraction(p), Fraction(0)))
        return cls(tuple(out))

    def is_closed(self):
        return self.vertices[0] == self.vertices[-1]

    def reversed(self):
        return PathPolyline(tuple(reversed(self.vertices)))

    def then(self, other):
        if self.vertices[-1] != other.vertices[0]:
            raise ValueError("paths do not concatenate")
        return PathPolyline(self.vertices + other.vertices[1:])


def square_loop(center, half, base, clockwise=False):
    """A square loop of the given half-side around a real center, entered
    from a real base point along the real axis (counterclockwise unless
    clockwise=True)."""
    c = Fraction(center)
    h = Fraction(half)
    b = Fraction(base)
    if b > c:
        entry = (c + h, Fraction(0))
        corners = [
            (c + h, h), (c - h, h), (c - h, -h), (c + h, -h),
        ]
    else:
        entry = (c - h, Fraction(0))
        corners = [
            (c - h, -h), (c + h, -h), (c + h, h), (c - h, h),
        ]
    if clockwise:
        corners = list(reversed(corners))
    pts = [(b, Fraction(0)), entry] + corners + [entry, (b, Fraction(0))]
    return PathPolyline(tuple(pts))


def big_clockwise_loop(base):
    """A clockwise rectangle containing z=0 and z=1: one positive loop
    around infinity, entered from a real base point."""
    b = Fraction(base)
    pts = [
        (b, Fraction(0)),
        (b, Fraction(-3)),
        (Fraction(-3), Fraction(-3)),
        (Fraction(-3), Fraction(3)),
        (Fraction(4), Fraction(3)),
        (Fraction(4), Fraction(-3)),
        (b, Fraction(-3)),
        (b, Fraction(0)),
    ]
    return PathPolyline(tuple(pts))


class PreparedOperator:
    """Partial-form operator with primitive polynomial coefficients and an
    explicit list of finite singular points (validated at every expansion
    point by a nonzero leading-coefficient ball)."""

    def __init__(self, diffop, singular_points):
        polys = diffop.clear_denominators()
        self.order = len(polys) - 1
        self.var = diffop.var
        self.coeff_lists = [tuple(p.coeffs) for p in polys]
        self.singular = tuple(
            (Fraction(s[0]), Fraction(s[1])) if isinstance(s, tuple)
            else (Fraction(s), Fraction(0))
            for s in singular_points
        )

    def distance2_to_singular(self, point):
        if not self.singular:
            return None
        return min(g_norm2(g_sub(point, s)) for s in self.singular)


def _rational_step_fraction(remaining2, limit2):
    """Largest simple Fraction s (0 < s <= 1) with s^2 remaining2 <= limit2."""
    if remaining2 <= limit2:
        return Fraction(1)
    # floor of sqrt(limit2/remaining2) on a 2^-10 grid, then verified
    ratio = limit2 / remaining2
    num = isqrt(int(ratio * (1 << 40)))
    s = Fraction(num, 1 << 20)
    while s * s * remaining2 > limit2:
        s = s / 2
    if s == 0:
        raise SingularPathError("step size underflows; path too close to a singularity")
    return s


def _shifted_coeff_balls(prep, z0):
    """Coefficient arrays of P_i(z0 + u) in u, as balls."""
    z0b = g_ball(z0)
    out = []
    for coeffs in prep.coeff_lists:
        deg = len(coeffs) - 1
        if deg < 0:
            out.append([Ball.exact_int(0)])
            continue
        # Taylor shift by Horner: repeatedly multiply by (u + z0)
        shifted = [Ball.exact_int(0)] * (deg + 1)
        for c in reversed(coeffs):
            # shifted = shifted * (u + z0) + c
            new = [Ball.exact_int(0)] * (deg + 1)
            for k in range(deg):
                new[k + 1] = new[k + 1] + shifted[k]
            for k in range(deg + 1):
                new[k] = new[k] + shifted[k] * z0b
            new[0] = new[0] + Ball.from_fraction(c)
            shifted = new
        out.append(shifted)
    return out


def _taylor_step(prep, z0, h, jets, prec_bits):
    """One Taylor re-expansion at z0 evaluated at z0 + h.

    The step transport matrix is computed on identity jets, whose radii
    start at zero, and is then applied to the incoming jets with one ball
    multiplication.  Running the recurrence directly on balls with
    inherited radii would amplify them index by index (the classical
    interval wrapping blowup); routing all inherited error through the
    step matrix keeps the propagation first-order tight.
    """
    from quartic_mirror.flow.balls import mat_mul

    step = _step_matrix(prep, z0, h, prec_bits)
    return mat_mul(step, jets)


def _abs1(z):
    """Euclidean modulus; a looser bound would compound multiplicatively
    through the radius recurrence and destroy its convergence."""
    return abs(z)


def _step_matrix(prep, z0, h, prec_bits):
    """Transport matrix of one Taylor step, on raw mpmath numbers.

    The recurrence runs on (midpoint, radius, |midpoint| bound) triples
    with first-order radius propagation and a per-index rounding
    allowance; Ball objects are only built for the returned matrix.
    """
    n = prep.order
    pc = _shifted_coeff_balls(prep, z0)
    lead = pc[n][0]
    if not lead.excludes_zero():
        raise SingularPathError("leading coefficient vanishes at expansion point")
    lead_inv = lead.inverse()
    li_mid, li_rad = lead_inv.mid, lead_inv.rad
    li_abs = _abs1(li_mid) + li_rad
    hb = g_ball(h)
    habs = hb.abs_upper()
    d2 = prep.distance2_to_singular(z0)
    if d2 is None:
        qratio = mp.mpf("0.5")
    else:
        dist = mp.sqrt(mp.mpf(d2.numerator) / mp.mpf(d2.denominator))
        qratio = habs / dist
    if qratio >= 1:
        raise SingularPathError("step reaches the nearest singularity")

    # nonzero recurrence entries, the solved (n, 0) slot excluded
    entries = []
    for i in range(n + 1):
        for d, b in enumerate(pc[i]):
            if (i == n and d == 0) or b.abs_upper() == 0:
                continue
            entries.append((i, d, b.mid, _abs1(b.mid) + b.rad, b.rad))

    window = n + 4
    target = mp.mpf(2) ** (-(prec_bits + 16))
    nmax = 8 * (prec_bits + 64)
    fudge = mp.mpf(2) ** 10
    eps = mp.mpf(2) ** (8 - mp.mp.prec)
    zero = mp.mpc(0)
    zf = mp.mpf(0)

    out_cols = []
    for col in range(n):
        mids = [zero] * n
        rads = [zf] * n
        absu = [zf] * n
        mids[col] = mp.mpc(1) / _factorial(col)
        absu[col] = abs(mids[col])
        hk = [mp.mpf(1)]
        for _ in range(n - 1):
            hk.append(hk[-1] * habs)
        k = n - 1
        while True:
            k += 1
            j = k - n
            acc_m = zero
            acc_r = zf
            for i, d, c_mid, c_abs, c_rad in entries:
                m = j - d + i
                if m < 0 or m >= k:
                    continue
                am = mids[m]
                if am == 0 and rads[m] == 0:
                    continue
                ff = _falling(m, i)
                acc_m += c_mid * am * ff
                acc_r += (c_abs * rads[m] + c_rad * absu[m]) * ff
            denom = _falling(k, n)
            new_mid = -acc_m * li_mid / denom
            acc_abs = _abs1(acc_m) + acc_r
            new_rad = (
                (li_abs * acc_r + li_rad * acc_abs) / denom
                + _abs1(new_mid) * eps
            )
            mids.append(new_mid)
            rads.append(new_rad)
            absu.append(_abs1(new_mid) + new_rad)
            hk.append(hk[-1] * habs)
            if k >= max(2 * n + 4, 8):
                wmax = max(
                    absu[m] * hk[m]
                    for m in range(max(0, k - window + 1), k + 1)
                )
                if wmax <= target:
                    break
            if k > nmax:
                raise PrecisionExhausted(
                    "Taylor order cap exceeded; raise the working precision"
                )
        N = k
        tail0 = wmax * qratio / (1 - qratio) * fudge
        # jets at h: y^(i) = sum_k a_k ff(k,i) h^{k-i}
        hb_mid = hb.mid
        hpow = [mp.mpc(1)]
        for _ in range(N):
            hpow.append(hpow[-1] * hb_mid)
        col_out = []
        for i in range(n):
            s_m = zero
            s_r = zf
            for kk in range(i, N + 1):
                ff = _falling(kk, i)
                if ff == 0:
                    continue
                s_m += mids[kk] * ff * hpow[kk - i]
                s_r += rads[kk] * ff * hk[kk - i]
            # rounding allowance for the N adds/mults plus the h-ball radius
            s_r += (_abs1(s_m) + s_r) * eps * (N + 4)
            s_r += hb.rad * N * max(absu[m] * hk[m] for m in range(N + 1)) / max(habs, eps)
            growth = (2 * (N + 2) / (1 - qratio)) ** i / habs**i if i else mp.mpf(1)
            col_out.append(Ball(s_m, s_r + tail0 * growth))
        out_cols.append(col_out)
    return [[out_cols[c][i] for c in range(n)] for i in range(n)]


_FACTS = [1]


def _factorial(k):
    while len(_FACTS) <= k:
        _FACTS.append(_FACTS[-1] * len(_FACTS))
    return _FACTS[k]


def _falling(m, i):
    out = 1
    for j in range(i):
        out *= m - j
    return out


def transport_matrix(prep, path, prec_bits, eta=Fraction(1, 8)):
    """Ball matrix T of the transport along the polyline: jets at the end
    equal T times the jets at the start.

    T is built by stepping the identity jet matrix, whose radii start at
    zero, so radius growth inside the Taylor recurrences is seeded only
    by rounding allowances and tail bounds; input-jet radii are then
    propagated through one final multiplication by T (first-order error
    model, see the package docs).
    """
    eta2 = Fraction(eta) ** 2
    n = prep.order
    jets = [
        [Ball.exact_int(1 if i == j else 0) for j in range(n)]
        for i in range(n)
    ]
    # transporting the identity: each _taylor_step multiplies the step
    # matrix onto the accumulated product
    current = path.vertices[0]
    for target in path.vertices[1:]:
        while current != target:
            d2 = prep.distance2_to_singular(current)
            if d2 is not None and d2 == 0:
                raise SingularPathError("path touches a singular point")
            remaining = g_sub(target, current)
            rem2 = g_norm2(remaining)
            if rem2 == 0:
                break
            limit2 = eta2 * d2 if d2 is not None else rem2
            s = _rational_step_fraction(rem2, limit2)
            h = g_scale(remaining, s)
            jets = _taylor_step(prep, current, h, jets, prec_bits)
            current = g_add(current, h)
    return jets


def continue_solutions(prep, path, jets, prec_bits, eta=Fraction(1, 8)):
    """Transport solution jets along the polyline.

    jets is an order x ncols ball matrix at path.vertices[0] (rows are
    derivatives y^(k), columns are solutions); returns the jets at the
    final vertex.
    """
    t = transport_matrix(prep, path, prec_bits, eta)
    from quartic_mirror.flow.balls import mat_mul

    return mat_mul(t, jets)


def monodromy(prep, loop, jets, prec_bits):
    """Transport matrix M with (transported jets) = (initial jets) . M."""
    if not loop.is_closed():
        raise DomainError("monodromy needs a closed loop")
    final = continue_solutions(prep, loop, jets, prec_bits)
    return mat_solve(jets, final)
