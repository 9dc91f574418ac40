"""Boundary sampler for the triangle image of the multivalued period map.

D(z) = (1/2 pi i)(f1/f0 - 4 log 4) maps the closed upper half plane to the
hyperbolic triangle with vertices (infinity, i/sqrt2, (1+i)/2) and angles
(0, pi/2, pi/4).  The three real-axis edges are evaluated by region:

  |z| <= 0.7          Frobenius series at 0 (log z = ln|z| + i pi for z<0)
  0.7 <= z <= 2       closed form in x = 1 - 1/z around z = 1
  |z| >= 2            Gauss basis at infinity glued by a Moebius map
  z in [-2, -0.7]     short ODE transports from the series region

Both square-root branch signs and the Moebius gluing are calibrated at
runtime against overlapping regions and recorded in the result.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from quartic_mirror.errors import DomainError
from quartic_mirror.flow.balls import Ball, ball_context, mat_solve, sqrt2_ball
from quartic_mirror.flow.continuation import (
    PathPolyline,
    continue_solutions,
)
from quartic_mirror.flow.frobenius import (
    eval_series_ball,
    frobenius_basis_at_zero,
    frobenius_jets_at,
    logseries_eval_ball,
    theta_jet_chain,
)
from quartic_mirror.flow.hypergeo import (
    NSClosedForm,
    hyp2f1_ball,
    period_from_w_jets,
    prepared_pf_pullback,
)

GAUSS_A = Fraction(1, 8)
GAUSS_B = Fraction(3, 8)
GAUSS_C = Fraction(1)

#: interior angle parameters (|1-c|, |c-a-b|, |a-b|) of the triangle
ANGLE_PARAMETERS = (
    abs(1 - GAUSS_C),
    abs(GAUSS_C - GAUSS_A - GAUSS_B),
    abs(GAUSS_A - GAUSS_B),
)

VERTEX_AT_ONE = "i/sqrt2"
VERTEX_AT_INF = "(1+i)/2"


def _i_pi():
    return Ball.pi().mul_i()


def _log_of_rational_uhp(z: Fraction) -> Ball:
    """log z for real rational z != 0, on the branch continued through the
    upper half plane: ln|z| for z > 0, ln|z| + i pi for z < 0."""
    if z > 0:
        return Ball.from_fraction(z).log()
    return Ball.from_fraction(-z).log() + _i_pi()


@dataclass
class TriangleSample:
    parameter: float
    z: Fraction
    value: Ball
    method: str
    flagged: bool


class TriangleEvaluator:
    """Evaluates D(z) on the boundary, calibrating branches lazily."""

    def __init__(self, prec_bits: int, series_order=None):
        self.prec = prec_bits
        if series_order is None:
            series_order = max(300, 2 * prec_bits + 80)
        self.order = series_order
        f0, f1, _ = frobenius_basis_at_zero(series_order)
        self.f0, self.f1 = f0, f1
        self.f0_chain = theta_jet_chain(f0, 3)
        self.f1_chain = theta_jet_chain(f1, 3)
        self.ns = NSClosedForm.build(prec_bits)
        self.prep = prepared_pf_pullback()
        self._base_jets = None
        self._sign_lt1 = None
        self._sign_gt1 = None
        self._moebius = None

    # -- region A: series at the origin --------------------------------

    def value_series(self, z: Fraction) -> Ball:
        if not 0 < abs(z) <= Fraction(7, 10):
            raise DomainError("series region is 0 < |z| <= 0.7")
        zb = Ball.from_fraction(z)
        logz = _log_of_rational_uhp(z)
        v0 = logseries_eval_ball(self.f0, zb, logz)
        v1 = logseries_eval_ball(self.f1, zb, logz)
        return period_from_w_jets(v0, v1)

    def jets_at_rational(self, z: Fraction):
        """(3 x 2) jets of (f0, f1) at a real rational point |z| < 1 by
        direct series evaluation."""
        zb = Ball.from_fraction(z)
        logz = _log_of_rational_uhp(z)
        zinv = zb.inverse()
        cols = []
        for chain in (self.f0_chain, self.f1_chain):
            col = []
            fac = Ball.exact_int(1)
            for k, g in enumerate(chain):
                col.append(logseries_eval_ball(g, zb, logz) * fac)
                fac = fac * zinv
            cols.append(col)
        return [[cols[c][k] for c in range(2)] for k in range(3)]

    # -- region B: closed form around z = 1 ------------------------------

    def _root_factor(self, z: Fraction) -> Ball:
        """(t^4 - 1)^{1/2} = (1/z - 1)^{1/2} on the branch reaching the
        sample through the upper half plane (calibrated sign)."""
        if z < 1:
            root = Ball.from_fraction(Fraction(1) / z - 1).sqrt()
            return root * self.sign_lt1
        root = Ball.from_fraction(1 - Fraction(1) / z).sqrt()
        return root.mul_i() * (-self.sign_gt1)

    def value_ns(self, z: Fraction) -> Ball:
        if z <= Fraction(1, 2) or z == 1:
            raise DomainError("closed-form region is z > 1/2, z != 1")
        x = Ball.from_fraction(1 - Fraction(1) / z)
        return self.ns.value(x, self._root_factor(z))

    @property
    def sign_lt1(self):
        if self._sign_lt1 is None:
            z = Fraction(13, 20)
            ref = self.value_series(z)
            x = Ball.from_fraction(1 - Fraction(1) / z)
            best = None
            for sign in (1, -1):
                root = Ball.from_fraction(Fraction(1) / z - 1).sqrt() * sign
                diff = (self.ns.value(x, root) - ref).abs_upper()
                if best is None or diff < best[0]:
                    best = (diff, sign)
            self._sign_lt1 = best[1]
        return self._sign_lt1

    @property
    def sign_gt1(self):
        if self._sign_gt1 is None:
            # transport D across z=1 through the upper half plane
            start = Fraction(13, 20)
            end = Fraction(27, 20)
            path = PathPolyline.from_points(
                [
                    (start, Fraction(0)),
                    (start, Fraction(3, 4)),
                    (end, Fraction(3, 4)),
                    (end, Fraction(0)),
                ]
            )
            jets = self.jets_at_rational(start)
            out = continue_solutions(self.prep, path, jets, self.prec)
            ref = period_from_w_jets(out[0][0], out[0][1])
            x = Ball.from_fraction(1 - Fraction(1) / end)
            best = None
            for sign in (1, -1):
                root = Ball.from_fraction(1 - Fraction(1) / end).sqrt()
                root = root.mul_i() * (-sign)
                diff = (self.ns.value(x, root) - ref).abs_upper()
                if best is None or diff < best[0]:
                    best = (diff, sign)
            self._sign_gt1 = best[1]
        return self._sign_gt1

    # -- region C: basis at infinity -------------------------------------

    def _rho(self, z: Fraction) -> Ball:
        """y1/y2 = z^{1/4} F1(1/z)/F2(1/z) on the UHP branch of z^{1/4}."""
        if abs(z) < 2:
            raise DomainError("far region is |z| >= 2")
        xb = Ball.from_fraction(Fraction(1) / z)
        f1 = hyp2f1_ball(Fraction(1, 8), Fraction(1, 8), Fraction(3, 4),
                         xb, self.prec)
        f2 = hyp2f1_ball(Fraction(3, 8), Fraction(3, 8), Fraction(5, 4),
                         xb, self.prec)
        quarter_log = _log_of_rational_uhp(z) * Fraction(1, 4)
        return quarter_log.exp() * f1 / f2

    @property
    def moebius(self):
        """(alpha, beta, delta) with D = (alpha rho + beta)/(rho + delta),
        glued to the closed form at three far points."""
        if self._moebius is None:
            pts = [Fraction(3), Fraction(4), Fraction(6)]
            rows = []
            rhs = []
            for z in pts:
                rho = self._rho(z)
                d = self.value_ns(z)
                rows.append([rho, Ball.exact_int(1), -d])
                rhs.append([d * rho])
            sol = mat_solve(rows, rhs)
            self._moebius = (sol[0][0], sol[1][0], sol[2][0])
        return self._moebius

    def value_far(self, z: Fraction) -> Ball:
        alpha, beta, delta = self.moebius
        rho = self._rho(z)
        return (alpha * rho + beta) / (rho + delta)

    def vertex_at_infinity(self) -> Ball:
        """lim D(z) as z -> infinity equals the Moebius coefficient alpha."""
        return self.moebius[0]

    # -- dispatch ----------------------------------------------------------

    def value(self, z: Fraction):
        z = Fraction(z)
        if z == 0 or z == 1:
            raise DomainError("0 and 1 are vertices; use the probe helpers")
        if 0 < abs(z) <= Fraction(7, 10):
            return self.value_series(z), "series-at-0"
        if Fraction(7, 10) < z <= 2 and z != 1:
            return self.value_ns(z), "closed-form-at-1"
        if abs(z) >= 2:
            return self.value_far(z), "basis-at-infinity"
        raise DomainError("negative band needs the transport sampler")


def _chebyshev_fractions(k, grid=4096):
    out = []
    for j in range(k):
        u = (1 - mp.cos(mp.pi * (j + Fraction(1, 2)) / k)) / 2
        num = min(grid - 1, max(1, int(mp.floor(u * grid))))
        out.append(Fraction(num, grid))
    return sorted(set(out))


def triangle_sample(samples: int, prec_bits: int):
    """Boundary samples of D along the three real edges.

    Returns (samples, metadata); each sample carries the boundary
    parameter in [0,1), the rational abscissa, the ball value and the
    evaluation method.  Samples whose ball radius exceeds 1e-10 are
    flagged rather than dropped.
    """
    if samples < 3:
        raise DomainError("need at least three samples")
    per_edge = max(1, samples // 3)
    with ball_context(prec_bits):
        ev = TriangleEvaluator(prec_bits)
        out = []
        flag_width = mp.mpf("1e-10")

        def push(param, z, val, method):
            out.append(
                TriangleSample(
                    parameter=float(param),
                    z=z,
                    value=val,
                    method=method,
                    flagged=bool(val.rad > flag_width),
                )
            )

        # edge 1: z in (0,1), parameter s in [0, 1/3)
        for u in _chebyshev_fractions(per_edge):
            z = u
            if z == 1:
                continue
            val, method = (
                ev.value(z) if not Fraction(7, 10) < z < 1
                else (ev.value_ns(z), "closed-form-at-1")
            )
            push(u / 3, z, val, method)

        # edge 2: z = 1/(1-u) in (1, inf), parameter s in [1/3, 2/3)
        for u in _chebyshev_fractions(per_edge):
            z = 1 / (1 - u)
            val, method = ev.value(z)
            push(Fraction(1, 3) + u / 3, z, val, method)

        # edge 3: z = -(1-u)/u in (-inf, 0), parameter s in [2/3, 1)
        band = []
        for u in _chebyshev_fractions(per_edge):
            z = -(1 - u) / u
            s = Fraction(2, 3) + u / 3
            if abs(z) >= 2:
                val, method = ev.value(z)
                push(s, z, val, method)
            elif abs(z) <= Fraction(7, 10):
                val, method = ev.value(z)
                push(s, z, val, method)
            else:
                band.append((s, z))

        # negative band by sequential short transports from -0.65
        if band:
            band.sort(key=lambda t: t[1], reverse=True)  # walk leftward
            cursor = Fraction(-13, 20)
            jets = ev.jets_at_rational(cursor)
            for s, z in band:
                path = PathPolyline.from_points([cursor, z])
                jets = continue_solutions(ev.prep, path, jets, prec_bits)
                cursor = z
                val = period_from_w_jets(jets[0][0], jets[0][1])
                push(s, z, val, "transport-band")

        out.sort(key=lambda smp: smp.parameter)
        meta = {
            "sign_lt1": ev.sign_lt1,
            "sign_gt1": ev.sign_gt1,
            "angle_parameters": ANGLE_PARAMETERS,
        }
    return out, meta


def triangle_vertex_checks(prec_bits: int, evaluator=None):
    """Limit behavior at the three vertices.

    Returns the exact angle parameters together with ball errors of the
    probes: |1/D| near z=0 (cusp), |D - i/sqrt2| near z=1 from both sides,
    and |D - (1+i)/2| at the infinity gluing and a far probe.
    """
    with ball_context(prec_bits):
        ev = evaluator or TriangleEvaluator(prec_bits)

        # cusp at z -> 0: D grows like log z / 2 pi i
        z_small = Fraction(1, 2) ** (10**12)
        cusp_val = ev.value_series(z_small)
        cusp_inv = cusp_val.inverse().abs_upper()

        # vertex i/sqrt2 at z -> 1 (x = 1 - 1/z -> 0 from both sides)
        i_sqrt2 = Ball.exact_int(1).mul_i() / sqrt2_ball()
        eps = Fraction(1, 2**80)
        probes = []
        for z in (1 / (1 + eps), 1 / (1 - eps)):
            val = ev.value_ns(z)
            probes.append((val - i_sqrt2).abs_upper())

        # vertex (1+i)/2 at z -> infinity
        half = Fraction(1, 2)
        target_inf = Ball.from_pair(half, half)
        glue_err = (ev.vertex_at_infinity() - target_inf).abs_upper()
        far_err = (ev.value_far(Fraction(10) ** 50) - target_inf).abs_upper()

    return {
        "angle_parameters": ANGLE_PARAMETERS,
        "cusp_probe_abs_inverse": cusp_inv,
        "one_vertex_errors": probes,
        "infinity_vertex_error_limit": glue_err,
        "infinity_vertex_error_far_probe": far_err,
    }
