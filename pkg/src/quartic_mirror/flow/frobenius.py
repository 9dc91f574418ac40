"""Frobenius basis of the third-order operator at its maximal unipotent
point, and ball evaluation of log-series jets.

Writing y(z,s) = sum_n a_n(s) z^{n+s} with a_0 = 1 and

    a_n(s) = prod_{m=1..n} (s+m-3/4)(s+m-2/4)(s+m-1/4) / (s+m)^3,

the basis is f_k = (d/ds)^k y |_{s=0}, k = 0,1,2.  The s-derivatives are
logarithmic-derivative sums, so every coefficient is an exact rational;
f_0 recovers the (4n)!/(n!)^4 / 256^n series and the log-free part of f_1
is the harmonic-difference series 4(H_{4n} - H_n) a_n(0).
"""

from __future__ import annotations

from fractions import Fraction

import mpmath as mp

from quartic_mirror.errors import DomainError
from quartic_mirror.exact.logseries import LogSeries
from quartic_mirror.exact.series import TruncatedSeries
from quartic_mirror.flow.balls import Ball


def frobenius_coefficient_streams(order):
    """(a_n(0), a_n'(0), a_n''(0)) for n = 0..order, exact."""
    c = [Fraction(1)]
    c1 = [Fraction(0)]
    c2 = [Fraction(0)]
    sigma1 = Fraction(0)
    sigma2 = Fraction(0)
    cur = Fraction(1)
    for n in range(1, order + 1):
        parts = (n - Fraction(3, 4), n - Fraction(2, 4), n - Fraction(1, 4))
        cur = cur * parts[0] * parts[1] * parts[2] / Fraction(n) ** 3
        sigma1 += sum(1 / p for p in parts) - Fraction(3, n)
        sigma2 += sum(1 / (p * p) for p in parts) - Fraction(3, n * n)
        c.append(cur)
        c1.append(cur * sigma1)
        c2.append(cur * (sigma1 * sigma1 - sigma2))
    return c, c1, c2


def frobenius_basis_at_zero(order, var="z"):
    """(f0, f1, f2) with f0 holomorphic, f1 = log f0 + ..., f2 = log^2 f0 + ..."""
    if order < 0:
        raise DomainError("order must be >= 0")
    c, c1, c2 = frobenius_coefficient_streams(order)
    s0 = TruncatedSeries(c, var)
    s1 = TruncatedSeries(c1, var)
    s2 = TruncatedSeries(c2, var)
    f0 = LogSeries({0: s0}, var)
    f1 = LogSeries({0: s1, 1: s0}, var)
    f2 = LogSeries({0: s2, 1: 2 * s1, 2: s0}, var)
    return f0, f1, f2


def eval_series_ball(coeffs, z0: Ball, min_terms=40, ratio_cap=None) -> Ball:
    """Sum an exact-rational coefficient series at a ball point.

    The tail is bounded geometrically with ratio q = max(3/4, 1.1 |z0|),
    which dominates the term ratios of all series used here (coefficient
    ratios tend to 1 from a bounded window) provided |z0| <= 0.85.
    """
    zu = z0.abs_upper()
    q = max(mp.mpf(3) / 4, mp.mpf("1.1") * zu)
    if ratio_cap is not None:
        q = max(q, mp.mpf(ratio_cap))
    if q >= 1:
        raise DomainError("evaluation point too close to the convergence edge")
    acc = Ball.exact_int(0)
    zpow = Ball.exact_int(1)
    window = []
    n_used = 0
    for c in coeffs:
        if c != 0:
            term = zpow * c
            acc = acc + term
            window.append(term.abs_upper())
        else:
            window.append((zpow.abs_upper() * mp.mpf(0)))
        if len(window) > 8:
            window.pop(0)
        zpow = zpow * z0
        n_used += 1
    if n_used < min_terms:
        raise DomainError("series truncation too short for evaluation")
    wmax = max(window) if window else mp.mpf(0)
    tail = wmax * q / (1 - q) * mp.mpf(2) ** 6
    return Ball(acc.mid, acc.rad + tail)


def logseries_eval_ball(ls: LogSeries, z0: Ball, log_z0: Ball) -> Ball:
    acc = Ball.exact_int(0)
    for k in sorted(ls.parts):
        v = eval_series_ball(ls.parts[k].coeffs, z0)
        acc = acc + v * (log_z0**k)
    return acc


def theta_jet_chain(ls: LogSeries, njets: int):
    """g_0 = f, g_{k+1} = theta(g_k) - k g_k; then f^(k) = g_k / z^k."""
    out = [ls]
    for k in range(1, njets):
        out.append(out[-1].theta() - out[-1] * (k - 1))
    return out


def frobenius_jets_at(basis, z0: Ball, log_z0: Ball, njets=3):
    """Ball jet matrix (rows derivative order, columns basis members)."""
    cols = []
    zinv = z0.inverse()
    for f in basis:
        chain = theta_jet_chain(f, njets)
        col = []
        zfac = Ball.exact_int(1)
        for k, g in enumerate(chain):
            col.append(logseries_eval_ball(g, z0, log_z0) * zfac)
            zfac = zfac * zinv
        cols.append(col)
    return [[cols[c][k] for c in range(len(cols))] for k in range(njets)]
