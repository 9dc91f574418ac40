"""The five parallel-transport matrices on T0 and derived exact data.

Basis (h, e, f) of T0 = <4> + U; transport along the loop gamma_k acts on
the row of basis vectors from the right: (h,e,f) -> (h,e,f).M^k.  The
matrices act on coefficient triples (a,b,c) of a period a h + b e + c f
through N = G M G^{-1} with G the Gram matrix of (h,e,f).
"""

from __future__ import annotations

from fractions import Fraction

from quartic_mirror.exact import linalg
from quartic_mirror.lattice.lattices import IntegerLattice, LatticeMap, t0_lattice

GRAM_T0 = ((4, 0, 0), (0, 0, 1), (0, 1, 0))

M1 = ((1, 0, 0), (0, 0, 1), (0, 1, 0))
M2 = ((5, 1, -3), (-12, -2, 9), (4, 1, -2))
M3 = ((17, 6, -6), (-24, -8, 9), (24, 9, -8))
M4 = ((5, 3, -1), (-4, -2, 1), (12, 9, -2))
M_INF = ((1, 4, 0), (0, 1, 0), (-16, -32, 1))

MONODROMY_MATRICES = {"1": M1, "2": M2, "3": M3, "4": M4, "inf": M_INF}

N_INF_EXPECTED = ((1, 0, 16), (-4, 1, -32), (0, 0, 1))


def paper_monodromy_matrices():
    """The transport matrices as LatticeMaps on T0, plus the Gram matrix."""
    t0 = t0_lattice()
    maps = {
        key: LatticeMap(matrix=m, source=t0, target=t0)
        for key, m in MONODROMY_MATRICES.items()
    }
    return maps, GRAM_T0


def abc_monodromy(m):
    """N = G M G^{-1}: the action on period coefficient rows (a,b,c)."""
    g = linalg.mat(GRAM_T0)
    n = linalg.mat_mul(linalg.mat_mul(g, linalg.mat(m)), linalg.inverse(g))
    out = []
    for row in n:
        int_row = []
        for x in row:
            if x.denominator != 1:
                raise ArithmeticError("abc-monodromy is not integral")
            int_row.append(int(x))
        out.append(tuple(int_row))
    return tuple(out)


def monodromy_product_ordering():
    """Resolve the matrix ordering realizing gamma_inf = (g4 g3 g2 g1)^{-1}.

    Returns (label, product) for the ordering whose inverse equals M_inf;
    both candidate orderings are tried and exactly one must pass.
    """
    candidates = {
        "M4.M3.M2.M1": linalg.mat_mul(
            linalg.mat_mul(linalg.mat(M4), linalg.mat(M3)),
            linalg.mat_mul(linalg.mat(M2), linalg.mat(M1)),
        ),
        "M1.M2.M3.M4": linalg.mat_mul(
            linalg.mat_mul(linalg.mat(M1), linalg.mat(M2)),
            linalg.mat_mul(linalg.mat(M3), linalg.mat(M4)),
        ),
    }
    winners = []
    for label, prod in candidates.items():
        inv = linalg.inverse(prod)
        if linalg.mat_eq(inv, linalg.mat(M_INF)):
            winners.append((label, prod))
    if len(winners) != 1:
        raise ArithmeticError(
            f"expected exactly one passing ordering, found {len(winners)}"
        )
    return winners[0][0], tuple(
        tuple(int(x) for x in row) for row in winners[0][1]
    )


def t0_into_k3_embedding():
    """T0 = <h> + U into Lambda: h -> e' + 2f', (e,f) -> last U block."""
    from quartic_mirror.lattice.lattices import k3_lattice

    lam = k3_lattice()
    t0 = t0_lattice()
    cols = {0: {18: 1, 19: 2}, 1: {20: 1}, 2: {21: 1}}
    matrix = tuple(
        tuple(cols[j].get(i, 0) for j in range(3)) for i in range(lam.rank)
    )
    return LatticeMap(matrix=matrix, source=t0, target=lam)


def m2_into_k3_embedding():
    """M2 = 2E8(-1) + U + <-4> into Lambda: l -> e' - 2f', U -> U''."""
    from quartic_mirror.lattice.lattices import k3_lattice, m2_lattice

    lam = k3_lattice()
    m2 = m2_lattice()
    cols = {j: {j: 1} for j in range(18)}  # E8 blocks and U'' go in place
    cols[18] = {18: 1, 19: -2}  # the <-4> generator l
    matrix = tuple(
        tuple(cols[j].get(i, 0) for j in range(19)) for i in range(lam.rank)
    )
    return LatticeMap(matrix=matrix, source=m2, target=lam)


def minus4_plus4_into_u():
    """The rank-2 map l -> e-2f, h -> e+2f into U (per-generator primitive)."""
    from quartic_mirror.lattice.lattices import (
        HYPERBOLIC_U,
        direct_sum,
        rank_one,
    )

    src = direct_sum(rank_one(-4), rank_one(4), name="<-4>+<4>")
    matrix = ((1, 1), (-2, 2))
    return LatticeMap(matrix=matrix, source=src, target=HYPERBOLIC_U)
