"""Smith normal form, discriminant groups, primitivity and Nikulin's test."""

from __future__ import annotations

from dataclasses import dataclass

from quartic_mirror.errors import DomainError
from quartic_mirror.exact import linalg
from quartic_mirror.lattice.lattices import IntegerLattice, LatticeMap, signature


def smith_normal_form(a):
    """Return (D, U, V) with D = U a V diagonal, d_i | d_{i+1}, U, V unimodular."""
    a = [list(int(x) for x in row) for row in a]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):
        # row_i += c * row_j
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]

    def add_col(i, j, c):
        for row in a:
            row[i] += c * row[j]
        for row in v:
            row[i] += c * row[j]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(nr, nc):
        # locate the nonzero entry of smallest magnitude in the trailing block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < best[0]):
                    best = (abs(a[i][j]), i, j)
        if best is None:
            break
        _, bi, bj = best
        swap_rows(t, bi)
        swap_cols(t, bj)
        dirty = False
        for i in range(t + 1, nr):
            if a[i][t] != 0:
                q = a[i][t] // a[t][t]
                add_row(i, t, -q)
                if a[i][t] != 0:
                    dirty = True
        for j in range(t + 1, nc):
            if a[t][j] != 0:
                q = a[t][j] // a[t][t]
                add_col(j, t, -q)
                if a[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        # pivot must divide every remaining entry; if not, fold the
        # offending row in and restart the reduction of this corner
        offender = None
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if a[i][j] % a[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue
        if a[t][t] < 0:
            negate_row(t)
        t += 1
    d = [[a[i][j] if i == j else 0 for j in range(nc)] for i in range(nr)]
    return (
        tuple(tuple(row) for row in d),
        tuple(tuple(row) for row in u),
        tuple(tuple(row) for row in v),
    )


def invariant_factors(a):
    d, _, _ = smith_normal_form(a)
    n = min(len(d), len(d[0]) if d else 0)
    return tuple(d[i][i] for i in range(n) if d[i][i] != 0)


@dataclass(frozen=True)
class DiscriminantGroup:
    invariant_factors: tuple  # all factors, including 1s
    nontrivial_factors: tuple

    @property
    def min_generators(self):
        """l(S): minimal number of generators of the discriminant group."""
        return len(self.nontrivial_factors)

    @property
    def order(self):
        out = 1
        for f in self.nontrivial_factors:
            out *= f
        return out


def discriminant_group(lattice: IntegerLattice) -> DiscriminantGroup:
    if not lattice.is_nondegenerate():
        raise DomainError("discriminant group needs a nondegenerate lattice")
    factors = invariant_factors(lattice.gram)
    return DiscriminantGroup(
        invariant_factors=factors,
        nontrivial_factors=tuple(f for f in factors if f != 1),
    )


def is_primitive_embedding(emb: LatticeMap) -> bool:
    """Torsion-free cokernel: every elementary divisor of the matrix is 1."""
    m = emb.matrix
    r = linalg.rank(linalg.mat(m))
    if r != emb.source.rank:
        raise DomainError("map is not injective")
    return all(f == 1 for f in invariant_factors(m))


@dataclass(frozen=True)
class NikulinReport:
    applies: bool
    sig_small: tuple
    sig_big: tuple
    l_small: int
    positive_strict: bool
    negative_strict: bool
    rank_inequality: bool


def nikulin_criterion(s: IntegerLattice, big: IntegerLattice) -> NikulinReport:
    """Nikulin's uniqueness criterion for primitive embeddings s -> big:

    l+ > s+, l- > s-, and rk(L) - rk(S) >= l(S) + 2.
    """
    for latt in (s, big):
        if not latt.is_even():
            raise DomainError("Nikulin's criterion is stated for even lattices")
        if not latt.is_nondegenerate():
            raise DomainError("lattices must be nondegenerate")
    ss = signature(s)
    sb = signature(big)
    ls = discriminant_group(s).min_generators
    pos = sb[0] > ss[0]
    neg = sb[1] > ss[1]
    rk = big.rank - s.rank >= ls + 2
    return NikulinReport(
        applies=pos and neg and rk,
        sig_small=ss,
        sig_big=sb,
        l_small=ls,
        positive_strict=pos,
        negative_strict=neg,
        rank_inequality=rk,
    )
