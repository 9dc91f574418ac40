"""Gram-matrix lattices, signatures and the specific lattices of the story.

Conventions: vectors are integer coordinate rows in a fixed basis; a
LatticeMap with matrix M sends the basis row-vector tuple (b_1..b_n) to
(b_1..b_n).M, matching the right-action convention used for the parallel
transport of (h, e, f).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from quartic_mirror.errors import DomainError
from quartic_mirror.exact import linalg


@dataclass(frozen=True)
class IntegerLattice:
    gram: tuple  # symmetric integer matrix, tuple of tuples
    name: str = ""

    def __post_init__(self):
        g = self.gram
        n = len(g)
        if any(len(row) != n for row in g):
            raise ValueError("Gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise ValueError("Gram matrix must be symmetric")

    @property
    def rank(self):
        return len(self.gram)

    def determinant(self):
        return linalg.det(linalg.mat(self.gram))

    def is_even(self):
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def is_nondegenerate(self):
        return self.determinant() != 0

    def pairing(self, v, w):
        acc = 0
        for i, vi in enumerate(v):
            if vi:
                row = self.gram[i]
                acc += vi * sum(row[j] * w[j] for j in range(self.rank) if w[j])
        return acc


@dataclass(frozen=True)
class LatticeVector:
    coordinates: tuple
    lattice: IntegerLattice

    def __post_init__(self):
        if len(self.coordinates) != self.lattice.rank:
            raise ValueError("coordinate length does not match lattice rank")

    def pair(self, other):
        return self.lattice.pairing(self.coordinates, other.coordinates)

    def norm(self):
        return self.lattice.pairing(self.coordinates, self.coordinates)


@dataclass(frozen=True)
class LatticeMap:
    """Columns are the images of the source basis vectors in the target basis."""

    matrix: tuple  # target.rank x source.rank integer matrix
    source: IntegerLattice
    target: IntegerLattice

    def __post_init__(self):
        if len(self.matrix) != self.target.rank or any(
            len(row) != self.source.rank for row in self.matrix
        ):
            raise ValueError("matrix shape does not match source/target ranks")

    def image_of(self, v):
        return tuple(
            sum(self.matrix[i][j] * v[j] for j in range(self.source.rank))
            for i in range(self.target.rank)
        )

    def gram_pullback(self):
        m = linalg.mat(self.matrix)
        return linalg.mat_mul(
            linalg.mat_mul(linalg.transpose(m), linalg.mat(self.target.gram)), m
        )

    def is_isometry(self):
        return linalg.mat_eq(self.gram_pullback(), linalg.mat(self.source.gram))


# -- constructions -------------------------------------------------------


def direct_sum(*lattices, name=""):
    n = sum(latt.rank for latt in lattices)
    gram = [[0] * n for _ in range(n)]
    off = 0
    for latt in lattices:
        r = latt.rank
        for i in range(r):
            for j in range(r):
                gram[off + i][off + j] = latt.gram[i][j]
        off += r
    return IntegerLattice(tuple(tuple(row) for row in gram),
                          name or "+".join(l.name for l in lattices))


def twist(lattice, sign, name=""):
    if sign not in (1, -1):
        raise DomainError("twist sign must be +-1")
    return IntegerLattice(
        tuple(tuple(sign * x for x in row) for row in lattice.gram),
        name or (lattice.name + ("(-1)" if sign == -1 else "")),
    )


def rank_one(n, name=""):
    return IntegerLattice(((n,),), name or f"<{n}>")


# Gram matrix of the E8 root basis in Bourbaki numbering: the chain
# 1-3-4-5-6-7-8 with node 2 attached to node 4.  Even, unimodular,
# positive definite; only these properties are consumed downstream.
_E8_EDGES = ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4))


def _e8_gram():
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = 2
    for a, b in _E8_EDGES:
        g[a - 1][b - 1] = -1
        g[b - 1][a - 1] = -1
    return tuple(tuple(row) for row in g)


E8 = IntegerLattice(_e8_gram(), "E8")
E8_MINUS = twist(E8, -1, "E8(-1)")
HYPERBOLIC_U = IntegerLattice(((0, 1), (1, 0)), "U")


def k3_lattice():
    """Lambda = 2 E8(-1) + 3 U, rank 22, signature (3,19).

    Block order E8(-1), E8(-1), U'', U', U; the last U houses the (e, f)
    of T0 and the middle one the vector h = e' + 2f'.
    """
    return direct_sum(
        E8_MINUS, E8_MINUS, HYPERBOLIC_U, HYPERBOLIC_U, HYPERBOLIC_U,
        name="Lambda",
    )


def mukai_lattice():
    return direct_sum(k3_lattice(), HYPERBOLIC_U, name="Lambda~")


def t0_lattice():
    """T0 = <4> + U with basis (h, e, f)."""
    return direct_sum(rank_one(4, "<4>"), HYPERBOLIC_U, name="T0")


def m2_lattice():
    return direct_sum(
        E8_MINUS, E8_MINUS, HYPERBOLIC_U, rank_one(-4, "<-4>"), name="M2"
    )


def signature(lattice):
    """(positive, negative) inertia counts by exact symmetric reduction.

    Sylvester's law via congruence transformations over Q; zero blocks of
    a degenerate form raise instead of being silently dropped.
    """
    g = [[Fraction(x) for x in row] for row in lattice.gram]
    n = len(g)
    pos = neg = 0
    idx = list(range(n))
    while idx:
        # find a nonzero diagonal pivot, or fabricate one from an
        # off-diagonal entry by a congruence row/column addition
        piv = next((i for i in idx if g[i][i] != 0), None)
        if piv is None:
            found = None
            for i in idx:
                for j in idx:
                    if i != j and g[i][j] != 0:
                        found = (i, j)
                        break
                if found:
                    break
            if found is None:
                raise DomainError("degenerate Gram matrix has no signature")
            i, j = found
            for k in range(n):
                g[i][k] += g[j][k]
            for k in range(n):
                g[k][i] += g[k][j]
            piv = i
        d = g[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        idx.remove(piv)
        for r in idx:
            if g[r][piv] != 0:
                f = g[r][piv] / d
                for k in range(n):
                    g[r][k] -= f * g[piv][k]
                for k in range(n):
                    g[k][r] -= f * g[k][piv]
    return (pos, neg)
