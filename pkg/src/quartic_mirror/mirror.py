"""Period-domain points and the commuting mirror-symmetry square.

The A-side chart sends p to [e + p H - 2p^2 f] inside <H> + U, the B-side
chart sends z to [z h - e + 2 z^2 f] inside T0 = <h> + U, and the isometry
g0 (h -> H, e -> -e, f -> -f) carries one to the other on the nose.  All
identities here are checked as polynomial identities in a formal variable,
not at sampled points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from quartic_mirror.errors import DomainError
from quartic_mirror.exact import linalg
from quartic_mirror.exact.poly import Poly
from quartic_mirror.lattice.lattices import (
    IntegerLattice,
    LatticeMap,
    direct_sum,
    k3_lattice,
    rank_one,
    signature,
    HYPERBOLIC_U,
)
from quartic_mirror.lattice.monodromy_data import N_INF_EXPECTED

#: basis order (h, e, f); the A-side twin <H> + U uses (H, e, f).
GRAM_HEF = ((4, 0, 0), (0, 0, 1), (0, 1, 0))


def h_plus_u_lattice(name="T0"):
    return IntegerLattice(GRAM_HEF, name)


@dataclass(frozen=True)
class PeriodVector:
    """Coordinates in a named rank-3 chart lattice (entries may be
    rationals, polynomials in a formal parameter, or complex numbers)."""

    coordinates: tuple
    lattice_name: str

    def pairing(self, other):
        return _pair_hef(self.coordinates, other.coordinates)


def _pair_hef(v, w):
    return 4 * v[0] * w[0] + v[1] * w[2] + v[2] * w[1]


# -- Mukai pairing --------------------------------------------------------


@dataclass(frozen=True)
class MukaiVector:
    """(degree-0, degree-2, degree-4) component of total cohomology.

    The degree-2 part is a coordinate vector over the K3 lattice Lambda
    (or any lattice passed explicitly to the pairing helpers).
    """

    degree0: object
    degree2: tuple
    degree4: object


def mukai_pairing(v: MukaiVector, w: MukaiVector, lattice=None):
    """<(a0,a2,a4),(b0,b2,b4)> = a2.b2 - a0 b4 - a4 b0."""
    if len(v.degree2) != len(w.degree2):
        raise DomainError("degree-2 parts live in different lattices")
    if lattice is None:
        lattice = k3_lattice()
    mid = lattice.pairing(v.degree2, w.degree2)
    return mid - v.degree0 * w.degree4 - v.degree4 * w.degree0


def mho(two_form, lattice=None):
    """exp(i omega + beta) = (1, B, B^2/2) for B the degree-2 class."""
    if lattice is None:
        lattice = k3_lattice()
    bb = lattice.pairing(two_form, two_form)
    half = Fraction(1, 2) if not isinstance(bb, complex) else 0.5
    return MukaiVector(degree0=1, degree2=tuple(two_form), degree4=bb * half)


def mukai_gram():
    """Gram of the Mukai pairing on the basis (1, Lambda basis, or)."""
    lam = k3_lattice()
    n = lam.rank + 2
    g = [[0] * n for _ in range(n)]
    g[0][n - 1] = g[n - 1][0] = -1
    for i in range(lam.rank):
        for j in range(lam.rank):
            g[1 + i][1 + j] = lam.gram[i][j]
    return IntegerLattice(tuple(tuple(row) for row in g), "Mukai(H*(X))")


# -- the two charts and the isometry between them -------------------------


def a_period(p) -> PeriodVector:
    """[exp(p H)] = [e + p H - 2 p^2 f]; coordinates in basis (H, e, f)."""
    return PeriodVector((p, _one_like(p), -2 * p * p), "<H>+U")


def a_period_inverse(v: PeriodVector):
    """Chart inverse [a e-coeff view]: p = (H-coeff)/(e-coeff)."""
    return v.coordinates[0] / v.coordinates[1]


def tilde_exp(z) -> PeriodVector:
    """[z h - e + 2 z^2 f]; coordinates in basis (h, e, f)."""
    one = _one_like(z)
    return PeriodVector((z, -one, 2 * z * z), "T0")


def tilde_exp_inverse(v: PeriodVector):
    """[a : b : c] -> -a/b."""
    a, b = v.coordinates[0], v.coordinates[1]
    return -a / b if not isinstance(a, Poly) else _poly_neg_div(a, b)


def _one_like(x):
    if isinstance(x, Poly):
        return Poly.one(x.var)
    if isinstance(x, Fraction):
        return Fraction(1)
    return 1


def _poly_neg_div(a, b):
    from quartic_mirror.exact.poly import RationalFunction

    return RationalFunction(-a, b)


def g0_isometry() -> LatticeMap:
    """h -> H, e -> -e, f -> -f between the two rank-3 charts."""
    return LatticeMap(
        matrix=((1, 0, 0), (0, -1, 0), (0, 0, -1)),
        source=h_plus_u_lattice("T0"),
        target=h_plus_u_lattice("<H>+U"),
    )


def diagram_check(z=None) -> bool:
    """g0(tilde_exp(z)) equals a_period(z), identically in z.

    With no argument the check runs on a formal polynomial variable, so a
    True answer is an identity of coordinate triples, not a sample.
    """
    if z is None:
        z = Poly.x("z")
    g0 = g0_isometry()
    src = tilde_exp(z).coordinates
    mapped = tuple(
        sum(g0.matrix[i][j] * src[j] for j in range(3)) for i in range(3)
    )
    target = a_period(z).coordinates
    return all(_eq(mapped[i], target[i]) for i in range(3))


def _eq(x, y):
    diff = x - y
    if isinstance(diff, Poly):
        return diff.is_zero()
    if isinstance(diff, complex):
        return abs(diff) == 0
    return diff == 0


# -- the 22-entry period vector of the introduction ------------------------


def gamma_basis():
    """The basis Gamma_1..Gamma_22 of Lambda used for the period integrals.

    Lambda carries block order (E8(-1), E8(-1), U'', U', U); writing
    (e', f') for the basis of U' and (e, f) for the last block:
    Gamma_1 = h = e' + 2f', Gamma_2 = e, Gamma_3 = f, Gamma_4 = f', and
    Gamma_5..Gamma_22 run through the orthogonal complement 2E8(-1) + U''.
    """
    lam = k3_lattice()
    n = lam.rank

    def unit(i):
        return tuple(1 if j == i else 0 for j in range(n))

    gammas = []
    h = [0] * n
    h[18] = 1
    h[19] = 2
    gammas.append(tuple(h))          # Gamma_1 = h
    gammas.append(unit(20))          # Gamma_2 = e
    gammas.append(unit(21))          # Gamma_3 = f
    gammas.append(unit(19))          # Gamma_4 = f'
    for i in list(range(16)) + [16, 17]:
        gammas.append(unit(i))       # E8 blocks then U''
    return gammas


def period_vector_22(p):
    """Intersection numbers of the normalized two-form with Gamma_1..22.

    For the chart representative Omega = p h - e + 2 p^2 f the result is
    (4p, 2p^2, -1, p, 0, ..., 0); with a polynomial p this is verified as
    a polynomial identity.
    """
    lam = k3_lattice()
    n = lam.rank
    zero = Poly.zero(p.var) if isinstance(p, Poly) else 0
    omega = [zero] * n
    one = _one_like(p)
    omega[18] = p * 1            # h = e' + 2 f' contributes p to e'
    omega[19] = 2 * p            # and 2p to f'
    omega[20] = -one             # -e
    omega[21] = 2 * p * p        # 2 p^2 f
    out = []
    for gamma in gamma_basis():
        acc = zero
        for i in range(n):
            if gamma[i]:
                row = lam.gram[i]
                for j in range(n):
                    if row[j]:
                        acc = acc + omega[j] * (row[j] * gamma[i])
        out.append(acc)
    return tuple(out)


def expected_period_vector(p):
    zero = Poly.zero(p.var) if isinstance(p, Poly) else 0
    return tuple([4 * p, 2 * p * p, -_one_like(p), p] + [zero] * 18)


# -- the algebraic skeleton of the uniqueness argument ---------------------


@dataclass(frozen=True)
class UniquenessReport:
    kernel_basis: tuple
    particular_solution: tuple
    affine_direction: tuple
    discriminant_poly: tuple  # coefficients of mu^2 - 2 in ascending order
    forced_mu: Fraction


def uniqueness_structure_check() -> UniquenessReport:
    """Exact facts behind the normalization of the period map.

    The eigenvalue-1 eigenspace of N_inf is spanned by e2 = (0,1,0)^t, the
    solutions of (N_inf - 1) v = -4 e2 form the line (1,0,0)^t + C e2, and
    the fixed-point quadratic of z -> -1/(2z) + mu has discriminant
    mu^2 - 2, which matches root gap i sqrt(2) only at mu = 0.
    """
    n = linalg.mat(N_INF_EXPECTED)
    n_minus_1 = linalg.mat_sub(n, linalg.identity(3))
    kernel = linalg.nullspace(n_minus_1)
    if len(kernel) != 1:
        raise ArithmeticError("eigenspace of N_inf for 1 is not a line")
    rhs = (Fraction(0), Fraction(-4), Fraction(0))
    sol = linalg.solve(n_minus_1, rhs)
    if sol is None:
        raise ArithmeticError("(N_inf - 1) v = -4 e2 has no solution")
    # fixed points of beta_1 + mu: z = -1/(2z) + mu  <=>  z^2 - mu z + 1/2
    mu = Poly.x("mu")
    disc = mu * mu - Fraction(2)
    # (root gap)^2 = disc must equal (i sqrt 2)^2 = -2  <=>  mu^2 = 0
    forced = disc - Fraction(-2)
    if not forced == mu * mu:
        raise ArithmeticError("discriminant bookkeeping failed")
    return UniquenessReport(
        kernel_basis=tuple(kernel),
        particular_solution=sol,
        affine_direction=kernel[0],
        discriminant_poly=tuple(disc.coeffs),
        forced_mu=Fraction(0),
    )


def mukai_signature_check():
    return signature(mukai_gram())
