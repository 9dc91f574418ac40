"""Exact integer-lattice theory and the monodromy matrices on T0."""

from quartic_mirror.lattice.lattices import (
    E8,
    E8_MINUS,
    HYPERBOLIC_U,
    IntegerLattice,
    LatticeMap,
    LatticeVector,
    direct_sum,
    k3_lattice,
    m2_lattice,
    mukai_lattice,
    rank_one,
    signature,
    t0_lattice,
    twist,
)
from quartic_mirror.lattice.snf import (
    discriminant_group,
    is_primitive_embedding,
    nikulin_criterion,
    smith_normal_form,
)
from quartic_mirror.lattice.monodromy_data import (
    GRAM_T0,
    MONODROMY_MATRICES,
    abc_monodromy,
    monodromy_product_ordering,
    paper_monodromy_matrices,
)
from quartic_mirror.lattice.moebius import (
    MoebiusTransform,
    QuadraticPoint,
    fixed_points,
    mobius_from_monodromy,
)

__all__ = [
    "E8",
    "E8_MINUS",
    "HYPERBOLIC_U",
    "IntegerLattice",
    "LatticeMap",
    "LatticeVector",
    "direct_sum",
    "k3_lattice",
    "m2_lattice",
    "mukai_lattice",
    "rank_one",
    "signature",
    "t0_lattice",
    "twist",
    "discriminant_group",
    "is_primitive_embedding",
    "nikulin_criterion",
    "smith_normal_form",
    "GRAM_T0",
    "MONODROMY_MATRICES",
    "abc_monodromy",
    "monodromy_product_ordering",
    "paper_monodromy_matrices",
    "MoebiusTransform",
    "QuadraticPoint",
    "fixed_points",
    "mobius_from_monodromy",
]
