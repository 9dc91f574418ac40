"""High-precision numerics: ball arithmetic, analytic continuation,
numerical monodromy, the hypergeometric closed form near t=1 and the
triangle sampler."""

from quartic_mirror.flow.balls import Ball, ball_context
from quartic_mirror.flow.continuation import (
    PathPolyline,
    PreparedOperator,
    continue_solutions,
    monodromy,
    square_loop,
)
from quartic_mirror.flow.frobenius import (
    frobenius_basis_at_zero,
    frobenius_jets_at,
)
from quartic_mirror.flow.hypergeo import (
    ns_closed_form,
    ns_consistency_check,
    ns_period_via_ode,
)
from quartic_mirror.flow.triangle import triangle_sample, triangle_vertex_checks

__all__ = [
    "Ball",
    "ball_context",
    "PathPolyline",
    "PreparedOperator",
    "continue_solutions",
    "monodromy",
    "square_loop",
    "frobenius_basis_at_zero",
    "frobenius_jets_at",
    "ns_closed_form",
    "ns_consistency_check",
    "ns_period_via_ode",
    "triangle_sample",
    "triangle_vertex_checks",
]
