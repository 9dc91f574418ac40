"""Differential-operator algebra and the Picard-Fuchs verification."""

from quartic_mirror.diffop.operators import (
    DiffOp,
    apply_theta_to_logseries,
    apply_to_series,
    build_gauss_operator,
    build_hypergeometric_operator,
    build_hypergeometric_operator_w,
    build_pf_operator,
    compose,
    left_multiply,
    pullback_inverse_quartic,
    right_multiply_by_function,
    symmetric_square,
)
from quartic_mirror.diffop.griffiths_dwork import (
    GDReductionCertificate,
    griffiths_dwork_verify,
)

__all__ = [
    "DiffOp",
    "apply_theta_to_logseries",
    "apply_to_series",
    "build_gauss_operator",
    "build_hypergeometric_operator",
    "build_hypergeometric_operator_w",
    "build_pf_operator",
    "compose",
    "left_multiply",
    "pullback_inverse_quartic",
    "right_multiply_by_function",
    "symmetric_square",
    "GDReductionCertificate",
    "griffiths_dwork_verify",
]
