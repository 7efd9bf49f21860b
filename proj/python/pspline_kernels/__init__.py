"""Penalized splines and their equivalent kernels."""

from ._core import (
    ArgumentError,
    DomainError,
    EquivalenceReport,
    PSplineFit,
    SingularityError,
    ValidationError,
    bin_data,
    boundary_bias_var,
    boundary_kernel,
    boundary_moment,
    characteristic_roots,
    compare,
    eval_H,
    eval_Hb,
    fit,
    kernel_l2_norm_sq,
    kernel_moment,
    midpoint_design,
    psi_roots,
    simulate_csv,
    weights,
)

__all__ = [name for name in dir() if not name.startswith("_")]
