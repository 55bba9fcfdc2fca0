"""Weighted L1 phase unwrapping by iteratively reweighted least squares."""

from ._core import (
    DimensionMismatch,
    FormatError,
    NumericalBreakdown,
    ResourceLimit,
    add_phase_noise,
    conditioning_report,
    congruent_round,
    generate_scene,
    read_npy,
    shift_error,
    unwrap,
    wrap_scene,
    wrap_to_principal,
    wrapped_gradients,
    write_npy,
)

__all__ = [
    "DimensionMismatch",
    "FormatError",
    "NumericalBreakdown",
    "ResourceLimit",
    "add_phase_noise",
    "conditioning_report",
    "congruent_round",
    "generate_scene",
    "read_npy",
    "shift_error",
    "unwrap",
    "wrap_scene",
    "wrap_to_principal",
    "wrapped_gradients",
    "write_npy",
]
