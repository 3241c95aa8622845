"""Commutator-free exponential propagators for the 1-D time-dependent
Schrodinger equation: spectral grids, adaptive Lanczos exponentials, the
propagator family, and the Walker-Preston benchmark harness."""

from ._core import (
    alpha_weights,
    benchmark,
    expm_action,
    gl6,
    grid_points,
    lobatto4,
    morse_ground_state,
    preset_names,
    propagate,
    scheme_names,
)

__all__ = [
    "alpha_weights",
    "benchmark",
    "expm_action",
    "gl6",
    "grid_points",
    "lobatto4",
    "morse_ground_state",
    "preset_names",
    "propagate",
    "scheme_names",
]
