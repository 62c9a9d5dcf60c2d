"""Trigonometric interpolation splines with Riemann convergence multipliers.

Splines, their kernels and trigonometric B-splines on every combination of
stitching grid and interpolation grid, stored as sparse trigonometric series.
"""

from .grid import SampleSet, UniformGrid, attach_samples, grid_step, make_grid, sample_function
from .harmonic import HarmonicSeries, convolve, integrate_period, linear_combine, shift, sup_diff
from .multipliers import DegenerateMultiplierError, Truncation, interp_multiplier, sigma
from .splinecore import (
    SplineConfig,
    build_bspline_first_kind,
    build_bspline_second_kind,
    build_kernel_first_kind,
    build_kernel_second_kind,
    build_spline,
    spline_via_convolution_first,
    spline_via_convolution_second,
    verify_identities,
)
from .trigpoly import TrigPolyCoeffs, compute_coeffs, eval_poly

__version__ = "0.1.0"
