"""Uniform grids on [0, 2π) and the sample data attached to them.

Two node sets of odd size ``N = 2n + 1`` are supported:

* variant 0: ``t_i = 2π(i - 1)/N``  (nodes start at 0)
* variant 1: ``t_i = π(2i - 1)/N``  (nodes start at π/N, half a step later)

Both have spacing ``h = 2π/N``; shifting by ``h/2`` maps one onto the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class ValidationError(ValueError):
    """Base class for rejected inputs."""


class GridSizeError(ValidationError):
    """N is even or smaller than 3."""


class GridVariantError(ValidationError):
    """Grid identifier outside {0, 1}."""


class SampleLengthError(ValidationError):
    """Number of samples differs from the grid size."""


class NonFiniteSampleError(ValidationError):
    """A sample is NaN or infinite."""


def check_variant(variant: int) -> int:
    if isinstance(variant, bool) or int(variant) != variant or variant not in (0, 1):
        raise GridVariantError(f"grid id must be 0 or 1, got {variant!r}")
    return int(variant)


def check_size(N: int) -> int:
    if isinstance(N, bool) or int(N) != N:
        raise GridSizeError(f"N must be an integer, got {N!r}")
    N = int(N)
    if N < 3 or N % 2 == 0:
        raise GridSizeError(f"N must be odd and >= 3, got {N}")
    return N


@dataclass(frozen=True)
class UniformGrid:
    variant: int
    N: int

    def __post_init__(self):
        object.__setattr__(self, "variant", check_variant(self.variant))
        object.__setattr__(self, "N", check_size(self.N))

    @property
    def n(self) -> int:
        return (self.N - 1) // 2

    @property
    def step(self) -> float:
        return grid_step(self.N)

    @property
    def nodes(self) -> np.ndarray:
        # index times the rounded step, no cumulative sums; keeps spacing within one ulp
        i = np.arange(1, self.N + 1)
        if self.variant == 0:
            return (i - 1) * self.step
        return (2 * i - 1) * (self.step / 2)


@dataclass(frozen=True)
class SampleSet:
    grid: UniformGrid
    values: tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if len(values) != self.grid.N:
            raise SampleLengthError(
                f"expected {self.grid.N} samples for N={self.grid.N}, got {len(values)}"
            )
        if not all(math.isfinite(v) for v in values):
            raise NonFiniteSampleError("samples must be finite")
        object.__setattr__(self, "values", values)

    @property
    def N(self) -> int:
        return self.grid.N

    def as_array(self) -> np.ndarray:
        return np.array(self.values)

    def reattach(self, variant: int) -> "SampleSet":
        """Same value list placed on the other (or same) grid variant."""
        return SampleSet(make_grid(variant, self.grid.N), self.values)


def make_grid(variant: int, N: int) -> UniformGrid:
    return UniformGrid(variant, N)


def grid_step(N: int) -> float:
    """Spacing ``h = 2π/N`` shared by both grid variants."""
    return 2.0 * math.pi / check_size(N)


def attach_samples(grid: UniformGrid, values) -> SampleSet:
    return SampleSet(grid, tuple(values))


def sample_function(func, variant: int, N: int) -> SampleSet:
    """Evaluate ``func`` at the nodes of grid ``(variant, N)``."""
    grid = make_grid(variant, N)
    return SampleSet(grid, tuple(float(func(t)) for t in grid.nodes))
