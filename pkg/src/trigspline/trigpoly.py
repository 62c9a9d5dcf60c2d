"""Interpolating trigonometric polynomial of degree n on an N = 2n+1 point grid.

    T(t) = a_0/2 + sum_{k=1}^{n} (a_k cos kt + b_k sin kt)

with the discrete Fourier coefficients

    a_k = (2/N) sum_j f_j cos(k t_j),   b_k = (2/N) sum_j f_j sin(k t_j).

The sums are direct (no FFT) and exactly rounded through ``math.fsum``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import SampleSet


@dataclass(frozen=True)
class TrigPolyCoeffs:
    grid_id: int
    n: int
    a: tuple[float, ...]  # a_0 ... a_n
    b: tuple[float, ...]  # b_1 ... b_n

    def __post_init__(self):
        if len(self.a) != self.n + 1 or len(self.b) != self.n:
            raise ValueError("need n+1 cosine and n sine coefficients")
        if not all(math.isfinite(c) for c in self.a + self.b):
            raise ValueError("coefficients must be finite")

    @property
    def N(self) -> int:
        return 2 * self.n + 1


def _node_phases(k: int, samples: SampleSet) -> np.ndarray:
    # k*t_j reduced exactly: variant 0 -> 2πk(j-1)/N, variant 1 -> πk(2j-1)/N
    N = samples.N
    j = np.arange(1, N + 1)
    if samples.grid.variant == 0:
        num = (2 * k * (j - 1)) % (2 * N)
    else:
        num = (k * (2 * j - 1)) % (2 * N)
    return np.pi * num / N


def compute_coeffs(samples: SampleSet) -> TrigPolyCoeffs:
    f = samples.as_array()
    N = samples.N
    n = (N - 1) // 2
    a, b = [], []
    for k in range(n + 1):
        phase = _node_phases(k, samples)
        a.append(2.0 / N * math.fsum(f * np.cos(phase)))
        if k:
            b.append(2.0 / N * math.fsum(f * np.sin(phase)))
    return TrigPolyCoeffs(samples.grid.variant, n, tuple(a), tuple(b))


def eval_poly(coeffs: TrigPolyCoeffs, t):
    """Evaluate T at scalar or array ``t``."""
    t = np.asarray(t, dtype=float)
    k = np.arange(1, coeffs.n + 1)
    kt = np.multiply.outer(t, k)
    out = coeffs.a[0] / 2 + np.cos(kt) @ np.array(coeffs.a[1:]) + np.sin(kt) @ np.array(coeffs.b)
    return out if out.ndim else float(out)
