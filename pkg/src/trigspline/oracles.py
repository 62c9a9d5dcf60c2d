"""Ground truth for tests and ``trigspline verify``.

Nothing here touches the multiplier or spline machinery: B-splines come from
the Cox-de Boor recursion, periodic splines from a moment solve, convolution
from the trapezoid rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_circulant

from .grid import SampleSet


class InsufficientPointsError(ValueError):
    pass


@dataclass(frozen=True)
class CardinalBSpline:
    """Uniform B-spline of ``degree`` on knot spacing ``step``, centred, unit area."""

    degree: int
    step: float

    def __post_init__(self):
        if not 0 <= self.degree <= 10:
            raise ValueError("degree must lie in 0..10")
        if not self.step > 0:
            raise ValueError("step must be positive")

    @property
    def support(self) -> float:
        return (self.degree + 1) * self.step


def _cox_de_boor(x: np.ndarray, degree: int) -> np.ndarray:
    # cardinal B-spline on knots 0, 1, ..., degree+1
    if degree == 0:
        return ((x >= 0) & (x < 1)).astype(float)
    return (x * _cox_de_boor(x, degree - 1) + (degree + 1 - x) * _cox_de_boor(x - 1, degree - 1)) / degree


def eval_cardinal_bspline(spec: CardinalBSpline, t):
    t = np.asarray(t, dtype=float)
    x = t / spec.step + (spec.degree + 1) / 2
    out = _cox_de_boor(x, spec.degree) / spec.step
    return out if out.ndim else float(out)


@dataclass(frozen=True, eq=False)
class PeriodicPolySpline:
    """Periodic interpolating spline on a variant-0 grid.

    ``coefficients[i]`` holds ``(c0, c1, c2, c3)`` of the piece
    ``sum_p c_p (t - t_i)**p`` on ``[t_i, t_i + h)``.
    """

    kind: str
    samples: SampleSet
    coefficients: np.ndarray

    @property
    def step(self) -> float:
        return 2 * math.pi / self.samples.N

    def _locate(self, t):
        t = np.mod(np.asarray(t, dtype=float), 2 * math.pi)
        i = np.minimum((t // self.step).astype(int), self.samples.N - 1)
        return i, t - i * self.step

    def __call__(self, t, derivative: int = 0):
        i, dt = self._locate(t)
        c = self.coefficients[i]
        if derivative == 0:
            out = c[..., 0] + dt * (c[..., 1] + dt * (c[..., 2] + dt * c[..., 3]))
        elif derivative == 1:
            out = c[..., 1] + dt * (2 * c[..., 2] + 3 * dt * c[..., 3])
        elif derivative == 2:
            out = 2 * c[..., 2] + 6 * dt * c[..., 3]
        else:
            raise ValueError("derivative must be 0, 1 or 2")
        return out if np.ndim(out) else float(out)

    def continuity_residuals(self) -> np.ndarray:
        """Jumps of value, first and second derivative at every node, wrap included."""
        h = self.step
        c = self.coefficients
        nxt = np.roll(c, -1, axis=0)
        left = np.stack(
            [
                c[:, 0] + h * c[:, 1] + h**2 * c[:, 2] + h**3 * c[:, 3],
                c[:, 1] + 2 * h * c[:, 2] + 3 * h**2 * c[:, 3],
                2 * c[:, 2] + 6 * h * c[:, 3],
            ],
            axis=1,
        )
        right = np.stack([nxt[:, 0], nxt[:, 1], 2 * nxt[:, 2]], axis=1)
        return left - right


def build_periodic_spline(kind: str, samples: SampleSet) -> PeriodicPolySpline:
    if samples.grid.variant != 0:
        raise ValueError("periodic polynomial oracle expects samples on grid variant 0")
    f = samples.as_array()
    h = 2 * math.pi / samples.N
    nxt = np.roll(f, -1)
    coeffs = np.zeros((samples.N, 4))
    coeffs[:, 0] = f
    if kind == "linear":
        coeffs[:, 1] = (nxt - f) / h
    elif kind == "cubic":
        # moments m_i = s''(t_i):  (m_{i-1} + 4 m_i + m_{i+1}) h/6 = second difference / h
        column = np.zeros(samples.N)
        column[[0, 1, -1]] = [4.0, 1.0, 1.0]
        rhs = 6.0 * (nxt - 2 * f + np.roll(f, 1)) / h**2
        try:
            moments = solve_circulant(column, rhs, singular="raise")
        except np.linalg.LinAlgError as exc:
            raise ArithmeticError("singular periodic spline system") from exc
        m_next = np.roll(moments, -1)
        coeffs[:, 1] = (nxt - f) / h - h * (2 * moments + m_next) / 6
        coeffs[:, 2] = moments / 2
        coeffs[:, 3] = (m_next - moments) / (6 * h)
    else:
        raise ValueError(f"kind must be 'linear' or 'cubic', got {kind!r}")
    return PeriodicPolySpline(kind, samples, coeffs)


def _direct_sum(series, t: np.ndarray) -> np.ndarray:
    w = np.asarray(series.freqs, dtype=float)
    wt = np.multiply.outer(t, w)
    return series.const / 2 + np.cos(wt) @ series.cos + np.sin(wt) @ series.sin


def quadrature_convolve(A, B, t, points: int):
    """Trapezoid value of ``int_0^{2pi} A(t - v) B(v) dv`` on ``points`` nodes.

    Exact up to rounding once ``points`` exceeds twice the combined band
    limit.  ``t`` may be a scalar or an array.
    """
    need = 2 * (A.max_freq + B.max_freq) + 2
    if points < need:
        raise InsufficientPointsError(f"need at least {need} points, got {points}")
    v = 2 * math.pi * np.arange(points) / points
    weights = _direct_sum(B, v)
    t = np.asarray(t, dtype=float)
    out = np.array([2 * math.pi / points * math.fsum(_direct_sum(A, ti - v) * weights) for ti in t.reshape(-1)])
    out = out.reshape(t.shape)
    return out if out.ndim else float(out)
