"""Sparse real trigonometric series and their algebra.

A series is stored as

    f(t) = const/2 + sum_w (cos_w cos(w t) + sin_w sin(w t)),   w = 1, 2, ...

with only the frequencies that are actually present.  Spline objects built on
an N-point grid occupy the frequencies k and mN +- k, so multiples of N are
always missing; keeping the map sparse leaves those gaps visible.

Periodic convolution ``(A * B)(t) = int_0^{2pi} A(t - v) B(v) dv`` is diagonal
in this basis.  Since ``int_0^{2pi} cos^2(w v) dv = pi``, a common frequency w
gets

    cos' = pi (cosA cosB - sinA sinB),   sin' = pi (cosA sinB + sinA cosB),

and the constant terms combine as ``int (a/2)(c/2) dv = pi a c / 2``, i.e.
``const' = pi a c`` in the half-constant convention.  A frequency present in
only one operand is orthogonal to the other and vanishes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

DROP_BELOW = 1e-300


@dataclass(frozen=True, eq=False)
class HarmonicSeries:
    const: float
    freqs: np.ndarray
    cos: np.ndarray
    sin: np.ndarray
    truncation: int | None = None

    def __post_init__(self):
        freqs = np.asarray(self.freqs, dtype=np.int64).reshape(-1)
        cos = np.asarray(self.cos, dtype=float).reshape(-1)
        sin = np.asarray(self.sin, dtype=float).reshape(-1)
        if not freqs.shape == cos.shape == sin.shape:
            raise ValueError("frequency and amplitude arrays must have equal length")
        if freqs.size and freqs.min() < 1:
            raise ValueError("frequencies must be positive integers")
        if not (math.isfinite(self.const) and np.all(np.isfinite(cos)) and np.all(np.isfinite(sin))):
            raise ValueError("amplitudes must be finite")
        order = np.argsort(freqs, kind="stable")
        freqs, cos, sin = freqs[order], cos[order], sin[order]
        if freqs.size > 1 and np.any(np.diff(freqs) == 0):
            raise ValueError("duplicate frequency; use from_terms to accumulate")
        keep = (np.abs(cos) >= DROP_BELOW) | (np.abs(sin) >= DROP_BELOW)
        for name, arr in (("freqs", freqs[keep]), ("cos", cos[keep]), ("sin", sin[keep])):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "const", float(self.const))

    @classmethod
    def from_terms(cls, const, freqs, cos, sin, truncation=None) -> "HarmonicSeries":
        """Build a series, summing amplitudes of repeated frequencies."""
        freqs = np.asarray(freqs, dtype=np.int64).reshape(-1)
        uniq, inv = np.unique(freqs, return_inverse=True)
        c = np.bincount(inv, weights=np.broadcast_to(cos, freqs.shape), minlength=uniq.size)
        s = np.bincount(inv, weights=np.broadcast_to(sin, freqs.shape), minlength=uniq.size)
        return cls(const, uniq, c, s, truncation)

    @classmethod
    def constant(cls, value: float) -> "HarmonicSeries":
        return cls(2.0 * value, [], [], [])

    @property
    def terms(self) -> dict[int, tuple[float, float]]:
        return {int(w): (float(c), float(s)) for w, c, s in zip(self.freqs, self.cos, self.sin)}

    @property
    def max_freq(self) -> int:
        return int(self.freqs[-1]) if self.freqs.size else 0

    def __len__(self):
        return int(self.freqs.size)

    def __call__(self, t):
        return evaluate(self, t)

    def __eq__(self, other):
        if not isinstance(other, HarmonicSeries):
            return NotImplemented
        return (
            self.const == other.const
            and np.array_equal(self.freqs, other.freqs)
            and np.array_equal(self.cos, other.cos)
            and np.array_equal(self.sin, other.sin)
        )

    __hash__ = None

    def to_json(self) -> str:
        return dumps(self)


def evaluate(series: HarmonicSeries, t, chunk: int = 1 << 22):
    """Value at scalar or array ``t`` by direct summation."""
    t = np.asarray(t, dtype=float)
    flat = t.reshape(-1)
    out = np.full(flat.shape, series.const / 2)
    if series.freqs.size:
        w = series.freqs.astype(float)
        rows = max(1, chunk // w.size)
        for start in range(0, flat.size, rows):
            wt = np.multiply.outer(flat[start:start + rows], w)
            out[start:start + rows] += np.cos(wt) @ series.cos + np.sin(wt) @ series.sin
    out = out.reshape(t.shape)
    return out if out.ndim else float(out)


def sample(series: HarmonicSeries, samples: int) -> np.ndarray:
    """Values at ``t_i = 2 pi i / samples``, i = 0..samples-1.

    Frequencies are folded modulo ``samples`` (exact on this grid) and summed
    with one inverse FFT, so the cost does not grow with the product of
    frequency count and sample count.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    bins = np.zeros(samples, dtype=complex)
    np.add.at(bins, series.freqs % samples, series.cos - 1j * series.sin)
    return series.const / 2 + samples * np.fft.ifft(bins).real


def sample_points(samples: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(samples) / samples


def convolve(A: HarmonicSeries, B: HarmonicSeries) -> HarmonicSeries:
    """Coefficients of ``int_0^{2pi} A(t - v) B(v) dv``."""
    common, ia, ib = np.intersect1d(A.freqs, B.freqs, assume_unique=True, return_indices=True)
    ca, sa, cb, sb = A.cos[ia], A.sin[ia], B.cos[ib], B.sin[ib]
    cos = np.pi * (ca * cb - sa * sb)
    sin = np.pi * (ca * sb + sa * cb)
    truncation = max((s.truncation for s in (A, B) if s.truncation is not None), default=None)
    return HarmonicSeries(np.pi * A.const * B.const, common, cos, sin, truncation)


def shift(series: HarmonicSeries, s: float) -> HarmonicSeries:
    """Series of ``t -> series(t + s)``."""
    phase = series.freqs * float(s)
    return _rotate(series, np.cos(phase), np.sin(phase))


def shift_pi_fraction(series: HarmonicSeries, p: int, q: int) -> HarmonicSeries:
    """``shift`` by ``s = pi p / q`` with the phase reduced in integers.

    For large frequencies ``w * s`` loses digits in floating point; reducing
    ``w p`` modulo ``2q`` first keeps every rotated amplitude accurate to a few
    ulps.  The half grid step ``h/2 = pi/N`` is ``p=1, q=N``.
    """
    if q <= 0:
        raise ValueError("q must be positive")
    phase = np.pi * ((series.freqs * int(p)) % (2 * q)) / q
    return _rotate(series, np.cos(phase), np.sin(phase))


def _rotate(series, c, s):
    cos = series.cos * c + series.sin * s
    sin = series.sin * c - series.cos * s
    return HarmonicSeries(series.const, series.freqs, cos, sin, series.truncation)


def integrate_period(series: HarmonicSeries) -> float:
    """Integral over any window of length 2 pi; only the constant survives."""
    return math.pi * series.const


def linear_combine(pairs) -> HarmonicSeries:
    pairs = list(pairs)
    if not pairs:
        return HarmonicSeries(0.0, [], [], [])
    const = math.fsum(alpha * s.const for alpha, s in pairs)
    freqs = np.concatenate([s.freqs for _, s in pairs])
    cos = np.concatenate([alpha * s.cos for alpha, s in pairs])
    sin = np.concatenate([alpha * s.sin for alpha, s in pairs])
    truncation = max((s.truncation for _, s in pairs if s.truncation is not None), default=None)
    return HarmonicSeries.from_terms(const, freqs, cos, sin, truncation)


def sup_diff(A: HarmonicSeries, B: HarmonicSeries, samples: int = 1000) -> float:
    """max |A(t) - B(t)| over ``samples`` equispaced points of [0, 2 pi)."""
    if samples < 2:
        raise ValueError("samples must be >= 2")
    return float(np.max(np.abs(sample(A, samples) - sample(B, samples))))


def dumps(series: HarmonicSeries) -> str:
    payload = {
        "const": series.const,
        "terms": [[int(w), float(c), float(s)] for w, c, s in zip(series.freqs, series.cos, series.sin)],
    }
    return json.dumps(payload)


def loads(text: str) -> HarmonicSeries:
    payload = json.loads(text)
    terms = payload["terms"]
    if not terms:
        return HarmonicSeries(payload["const"], [], [], [])
    w, c, s = zip(*terms)
    return HarmonicSeries(payload["const"], w, c, s)
