"""Trigonometric interpolation splines, their kernels and B-splines.

Every object is a :class:`HarmonicSeries` whose frequencies are the residue
chains ``k, N+k, N-k, 2N+k, 2N-k, ...`` for k = 1..n.  They differ only in the
damping multiplier, the alternating sign on the m-th link and the
per-chain factor:

=========  ==============  =====================  ===============================
object     damping         sign on link m          chain factor
=========  ==============  =====================  ===============================
St         sigma(r)        (-1)^(m(r+1+I1))        a_k, b_k / H_k(I1,I2,r)
KR0        sigma(0)        (-1)^(m(1+I1))          a_k, b_k / H_k(I1,I2,r), r even
KR1        sigma(0)        (-1)^(m I1)             a_k, b_k / H_k(I1,I2,r), r odd
KR0*/KR1*  sigma(0)        as KR0 / KR1            a_k, b_k
BR         sigma(r)        +1                      1/pi
BR*        sigma(r)        +1                      1/(pi H_k(I1,I2,1+r))
=========  ==============  =====================  ===============================

The sine part of the ``mN - k`` link carries an extra minus sign, which makes
each chain alias back onto ``cos kt``/``sin kt`` on the interpolation grid.
Coefficients always come from the samples on the interpolation grid I2.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import harmonic
from .grid import SampleSet, ValidationError, check_size, check_variant
from .harmonic import HarmonicSeries
from .multipliers import Truncation, multiplier_table, sigma_array
from .trigpoly import compute_coeffs

log = logging.getLogger(__name__)


class GridMismatchError(ValidationError):
    """Samples live on a grid other than the one the configuration needs."""


@dataclass(frozen=True)
class SplineConfig:
    I1: int
    I2: int
    r: int
    N: int
    trunc: Truncation = field(default_factory=Truncation)

    def __post_init__(self):
        object.__setattr__(self, "I1", check_variant(self.I1))
        object.__setattr__(self, "I2", check_variant(self.I2))
        object.__setattr__(self, "N", check_size(self.N))
        if isinstance(self.r, bool) or int(self.r) != self.r or self.r < 0:
            raise ValidationError(f"r must be a nonnegative integer, got {self.r!r}")
        if isinstance(self.trunc, int):
            object.__setattr__(self, "trunc", Truncation(self.trunc))

    @property
    def n(self) -> int:
        return (self.N - 1) // 2

    @property
    def M(self) -> int:
        return self.trunc.M


def _link_signs(exponent: int, M: int) -> np.ndarray:
    m = np.arange(M + 1)
    return np.where((m * exponent) % 2 == 0, 1.0, -1.0)


def _chains(N, M, damping, exponent, cos_factor, sin_factor, const):
    """Assemble the residue-chain series.

    ``cos_factor``/``sin_factor`` hold one value per k = 1..n; link m of chain
    k contributes at ``mN + k`` (m >= 0) and ``mN - k`` (m >= 1).
    """
    n = (N - 1) // 2
    k = np.arange(1, n + 1)
    m = np.arange(M + 1)[:, None]
    sign = _link_signs(exponent, M)[:, None]
    cf = np.asarray(cos_factor, dtype=float)[None, :]
    sf = np.asarray(sin_factor, dtype=float)[None, :]

    plus = m * N + k
    amp_plus = sign * sigma_array(plus, damping, N)
    minus = m[1:] * N - k
    amp_minus = sign[1:] * sigma_array(minus, damping, N)

    freqs = np.concatenate([plus.ravel(), minus.ravel()])
    cos = np.concatenate([(amp_plus * cf).ravel(), (amp_minus * cf).ravel()])
    sin = np.concatenate([(amp_plus * sf).ravel(), (-amp_minus * sf).ravel()])
    return HarmonicSeries(const, freqs, cos, sin, truncation=M)


def _coeffs_on(config_I2: int, N: int, samples: SampleSet):
    if samples.grid.variant != config_I2:
        raise GridMismatchError(
            f"samples are on grid {samples.grid.variant}, interpolation grid is {config_I2}"
        )
    if samples.N != N:
        raise GridMismatchError(f"samples have N={samples.N}, configuration has N={N}")
    c = compute_coeffs(samples)
    return c.a[0], np.array(c.a[1:]), np.array(c.b)


def build_spline(config: SplineConfig, samples: SampleSet) -> HarmonicSeries:
    """The interpolating spline St(I1, I2, r, t)."""
    a0, a, b = _coeffs_on(config.I2, config.N, samples)
    hinv = multiplier_table(config.I1, config.I2, config.r, config.N, config.M).inverse()
    return _chains(config.N, config.M, config.r, config.r + 1 + config.I1, a * hinv, b * hinv, a0)


def _kernel_exponent(I1: int, parity: str) -> int:
    if parity == "even":
        return 1 + I1
    if parity == "odd":
        return I1
    raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")


def build_kernel_first_kind(config: SplineConfig, samples: SampleSet) -> HarmonicSeries:
    """KR0 for even r, KR1 for odd r; order-0 damping with the H_k(r) factor."""
    a0, a, b = _coeffs_on(config.I2, config.N, samples)
    parity = "even" if config.r % 2 == 0 else "odd"
    hinv = multiplier_table(config.I1, config.I2, config.r, config.N, config.M).inverse()
    return _chains(config.N, config.M, 0, _kernel_exponent(config.I1, parity), a * hinv, b * hinv, a0)


def build_bspline_first_kind(r: int, N: int, trunc=None) -> HarmonicSeries:
    """BR(r, t): unit-integral, grid-independent B-spline of degree r."""
    N = check_size(N)
    M = _M(trunc)
    ones = np.full((N - 1) // 2, 1.0 / np.pi)
    return _chains(N, M, r, 0, ones, np.zeros_like(ones), 1.0 / np.pi)


def build_kernel_second_kind(I1: int, I2: int, parity: str, samples: SampleSet, trunc=None) -> HarmonicSeries:
    """KR0* (``parity='even'``) or KR1* (``'odd'``); no H factor, no order."""
    I1, I2 = check_variant(I1), check_variant(I2)
    a0, a, b = _coeffs_on(I2, samples.N, samples)
    return _chains(samples.N, _M(trunc), 0, _kernel_exponent(I1, parity), a, b, a0)


def build_bspline_second_kind(I1: int, I2: int, r: int, N: int, trunc=None) -> HarmonicSeries:
    """BR*(I1, I2, r, t): BR with chain k divided by H_k(I1, I2, 1 + r)."""
    N = check_size(N)
    M = _M(trunc)
    hinv = multiplier_table(I1, I2, 1 + r, N, M).inverse() / np.pi
    return _chains(N, M, r, 0, hinv, np.zeros_like(hinv), 1.0 / np.pi)


def _M(trunc) -> int:
    if trunc is None:
        return Truncation().M
    return trunc.M if isinstance(trunc, Truncation) else Truncation(trunc).M


def _smoothing_order(r: int) -> int:
    # r = 0 would pair with BR(-1), whose multipliers never decay
    if r < 1:
        raise ValidationError(f"convolution routes need r >= 1, got r={r}")
    return r - 1


def spline_via_convolution_first(config: SplineConfig, samples: SampleSet) -> HarmonicSeries:
    """St = KR0 * BR(r-1) for even r, KR1 * BR(r-1) for odd r."""
    order = _smoothing_order(config.r)
    kernel = build_kernel_first_kind(config, samples)
    return harmonic.convolve(kernel, build_bspline_first_kind(order, config.N, config.M))


def spline_via_convolution_second(config: SplineConfig, samples: SampleSet) -> HarmonicSeries:
    """St = KR0* * BR*(r-1) for even r, KR1* * BR*(r-1) for odd r."""
    order = _smoothing_order(config.r)
    parity = "even" if config.r % 2 == 0 else "odd"
    kernel = build_kernel_second_kind(config.I1, config.I2, parity, samples, config.M)
    return harmonic.convolve(
        kernel, build_bspline_second_kind(config.I1, config.I2, order, config.N, config.M)
    )


@dataclass(frozen=True)
class IdentityResidual:
    name: str
    residual: float
    tol: float
    claimed: bool = True  # False for the shift-corrected variants

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol


@dataclass(frozen=True)
class IdentityReport:
    N: int
    M: int
    entries: tuple[IdentityResidual, ...]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries if e.claimed)

    def as_dict(self) -> dict:
        return {
            "N": self.N,
            "M": self.M,
            "passed": self.passed,
            "entries": [
                {"name": e.name, "residual": e.residual, "tol": e.tol, "claimed": e.claimed, "passed": e.passed}
                for e in self.entries
            ],
        }


# (reference, members) for the two kernel chains of the second kind.  A member
# is (kernel parity, I1, I2, shifted by +h/2, part of the stated chain).
KERNEL_CHAINS = {
    "even": (
        ("even", 0, 0),
        [("even", 1, 1, False, True), ("odd", 1, 0, False, True), ("odd", 0, 1, True, True),
         ("even", 1, 1, True, False)],
    ),
    "odd": (
        ("odd", 0, 0),
        [("odd", 1, 1, True, True), ("even", 1, 0, False, True), ("even", 0, 1, False, True),
         ("even", 0, 1, True, False)],
    ),
}


def _label(parity: str, I1: int, I2: int, j: int, shifted: bool) -> str:
    name = "KR0*" if parity == "even" else "KR1*"
    order = f"{2 * j}" if parity == "even" else f"{2 * j - 1}"
    arg = "t+h/2" if shifted else "t"
    return f"{name}({I1},{I2},{order},{arg})"


def _both_grids(N: int, samples) -> dict[int, SampleSet]:
    if isinstance(samples, SampleSet):
        pair = {0: samples.reattach(0), 1: samples.reattach(1)}
    else:
        s0, s1 = samples
        if s0.grid.variant != 0 or s1.grid.variant != 1:
            raise GridMismatchError("expected samples on grid 0 and grid 1, in that order")
        pair = {0: s0, 1: s1}
    for s in pair.values():
        if s.N != N:
            raise GridMismatchError(f"samples have N={s.N}, expected N={N}")
    return pair


def identity_residuals(N: int, samples, trunc=None, points: int = 1000) -> dict[tuple, float]:
    """sup-norm residual of every chain member against its chain reference.

    Keys are ``(chain, parity, I1, I2, shifted)``.
    """
    N = check_size(N)
    M = _M(trunc)
    grids = _both_grids(N, samples)
    kernels = {}

    def kernel(parity, I1, I2, shifted):
        key = (parity, I1, I2, shifted)
        if key not in kernels:
            series = build_kernel_second_kind(I1, I2, parity, grids[I2], M)
            kernels[key] = harmonic.shift_pi_fraction(series, 1, N) if shifted else series
        return kernels[key]

    out = {}
    for chain, (ref, members) in KERNEL_CHAINS.items():
        reference = kernel(*ref, False)
        for parity, I1, I2, shifted, _ in members:
            out[(chain, parity, I1, I2, shifted)] = harmonic.sup_diff(
                reference, kernel(parity, I1, I2, shifted), points
            )
    return out


def verify_identities(N: int, samples, r_list=(1, 2), trunc=None, tol: float = 1e-3,
                      points: int = 1000) -> IdentityReport:
    """Measure the kernel equalities of both chains for the orders in ``r_list``.

    ``samples`` is one SampleSet (its values are placed on both grids) or a
    pair ``(grid-0 samples, grid-1 samples)``.  Entries marked
    ``claimed=False`` are the chain members with the h/2 shift applied where
    the stated chain omits it; they are reported but do not affect
    ``passed``.
    """
    M = _M(trunc)
    residuals = identity_residuals(N, samples, M, points)
    js = sorted({(r + 1) // 2 for r in r_list if r >= 1}) or [1]
    entries = []
    for j in js:
        for chain, (ref, members) in KERNEL_CHAINS.items():
            ref_label = _label(*ref, j, False)
            for parity, I1, I2, shifted, claimed in members:
                name = f"[{chain} chain] {ref_label} = {_label(parity, I1, I2, j, shifted)}"
                value = residuals[(chain, parity, I1, I2, shifted)]
                entries.append(IdentityResidual(name, value, tol, claimed))
    for e in entries:
        log.debug("%s residual %.3e", e.name, e.residual)
    return IdentityReport(check_size(N), M, tuple(entries))


def identity_trend(N: int, samples, terms=(100, 1_000, 10_000), points: int = 1000) -> dict[tuple, list[float]]:
    """Residual of every chain member for each truncation order in ``terms``."""
    trend: dict[tuple, list[float]] = {}
    for M in terms:
        for key, value in identity_residuals(N, samples, M, points).items():
            trend.setdefault(key, []).append(value)
    return trend


def nonincreasing_within(values, factor: float = 2.0, floor: float = 1e-12) -> bool:
    """True when no step grows by more than ``factor``; values under ``floor`` count as converged."""
    return all(b <= max(factor * a, floor) for a, b in zip(values, values[1:]))
