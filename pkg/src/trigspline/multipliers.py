"""Riemann convergence multipliers and the interpolation multiplier H_k.

    sigma_x(r) = (sin(pi x / N) / (pi x / N)) ** (1 + r),   sigma_0(r) = 1

    H_k(I1, I2, r) = sigma_k(r)
        + sum_{m>=1} (-1)**(m (r + 1 + I1 + I2)) [sigma_{mN+k}(r) + sigma_{mN-k}(r)]

The infinite sum is cut after ``M`` values of m.  ``sin(pi x / N)`` is taken
after reducing ``x`` modulo ``2N`` in integer arithmetic, which is the aliasing
identity ``sin(pi (mN + j)/N) = (-1)**m sin(pi j / N)`` without the rounding of
a large float argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .grid import check_size, check_variant

DEFAULT_TERMS = 10_000
DEGENERATE_LIMIT = 1e-12


class DegenerateMultiplierError(ArithmeticError):
    """|H_k| is too small to be inverted."""


@dataclass(frozen=True)
class Truncation:
    """Number ``M`` of aliasing terms kept in every infinite series."""

    M: int = DEFAULT_TERMS
    tail_tol: float = 0.0

    def __post_init__(self):
        if isinstance(self.M, bool) or int(self.M) != self.M or self.M < 1:
            raise ValueError(f"truncation order M must be a positive integer, got {self.M!r}")
        if not self.tail_tol >= 0:
            raise ValueError("tail_tol must be >= 0")
        object.__setattr__(self, "M", int(self.M))


def _terms(trunc) -> int:
    return trunc.M if isinstance(trunc, Truncation) else int(trunc)


def sigma_array(x, r: int, N: int) -> np.ndarray:
    """Vectorised ``sigma_x(r)`` for nonnegative integer frequencies ``x``."""
    x = np.asarray(x, dtype=np.int64)
    if r == -1:
        return np.ones(x.shape)
    if r < -1:
        raise ValueError("r must be >= -1")
    rem = np.mod(x, 2 * N)
    s = np.sin(np.pi * rem / N)
    s = np.where(rem % N == 0, 0.0, s)
    arg = np.pi * x / N
    with np.errstate(divide="ignore", invalid="ignore"):
        base = np.where(x == 0, 1.0, s / np.where(x == 0, 1.0, arg))
    return base ** (1 + r)


def sigma(k: int, r: int, N: int) -> float:
    if k < 0:
        raise ValueError("k must be >= 0")
    return float(sigma_array(k, r, N))


def tail_bound(r: int, N: int, M: int) -> float:
    """Upper bound on the magnitude of all H_k terms with m > M.

    Uses |sigma_{mN +- k}(r)| <= (pi (m - 1/2))**-(1+r) and an integral
    comparison.  Infinite for r = 0, where only the paired terms converge.
    """
    p = 1 + r
    if p < 2:
        return math.inf
    return 2.0 * math.pi ** -p * (M - 0.5) ** (1 - p) / (p - 1)


def _chain_terms(k: int, parity: int, r: int, N: int, M: int) -> np.ndarray:
    m = np.arange(1, M + 1, dtype=np.int64)
    sign = np.where((m * (r + 1 + parity)) % 2 == 0, 1.0, -1.0)
    return sign * (sigma_array(m * N + k, r, N) + sigma_array(m * N - k, r, N))


def _paired_sum(first: float, terms: np.ndarray) -> float:
    # group m odd with m+1 before the exactly rounded sum
    if terms.size % 2:
        terms = np.append(terms, 0.0)
    return math.fsum([first, *(terms[0::2] + terms[1::2]).tolist()]) if terms.size else first


@lru_cache(maxsize=512)
def _table(parity: int, r: int, N: int, M: int) -> tuple[float, ...]:
    n = (N - 1) // 2
    return tuple(
        _paired_sum(sigma(k, r, N), _chain_terms(k, parity, r, N, M)) for k in range(1, n + 1)
    )


def interp_multiplier(k: int, I1: int, I2: int, r: int, N: int, trunc=DEFAULT_TERMS) -> float:
    """H_k(I1, I2, r) with ``trunc`` aliasing terms (0 gives just sigma_k(r))."""
    N = check_size(N)
    parity = (check_variant(I1) + check_variant(I2)) % 2
    n = (N - 1) // 2
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}, got {k}")
    if r < 0:
        raise ValueError("r must be >= 0")
    M = _terms(trunc)
    if M < 0:
        raise ValueError("number of terms must be >= 0")
    value = _table(parity, r, N, M)[k - 1]
    if abs(value) < DEGENERATE_LIMIT:
        raise DegenerateMultiplierError(f"H_{k}({I1},{I2},{r}) = {value:g} for N={N}")
    return value


@dataclass(frozen=True)
class MultiplierTable:
    I1: int
    I2: int
    r: int
    N: int
    M: int
    H: tuple[float, ...]  # H_1 ... H_n

    @property
    def tail(self) -> float:
        return tail_bound(self.r, self.N, self.M)

    def inverse(self) -> np.ndarray:
        return 1.0 / np.array(self.H)


def multiplier_table(I1: int, I2: int, r: int, N: int, trunc=DEFAULT_TERMS) -> MultiplierTable:
    N = check_size(N)
    M = _terms(trunc)
    H = tuple(interp_multiplier(k, I1, I2, r, N, M) for k in range(1, (N - 1) // 2 + 1))
    return MultiplierTable(I1, I2, r, N, M, H)
