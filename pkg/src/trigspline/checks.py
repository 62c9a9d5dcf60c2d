"""End-to-end verification suite behind ``trigspline verify``.

Each ``check_*`` function measures one family of properties and returns
:class:`CheckResult` rows; :func:`run_all` strings them together.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import harmonic, oracles
from .grid import attach_samples, grid_step, make_grid, sample_function
from .multipliers import interp_multiplier, sigma_array
from .splinecore import (
    KERNEL_CHAINS,
    SplineConfig,
    build_bspline_first_kind,
    build_bspline_second_kind,
    build_kernel_first_kind,
    build_kernel_second_kind,
    build_spline,
    identity_trend,
    spline_via_convolution_first,
    spline_via_convolution_second,
    verify_identities,
)
from .trigpoly import compute_coeffs, eval_poly

REFERENCE_DATA = (2.0, 1.0, 3.0, 2.0, 4.0, 1.0, 3.0, 1.0, 3.0)
DEFAULT_M = 10_000
GRID_PAIRS = tuple(itertools.product((0, 1), repeat=2))


@dataclass(frozen=True)
class CheckResult:
    criterion: int
    name: str
    measured: float
    tol: float
    passed: bool

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] C{self.criterion} {self.name}: {self.measured:.3e} (tol {self.tol:.0e})"


def _result(criterion, name, measured, tol) -> CheckResult:
    measured = float(measured)
    return CheckResult(criterion, name, measured, tol, bool(measured <= tol))


def data_for(N: int, data=None):
    values = REFERENCE_DATA if data is None else tuple(data)
    return tuple(values[i % len(values)] for i in range(N))


def max_relative_gap(A: harmonic.HarmonicSeries, B: harmonic.HarmonicSeries) -> float:
    """Largest per-amplitude relative difference; inf if the frequency sets differ."""
    if not np.array_equal(A.freqs, B.freqs):
        return math.inf
    x = np.concatenate([[A.const], A.cos, A.sin])
    y = np.concatenate([[B.const], B.cos, B.sin])
    scale = np.maximum(np.abs(x), np.abs(y))
    gap = np.abs(x - y)
    with np.errstate(invalid="ignore", divide="ignore"):
        rel = np.where(scale > 0, gap / np.where(scale > 0, scale, 1.0), 0.0)
    return float(rel.max(initial=0.0))


def _test_functions():
    return {"cos(t)": np.cos, "sin(2t)": lambda t: np.sin(2 * t)}


def check_interpolation(M=DEFAULT_M, data=None, orders=range(6), sizes=(5, 9, 13)):
    results = []
    for N in sizes:
        sources = {"data": lambda I2, N=N: attach_samples(make_grid(I2, N), data_for(N, data))}
        for label, func in _test_functions().items():
            sources[label] = lambda I2, N=N, func=func: sample_function(func, I2, N)
        for (label, source), (I1, I2) in itertools.product(sources.items(), GRID_PAIRS):
            samples = source(I2)
            nodes = samples.grid.nodes
            worst = 0.0
            for r in orders:
                st = build_spline(SplineConfig(I1, I2, r, N, M), samples)
                worst = max(worst, float(np.max(np.abs(harmonic.evaluate(st, nodes) - samples.as_array()))))
            results.append(_result(1, f"interpolation {label} N={N} I1={I1} I2={I2}", worst, 1e-8))
    return results


def _trapezoid_integral(series, points=4096) -> float:
    return 2 * math.pi * float(np.mean(harmonic.sample(series, points)))


def check_normalization(M=DEFAULT_M, N=9):
    results = []
    for r in range(4):
        objects = {f"BR({r})": build_bspline_first_kind(r, N, M)}
        for I1, I2 in GRID_PAIRS:
            objects[f"BR*({I1},{I2},{r})"] = build_bspline_second_kind(I1, I2, r, N, M)
        for name, series in objects.items():
            results.append(_result(2, f"{name} coefficient integral", abs(harmonic.integrate_period(series) - 1), 1e-14))
            results.append(_result(2, f"{name} 4096-point trapezoid", abs(_trapezoid_integral(series) - 1), 1e-6))
    return results


def check_convolution(M=DEFAULT_M, data=None, N=9, quad_M=20, quad_points=64):
    results = []
    for (I1, I2), r in itertools.product(GRID_PAIRS, (1, 2, 3)):
        cfg = SplineConfig(I1, I2, r, N, M)
        samples = attach_samples(make_grid(I2, N), data_for(N, data))
        direct = build_spline(cfg, samples)
        results.append(_result(3, f"second kind route ({I1},{I2},{r})",
                               max_relative_gap(direct, spline_via_convolution_second(cfg, samples)), 1e-10))
        results.append(_result(3, f"first kind route ({I1},{I2},{r})",
                               max_relative_gap(direct, spline_via_convolution_first(cfg, samples)), 1e-10))

    # trapezoid against the coefficient product, at a band limit the quadrature can resolve
    t = 2 * math.pi * np.arange(quad_points) / quad_points
    pairs = {}
    for (I1, I2), r in itertools.product(GRID_PAIRS, (1, 2, 3)):
        samples = attach_samples(make_grid(I2, N), data_for(N, data))
        cfg = SplineConfig(I1, I2, r, N, quad_M)
        parity = "even" if r % 2 == 0 else "odd"
        pairs[f"KR*BR ({I1},{I2},{r})"] = (build_kernel_first_kind(cfg, samples),
                                          build_bspline_first_kind(r - 1, N, quad_M))
        pairs[f"KR**BR* ({I1},{I2},{r})"] = (build_kernel_second_kind(I1, I2, parity, samples, quad_M),
                                            build_bspline_second_kind(I1, I2, r - 1, N, quad_M))
    for name, (A, B) in pairs.items():
        series = harmonic.convolve(A, B)
        points = 2 * (A.max_freq + B.max_freq) + 2
        quad = oracles.quadrature_convolve(A, B, t, points)
        results.append(_result(3, f"quadrature {name} M={quad_M}",
                               np.max(np.abs(quad - harmonic.evaluate(series, t))), 1e-9))
    return results


def check_identities(M=DEFAULT_M, data=None, N=9, trend_terms=(100, 1_000, 10_000), floor=1e-12):
    samples = attach_samples(make_grid(0, N), data_for(N, data))
    report = verify_identities(N, samples, (1, 2), M)
    results = [_result(4, e.name, e.residual, e.tol) for e in report.entries if e.claimed]
    claimed = {
        (chain, *member[:4])
        for chain, (_, members) in KERNEL_CHAINS.items()
        for member in members
        if member[4]
    }
    for key, values in identity_trend(N, samples, trend_terms).items():
        if key not in claimed:
            continue
        chain, parity, I1, I2, shifted = key
        growth = max((b / max(a, floor / 2) for a, b in zip(values, values[1:])), default=0.0)
        label = f"trend [{chain} chain] {parity} ({I1},{I2}){' +h/2' if shifted else ''} M={list(trend_terms)}"
        results.append(_result(4, label, growth, 2.0))
    return results


def _symmetric_points(points=4096):
    t = harmonic.sample_points(points)
    return t, np.where(t > math.pi, t - 2 * math.pi, t)


def check_bspline_coincidence(M=DEFAULT_M, N=9, points=4096):
    h = grid_step(N)
    t, centred = _symmetric_points(points)
    results = []
    for r, tol in ((1, 1e-3), (3, 1e-4)):
        gap = np.abs(harmonic.sample(build_bspline_first_kind(r, N, M), points)
                     - oracles.eval_cardinal_bspline(oracles.CardinalBSpline(r, h), centred))
        results.append(_result(5, f"BR({r}) vs degree-{r} cardinal B-spline", gap.max(), tol))
    keep = np.abs(np.abs(centred) - h / 2) > h / 4
    gap = np.abs(harmonic.sample(build_bspline_first_kind(0, N, M), points)
                 - oracles.eval_cardinal_bspline(oracles.CardinalBSpline(0, h), centred))
    results.append(_result(5, "BR(0) vs box outside +-h/4 of the jumps", gap[keep].max(), 1e-2))
    return results


def check_polynomial_splines(M=DEFAULT_M, data=None, N=9, points=4096):
    samples = attach_samples(make_grid(0, N), data_for(N, data))
    t = harmonic.sample_points(points)
    results = []
    for r, kind in ((1, "linear"), (3, "cubic")):
        st = harmonic.sample(build_spline(SplineConfig(0, 0, r, N, M), samples), points)
        oracle = oracles.build_periodic_spline(kind, samples)(t)
        results.append(_result(6, f"St(0,0,{r}) vs periodic {kind} spline", np.abs(st - oracle).max(), 1e-3))
    return results


def check_multipliers(sizes=(5, 9, 13), M=DEFAULT_M):
    x = np.arange(1, 201)
    worst = 0.0
    for N in sizes:
        for alpha, beta in itertools.product(range(-1, 5), repeat=2):
            lhs = sigma_array(x, alpha, N) * sigma_array(x, beta, N)
            rhs = sigma_array(x, alpha + beta + 1, N)
            scale = np.where(rhs != 0, np.abs(rhs), 1.0)
            worst = max(worst, float(np.max(np.abs(lhs - rhs) / scale)))
    results = [_result(7, "sigma(a) sigma(b) = sigma(a+b+1)", worst, 1e-14)]
    mismatches = 0
    for N in sizes:
        for r, k in itertools.product(range(6), range(1, (N - 1) // 2 + 1)):
            mismatches += interp_multiplier(k, 0, 1, r, N, M) != interp_multiplier(k, 1, 0, r, N, M)
            mismatches += interp_multiplier(k, 0, 0, r, N, M) != interp_multiplier(k, 1, 1, r, N, M)
    results.append(_result(7, "H parity symmetry (exact)", mismatches, 0))
    return results


def check_constant(M=DEFAULT_M, N=9, c=3.0, points=1000):
    results = []
    const = harmonic.HarmonicSeries.constant(c)
    for I1, I2 in GRID_PAIRS:
        samples = attach_samples(make_grid(I2, N), [c] * N)
        objects = {}
        for r in range(4):
            cfg = SplineConfig(I1, I2, r, N, M)
            objects[f"St({I1},{I2},{r})"] = build_spline(cfg, samples)
            objects[f"KR({I1},{I2},{r})"] = build_kernel_first_kind(cfg, samples)
            if r >= 1:
                objects[f"conv1({I1},{I2},{r})"] = spline_via_convolution_first(cfg, samples)
                objects[f"conv2({I1},{I2},{r})"] = spline_via_convolution_second(cfg, samples)
        for parity in ("even", "odd"):
            objects[f"KR*({I1},{I2},{parity})"] = build_kernel_second_kind(I1, I2, parity, samples, M)
        worst = max(harmonic.sup_diff(s, const, points) for s in objects.values())
        results.append(_result(8, f"constant data ({I1},{I2}): St, kernels, convolutions", worst, 1e-12))
    return results


def check_discrete_transform(sizes=(5, 9, 13), seed=0):
    results = []
    rng = np.random.default_rng(seed)
    for N, variant in itertools.product(sizes, (0, 1)):
        n = (N - 1) // 2
        worst = 0.0
        for k in range(1, n + 1):
            for kind in ("cos", "sin"):
                func = (lambda t, k=k: np.cos(k * t)) if kind == "cos" else (lambda t, k=k: np.sin(k * t))
                c = compute_coeffs(sample_function(func, variant, N))
                expect_a = np.zeros(n + 1)
                expect_b = np.zeros(n)
                (expect_a if kind == "cos" else expect_b)[k if kind == "cos" else k - 1] = 1.0
                worst = max(worst, np.abs(np.array(c.a) - expect_a).max(), np.abs(np.array(c.b) - expect_b).max())
        results.append(_result(9, f"unit coefficients N={N} grid {variant}", worst, 1e-12))
        interp = 0.0
        for values in (data_for(N), *rng.normal(size=(5, N))):
            samples = attach_samples(make_grid(variant, N), values)
            fit = eval_poly(compute_coeffs(samples), samples.grid.nodes)
            interp = max(interp, np.abs(fit - samples.as_array()).max())
        results.append(_result(9, f"eval_poly interpolates N={N} grid {variant}", interp, 1e-10))
    return results


def run_all(M=DEFAULT_M, data=None, N=9) -> list[CheckResult]:
    """Every check; ``data`` replaces the default nine-point data set."""
    trend = tuple(sorted({100, 1_000, M, 10_000}))
    return [
        *check_interpolation(M, data),
        *check_normalization(M, N),
        *check_convolution(M, data, N),
        *check_identities(M, data, N, trend_terms=trend),
        *check_bspline_coincidence(M, N),
        *check_polynomial_splines(M, data, N),
        *check_multipliers(M=M),
        *check_constant(M, N),
        *check_discrete_transform(),
    ]


def as_json(results) -> list[dict]:
    return [asdict(r) for r in results]
