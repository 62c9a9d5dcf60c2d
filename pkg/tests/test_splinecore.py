import itertools
import math

import numpy as np
import pytest

from trigspline import harmonic, oracles
from trigspline.checks import max_relative_gap
from trigspline.grid import ValidationError, attach_samples, grid_step, make_grid, sample_function
from trigspline.multipliers import interp_multiplier, sigma
from trigspline.splinecore import (
    GridMismatchError,
    SplineConfig,
    build_bspline_first_kind,
    build_bspline_second_kind,
    build_kernel_first_kind,
    build_kernel_second_kind,
    build_spline,
    identity_residuals,
    nonincreasing_within,
    spline_via_convolution_first,
    spline_via_convolution_second,
    verify_identities,
)
from trigspline.trigpoly import compute_coeffs

from conftest import REF

M = 10_000
PAIRS = list(itertools.product((0, 1), repeat=2))


def data_on(I2, N=9, values=REF):
    return attach_samples(make_grid(I2, N), [values[i % len(values)] for i in range(N)])


def test_config_validation():
    with pytest.raises(ValidationError):
        SplineConfig(0, 0, -1, 9)
    with pytest.raises(ValidationError):
        SplineConfig(0, 2, 1, 9)
    with pytest.raises(ValidationError):
        SplineConfig(0, 0, 1, 10)
    assert SplineConfig(0, 1, 2, 9, 50).M == 50


def test_grid_mismatch(ref0):
    with pytest.raises(GridMismatchError):
        build_spline(SplineConfig(0, 1, 1, 9), ref0)
    with pytest.raises(GridMismatchError):
        build_spline(SplineConfig(0, 0, 1, 5), ref0)


@pytest.mark.parametrize("I1,I2", PAIRS)
def test_constant_samples(I1, I2):
    s = attach_samples(make_grid(I2, 9), [2.0] * 9)
    for r in range(3):
        st = build_spline(SplineConfig(I1, I2, r, 9, 100), s)
        assert st.const == pytest.approx(4.0)
        assert max(np.abs(st.cos).max(initial=0), np.abs(st.sin).max(initial=0)) < 1e-14
        kr = build_kernel_first_kind(SplineConfig(I1, I2, r, 9, 100), s)
        assert harmonic.sup_diff(kr, harmonic.HarmonicSeries.constant(2.0), 200) < 1e-12
    for parity in ("even", "odd"):
        kr = build_kernel_second_kind(I1, I2, parity, s, 100)
        assert harmonic.sup_diff(kr, harmonic.HarmonicSeries.constant(2.0), 200) < 1e-12


def test_frequency_layout():
    br = build_bspline_first_kind(1, 9, 3)
    expected = sorted({k for k in range(1, 9 * 3 + 5) if k % 9} - set(range(9 * 3 + 5, 100)))
    assert br.freqs.tolist() == expected
    assert br.max_freq == 3 * 9 + 4
    assert br.truncation == 3


@pytest.mark.parametrize("I1,I2", PAIRS)
@pytest.mark.parametrize("r", range(4))
def test_interpolates_reference_data(I1, I2, r):
    s = data_on(I2)
    st = build_spline(SplineConfig(I1, I2, r, 9, M), s)
    assert np.abs(st(s.grid.nodes) - np.array(REF)).max() <= 1e-8


def test_amplitudes_follow_definition(ref1):
    """Spot-check individual coefficients against a hand-assembled formula."""
    I1, I2, r, N, Mt = 1, 1, 2, 9, 40
    st = build_spline(SplineConfig(I1, I2, r, N, Mt), ref1).terms
    c = compute_coeffs(ref1)
    for k, m in [(1, 0), (2, 3), (4, 17), (3, 40)]:
        h = interp_multiplier(k, I1, I2, r, N, Mt)
        sign = (-1) ** (m * (r + 1 + I1))
        up = m * N + k
        assert st[up][0] == pytest.approx(sign * sigma(up, r, N) * c.a[k] / h, rel=1e-13)
        assert st[up][1] == pytest.approx(sign * sigma(up, r, N) * c.b[k - 1] / h, rel=1e-13)
        if m:
            down = m * N - k
            assert st[down][0] == pytest.approx(sign * sigma(down, r, N) * c.a[k] / h, rel=1e-13)
            assert st[down][1] == pytest.approx(-sign * sigma(down, r, N) * c.b[k - 1] / h, rel=1e-13)


@pytest.mark.parametrize("variant", [0, 1])
def test_degree_reproduction(variant):
    N, r, Mt = 9, 3, 200
    s = sample_function(lambda t: 0.5 + math.cos(2 * t) - 0.7 * math.sin(3 * t), variant, N)
    st = build_spline(SplineConfig(0, variant, r, N, Mt), s).terms
    h2 = interp_multiplier(2, 0, variant, r, N, Mt)
    h3 = interp_multiplier(3, 0, variant, r, N, Mt)
    assert st[2][0] == pytest.approx(sigma(2, r, N) / h2, rel=1e-12)
    assert st[3][1] == pytest.approx(-0.7 * sigma(3, r, N) / h3, rel=1e-12)
    assert abs(st[1][0]) < 1e-14 and abs(st[4][1]) < 1e-14


def test_linear_spline_oracle(ref0):
    st = build_spline(SplineConfig(0, 0, 1, 9, M), ref0)
    line = oracles.build_periodic_spline("linear", ref0)
    t = harmonic.sample_points(2000)
    assert np.abs(harmonic.sample(st, 2000) - line(t)).max() <= 1e-3


def test_kernel_sign_patterns_match_spline_for_even_r(ref0):
    for r in (0, 2, 4):
        cfg = SplineConfig(1, 0, r, 9, 30)
        kr = build_kernel_first_kind(cfg, ref0)
        st = build_spline(cfg, ref0)
        assert np.array_equal(np.sign(kr.cos), np.sign(st.cos))
        assert np.array_equal(np.sign(kr.sin), np.sign(st.sin))


def test_first_kind_kernel_via_convolution(ref0):
    cfg = SplineConfig(0, 0, 2, 9, M)
    kr = build_kernel_first_kind(cfg, ref0)
    rebuilt = harmonic.convolve(kr, build_bspline_first_kind(1, 9, M))
    assert max_relative_gap(rebuilt, build_spline(cfg, ref0)) <= 1e-10


@pytest.mark.parametrize("r", range(4))
def test_bspline_first_kind(r):
    br = build_bspline_first_kind(r, 9, M)
    assert harmonic.integrate_period(br) == pytest.approx(1.0, abs=1e-14)
    assert len(br.sin) and not np.any(br.sin)
    terms = br.terms
    # nonincreasing |amplitude| along each chain k, N-k, N+k, 2N-k, ...
    for k in range(1, 5):
        chain = [k] + [w for m in range(1, 50) for w in (m * 9 - k, m * 9 + k)]
        amps = np.abs([terms[w][0] for w in chain])
        assert np.all(np.diff(amps) <= 0)


def test_bspline_hat_and_box():
    h = grid_step(9)
    t = harmonic.sample_points(4096)
    centred = np.where(t > math.pi, t - 2 * math.pi, t)
    hat = oracles.eval_cardinal_bspline(oracles.CardinalBSpline(1, h), centred)
    assert np.abs(harmonic.sample(build_bspline_first_kind(1, 9, M), 4096) - hat).max() <= 1e-3
    box = build_bspline_first_kind(0, 9, M)
    assert box(math.pi) == pytest.approx(0.0, abs=1e-3)
    assert box(0.0) == pytest.approx(9 / (2 * math.pi), abs=2e-2)


@pytest.mark.parametrize("I1,I2", PAIRS)
@pytest.mark.parametrize("r", range(3))
def test_bspline_second_kind(I1, I2, r):
    brs = build_bspline_second_kind(I1, I2, r, 9, 500)
    assert harmonic.integrate_period(brs) == pytest.approx(1.0, abs=1e-14)
    assert not np.any(brs.sin)


def test_bspline_second_kind_grid_symmetry():
    for r in range(3):
        assert build_bspline_second_kind(0, 0, r, 9, 500) == build_bspline_second_kind(1, 1, r, 9, 500)
        assert build_bspline_second_kind(1, 0, r, 9, 500) == build_bspline_second_kind(0, 1, r, 9, 500)


@pytest.mark.parametrize("I1,I2", PAIRS)
@pytest.mark.parametrize("r", [1, 2, 3])
def test_convolution_routes(I1, I2, r):
    cfg = SplineConfig(I1, I2, r, 9, M)
    s = data_on(I2)
    direct = build_spline(cfg, s)
    first = spline_via_convolution_first(cfg, s)
    second = spline_via_convolution_second(cfg, s)
    assert max_relative_gap(direct, first) <= 1e-10
    assert max_relative_gap(direct, second) <= 1e-10
    assert max_relative_gap(first, second) <= 1e-10


def test_convolution_routes_reject_r0(ref0):
    with pytest.raises(ValidationError):
        spline_via_convolution_first(SplineConfig(0, 0, 0, 9), ref0)
    with pytest.raises(ValidationError):
        spline_via_convolution_second(SplineConfig(0, 0, 0, 9), ref0)


def test_convolution_constant():
    s = attach_samples(make_grid(0, 9), [1.25] * 9)
    out = spline_via_convolution_second(SplineConfig(0, 0, 2, 9, 200), s)
    assert harmonic.sup_diff(out, harmonic.HarmonicSeries.constant(1.25), 300) < 1e-12


def test_second_kind_kernel_ignores_order(ref0):
    # no r argument at all; same object for every order of the same parity
    a = build_kernel_second_kind(0, 0, "even", ref0, 100)
    assert a == build_kernel_second_kind(0, 0, "even", ref0, 100)
    with pytest.raises(ValueError):
        build_kernel_second_kind(0, 0, "other", ref0, 100)


def test_identity_structure(ref0):
    """Members sharing sign pattern and data coincide coefficient for coefficient."""
    p1 = ref0.reattach(1)
    assert build_kernel_second_kind(0, 0, "even", ref0, 300) == build_kernel_second_kind(1, 0, "odd", ref0, 300)
    assert build_kernel_second_kind(1, 1, "even", p1, 300) == build_kernel_second_kind(0, 1, "odd", p1, 300)
    assert build_kernel_second_kind(0, 1, "even", p1, 300) == build_kernel_second_kind(1, 1, "odd", p1, 300)


def test_verify_identities_constant():
    s = attach_samples(make_grid(0, 9), [3.0] * 9)
    report = verify_identities(9, s, (1, 2), 1000)
    assert report.passed
    assert max(e.residual for e in report.entries) <= 1e-12


def test_verify_identities_mismatched_n(ref0):
    with pytest.raises(GridMismatchError):
        verify_identities(9, (ref0, attach_samples(make_grid(1, 5), [1] * 5)), (1,), 100)
    with pytest.raises(GridMismatchError):
        verify_identities(5, ref0, (1,), 100)


def test_verify_identities_reference_data(ref0):
    report = verify_identities(9, ref0, (1, 2), M)
    by_name = {e.name: e for e in report.entries}
    # shifted members and the grid-0 members hold to rounding
    assert by_name["[even chain] KR0*(0,0,2,t) = KR1*(0,1,1,t+h/2)"].residual <= 1e-12
    assert by_name["[even chain] KR0*(0,0,2,t) = KR1*(1,0,1,t)"].residual == 0.0
    assert by_name["[odd chain] KR1*(0,0,1,t) = KR1*(1,1,1,t+h/2)"].residual <= 1e-12
    assert by_name["[odd chain] KR1*(0,0,1,t) = KR0*(1,0,2,t)"].residual == 0.0
    assert by_name["[even chain] KR0*(0,0,2,t) = KR0*(1,1,2,t+h/2)"].residual <= 1e-12
    assert not by_name["[even chain] KR0*(0,0,2,t) = KR0*(1,1,2,t+h/2)"].claimed
    # the claimed members without a shift are off by the kernel's jump size
    assert by_name["[even chain] KR0*(0,0,2,t) = KR0*(1,1,2,t)"].residual > 1.0
    assert by_name["[odd chain] KR1*(0,0,1,t) = KR0*(0,1,2,t)"].residual > 1.0


def test_nonincreasing_within():
    assert nonincreasing_within([1.0, 0.9, 1.5])
    assert not nonincreasing_within([1.0, 2.5])
    assert nonincreasing_within([1e-15, 2e-15, 3e-15])
