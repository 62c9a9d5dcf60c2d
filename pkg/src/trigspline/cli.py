"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or validation error,
3 numerical degeneracy (an interpolation multiplier too close to zero).
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path


from . import checks, harmonic
from .grid import (
    GridSizeError,
    GridVariantError,
    ValidationError,
    attach_samples,
    make_grid,
    sample_function,
)
from .multipliers import DegenerateMultiplierError, Truncation
from .splinecore import (
    SplineConfig,
    build_bspline_first_kind,
    build_bspline_second_kind,
    build_kernel_first_kind,
    build_kernel_second_kind,
    build_spline,
    identity_trend,
)
from .trigpoly import compute_coeffs, eval_poly

log = logging.getLogger("trigspline")

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3

NAMED_FUNCTIONS = {
    "constant": lambda t: 1.0,
    "cos": math.cos,
    "sin2": lambda t: math.sin(2 * t),
    # smooth periodic sawtooth: 2 atan(sin t / (1.5 + cos t))
    "ramp": lambda t: 2.0 * math.atan2(math.sin(t), 1.5 + math.cos(t)),
}


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=int, default=None, help="odd number of grid nodes (default 9)")
    common.add_argument("--i1", type=int, default=0, help="stitching grid 0|1")
    common.add_argument("--i2", type=int, default=0, help="interpolation grid 0|1")
    common.add_argument("--r", type=int, default=1, help="spline order")
    common.add_argument("--terms", type=int, default=checks.DEFAULT_M, help="aliasing terms M per chain")
    common.add_argument("--samples", type=int, default=1024, help="curve points per period")
    common.add_argument("--out", default=None, help="output path (directory for figure)")
    source = common.add_mutually_exclusive_group()
    source.add_argument("--data", help="comma separated sample values")
    source.add_argument("--data-file", help='JSON file {"N": int, "values": [...]}')
    source.add_argument("--fn", choices=sorted(NAMED_FUNCTIONS), help="sample a named test function")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="trigspline", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="interpolating spline St")
    kernel = sub.add_parser("kernel", parents=[common], help="kernel of the first or second kind")
    kernel.add_argument("--kind", choices=("first", "second"), default="first")
    kernel.add_argument("--parity", choices=("even", "odd"), default=None,
                        help="second kind only; defaults to the parity of --r")
    bspline = sub.add_parser("bspline", parents=[common], help="B-spline BR or BR*")
    bspline.add_argument("--kind", choices=("first", "second"), default="first")
    sub.add_parser("verify", parents=[common], help="run the verification suite")
    figure = sub.add_parser("figure", parents=[common], help="curve data for one figure")
    figure.add_argument("figure_id", nargs="?", type=int)
    figure.add_argument("--figure", dest="figure_flag", type=int)
    return parser


def _values(args, required: bool):
    if args.data is not None:
        try:
            values = [float(v) for v in args.data.split(",") if v.strip()]
        except ValueError as exc:
            raise UsageError(f"--data: {exc}") from None
        return values, args.N or len(values)
    if args.data_file is not None:
        try:
            payload = json.loads(Path(args.data_file).read_text())
            values, N = [float(v) for v in payload["values"]], int(payload["N"])
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"--data-file: {exc}") from None
        if args.N is not None and args.N != N:
            raise UsageError(f"--data-file has N={N} but --N is {args.N}")
        return values, N
    if args.fn is not None:
        return args.fn, args.N or 9
    if required:
        raise UsageError("one of --data, --data-file or --fn is required")
    return None, args.N or 9


def _samples(args, variant: int):
    values, N = _values(args, required=True)
    if isinstance(values, str):
        return sample_function(NAMED_FUNCTIONS[values], variant, N)
    if len(values) != N:
        raise UsageError(f"--N is {N} but {len(values)} values were given")
    return attach_samples(make_grid(variant, N), values)


def write_curve(series: harmonic.HarmonicSeries, samples: int, out) -> None:
    """CSV ``t,value`` at t_i = 2 pi i / samples plus a JSON sidecar of the series."""
    t = harmonic.sample_points(samples)
    values = harmonic.sample(series, samples)
    _write_csv(t, values, out)
    if out is not None:
        Path(out).with_suffix(".json").write_text(series.to_json())


def _write_csv(t, values, out) -> None:
    lines = ["t,value"] + [f"{a:.17g},{b:.17g}" for a, b in zip(t, values)]
    text = "\n".join(lines) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def _config(args) -> SplineConfig:
    _, N = _values(args, required=False)
    return SplineConfig(args.i1, args.i2, args.r, N, Truncation(args.terms))


def run_build(args) -> int:
    cfg = _config(args)
    write_curve(build_spline(cfg, _samples(args, cfg.I2)), args.samples, args.out)
    return EXIT_OK


def run_kernel(args) -> int:
    cfg = _config(args)
    samples = _samples(args, cfg.I2)
    if args.kind == "first":
        series = build_kernel_first_kind(cfg, samples)
    else:
        parity = args.parity or ("even" if cfg.r % 2 == 0 else "odd")
        series = build_kernel_second_kind(cfg.I1, cfg.I2, parity, samples, cfg.trunc)
    write_curve(series, args.samples, args.out)
    return EXIT_OK


def run_bspline(args) -> int:
    cfg = _config(args)
    if args.kind == "first":
        series = build_bspline_first_kind(cfg.r, cfg.N, cfg.trunc)
    else:
        series = build_bspline_second_kind(cfg.I1, cfg.I2, cfg.r, cfg.N, cfg.trunc)
    write_curve(series, args.samples, args.out)
    return EXIT_OK


def _figure_curves(fig: int, samples_for, N: int, M: int):
    """Yield (file stem, curve values or series) for one figure."""
    if fig == 1:
        for I1, I2 in checks.GRID_PAIRS:
            s = samples_for(I2)
            yield f"St_I1{I1}_I2{I2}_r1", build_spline(SplineConfig(I1, I2, 1, N, M), s)
            yield f"Tn_I1{I1}_I2{I2}_r1", compute_coeffs(s)
    elif fig == 2:
        for r in range(4):
            yield f"BR_r{r}", build_bspline_first_kind(r, N, M)
    elif fig in (3, 4, 5, 6):
        I2 = 0 if fig in (3, 4) else 1
        even = fig in (3, 5)
        for j in (1, 2, 3):
            r = 2 * j if even else 2 * j - 1
            cfg = SplineConfig(0, I2, r, N, M)
            s = samples_for(I2)
            yield f"St_I10_I2{I2}_r{r}", build_spline(cfg, s)
            yield f"{'KR0' if even else 'KR1'}_I10_I2{I2}_r{r}", build_kernel_first_kind(cfg, s)
    elif fig in (7, 8):
        I1 = 0 if fig == 7 else 1
        for r in range(4):
            yield f"BRstar_I1{I1}_I20_r{r}", build_bspline_second_kind(I1, 0, r, N, M)
    elif fig == 9:
        s = samples_for(0)
        yield "KR0star_I10_I20_even", build_kernel_second_kind(0, 0, "even", s, M)
        yield "KR1star_I10_I20_odd", build_kernel_second_kind(0, 0, "odd", s, M)
    else:
        raise UsageError(f"unknown figure id {fig}; expected 1..9")


def run_figure(args) -> int:
    fig = args.figure_id if args.figure_id is not None else args.figure_flag
    if fig is None:
        raise UsageError("figure id required")
    if not 1 <= fig <= 9:
        raise UsageError(f"unknown figure id {fig}; expected 1..9")
    values, N = _values(args, required=False)
    if values is None:
        values, N = list(checks.REFERENCE_DATA), args.N or 9

    def samples_for(variant):
        if isinstance(values, str):
            return sample_function(NAMED_FUNCTIONS[values], variant, N)
        if len(values) != N:
            raise UsageError(f"--N is {N} but {len(values)} values were given")
        return attach_samples(make_grid(variant, N), values)

    outdir = Path(args.out or f"figure{fig}")
    outdir.mkdir(parents=True, exist_ok=True)
    t = harmonic.sample_points(args.samples)
    for stem, obj in _figure_curves(fig, samples_for, N, args.terms):
        path = outdir / f"fig{fig}_{stem}.csv"
        if isinstance(obj, harmonic.HarmonicSeries):
            write_curve(obj, args.samples, path)
        else:
            _write_csv(t, eval_poly(obj, t), path)
        log.info("wrote %s", path)
    return EXIT_OK


def run_verify(args) -> int:
    values, N = _values(args, required=False)
    if isinstance(values, str):
        func = NAMED_FUNCTIONS[values]
        values = [func(t) for t in make_grid(0, N).nodes]
    results = checks.run_all(M=args.terms, data=values, N=N)
    width = max(len(r.name) for r in results)
    print(f"{'check':<{width}}  {'residual':>10}  {'tol':>7}  result")
    for r in results:
        print(f"{r.name:<{width}}  {r.measured:>10.3e}  {r.tol:>7.0e}  {'pass' if r.passed else 'FAIL'}")

    data = values if values is not None else checks.REFERENCE_DATA
    terms = tuple(sorted({100, 1_000, args.terms, 10_000}))
    trend = identity_trend(N, attach_samples(make_grid(0, N), checks.data_for(N, data)), terms)
    print("\nkernel identity residual vs truncation M")
    print(f"{'member':<28}" + "".join(f"{m:>12}" for m in terms))
    for (chain, parity, I1, I2, shifted), row in trend.items():
        label = f"[{chain}] {parity} ({I1},{I2}){' +h/2' if shifted else ''}"
        print(f"{label:<28}" + "".join(f"{v:>12.3e}" for v in row))

    failed = sum(not r.passed for r in results)
    print(f"\nM = {args.terms}; {len(results) - failed} passed, {failed} failed")
    report = {
        "M": args.terms,
        "N": N,
        "checks": checks.as_json(results),
        "identity_trend": [
            {"chain": k[0], "parity": k[1], "I1": k[2], "I2": k[3], "shifted": k[4], "terms": list(terms), "residuals": v}
            for k, v in trend.items()
        ],
    }
    Path(args.out or "verify_report.json").write_text(json.dumps(report, indent=2))
    return EXIT_FAILED if failed else EXIT_OK


COMMANDS = {
    "build": run_build,
    "kernel": run_kernel,
    "bspline": run_bspline,
    "verify": run_verify,
    "figure": run_figure,
}


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.samples < 1:
        print("error: --samples must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ValidationError, ValueError) as exc:
        flag = {GridSizeError: "--N: ", GridVariantError: "--i1/--i2: "}.get(type(exc), "")
        print(f"error: {flag}{exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateMultiplierError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
