"""Command-line interface.

Subcommands: ``deconvolve``, ``simulate``, ``table1``, ``rates``,
``compare``, ``nu-estimate``. Exit codes: 0 success, 1 bad usage or
configuration, 2 numerical failure (ill-posed kernel, reconstruction
residue). Each file-producing command writes a flat ``key=value`` manifest
echoing the fully resolved parameters; ``funcdeconv --from-manifest PATH``
replays a manifest and reproduces its outputs byte for byte.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .estimator import FUNCTIONAL, SEPARATE, config_for, deconvolve
from .exceptions import FuncDeconvError, IllPosedKernel, NumericalError
from .gridio import load_grid, save_grid
from .rates import BesovBall, compare_strategies, exponent_2d, exponent_multi
from .simlab import (
    SimConfig,
    run_mise,
    signal_names,
    slope_files,
    table1,
    write_table_csv,
)
from .spectra import ObservationGrid, estimate_nu, kernel_spectrum


def _rational(text: str):
    if text.lower() in {"inf", "infinity"}:
        return math.inf
    return Fraction(text)


def _auto_float(text: str):
    return None if text.lower() == "auto" else float(text)


def _auto_int(text: str):
    return None if text.lower() == "auto" else int(text)


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_manifest(path, command: str, pairs: dict) -> None:
    with open(path, "w") as fh:
        fh.write(f"command={command}\n")
        for key, value in pairs.items():
            if value is None:
                continue
            fh.write(f"{key}={_fmt(value)}\n")


def _argv_from_manifest(path) -> list:
    command = None
    argv = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            if key == "command":
                command = value
            elif key == "s2":
                argv.append("--s2")
                argv.extend(value.split(","))
            else:
                argv.extend([f"--{key}", value])
    if command is None:
        raise FuncDeconvError(f"{path}: manifest has no 'command' line")
    return [command] + argv


def _manifest_path(args, default_anchor) -> str | None:
    if args.manifest:
        return args.manifest
    if default_anchor:
        return str(default_anchor) + ".manifest"
    return None


# --- subcommand implementations -------------------------------------------

def _coeff_rows(coeffs):
    """Flatten hyperbolic coefficients to (j, k, jprime, kprime, re, im, kept)."""
    tslices = coeffs.time_slices()
    kept = coeffs.kept if coeffs.kept is not None else np.ones(
        coeffs.entries.shape, dtype=bool)
    if coeffs.mode == FUNCTIONAL:
        sslices = coeffs.spatial_slices()
        for jp, ss in sslices.items():
            for j, ts in tslices.items():
                block = coeffs.entries[ss, ts]
                kp_block = kept[ss, ts]
                for kprime in range(block.shape[0]):
                    for k in range(block.shape[1]):
                        v = block[kprime, k]
                        yield (j, k, jp, kprime, v.real, v.imag,
                               int(kp_block[kprime, k]))
    else:
        for j, ts in tslices.items():
            block = coeffs.entries[:, ts]
            kp_block = kept[:, ts]
            for l in range(block.shape[0]):
                for k in range(block.shape[1]):
                    v = block[l, k]
                    yield (j, k, -1, l, v.real, v.imag, int(kp_block[l, k]))


def _write_coeffs_csv(path, coeffs) -> None:
    with open(path, "w") as fh:
        fh.write("j,k,jprime,kprime,re,im,kept\n")
        for j, k, jp, kp, re, im, kept in _coeff_rows(coeffs):
            fh.write(f"{j},{k},{jp},{kp},{float(re)!r},{float(im)!r},{kept}\n")


def cmd_deconvolve(args) -> int:
    grid = load_grid(args.input)
    kernel = load_grid(args.kernel)
    ks = kernel_spectrum(kernel.samples)
    cfg = config_for(grid, ks, mode=args.mode, c_beta=args.cbeta, nu=args.nu,
                     m0=args.m0, m0p=args.m0p, j=args.j, j_prime=args.jprime)
    cfg = cfg.resolved(grid.m, grid.n)
    rec = deconvolve(grid, ks, cfg=cfg)
    save_grid(args.out, ObservationGrid(rec.values, sigma=0.0))
    coeffs_path = args.coeffs or str(args.out) + ".coeffs.csv"
    _write_coeffs_csv(coeffs_path, rec.coeffs)
    manifest = _manifest_path(args, args.out)
    if manifest:
        _write_manifest(manifest, "deconvolve", {
            "input": args.input, "kernel": args.kernel, "mode": cfg.mode,
            "nu": cfg.nu, "cbeta": cfg.c_beta, "m0": cfg.m0, "m0p": cfg.m0p,
            "j": cfg.j, "jprime": cfg.j_prime, "out": args.out,
            "coeffs": coeffs_path,
        })
    print(f"wrote {args.out} (mode={cfg.mode}, J={cfg.j}"
          + (f", J'={cfg.j_prime}" if cfg.mode == FUNCTIONAL else "") + ")")
    return 0


def cmd_simulate(args) -> int:
    sim = SimConfig(f1=args.f1, f2=args.f2, m=args.m, n=args.n,
                    sigma=args.sigma, mode=args.mode, runs=args.runs,
                    seed=args.seed, c_beta=args.cbeta, nu=args.nu,
                    threads=args.threads)
    res = run_mise(sim)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("rep,mise\n")
            for rep, val in enumerate(res.per_run):
                fh.write(f"{rep},{float(val)!r}\n")
    manifest = _manifest_path(args, args.out)
    if manifest:
        _write_manifest(manifest, "simulate", {
            "f1": args.f1, "f2": args.f2, "m": args.m, "n": args.n,
            "sigma": args.sigma, "mode": args.mode, "runs": args.runs,
            "seed": args.seed, "threads": args.threads, "out": args.out,
        })
    print(f"mean_mise={float(res.mean_mise)!r}")
    print(f"sd_mise={float(res.sd_mise)!r}")
    print(f"runs={args.runs}")
    return 0


def cmd_table1(args) -> int:
    rows = table1(runs=args.runs, seed=args.seed, n=args.n, threads=args.threads)
    write_table_csv(rows, args.out)
    if args.xy:
        for path in slope_files(rows, args.xy, n=args.n):
            print(f"wrote {path}")
    manifest = _manifest_path(args, args.out)
    if manifest:
        _write_manifest(manifest, "table1", {
            "runs": args.runs, "seed": args.seed, "n": args.n,
            "threads": args.threads, "out": args.out, "xy": args.xy,
        })
    print(f"wrote {len(rows)} cells to {args.out}")
    return 0


def cmd_rates(args) -> int:
    ball = BesovBall(s1=args.s1, s2_vec=tuple(args.s2), p=args.p, q=args.q)
    if ball.r == 1:
        report = exponent_2d(ball, args.nu)
    else:
        report = exponent_multi(ball, args.nu)
    print(json.dumps(report.as_dict()))
    manifest = _manifest_path(args, None)
    if manifest:
        _write_manifest(manifest, "rates", {
            "s1": args.s1, "s2": ",".join(str(s) for s in args.s2),
            "nu": args.nu, "p": args.p, "q": args.q,
        })
    return 0


def cmd_compare(args) -> int:
    report = compare_strategies(args.s1, args.s2[0], args.nu, args.M, args.N)
    print(json.dumps(report.as_dict()))
    manifest = _manifest_path(args, None)
    if manifest:
        _write_manifest(manifest, "compare", {
            "s1": args.s1, "s2": ",".join(str(s) for s in args.s2),
            "nu": args.nu, "M": args.M, "N": args.N,
        })
    return 0


def cmd_nu_estimate(args) -> int:
    kernel = load_grid(args.kernel)
    ks = kernel_spectrum(kernel.samples)
    m_range = None
    if args.mlo is not None or args.mhi is not None:
        n = kernel.n
        mlo = args.mlo if args.mlo is not None else n // 16
        mhi = args.mhi if args.mhi is not None else n // 4
        m_range = (mlo, mhi)
    nu = estimate_nu(ks, m_range=m_range)
    print(json.dumps({"nu": nu, "c1": ks.c1, "c2": ks.c2}))
    return 0


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="funcdeconv",
        description="Hyperbolic-wavelet thresholding for functional "
                    "deconvolution of periodic profiles.",
    )
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = argparse.ArgumentDefaultsHelpFormatter

    p = sub.add_parser("deconvolve", formatter_class=fmt,
                       help="estimate f from an observation grid and a kernel")
    p.add_argument("--input", required=True,
                   help="observation grid (.fdg binary or .csv)")
    p.add_argument("--kernel", required=True,
                   help="kernel samples on the same grid (.fdg or .csv)")
    p.add_argument("--mode", choices=(FUNCTIONAL, SEPARATE),
                   default=FUNCTIONAL, help="estimation strategy")
    p.add_argument("--nu", type=_auto_float, default="auto",
                   help="kernel decay exponent (auto: log-log fit)")
    p.add_argument("--cbeta", type=_auto_float, default="auto",
                   help="threshold constant (auto: 4 (2pi/3)^nu / sqrt(c1))")
    p.add_argument("--m0", type=int, default=3, help="coarsest time level")
    p.add_argument("--m0p", type=int, default=3, help="coarsest spatial level")
    p.add_argument("--j", type=_auto_int, default="auto",
                   help="finest time level (exclusive)")
    p.add_argument("--jprime", type=_auto_int, default="auto",
                   help="finest spatial level (exclusive, functional mode)")
    p.add_argument("--out", required=True, help="reconstruction output path")
    p.add_argument("--coeffs", default=None,
                   help="coefficient CSV path, j,k,jprime,kprime,re,im,kept "
                        "(default: OUT.coeffs.csv)")
    p.add_argument("--manifest", default=None,
                   help="manifest path (default: OUT.manifest)")
    p.set_defaults(func=cmd_deconvolve)

    p = sub.add_parser("simulate", formatter_class=fmt,
                       help="Monte-Carlo MISE for one benchmark cell")
    p.add_argument("--f1", choices=signal_names(), default="Quadratic",
                   help="spatial factor")
    p.add_argument("--f2", choices=signal_names(), default="Blip",
                   help="time factor")
    p.add_argument("--m", type=int, default=128, help="number of profiles M")
    p.add_argument("--n", type=int, default=512, help="samples per profile N")
    p.add_argument("--sigma", type=float, default=0.5, help="noise level")
    p.add_argument("--mode", choices=(FUNCTIONAL, SEPARATE),
                   default=FUNCTIONAL, help="estimation strategy")
    p.add_argument("--runs", type=int, default=25, help="replicates")
    p.add_argument("--seed", type=int, default=0, help="base seed")
    p.add_argument("--cbeta", type=_auto_float, default="auto",
                   help="threshold constant")
    p.add_argument("--nu", type=_auto_float, default="auto",
                   help="kernel decay exponent")
    p.add_argument("--threads", type=int, default=1, help="worker threads")
    p.add_argument("--out", default=None, help="optional per-run MISE CSV")
    p.add_argument("--manifest", default=None,
                   help="manifest path (default: OUT.manifest when --out set)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("table1", formatter_class=fmt,
                       help="full 48-cell benchmark table")
    p.add_argument("--runs", type=int, default=25, help="replicates per cell")
    p.add_argument("--seed", type=int, default=0, help="base seed")
    p.add_argument("--n", type=int, default=512, help="samples per profile N")
    p.add_argument("--threads", type=int, default=1, help="worker threads")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--xy", default=None,
                   help="prefix for gnuplot-ready MISE-vs-MN files")
    p.add_argument("--manifest", default=None,
                   help="manifest path (default: OUT.manifest)")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("rates", formatter_class=fmt,
                       help="minimax rate exponent for a Besov ball")
    p.add_argument("--s1", type=_rational, required=True,
                   help="time smoothness (rationals like 2/3 stay exact)")
    p.add_argument("--s2", type=_rational, nargs="+", required=True,
                   help="spatial smoothness (several values: multivariate)")
    p.add_argument("--nu", type=_rational, required=True,
                   help="kernel decay exponent")
    p.add_argument("--p", type=_rational, default=Fraction(2),
                   help="Besov p (inf allowed)")
    p.add_argument("--q", type=_rational, default=Fraction(2),
                   help="Besov q (inf allowed)")
    p.add_argument("--manifest", default=None, help="optional manifest path")
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("compare", formatter_class=fmt,
                       help="functional-vs-separate finite-sample verdict")
    p.add_argument("--s1", type=_rational, required=True,
                   help="time smoothness")
    p.add_argument("--s2", type=_rational, nargs=1, required=True,
                   help="spatial smoothness")
    p.add_argument("--nu", type=_rational, required=True,
                   help="kernel decay exponent")
    p.add_argument("--M", type=int, required=True, help="number of profiles")
    p.add_argument("--N", type=int, required=True, help="samples per profile")
    p.add_argument("--manifest", default=None, help="optional manifest path")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("nu-estimate", formatter_class=fmt,
                       help="fit the kernel decay exponent from samples")
    p.add_argument("--kernel", required=True,
                   help="kernel samples (.fdg or .csv)")
    p.add_argument("--mlo", type=int, default=None,
                   help="fit window lower frequency (default N/16)")
    p.add_argument("--mhi", type=int, default=None,
                   help="fit window upper frequency (default N/4)")
    p.set_defaults(func=cmd_nu_estimate)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        if "--from-manifest" in argv:
            idx = argv.index("--from-manifest")
            if idx + 1 >= len(argv):
                print("error: --from-manifest needs a path", file=sys.stderr)
                return 1
            argv = _argv_from_manifest(argv[idx + 1]) \
                + argv[:idx] + argv[idx + 2:]
    except (FuncDeconvError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if not exc.code else 1
    try:
        return args.func(args) or 0
    except (NumericalError, IllPosedKernel) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FuncDeconvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
