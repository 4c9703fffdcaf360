"""Command-line interface.

Exit codes: 0 success or validated; 1 validation failed (report still
written); 2 usage or input error; 3 internal numeric error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from .dft_error import GridSpec, StripPair, cn_1d_even, cn_general
from .errors import (
    BadSize,
    BadStrip,
    FhitError,
    OddSize,
    ParseError,
    SizeMismatch,
    SizeNotPowerOfTwo,
    SymmetryViolation,
)
from .fcf import (
    load_candidate,
    load_fcf,
    omega_float,
    parse_omega,
    save_candidate,
    write_report,
)
from .maps import SkewMapParams, get_map
from .series import fit_rho
from .solver import continue_to, export_candidate, solve_at
from .validator import ValidationParams, validate

_USAGE_ERRORS = (
    BadStrip,
    OddSize,
    BadSize,
    SizeNotPowerOfTwo,
    ParseError,
    SizeMismatch,
    SymmetryViolation,
    FileNotFoundError,
    ValueError,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fhit", description="Validated invariant tori toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cn", help="print the DFT error constant C_N(rho, rho_hat)")
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--rhohat", type=float, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--dims", type=str, help="comma-separated grid sizes for d > 1")

    p = sub.add_parser("solve", help="Newton-solve a candidate at one forcing amplitude")
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--omega", type=str, default="golden")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out", type=str, required=True)

    p = sub.add_parser("continue", help="continuation from zero forcing")
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--eps-end", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--n-schedule", type=str, required=True, help="e.g. 64,256,2048")
    p.add_argument("--omega", type=str, default="golden")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out-dir", type=str, required=True)

    p = sub.add_parser("fit-rho", help="exponential decay fit of stored coefficients")
    p.add_argument("--in", dest="infile", type=str, required=True)
    p.add_argument("--component", type=int, default=0)

    p = sub.add_parser("validate", help="rigorous validation of a candidate bundle")
    p.add_argument("--in", dest="infile", type=str, required=True)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--rhohat", type=float, required=True)
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--pad", type=int, default=None)
    p.add_argument("--noise-floor", type=float, default=None)
    p.add_argument("--map", type=str, default="standard-forced")
    p.add_argument("--threads", type=int, default=1, help="reserved; validation is sequential")
    p.add_argument("--report", type=str, required=True)

    p = sub.add_parser("export", help="TSV plot data from an FCF file")
    p.add_argument("--in", dest="infile", type=str, required=True)
    p.add_argument("--what", choices=("coeffs", "grid", "bundle-angle"), required=True)
    p.add_argument("--out", type=str, required=True)
    return parser


def _cmd_cn(args) -> int:
    strip = StripPair(args.rho, args.rhohat)
    if args.dims:
        dims = tuple(int(x) for x in args.dims.split(","))
        value = cn_general(strip, GridSpec(dims))
    elif args.n is not None:
        if args.n % 2 == 0:
            value = cn_1d_even(strip, args.n)
        else:
            value = cn_general(strip, GridSpec((args.n,)))
    else:
        raise ValueError("one of --n or --dims is required")
    print(f"C_N = [{value.lo:.17g}, {value.hi:.17g}]")
    return 0


def _cmd_solve(args) -> int:
    omega = omega_float(args.omega)
    if args.eps == 0.0:
        from .solver import initial_state

        state = initial_state(args.kappa, omega, args.n)
    else:
        steps = max(8, int(math.ceil(args.eps / 0.1)))
        state = continue_to(args.kappa, args.eps, steps, [args.n], omega, tol=args.tol)
    data = export_candidate(state)
    save_candidate(data, args.out, args.omega, args.kappa, args.eps)
    res = state.residuals
    print(f"solved eps={args.eps} n={state.n} residuals "
          f"inv={res['invariance']:.3g} red={res['reducibility']:.3g}")
    print(f"wrote {args.out}")
    return 0


def _cmd_continue(args) -> int:
    omega = omega_float(args.omega)
    schedule = [int(x) for x in args.n_schedule.split(",")]
    state = continue_to(args.kappa, args.eps_end, args.steps, schedule, omega, tol=args.tol)
    data = export_candidate(state)
    os.makedirs(args.out_dir, exist_ok=True)
    out = os.path.join(args.out_dir, "candidate.fcf")
    save_candidate(data, out, args.omega, args.kappa, args.eps_end)
    res = state.residuals
    print(f"continued to eps={args.eps_end} n={state.n} residuals "
          f"inv={res['invariance']:.3g} red={res['reducibility']:.3g}")
    print(f"wrote {out}")
    return 0


def _cmd_fit_rho(args) -> int:
    _, series = load_fcf(args.infile)
    if not 0 <= args.component < len(series):
        raise ValueError(f"component {args.component} out of range 0..{len(series) - 1}")
    fit = fit_rho(series[args.component])
    print(f"rho_star = {fit.rho_star:.6g}")
    print(f"intercept = {fit.intercept:.6g}")
    print(f"fit_range = {fit.fit_range[0]}..{fit.fit_range[1]}")
    return 0


def _cmd_validate(args) -> int:
    data, hdr = load_candidate(args.infile)
    params = ValidationParams(
        rho=args.rho,
        rho_hat=args.rhohat,
        radius=args.radius,
        pad_to=args.pad,
        noise_floor=args.noise_floor,
    )
    params.strip()  # usage check before any heavy work
    map_model = get_map(args.map)
    map_params = SkewMapParams(kappa=hdr.kappa, eps_map=hdr.eps_map, omega=parse_omega(hdr.omega))
    cert = validate(data, params, map_model, map_params)
    n = args.pad if args.pad else hdr.n
    write_report(args.report, cert, params, args.map, hdr.omega, hdr.kappa, hdr.eps_map, n)
    print(f"verdict = {cert.verdict}")
    print(f"report written to {args.report}")
    return 0 if cert.validated else 1


def _cmd_export(args) -> int:
    hdr, series = load_fcf(args.infile)
    rows = []
    if args.what == "coeffs":
        rows.append("component\tk\tre\tim\tabs")
        for ci, s in enumerate(series):
            for k in s.indices():
                c = s.coeff(k).mid
                rows.append(f"{ci}\t{k}\t{c.real:.17g}\t{c.imag:.17g}\t{abs(c):.17g}")
    elif args.what == "grid":
        rows.append("j\ttheta\t" + "\t".join(f"re_{i}\tim_{i}" for i in range(len(series))))
        grids = [s.grid_values().values for s in series]
        n = hdr.n
        for j in range(n):
            vals = "\t".join(
                f"{g[j].mid.real:.17g}\t{g[j].mid.imag:.17g}" for g in grids
            )
            rows.append(f"{j}\t{j / n:.17g}\t{vals}")
    else:  # bundle-angle
        if hdr.kind != "matrix" or hdr.rows != 2 or hdr.cols != 2:
            raise ValueError("bundle-angle needs a 2x2 frame matrix file")
        n = hdr.n
        grids = [s.grid_values().values for s in series]  # row-major P entries
        rows.append("j\ttheta\talpha_stable\talpha_unstable")
        for j in range(n):
            a_s = math.atan2(grids[2][j].mid.real, grids[0][j].mid.real)
            a_u = math.atan2(grids[3][j].mid.real, grids[1][j].mid.real)
            rows.append(f"{j}\t{j / n:.17g}\t{a_s:.17g}\t{a_u:.17g}")
    with open(args.out, "w") as fh:
        fh.write("\n".join(rows) + "\n")
    print(f"wrote {args.out}")
    return 0


_COMMANDS = {
    "cn": _cmd_cn,
    "solve": _cmd_solve,
    "continue": _cmd_continue,
    "fit-rho": _cmd_fit_rho,
    "validate": _cmd_validate,
    "export": _cmd_export,
}


def cli_dispatch(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return _COMMANDS[args.command](args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FhitError as exc:
        print(f"numeric error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
