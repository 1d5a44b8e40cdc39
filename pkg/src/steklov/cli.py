"""Command-line interface.

Exit status: 0 success, 1 validation failures, 2 configuration or parse
error, 3 numerical failure, 4 estimation bracket failure.
"""

import argparse
import json
import os
import sys
import warnings

import numpy as np

from . import harness, inverse, oracles
from .assembly import assemble, write_matrix
from .config import RunConfig, load_config
from .eigensolve import eigenfunction_field, solve_spectrum
from .errors import BracketError, ConfigError, NumericalError, SteklovError
from .expr import evaluate, is_constant, parse_expression
from .medium import Constant, DiskInclusion, PolarInclusion

EXIT_OK = 0
EXIT_FAILED_CHECKS = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_BRACKET = 4


def _fmt_number(z):
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:.15g}"
    return f"{z.real:.15g}{z.imag:+.15g}i"


def _complex_arg(text):
    try:
        ast = parse_expression(text)
    except SteklovError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not is_constant(ast):
        raise argparse.ArgumentTypeError(f"{text!r} is not a constant")
    return complex(evaluate(ast))


def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config(args):
    return load_config(args.config) if args.config else RunConfig.from_dict({})


def _out_path(args, cfg):
    return getattr(args, "output", None) or (cfg.outputs.path if cfg else None)


def cmd_eigen(args, cfg):
    profile = cfg.profile()
    sys_ = assemble(cfg.build_basis(), profile, cfg.wavenumber, cfg.rule())
    if args.dump_matrices:
        os.makedirs(args.dump_matrices, exist_ok=True)
        write_matrix(os.path.join(args.dump_matrices, "A.txt"), sys_.A)
        write_matrix(os.path.join(args.dump_matrices, "B.txt"), sys_.B)
    spec = solve_spectrum(sys_)
    pairs = spec.pairs[: args.num_eigs] if args.num_eigs else spec.pairs
    if cfg.outputs.format == "json":
        data = {
            "wavenumber": cfg.wavenumber,
            "eigenvalues": [
                {"index": i, "re": p.lam.real, "im": p.lam.imag, "residual": p.residual}
                for i, p in enumerate(pairs, start=1)
            ],
        }
        text = json.dumps(data, indent=2) + "\n"
    else:
        lines = ["index,lambda_re,lambda_im,residual"]
        for i, p in enumerate(pairs, start=1):
            lines.append(f"{i},{p.lam.real:.15g},{p.lam.imag:.15g},{p.residual:.6e}")
        text = "\n".join(lines) + "\n"
    _emit(text, _out_path(args, cfg))
    return EXIT_OK


def cmd_converge(args, cfg):
    table = harness.convergence_study(cfg, args.n_values, threads=args.threads)
    _emit(table.to_csv(), _out_path(args, cfg))
    return EXIT_OK


def cmd_estimate(args, cfg):
    k = args.k if args.k is not None else cfg.wavenumber
    if args.lambda1 is not None:
        lam = args.lambda1
    else:
        spec = solve_spectrum(assemble(cfg.build_basis(), cfg.profile(), k, cfg.rule()))
        lam = spec[0].lam.real
    geometry = None
    if args.two_step:
        profile = cfg.profile()
        if isinstance(profile, (DiskInclusion, PolarInclusion, Constant)):
            geometry = profile
    result = inverse.estimate_two_step(lam, k, geometry)
    data = result.as_dict()
    if not args.two_step:
        data["n_approx2"] = None
    text = json.dumps({key: (float(v) if isinstance(v, (float, np.floating)) else v) for key, v in data.items()}, indent=2)
    _emit(text + "\n", _out_path(args, cfg))
    return EXIT_OK


def cmd_field(args, cfg):
    spec = solve_spectrum(assemble(cfg.build_basis(), cfg.profile(), cfg.wavenumber, cfg.rule()))
    fld = eigenfunction_field(spec, args.eig_index, args.grid)
    _emit(fld.to_csv(), _out_path(args, cfg))
    return EXIT_OK


def cmd_oracle(args, cfg):
    if args.kind == "sov":
        value = oracles.sov_eigenvalue(args.k, args.n, args.m)
    elif args.kind == "asym":
        value = oracles.asym_first(args.k, args.n1, args.rho)
    else:
        value = oracles.annulus_exact(args.k, args.n, args.rho, args.m)
    sys.stdout.write(_fmt_number(value) + "\n")
    return EXIT_OK


def cmd_validate(args, cfg):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", harness.ResonanceWarning)
        report = harness.validate(cfg)
    text = "".join(f"WARNING: {w.message}\n" for w in caught if issubclass(w.category, harness.ResonanceWarning))
    text += report.text()
    _emit(text, _out_path(args, cfg))
    return EXIT_OK if report.ok else EXIT_FAILED_CHECKS


def cmd_project(args, cfg):
    study = harness.projection_rate_study(args.function, args.n_values, args.reference_terms)
    _emit(study.to_csv(), getattr(args, "output", None))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="steklov", description="Steklov eigenvalues on the unit disk by a Neumann-Galerkin method."
    )
    parser.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker threads for sweeps")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_config(p, output=True):
        p.add_argument("--config", help="JSON run configuration")
        p.add_argument("--print-config", action="store_true", help="print the validated configuration and exit")
        if output:
            p.add_argument("--output", "-o", help="output file (default: config outputs.path or stdout)")
        return p

    p = with_config(sub.add_parser("eigen", help="compute the finite Steklov spectrum"))
    p.add_argument("--num-eigs", type=int, default=None)
    p.add_argument("--dump-matrices", metavar="DIR", help="write A.txt and B.txt to DIR")
    p.set_defaults(func=cmd_eigen)

    p = with_config(sub.add_parser("converge", help="leading eigenvalue against N"))
    p.add_argument("--n-values", type=_int_list, default=[10, 15, 20, 25])
    p.set_defaults(func=cmd_converge)

    p = with_config(sub.add_parser("estimate", help="estimate n from lambda_1"))
    p.add_argument("--lambda1", type=float, help="target eigenvalue (default: computed from the config)")
    p.add_argument("--k", type=float, default=None, help="wavenumber (default: from the config)")
    p.add_argument("--two-step", action="store_true", help="apply the inclusion-area correction")
    p.set_defaults(func=cmd_estimate)

    p = with_config(sub.add_parser("field", help="sample an eigenfunction on a grid"))
    p.add_argument("--eig-index", type=int, default=1)
    p.add_argument("--grid", type=int, default=101)
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("oracle", help="closed-form reference eigenvalues")
    osub = p.add_subparsers(dest="kind", required=True)
    o = osub.add_parser("sov", help="constant medium, angular order m")
    o.add_argument("--k", type=float, required=True)
    o.add_argument("--n", type=_complex_arg, required=True)
    o.add_argument("--m", type=int, default=0)
    o = osub.add_parser("asym", help="small disk inclusion, two-term expansion")
    o.add_argument("--k", type=float, required=True)
    o.add_argument("--n1", type=float, required=True)
    o.add_argument("--rho", type=float, required=True)
    o = osub.add_parser("annulus", help="disk inclusion, exact matching")
    o.add_argument("--k", type=float, required=True)
    o.add_argument("--n", type=float, required=True)
    o.add_argument("--rho", type=float, required=True)
    o.add_argument("--m", type=int, default=0)
    p.set_defaults(func=cmd_oracle, config=None, print_config=False)

    p = with_config(sub.add_parser("validate", help="run the invariant suite"))
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("project", help="projection error rates")
    p.add_argument("--n-values", type=_int_list, default=[8, 16, 32, 64])
    p.add_argument("--reference-terms", type=int, default=256)
    p.add_argument("--function", default="quartic")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_project, config=None, print_config=False)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        if args.print_config:
            sys.stdout.write(cfg.to_json() + "\n")
            return EXIT_OK
        return args.func(args, cfg)
    except ConfigError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG
    except BracketError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BRACKET
    except NumericalError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_NUMERICAL
    except SteklovError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
