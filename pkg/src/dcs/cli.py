"""Command-line front end.

Exit codes: 0 on success, 1 when a verification reports a finding, 2 on
usage errors.  Structured output is JSON; series tables are CSV.
"""

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import criteria
from .exactnum import ModelParams
from .partition import SpectralLabel, lambda_to_n, n_to_lambda
from .qseries import character_table
from .spectra import Degenerate, build_eta, orthogonalize, sector_audit
from .symfun import jack_p, super_jack_p

EXIT_OK, EXIT_FINDING, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _ints(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _rs(text: str) -> ModelParams:
    vals = _ints(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"--rs takes two integers r,s, got {text!r}")
    try:
        return ModelParams(*vals)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number, got {text!r}")


def _emit(args, payload):
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2, sort_keys=False) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _params(args) -> ModelParams:
    return args.rs if args.rs is not None else ModelParams(1, 1)


# --- subcommands ---

def cmd_jack(args):
    f = jack_p(args.lam, args.g)
    _emit(args, f.to_json(args.lam))
    return EXIT_OK


def cmd_superjack(args):
    f = super_jack_p(args.lam, args.N, args.M, args.g)
    _emit(args, f.to_json(args.lam))
    return EXIT_OK


def cmd_bijection(args):
    if (args.lam is None) == (args.n is None):
        raise UsageError("give exactly one of --lambda or --n")
    if args.lam is not None:
        n = lambda_to_n(args.lam, args.N, args.M)
        lam = args.lam
    else:
        n = args.n
        lam = n_to_lambda(n, args.N, args.M)
    _emit(args, {"N": args.N, "M": args.M, "lambda": list(lam), "n": list(n)})
    return EXIT_OK


def _label(args) -> SpectralLabel:
    return SpectralLabel(args.N, args.M, args.Q, args.n)


def cmd_eta(args):
    p = _params(args)
    lab = _label(args)
    v = build_eta(lab, p)
    _emit(args, {"label": lab.to_json(), "final_charge": lab.final_charge(p), "state": v.to_json()})
    return EXIT_OK


def cmd_orthogonalize(args):
    p = _params(args)
    try:
        res = orthogonalize(_label(args), p)
    except Degenerate as exc:
        _emit(args, {"label": _label(args).to_json(), "degenerate": True, "m": list(exc.m)})
        return EXIT_FINDING
    _emit(args, res.to_json())
    return EXIT_OK if res.verified else EXIT_FINDING


def cmd_audit_sector(args):
    rep = sector_audit(args.Q, args.d, _params(args))
    _emit(args, rep)
    return EXIT_OK if rep["ok"] else EXIT_FINDING


def cmd_character(args):
    rows = character_table(_params(args), args.order)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["unit_exponent", "lhs_coeff", "rhs_coeff", "equal"])
    for k, a, b, eq in rows:
        w.writerow([k, a, b, "true" if eq else "false"])
    _emit(args, buf.getvalue())
    return EXIT_OK if all(r[3] for r in rows) else EXIT_FINDING


def cmd_verify(args):
    threads = criteria.resolve_threads(args.threads)
    if args.suite == "numeric":
        ks = [10]
    elif args.suite == "all":
        ks = sorted(criteria.CRITERIA)
    elif args.criterion is not None:
        ks = [args.criterion]
    else:
        raise UsageError("give --criterion K or --suite {numeric,all}")
    results = [criteria.run_criterion(k, threads=threads, seed=args.seed) for k in ks]
    for r in results:
        print(f"criterion {r['criterion']}: {'PASS' if r['ok'] else 'FAIL'} - {r['summary']}", file=sys.stderr)
    _emit(args, results[0] if len(results) == 1 else results)
    return EXIT_OK if all(r["ok"] for r in results) else EXIT_FINDING


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dcs", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rs", type=_rs, default=None, help="model parameters r,s (default 1,1)")
    common.add_argument("--output", "-o", default=None, help="write output to this path instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="random seed for sampled checks")
    common.add_argument("--threads", type=int, default=None,
                        help=f"worker processes (default from ${criteria.THREADS_ENV}, else 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jack", parents=[common], help="Jack polynomial in the power-sum basis")
    p.add_argument("--lambda", dest="lam", type=_ints, required=True)
    p.add_argument("--g", type=_frac, default=None, help="coupling; symbolic in g if omitted")
    p.set_defaults(func=cmd_jack)

    p = sub.add_parser("superjack", parents=[common], help="super Jack polynomial in deformed Newton sums")
    p.add_argument("--lambda", dest="lam", type=_ints, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--g", type=_frac, default=None)
    p.set_defaults(func=cmd_superjack)

    p = sub.add_parser("bijection", parents=[common], help="map between fat-hook partitions and n vectors")
    p.add_argument("--lambda", dest="lam", type=_ints, default=None)
    p.add_argument("--n", type=_ints, default=None)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.set_defaults(func=cmd_bijection)

    for name, func, hlp in (("eta", cmd_eta, "anyon state built from vertex modes"),
                            ("orthogonalize", cmd_orthogonalize, "exact eigenstate by triangular recursion")):
        p = sub.add_parser(name, parents=[common], help=hlp)
        p.add_argument("--N", type=int, required=True)
        p.add_argument("--M", type=int, required=True)
        p.add_argument("--Q", type=int, required=True)
        p.add_argument("--n", type=_ints, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("audit-sector", parents=[common], help="completeness audit of one Fock sector")
    p.add_argument("--Q", type=int, required=True, help="final charge of the sector")
    p.add_argument("--d", type=int, required=True, help="degree of the sector")
    p.set_defaults(func=cmd_audit_sector)

    p = sub.add_parser("character", parents=[common], help="both sides of the character identity as CSV")
    p.add_argument("--order", type=int, default=24, help="truncation order in powers of q")
    p.set_defaults(func=cmd_character)

    p = sub.add_parser("verify", parents=[common], help="run acceptance checks")
    p.add_argument("--criterion", type=int, choices=sorted(criteria.CRITERIA), default=None)
    p.add_argument("--suite", choices=["numeric", "all"], default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"dcs {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
