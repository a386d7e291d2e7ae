"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error.  The default
seed can be overridden with the ``RIESZLAB_SEED`` environment variable.

Matrix files hold ``r`` followed by the ``r(r+1)/2`` lower-triangle entries in
row-major order, whitespace separated.
"""
import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from .jordan import ConeDomainError, as_cone
from .mclab import ExperimentConfig, run_contrast, run_theorem31
from .riesz import (
    BetaRieszParams,
    RieszParams,
    log_beta_riesz_density,
    log_riesz_density,
    sample_beta_riesz,
    sample_riesz,
)
from .verify import run_suite

SEED_ENV = "RIESZLAB_SEED"


class UsageError(Exception):
    pass


def parse_vector(text, name):
    try:
        return np.array([float(t) for t in text.split(",")])
    except ValueError:
        raise UsageError(f"{name} must be comma-separated reals, got {text!r}") from None


def read_matrix(path):
    """Parse the lower-triangle matrix file format."""
    try:
        with open(path) as fh:
            tokens = fh.read().split()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        r = int(tokens[0])
        vals = [float(t) for t in tokens[1:]]
    except (IndexError, ValueError):
        raise UsageError(f"{path}: expected r followed by real entries") from None
    if r < 1 or len(vals) != r * (r + 1) // 2:
        raise UsageError(f"{path}: r = {r} needs {r * (r + 1) // 2} entries, found {len(vals)}")
    x = np.zeros((r, r))
    x[np.tril_indices(r)] = vals
    return x + np.tril(x, -1).T


def lower_entries(x):
    return x[..., np.tril_indices(x.shape[-1])[0], np.tril_indices(x.shape[-1])[1]]


def _sigma(args, r):
    if args.sigma == "identity":
        return np.eye(r)
    sigma = read_matrix(args.sigma)
    if sigma.shape != (r, r):
        raise UsageError(f"sigma has rank {sigma.shape[0]}, s has length {r}")
    return as_cone(sigma, "sigma")


def _rank(args):
    s = parse_vector(args.s, "s")
    if args.r is not None and args.r != s.size:
        raise UsageError(f"--r {args.r} does not match len(s) = {s.size}")
    return s


def _s_prime(args, r):
    if args.s_prime is None:
        raise UsageError("--s-prime is required for the beta-Riesz law")
    sp = parse_vector(args.s_prime, "s_prime")
    if sp.size != r:
        raise UsageError(f"s_prime has length {sp.size}, s has length {r}")
    return sp


def _emit(text, args):
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)


def cmd_sample(args):
    s = _rank(args)
    r = s.size
    rng = np.random.default_rng(args.seed)
    if args.dist == "riesz":
        draws = sample_riesz(RieszParams(s, _sigma(args, r)), rng, args.n)
    else:
        draws = sample_beta_riesz(BetaRieszParams(s, _s_prime(args, r)), rng, args.n)
    rows = lower_entries(draws).tolist()
    if args.format == "json":
        text = json.dumps(rows) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        i, j = np.tril_indices(r)
        writer.writerow([f"x{a + 1}{b + 1}" for a, b in zip(i, j)])
        writer.writerows([[repr(v) for v in row] for row in rows])
        text = buf.getvalue()
    _emit(text, args)
    return 0


def cmd_density(args):
    s = _rank(args)
    r = s.size
    x = read_matrix(args.point)
    if x.shape != (r, r):
        raise UsageError(f"point has rank {x.shape[0]}, s has length {r}")
    if args.dist == "riesz":
        val = log_riesz_density(RieszParams(s, _sigma(args, r)), x, outside="-inf")
    else:
        val = log_beta_riesz_density(BetaRieszParams(s, _s_prime(args, r)), x, outside="-inf")
    _emit(("-inf" if math.isinf(val) else repr(float(val))) + "\n", args)
    return 0


def cmd_verify(args):
    ok = True
    lines = []
    for r in args.r or [3]:
        for rep in run_suite(r=r, trials=args.trials, seed=args.seed, fault=args.fault):
            ok &= rep.passed
            lines.append(rep.to_json())
    _emit("\n".join(lines) + "\n", args)
    return 0 if ok else 1


def cmd_experiment(args):
    s = _rank(args)
    r = s.size
    cfg = ExperimentConfig(
        s=s,
        s_prime=_s_prime(args, r),
        sigma=_sigma(args, r),
        n_samples=args.n,
        seed=args.seed,
        algorithm=args.algorithm,
        permutations=args.permutations,
        n_dcor=args.n_dcor,
    )
    results = run_contrast(cfg) if args.kind == "contrast" else (run_theorem31(cfg),)
    _emit("".join(json.dumps(res.to_dict()) + "\n" for res in results), args)
    return 0


def _default_seed():
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def build_parser(default_seed=0):
    parser = argparse.ArgumentParser(prog="rieszlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_params=True):
        p.add_argument("--seed", type=int, default=default_seed)
        p.add_argument("--output", "-o", default="-", help="output path, '-' for stdout")
        if with_params:
            p.add_argument("--r", type=int, default=None, help="rank (checked against len(s))")
            p.add_argument("--s", required=True, help="comma-separated powers, e.g. 1,3")
            p.add_argument("--s-prime", dest="s_prime", default=None)
            p.add_argument("--sigma", default="identity", help="matrix file or 'identity'")

    p = sub.add_parser("sample", help="draw Riesz or beta-Riesz matrices")
    common(p)
    p.add_argument("--dist", choices=["riesz", "beta-riesz"], default="riesz")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--format", choices=["json", "csv"], default="csv")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("density", help="evaluate a log-density at a matrix")
    common(p)
    p.add_argument("--dist", choices=["riesz", "beta-riesz"], default="riesz")
    p.add_argument("--point", required=True, help="matrix file")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("verify", help="run the residual-check suite")
    common(p, with_params=False)
    p.add_argument("--r", type=int, nargs="+", default=None, help="ranks to sweep")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--fault", action="store_true", help="inject a perturbed identity")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("experiment", help="Monte Carlo independence experiments")
    common(p)
    p.add_argument(
        "--kind",
        choices=["independence", "thm31", "contrast"],
        default="independence",
        help="'thm31' is an alias of 'independence'",
    )
    p.add_argument("--n", type=int, default=50_000)
    p.add_argument("--algorithm", choices=["cholesky", "quadratic"], default="cholesky")
    p.add_argument("--permutations", type=int, default=199)
    p.add_argument("--n-dcor", dest="n_dcor", type=int, default=4000)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None):
    try:
        parser = build_parser(_default_seed())
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    args = parser.parse_args(argv)
    if getattr(args, "n", 1) is not None and getattr(args, "n", 1) < 1:
        print("error: --n must be positive", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (UsageError, ConeDomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
