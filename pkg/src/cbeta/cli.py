"""Command-line driver.

Exit codes: 0 when every check passes, 1 when a check misses its tolerance,
2 for usage or parameter errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import re
import sys
import time
from fractions import Fraction
from typing import List, Optional

import numpy as np

from . import checks, counting, oracle, pruefer
from .montecarlo import default_threads, sample_phases

_PI_FORM = re.compile(r"^\s*([0-9]*\.?[0-9]*)\s*\*?\s*pi\s*(?:/\s*([0-9]+\.?[0-9]*))?\s*$", re.IGNORECASE)


def parse_angle(text: str) -> float:
    """Radians, or a rational multiple of pi such as ``pi/8`` or ``3pi/4``."""
    m = _PI_FORM.match(text)
    if m:
        num = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        den = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if den == 0:
            raise argparse.ArgumentTypeError(f"invalid angle {text!r}")
        q = num / den
        return math.pi * q.numerator / q.denominator
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid angle {text!r}") from None


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def _write_csv(path: Optional[str], header: List[str], rows) -> None:
    handle = open(path, "w", newline="") if path and path != "-" else sys.stdout
    try:
        w = csv.writer(handle, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])
    finally:
        if handle is not sys.stdout:
            handle.close()


def _write_lines(path: Optional[str], lines: List[str]) -> None:
    text = "".join(line + "\n" for line in lines)
    if path and path != "-":
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _threads(args) -> int:
    return args.threads if args.threads is not None else default_threads()


def cmd_sample(args) -> int:
    gs = pruefer.draw_gamma_sequence(args.beta, args.n, args.seed)
    eta = gs.eta if args.eta is None else args.eta
    res = pruefer.eigenangles(gs, eta=eta, tol=args.tol)
    _write_csv(args.out, ["index", "angle"], enumerate(res.angles))
    return 0


def cmd_count(args) -> int:
    if not 0 < args.theta <= 2 * math.pi:
        raise ValueError("theta must lie in (0, 2 pi]")
    psi, eta = sample_phases(args.beta, [args.theta], [args.n], args.reps, args.seed, _threads(args))
    psi = psi[0, 0]
    counts = counting.count_in_arc(psi, eta)
    _write_csv(args.out, ["replica", "count", "psi", "eta"], zip(range(args.reps), counts, psi, eta))
    return 0


def _suite_kwargs(args) -> dict:
    kw = dict(seed=args.seed, threads=_threads(args))
    for key in ("reps", "nus", "betas", "ns"):
        value = getattr(args, key, None)
        if value is not None:
            kw[key] = value
    return kw


def cmd_verify(args) -> int:
    if args.suite == "all":
        progress = (lambda name: print(f"running {name}", file=sys.stderr)) if args.verbose else None
        reports = checks.run_all(seed=args.seed, threads=_threads(args), scale=args.scale, progress=progress)
    else:
        kw = _suite_kwargs(args)
        if args.scale != 1.0 and "reps" not in kw:
            kw.update(checks.scaled_sizes(args.suite, args.scale))
        reports = checks.SUITES[args.suite](**kw)
    _write_lines(args.out, [r.to_json() for r in reports])
    failed = [r for r in reports if not r.passed]
    if args.verbose:
        print(f"{len(reports) - len(failed)}/{len(reports)} checks passed", file=sys.stderr)
    return 1 if failed else 0


def cmd_oracle(args) -> int:
    t0 = time.perf_counter()
    if args.which == "n2":
        pmf = oracle.count_pmf_n2(args.beta, args.theta, args.nodes)
        var = oracle.count_variance_n2(args.beta, args.theta, args.nodes)
        record = dict(
            command="oracle n2",
            params=dict(beta=args.beta, theta=args.theta, nodes=args.nodes),
            probs=[float(p) for p in pmf.probs],
            mean=pmf.mean,
            variance=var.value,
            value=var.value,
            quad_error=var.quad_error,
        )
    else:
        probs, ses = oracle.rejection_count_pmf(args.beta, 3, args.theta, args.seed, args.reps)
        record = dict(
            command="oracle n3",
            params=dict(beta=args.beta, theta=args.theta, reps=args.reps, seed=args.seed),
            probs=[float(p) for p in probs],
            std_errors=[float(s) for s in ses],
            mean=float(np.dot(np.arange(4), probs)),
            variance=float(np.dot(np.arange(4) ** 2, probs) - np.dot(np.arange(4), probs) ** 2),
        )
    record["wall_time_ms"] = int(round(1000 * (time.perf_counter() - t0)))
    _write_lines(args.out, [json.dumps(record, sort_keys=True)])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cbeta", description="Circular beta-ensemble sampler and verification suites.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, reps=None):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=None, help="worker threads (default: CBETA_THREADS or 1)")
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        if reps is not None:
            p.add_argument("--reps", type=int, default=reps)

    p = sub.add_parser("sample", help="eigenangles of one draw as CSV")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eta", type=parse_angle, default=None, help="rotation in [0, 2 pi) (default: drawn from the seed)")
    p.add_argument("--tol", type=float, default=1e-12)
    common(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("count", help="raw arc counts as CSV")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta", type=parse_angle, required=True)
    common(p, reps=1000)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="run a verification suite, JSON lines out")
    vsub = p.add_subparsers(dest="suite", required=True)
    for name in list(checks.SUITES) + ["all"]:
        q = vsub.add_parser(name)
        common(q)
        q.add_argument("--scale", type=float, default=1.0, help="multiply default replica counts")
        q.add_argument("-v", "--verbose", action="store_true")
        if name != "all" and name != "seq":
            q.add_argument("--reps", type=int, default=None)
        if name in ("theta", "moments"):
            q.add_argument("--nu", dest="nus", type=float, nargs="+", default=None)
        if name in ("seq", "sine"):
            q.add_argument("--betas", type=float, nargs="+", default=None)
        if name == "linstat":
            q.add_argument("--ns", type=int, nargs="+", default=None)
        q.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exact small-n arc-count laws")
    p.add_argument("which", choices=["n2", "n3"])
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--theta", type=parse_angle, required=True)
    p.add_argument("--nodes", type=int, default=2048)
    common(p, reps=100_000)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        if getattr(args, "threads", None) is not None and args.threads < 1:
            raise ValueError("--threads must be positive")
        return args.func(args)
    except (ValueError, OverflowError, oracle.QuadratureError) as exc:
        print(f"cbeta: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
