"""Command-line front end.

Exit codes are the machine contract:
  0   success (or: every check passed)
  1   verification failure
  2   search budget exhausted
  3   internal invariant failure
  64  usage error
  65  certificate parse error
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from . import __version__
from .certificate import (
    CertificateFormatError,
    build_certificate,
    emit,
    parse,
    verify_certificate,
    with_report,
)
from .padic import format_expansion
from .prime_search import BudgetExhaustedError, SearchConfig, search
from .target_builder import build_targets, linear_forms
from .tate_series import build_bundle

log = logging.getLogger("locyc")

EX_USAGE = 64
EX_DATAERR = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _is_prime_int(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _check_prime_arg(p: int) -> None:
    if not _is_prime_int(p):
        raise UsageError(f"{p} is not prime")
    if p < 5:
        raise UsageError(
            f"p = {p} is too small: the construction needs p >= 5 "
            "(4 must be a unit and the torsion argument fails below 5)"
        )


def _default_workers() -> int:
    env = os.environ.get("LOCYC_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def build_parser() -> _Parser:
    parser = _Parser(prog="locyc", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="search for a curve and emit its certificate")
    c.add_argument("--prime", type=int, required=True)
    c.add_argument("--seed", type=int, default=1)
    c.add_argument("--budget", type=int, default=200000, help="max primality tests")
    c.add_argument("--out", default=None, help="certificate path (default certificate-p<P>.json)")
    c.add_argument("--workers", type=int, default=None)
    c.add_argument("--d-range", type=int, default=512)
    c.add_argument("--x-window", type=int, default=4096)
    c.add_argument("--sieve-bound", type=int, default=30000)
    c.add_argument("-v", "--verbose", action="store_true")

    v = sub.add_parser("verify", help="re-run every check of a certificate file")
    v.add_argument("file")
    v.add_argument("-v", "--verbose", action="store_true")

    s = sub.add_parser("series", help="print the p-adic expansions behind the construction")
    s.add_argument("--prime", type=int, required=True)
    s.add_argument("--digits", type=int, default=12)
    s.add_argument("-v", "--verbose", action="store_true")
    return parser


def _cmd_construct(args) -> int:
    _check_prime_arg(args.prime)
    if args.budget < 0:
        raise UsageError("budget must be nonnegative")
    workers = args.workers if args.workers is not None else _default_workers()
    config = SearchConfig(
        seed=args.seed,
        d_range=args.d_range,
        x_window=args.x_window,
        sieve_bound=args.sieve_bound,
        budget=args.budget,
        worker_count=workers,
    )
    out = args.out or f"certificate-p{args.prime}.json"
    p = args.prime
    log.info("event=construct_start p=%d seed=%d workers=%d", p, args.seed, workers)
    bundle = build_bundle(p)
    target = build_targets(bundle)
    forms = linear_forms(target)
    try:
        x0, y0, evidence = search(forms, target, config)
    except BudgetExhaustedError as exc:
        st = exc.stats
        log.error(
            "event=budget_exhausted d_examined=%d survivors=%d tests=%d",
            st.d_examined,
            st.survivors_tested,
            st.tests_used,
        )
        print(f"error: {exc}", file=sys.stderr)
        return 2
    cert = build_certificate(target, x0, y0, evidence, bundle, seed=args.seed)
    report = verify_certificate(cert)
    if not report.all_passed:
        for line in report.lines():
            print(line, file=sys.stderr)
        print(
            f"internal error: construction produced a certificate failing "
            f"{report.failing()}",
            file=sys.stderr,
        )
        return 3
    with open(out, "w") as fh:
        fh.write(emit(with_report(cert, report)))
    log.info("event=certificate_written path=%s", out)
    print(f"certificate written to {out} (q1, q2, q3 of {cert.q1.bit_length()}, "
          f"{cert.q2.bit_length()}, {cert.q3.bit_length()} bits)")
    return 0


def _cmd_verify(args) -> int:
    try:
        with open(args.file) as fh:
            cert = parse(fh.read())
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc}", file=sys.stderr)
        return EX_DATAERR
    except CertificateFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EX_DATAERR
    report = verify_certificate(cert)
    for line in report.lines():
        print(line)
    if report.all_passed:
        print("verdict: all checks passed")
        return 0
    print(f"verdict: FAILED checks {report.failing()}")
    return 1


def _cmd_series(args) -> int:
    _check_prime_arg(args.prime)
    if args.digits < 1:
        raise UsageError("digits must be positive")
    p, k = args.prime, args.digits
    # alpha/beta/gamma sit p digits below the working precision
    bundle = build_bundle(p, precision=max(4 * p + 1, k + p))
    rows = [
        ("a4", bundle.a4),
        ("a6", bundle.a6),
        ("x''_1", bundle.xpp1),
        ("x''_2", bundle.xpp2),
        ("x''_3", bundle.xpp3),
        ("alpha", bundle.alpha),
        ("beta", bundle.beta),
        ("gamma", bundle.gamma),
    ]
    print(f"series data at q = {p}^{2 * p}, shown to {k} base-{p} digits")
    for name, value in rows:
        print(f"{name:>6} = {format_expansion(value, k)}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EX_USAGE
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if getattr(args, "verbose", False) else logging.WARNING,
        format="%(message)s",
    )
    try:
        if args.command == "construct":
            return _cmd_construct(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "series":
            return _cmd_series(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EX_USAGE
    except (ValueError, ArithmeticError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    raise AssertionError("unreachable")


def entry() -> None:
    sys.exit(main())
