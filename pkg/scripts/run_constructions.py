#!/usr/bin/env python3
"""Construct and verify certificates for a list of primes, with timings.

Usage: python scripts/run_constructions.py [p1 p2 ...]   (default: 5 7)
Certificates land in the working directory as certificate-p<P>.json.
"""

import sys
import time

from locyc.certificate import build_certificate, emit, verify_certificate, with_report
from locyc.prime_search import SearchConfig, search
from locyc.target_builder import build_targets, linear_forms
from locyc.tate_series import build_bundle


def run_one(p: int, seed: int = 1) -> dict:
    t0 = time.monotonic()
    bundle = build_bundle(p)
    target = build_targets(bundle)
    forms = linear_forms(target)
    t_series = time.monotonic() - t0

    t0 = time.monotonic()
    x0, y0, evidence = search(forms, target, SearchConfig(seed=seed))
    t_search = time.monotonic() - t0

    cert = build_certificate(target, x0, y0, evidence, bundle, seed=seed)
    t0 = time.monotonic()
    report = verify_certificate(cert)
    t_verify = time.monotonic() - t0

    path = f"certificate-p{p}.json"
    with open(path, "w") as fh:
        fh.write(emit(with_report(cert, report)))
    return {
        "p": p,
        "ok": report.all_passed,
        "q_bits": (cert.q1.bit_length(), cert.q2.bit_length(), cert.q3.bit_length()),
        "series_s": t_series,
        "search_s": t_search,
        "verify_s": t_verify,
        "path": path,
    }


def main():
    primes = [int(a) for a in sys.argv[1:]] or [5, 7]
    print(f"{'p':>4} {'checks':>7} {'q bits':>15} {'series':>8} {'search':>8} {'verify':>8}")
    for p in primes:
        row = run_one(p)
        bits = "/".join(str(b) for b in row["q_bits"])
        print(
            f"{row['p']:>4} {'pass' if row['ok'] else 'FAIL':>7} {bits:>15} "
            f"{row['series_s']:>7.2f}s {row['search_s']:>7.2f}s {row['verify_s']:>7.2f}s"
            f"   -> {row['path']}"
        )


if __name__ == "__main__":
    main()
