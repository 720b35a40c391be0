#!/usr/bin/env python3
"""Measure how much sieving and testing the simultaneous-prime search
does across seeds, to sanity-check the window and sieve-bound defaults.

Reads the search's structured log lines, which are the supported way to
observe its statistics.

Usage: python scripts/search_profile.py [prime] [n_seeds]
"""

import logging
import statistics
import sys

from locyc.prime_search import SearchConfig, search
from locyc.target_builder import build_targets, linear_forms
from locyc.tate_series import build_bundle


class StatsCapture(logging.Handler):
    def __init__(self):
        super().__init__(level=logging.INFO)
        self.rows = []

    def emit(self, record):
        msg = record.getMessage()
        if not msg.startswith("event=search_stats"):
            return
        row = dict(part.split("=", 1) for part in msg.split())
        del row["event"]
        self.rows.append({k: float(v.rstrip("s")) for k, v in row.items()})


def profile(p: int, n_seeds: int):
    capture = StatsCapture()
    logger = logging.getLogger("locyc.prime_search")
    logger.addHandler(capture)
    logger.setLevel(logging.INFO)

    target = build_targets(build_bundle(p))
    forms = linear_forms(target)
    for seed in range(1, n_seeds + 1):
        search(forms, target, SearchConfig(seed=seed))

    def col(name):
        return [row[name] for row in capture.rows]

    print(f"p = {p}, {n_seeds} seeds:")
    for name in ("d_examined", "q3_primes", "survivors", "tests", "elapsed"):
        vals = col(name)
        print(
            f"  {name:<12} median {statistics.median(vals):>8.1f}   "
            f"max {max(vals):>8.1f}"
        )


if __name__ == "__main__":
    p = int(sys.argv[1]) if len(sys.argv) > 1 else 5
    n = int(sys.argv[2]) if len(sys.argv) > 2 else 10
    profile(p, n)
