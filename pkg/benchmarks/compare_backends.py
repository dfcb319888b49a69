"""Benchmark the compiled scoring kernels against the NumPy fallback.

Run from the repository root:

    python3 benchmarks/compare_backends.py [--samples 50000] [--terms 16]

Each kernel is timed on the shapes the sweep explorer actually uses: bulk
probe scoring for sampled sweeps and gauge-fixed lattice scans for exhaustive
ones. Results are cross-checked between backends before timing.
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from qlbn.kernels import available_backends


def time_call(fn, *args, repeats: int = 5) -> float:
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=50000, help="probe rows for block_scores")
    parser.add_argument("--terms", type=int, default=16, help="terms per outcome block")
    parser.add_argument("--lattice-terms", type=int, default=7, help="terms for the exhaustive scan")
    args = parser.parse_args()

    backends = available_backends()
    if "compiled" not in backends:
        print("compiled extension not built; nothing to compare")
        return

    rng = np.random.default_rng(0)
    mags = np.ascontiguousarray(rng.random(args.terms))
    rows = np.ascontiguousarray(rng.random((args.samples, args.terms)) * 2 * math.pi)
    scan_mags = np.ascontiguousarray(rng.random(args.lattice_terms))
    micro_mags = np.ascontiguousarray(rng.random(32))
    micro_phases = np.ascontiguousarray(rng.random(32) * 2 * math.pi)

    # agreement check before timing anything
    ref = np.asarray(backends["python"].block_scores(mags, rows))
    got = np.asarray(backends["compiled"].block_scores(mags, rows))
    worst = float(np.max(np.abs(ref - got)))
    assert worst < 1e-10, f"backends disagree by {worst}"

    cases = [
        (
            f"interference_sum (32 terms, x1000)",
            lambda mod: [mod.interference_sum(micro_mags, micro_phases) for _ in range(1000)],
        ),
        (
            f"block_scores ({args.samples} x {args.terms})",
            lambda mod: mod.block_scores(mags, rows),
        ),
        (
            f"lattice scan ({args.lattice_terms} terms, 8^{args.lattice_terms - 1} points)",
            lambda mod: mod.lattice_block_extremes(scan_mags, math.pi / 4, 8),
        ),
    ]

    print(f"{'kernel':<38} {'python':>10} {'compiled':>10} {'speedup':>9}")
    for label, runner in cases:
        timings = {
            name: time_call(runner, backends[name]) for name in ("python", "compiled")
        }
        speedup = timings["python"] / timings["compiled"]
        print(
            f"{label:<38} {timings['python'] * 1e3:>8.1f}ms {timings['compiled'] * 1e3:>8.1f}ms "
            f"{speedup:>8.1f}x"
        )


if __name__ == "__main__":
    main()
