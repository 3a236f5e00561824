"""Time the hot kernels with numba on and off.

Each backend runs in its own interpreter because the switch is read at import
time. The first call of every workload is a warm-up (JIT compile or cache
load) and is excluded from the timing.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from hypercount._accel import backend_name
from hypercount.constructions import build_H
from hypercount.matching import maximum_matching, minimum_cover
from hypercount.search import Objective, brute_force_max, exhaustive_max, hill_climb

repeat = int(sys.argv[1])
co2 = Objective("co", 2)
H = build_H(12, 3, 3)
workloads = {
    "max_matching H(12,3,3) x20": lambda: [maximum_matching(H) for _ in range(20)],
    "min_cover H(12,3,3) x20": lambda: [minimum_cover(H) for _ in range(20)],
    "exhaustive_max (6,3,1) co:2": lambda: exhaustive_max(6, 3, 1, co2),
    "brute loop (5,2,1) co:2": lambda: brute_force_max(5, 2, 1, co2, backend="loop"),
    "hill_climb (10,3,1) co:2 20x200": lambda: hill_climb(10, 3, 1, co2, seed=1, restarts=20, steps=200),
}
out = {"backend": backend_name(), "seconds": {}}
for name, fn in workloads.items():
    fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    out["seconds"][name] = best
print(json.dumps(out))
"""


def run_backend(disable: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("HYPERCOUNT_DISABLE_NUMBA", None)
    if disable:
        env["HYPERCOUNT_DISABLE_NUMBA"] = "1"
    proc = subprocess.run(
        [sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(proc.stdout)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="timed runs per workload; best is reported")
    parser.add_argument("--json", action="store_true", help="print raw JSON instead of a table")
    args = parser.parse_args(argv)

    fast = run_backend(False, args.repeat)
    slow = run_backend(True, args.repeat)
    if args.json:
        print(json.dumps({"numba": fast, "python": slow}, indent=2))
        return 0
    width = max(len(name) for name in fast["seconds"])
    print(f"{'workload':<{width}}  {'numba s':>10}  {'python s':>10}  {'speedup':>8}")
    for name, t_fast in fast["seconds"].items():
        t_slow = slow["seconds"][name]
        print(f"{name:<{width}}  {t_fast:10.4f}  {t_slow:10.4f}  {t_slow / t_fast:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
