"""The pure-Python kernels (numba disabled) must match the compiled ones."""

import json
import os
import subprocess
import sys

import pytest

SCRIPT = r"""
import json
from hypercount._accel import backend_name
from hypercount.search import Objective, exhaustive_max, brute_force_max, hill_climb
from hypercount.matching import maximum_matching, minimum_cover
from hypercount.constructions import build_H
out = {"backend": backend_name()}
for obj in ("size", "co:2", "sunflower:2"):
    o = Objective.parse(obj)
    r = exhaustive_max(5, 2, 1, o)
    out["ex " + obj] = [r.optimum, r.optimal_count, r.nodes_explored, r.witness_classes]
    b = brute_force_max(5, 2, 1, o, backend="loop")
    out["bf " + obj] = [b.optimum, b.optimal_count]
h = hill_climb(7, 3, 1, Objective.parse("co:2"), seed=2, restarts=4, steps=150)
out["hill"] = h.to_json()
H = build_H(9, 3, 2)
out["mm"] = [list(e) for e in maximum_matching(H).edges]
out["cover"] = list(minimum_cover(H).centers)
print(json.dumps(out, sort_keys=True))
"""


def _run(disable: bool) -> dict:
    env = dict(os.environ)
    env.pop("HYPERCOUNT_DISABLE_NUMBA", None)
    if disable:
        env["HYPERCOUNT_DISABLE_NUMBA"] = "1"
    proc = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


@pytest.mark.slow
def test_fallback_matches_numba():
    fast, slow = _run(False), _run(True)
    assert slow.pop("backend") == "python"
    fast.pop("backend")
    assert fast == slow
