"""Seeded random families with bounded matching number, for property checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import Family
from .search import universe


@dataclass(frozen=True)
class CorpusItem:
    family: Family
    s: int
    q: float


def random_bounded_family(rng: np.random.Generator, n: int, k: int, s: int, q: float) -> Family:
    """Keep each k-set with probability q, then knock random edges out of a
    maximum matching until the matching number is at most s."""
    U = universe(n, k)
    keep = np.flatnonzero(rng.random(len(U.edges)) < q)
    while True:
        size, sel = kernels.max_matching(U.masks[keep], 0)
        if size <= s:
            break
        drop = sel[int(rng.integers(size))]
        keep = np.delete(keep, drop)
    return Family._trusted(n, k, (U.edges[i] for i in keep))


def random_corpus(
    size: int = 10_000,
    seed: int = 0,
    k_values=(2, 3),
    n_max: int = 12,
    s_values=(1, 2, 3),
    qs=(0.1, 0.3, 0.5),
) -> list[CorpusItem]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(size):
        k = int(rng.choice(k_values))
        n = int(rng.integers(k + 1, n_max + 1))
        s = int(rng.choice(s_values))
        q = float(rng.choice(qs))
        out.append(CorpusItem(random_bounded_family(rng, n, k, s, q), s, q))
    return out
