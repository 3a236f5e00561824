"""Extremal search over families with bounded matching number."""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .constructions import (
    ExtremalSpec,
    co_norm_A_closed,
    co_norm_H_closed,
    size_A,
    size_H_closed,
    sunflower_count_A_closed,
    sunflower_count_H_closed,
)
from .core import Family, binom, canonical_form, co_norm, edge_mask, sunflower_count

EXHAUSTIVE_LIMIT = 24
BRUTE_LIMIT = 20
MAX_WITNESSES = 16
MAX_STORED = 1 << 20
PATIENCE = 50


class SearchGuardError(ValueError):
    """Refused: the instance is beyond the exhaustive guard."""


@dataclass(frozen=True)
class Objective:
    kind: str
    parameter: int = 0

    def __post_init__(self):
        if self.kind not in ("size", "co", "sunflower"):
            raise ValueError(f"unknown objective {self.kind!r}")
        if self.kind == "co" and self.parameter < 1:
            raise ValueError("co:p needs p >= 1")
        if self.kind == "sunflower" and self.parameter < 2:
            raise ValueError("sunflower:l needs l >= 2")

    @classmethod
    def parse(cls, text: str) -> "Objective":
        name, _, arg = text.partition(":")
        if name == "size":
            if arg:
                raise ValueError("size takes no parameter")
            return cls("size")
        if not arg:
            raise ValueError(f"objective {text!r} needs a parameter, e.g. co:2")
        return cls(name, int(arg))

    def __str__(self) -> str:
        return "size" if self.kind == "size" else f"{self.kind}:{self.parameter}"

    @property
    def code(self) -> int:
        return {"size": kernels.KIND_SIZE, "co": kernels.KIND_CO, "sunflower": kernels.KIND_SUNFLOWER}[self.kind]

    def evaluate(self, H: Family) -> int:
        if self.kind == "size":
            return len(H)
        if self.kind == "co":
            return co_norm(H, self.parameter)
        return sunflower_count(H, self.parameter)

    def on_H(self, n: int, k: int, s: int) -> int:
        if self.kind == "size":
            return size_H_closed(n, k, s)
        if self.kind == "co":
            return co_norm_H_closed(n, k, s, self.parameter)
        return sunflower_count_H_closed(n, k, s, self.parameter)

    def on_A(self, spec: ExtremalSpec) -> int:
        if self.kind == "size":
            return size_A(spec)
        if self.kind == "co":
            return co_norm_A_closed(spec, self.parameter)
        return sunflower_count_A_closed(spec, self.parameter)


@dataclass
class SearchReport:
    optimum: int
    witnesses: list[Family]
    nodes_explored: int
    method: str
    seed: int | None = None
    optimal_count: int = 0
    witness_classes: int = 0
    truncated: bool = False
    params: dict = field(default_factory=dict)
    restart_optima: list[int] | None = None

    def to_json(self) -> dict:
        out = {
            "optimum": str(self.optimum),
            "witnesses": [[list(e) for e in W.edges] for W in self.witnesses],
            "nodes_explored": self.nodes_explored,
            "method": self.method,
            "seed": self.seed,
            "optimal_count": self.optimal_count,
            "witness_classes": self.witness_classes,
            "truncated": self.truncated,
            "params": self.params,
        }
        if self.restart_optima is not None:
            out["restarts_reaching_optimum"] = sum(1 for v in self.restart_optima if v == self.optimum)
        return out


@dataclass(frozen=True)
class Universe:
    """All k-subsets of [n] in lexicographic order, with (k-1)-subset indices."""

    n: int
    k: int
    edges: tuple
    masks: np.ndarray
    sub_idx: np.ndarray
    n_sub: int


@lru_cache(maxsize=64)
def universe(n: int, k: int) -> Universe:
    edges = tuple(itertools.combinations(range(1, n + 1), k))
    subs = {E: t for t, E in enumerate(itertools.combinations(range(1, n + 1), k - 1))}
    sub_idx = np.array([[subs[E] for E in itertools.combinations(F, k - 1)] for F in edges], dtype=np.int64)
    masks = np.array([edge_mask(e) for e in edges], dtype=np.int64)
    return Universe(n, k, edges, masks, sub_idx.reshape(len(edges), k), len(subs))


def family_from_bits(U: Universe, bits: int) -> Family:
    return Family._trusted(U.n, U.k, (U.edges[i] for i in range(len(U.edges)) if (bits >> i) & 1))


def dedupe(families, cap: int = MAX_WITNESSES) -> tuple[list[Family], int]:
    """Up to ``cap`` pairwise non-isomorphic representatives and the class count."""
    seen: set = set()
    reps: list[Family] = []
    for W in families:
        key = canonical_form(W)
        if key in seen:
            continue
        seen.add(key)
        if len(reps) < cap:
            reps.append(W)
    return reps, len(seen)


def _check_exhaustive(n: int, k: int, limit: int) -> Universe:
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n} k={k}")
    if binom(n, k) > limit:
        raise SearchGuardError(f"C({n},{k}) = {binom(n, k)} exceeds the exhaustive bound C(n,k) <= {limit}")
    return universe(n, k)


def enumerate_bitmasks(n: int, k: int, s: int, degree_cap: int = -1) -> tuple[Universe, np.ndarray]:
    """Every sub-family of C([n], k) with matching number <= s, as edge-index bitmasks."""
    U = _check_exhaustive(n, k, EXHAUSTIVE_LIMIT if degree_cap < 0 else 62)
    _, count, bits, _ = kernels.extremal_dfs(
        U.masks, U.sub_idx, U.n_sub, n, s, kernels.KIND_CONST, 0, degree_cap, MAX_STORED
    )
    if count != len(bits):
        raise SearchGuardError(f"{count} families exceed the storage cap {MAX_STORED}")
    return U, bits


def exhaustive_max(n: int, k: int, s: int, obj: Objective, max_witnesses: int = MAX_WITNESSES) -> SearchReport:
    """Exact maximum of ``obj`` over all families on [n] with matching number <= s."""
    U = _check_exhaustive(n, k, EXHAUSTIVE_LIMIT)
    if obj.kind != "size" and k < 2:
        raise ValueError("codegree objectives need k >= 2")
    best, count, bits, nodes = kernels.extremal_dfs(
        U.masks, U.sub_idx, U.n_sub, n, s, obj.code, obj.parameter, -1, MAX_STORED
    )
    reps, classes = dedupe((family_from_bits(U, int(b)) for b in bits), max_witnesses)
    return SearchReport(
        optimum=int(best),
        witnesses=reps,
        nodes_explored=int(nodes),
        method="exhaustive",
        optimal_count=int(count),
        witness_classes=classes,
        truncated=count != len(bits),
        params={"n": n, "k": k, "s": s, "objective": str(obj)},
    )


def _forbidden_matchings(U: Universe, size: int) -> list[int]:
    # Edge-index bitmasks of every matching of the given size in the universe.
    out: list[int] = []
    masks = [int(x) for x in U.masks]

    def grow(start: int, used: int, bits: int, left: int) -> None:
        if left == 0:
            out.append(bits)
            return
        for i in range(start, len(masks)):
            if masks[i] & used == 0:
                grow(i + 1, used | masks[i], bits | (1 << i), left - 1)

    grow(0, 0, 0, size)
    return out


def brute_force_max(n: int, k: int, s: int, obj: Objective, backend: str = "numpy") -> SearchReport:
    """Unpruned scan of all 2**C(n,k) families; independent check of :func:`exhaustive_max`."""
    U = _check_exhaustive(n, k, BRUTE_LIMIT)
    forbidden = np.array(_forbidden_matchings(U, s + 1), dtype=np.int64)
    inc = np.zeros(U.n_sub, dtype=np.int64)
    for i in range(len(U.edges)):
        for t in U.sub_idx[i]:
            inc[t] |= 1 << i
    m = len(U.edges)
    if backend == "numpy":
        best, count, bits = kernels.brute_extremal_numpy(m, forbidden, inc, obj.code, obj.parameter, MAX_STORED)
    else:
        best, count, bits = kernels.brute_extremal_loop(m, forbidden, inc, obj.code, obj.parameter, MAX_STORED)
    reps, classes = dedupe((family_from_bits(U, int(b)) for b in bits), MAX_WITNESSES)
    return SearchReport(
        optimum=int(best),
        witnesses=reps,
        nodes_explored=1 << m,
        method="brute_force",
        optimal_count=int(count),
        witness_classes=classes,
        truncated=count != len(bits),
        params={"n": n, "k": k, "s": s, "objective": str(obj), "backend": backend},
    )


@lru_cache(maxsize=16)
def _disjointness(n: int, k: int) -> np.ndarray:
    masks = universe(n, k).masks
    return (masks[:, None] & masks[None, :]) == 0


def hill_climb(
    n: int,
    k: int,
    s: int,
    obj: Objective,
    seed: int | None = None,
    restarts: int = 100,
    steps: int = 1000,
    patience: int = PATIENCE,
    threads: int = 1,
) -> SearchReport:
    """Seeded randomized local search from the empty family, best over restarts.

    Restart r draws its move stream from child r of ``SeedSequence(seed)``, so
    the report does not depend on ``threads``. Among restarts reaching the best
    value the lexicographically least family is listed first.
    """
    if obj.kind != "size" and k < 2:
        raise ValueError("codegree objectives need k >= 2")
    if restarts < 1 or steps < 0:
        raise ValueError("need restarts >= 1 and steps >= 0")
    if seed is None:
        seed = int(np.random.SeedSequence().entropy % (1 << 63))
    U = universe(n, k)
    disj = _disjointness(n, k)
    children = np.random.SeedSequence(seed).spawn(restarts)

    def run(child):
        rnd = np.random.default_rng(child).random((steps, 3))
        best, flags, accepted = kernels.hill_climb_run(
            U.masks, U.sub_idx, U.n_sub, disj, s, obj.code, obj.parameter, rnd, patience
        )
        return int(best), np.flatnonzero(flags), int(accepted)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, children))
    else:
        results = [run(c) for c in children]
    optima = [r[0] for r in results]
    top = max(optima)
    winners = sorted(
        {tuple(U.edges[i] for i in idx) for val, idx, _ in results if val == top}
    )
    reps, classes = dedupe((Family._trusted(n, k, w) for w in winners), MAX_WITNESSES)
    return SearchReport(
        optimum=top,
        witnesses=reps,
        nodes_explored=restarts * steps,
        method="hill_climb",
        seed=seed,
        optimal_count=sum(1 for v in optima if v == top),
        witness_classes=classes,
        params={
            "n": n,
            "k": k,
            "s": s,
            "objective": str(obj),
            "restarts": restarts,
            "steps": steps,
            "patience": patience,
            "moves": "type uniform over add/remove/swap; target uniform over feasible",
            "accepted_moves": sum(r[2] for r in results),
        },
        restart_optima=optima,
    )


@dataclass(frozen=True)
class ThresholdRow:
    n: int
    value_H: int
    value_Ak: int
    winner: str

    def csv(self) -> str:
        return f"{self.n},{self.value_H},{self.value_Ak},{self.winner}"


def threshold_scan(k: int, s: int, obj: Objective, n_from: int, n_to: int) -> list[ThresholdRow]:
    """Closed-form objective on H(n,k,s) against A(n,k,s,k) for each n."""
    if n_from < k:
        raise ValueError(f"n_from must be >= k={k}")
    rows = []
    for n in range(n_from, n_to + 1):
        vh = obj.on_H(n, k, s)
        va = obj.on_A(ExtremalSpec(n, k, s, k))
        winner = "H" if vh > va else "Ak" if va > vh else "tie"
        rows.append(ThresholdRow(n, vh, va, winner))
    return rows


def stable_threshold(rows: list[ThresholdRow]) -> int | None:
    """Smallest n from which H wins strictly on every remaining row, if any."""
    first = None
    for row in rows:
        if row.winner == "H":
            if first is None:
                first = row.n
        else:
            first = None
    return first
