"""Checkers for the structural lemmas, each returning violations rather than raising.

A non-empty violation list means a bug in this package (or a false lemma),
never a user error.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from . import kernels
from .constructions import co_norm_H3_recurrence, co_norm_H_closed
from .core import (
    Family,
    binom,
    co_norm,
    high_codegree_family,
    restrict_avoid,
    sunflower_count,
    sunflower_count_bruteforce,
)
from .matching import lift_matching, matching_number, maximum_matching, verify_lift
from .search import dedupe, enumerate_bitmasks, family_from_bits, universe


def identity_violations(H: Family, brute_limit: int = 12) -> list[str]:
    """Codegree/sunflower identities; brute-force sunflowers only on small families."""
    out = []
    k, size = H.k, len(H)
    if co_norm(H, 1) != k * size:
        out.append(f"co_1 != k|H| for {H.edges}")
    N2 = sunflower_count(H, 2)
    if co_norm(H, 2) != 2 * N2 + k * size:
        out.append(f"co_2 != 2N + k|H| for {H.edges}")
    for l in (2, 3):
        N = sunflower_count(H, l)
        if co_norm(H, l) < math.factorial(l) * N:
            out.append(f"co_{l} < {l}!N for {H.edges}")
        if size <= brute_limit and N != sunflower_count_bruteforce(H, l):
            out.append(f"sunflower formula != brute force (l={l}) for {H.edges}")
    return out


def shadow_lemma_violations(H: Family, s: int) -> list[str]:
    """High-codegree shadow K_{sk+1} has matching number <= s; its maximum
    matching lifts to a matching of H."""
    out = []
    K = high_codegree_family(H, s * H.k + 1)
    M = maximum_matching(K).edges[: s + 1]
    if len(M) > s:
        out.append(f"nu(K_(sk+1)) > s={s} for {H.edges}")
    lifted = lift_matching(H, s, M)
    if not verify_lift(H, M, lifted):
        out.append(f"lift of {M} invalid: {lifted.edges}")
    return out


def restricted_lemma_violations(H: Family, s: int, degree_threshold: int | None = None) -> list[str]:
    """Lemmas about deleting vertices, for H with matching number exactly s.

    The vertex-degree statement is checked at ``degree_threshold`` (default
    2s+1). At 2s+1 it has small counterexamples, e.g. on [6] with s=1 the edge
    {1,2,5} plus every triple through 6 meeting {1,2,5}; 3s+1 is the
    threshold the pigeonhole argument actually supports.
    """
    if degree_threshold is None:
        degree_threshold = 2 * s + 1
    out = []
    n, k = H.n, H.k
    nu_without = {i: matching_number(restrict_avoid(H, (i,))) for i in range(1, n + 1)}
    for i, nu in nu_without.items():
        if not s - 1 <= nu <= s:
            out.append(f"nu(H minus {i}) = {nu} outside [s-1, s], s={s}")
    if k != 3:
        return out
    K = high_codegree_family(H, 3 * s + 1)
    for i, j in K.edges:
        nu = matching_number(restrict_avoid(H, (i, j)))
        if nu > s - 1:
            out.append(f"codegree({i},{j}) >= 3s+1 but nu(H minus {i},{j}) = {nu}")
    deg = {v: 0 for v in range(1, n + 1)}
    for e in K.edges:
        for v in e:
            deg[v] += 1
    for i, d in deg.items():
        if d >= degree_threshold and nu_without[i] != s - 1:
            out.append(f"deg_K({i}) = {d} >= {degree_threshold} but nu(H minus {i}) = {nu_without[i]}")
    return out


@dataclass
class SequenceCase:
    m: int
    maximum: int
    bound: int
    argmax: tuple[int, ...]

    @property
    def equal(self) -> bool:
        return self.maximum == self.bound


def _capped_sequences(a: int, b: int, c: int, n: int, total: int):
    # Non-increasing x_1..x_n with x_i <= a (i <= c), x_i <= b (i > c), sum <= total.
    def rec(i: int, cap: int, left: int, prefix: tuple):
        if i == n:
            yield prefix
            return
        hi = min(cap, a if i < c else b, left)
        for x in range(hi, -1, -1):
            yield from rec(i + 1, x, left - x, prefix + (x,))

    yield from rec(0, a, total, ())


def verify_sequence_inequality(a: int, b: int, c: int, n: int, p: int) -> list[SequenceCase]:
    """Exhaustive maximum of sum x_i**p per admissible m, against c*a**p + (m-c*a)*b**(p-1)."""
    if not (0 < b < a and 0 <= c < n and p >= 2):
        raise ValueError(f"need 0 < b < a, 0 <= c < n, p >= 2; got a={a} b={b} c={c} n={n} p={p}")
    lo, hi = c * a, c * a + (n - c) * b
    best_at: dict[int, tuple[int, tuple]] = {}
    for x in _capped_sequences(a, b, c, n, hi):
        t = sum(x)
        v = sum(xi**p for xi in x)
        if t not in best_at or v > best_at[t][0]:
            best_at[t] = (v, x)
    cases = []
    run = (-1, ())
    for t in range(0, hi):
        if t in best_at and best_at[t][0] > run[0]:
            run = best_at[t]
        if lo < t < hi:
            cases.append(SequenceCase(t, run[0], c * a**p + (t - c * a) * b ** (p - 1), run[1]))
    return cases


@dataclass
class GraphBoundReport:
    n: int
    s: int
    maximum: int
    bound: int
    extremal: list[Family]
    extremal_classes: int
    labelled_count: int

    @property
    def holds(self) -> bool:
        return self.maximum <= self.bound

    @property
    def attained(self) -> bool:
        return self.maximum == self.bound


def verify_graph_bound(n: int, s: int) -> GraphBoundReport:
    """Largest graph on [n] with matching number <= s and max degree <= 2s."""
    if n > 8:
        raise ValueError(f"graph bound check is exhaustive; n={n} exceeds 8")
    if n < 2 * s + 1:
        raise ValueError(f"need n >= 2s+1, got n={n} s={s}")
    U = universe(n, 2)
    best, count, bits, _ = kernels.extremal_dfs(U.masks, U.sub_idx, U.n_sub, n, s, kernels.KIND_SIZE, 0, 2 * s, 1 << 20)
    reps, classes = dedupe(family_from_bits(U, int(b)) for b in bits)
    return GraphBoundReport(n, s, int(best), s * (2 * s + 1), reps, classes, int(count))


def recurrence_failures(n_max: int = 30, s_max: int = 5, p_max: int = 6) -> list[tuple[int, int, int]]:
    """(n, s, p) where the k=3 closed form disagrees with the vertex-peeling recurrence."""
    bad = []
    for n in range(4, n_max + 1):
        for s in range(1, min(s_max, n - 3) + 1):
            for p in range(0, p_max + 1):
                rhs = (n - 1) * (n - 2) ** p + sum(
                    math.comb(p, i) * co_norm_H_closed(n - 1, 3, s - 1, i) for i in range(p + 1)
                )
                if co_norm_H_closed(n, 3, s, p) != rhs or co_norm_H3_recurrence(n, s, p) != rhs:
                    bad.append((n, s, p))
    return bad


def lower_bound_failures(n_max: int = 30, s_max: int = 5, p_max: int = 6) -> list[tuple[int, int, int]]:
    bad = []
    for n in range(4, n_max + 1):
        for s in range(1, min(s_max, n - 3) + 1):
            for p in range(1, p_max + 1):
                v = co_norm_H_closed(n, 3, s, p)
                mid = (binom(n, 2) - binom(n - s, 2)) * (n - 2) ** p
                if not v >= mid >= s * (n - s) * (n - 2) ** p:
                    bad.append((n, s, p))
    return bad


def exhaustive_shadow_violations(n: int = 6, k: int = 3, s: int = 1) -> tuple[int, list[str]]:
    """Shadow lemma over every family on [n] with matching number <= s."""
    U, bits = enumerate_bitmasks(n, k, s)
    out: list[str] = []
    for b in bits:
        out.extend(shadow_lemma_violations(family_from_bits(U, int(b)), s))
    return len(bits), out


# -- grid runner ---------------------------------------------------------------


@dataclass
class LemmaResult:
    name: str
    params: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{tag} {self.name} [{self.params}]{extra}"


@dataclass
class _Grid:
    corpus: int
    graph_cases: list = field(default_factory=list)
    seq_n: int = 6
    exhaustive_shadow: bool = True


GRIDS = {
    "small": _Grid(corpus=300, graph_cases=[(3, 1), (4, 1), (5, 1), (5, 2)], seq_n=5),
    "full": _Grid(
        corpus=10_000,
        graph_cases=[(3, 1), (4, 1), (5, 1), (6, 1), (7, 1), (5, 2), (6, 2), (7, 2)],
        seq_n=6,
    ),
}


def run_lemma_grid(grid: str = "small", seed: int = 0) -> list[LemmaResult]:
    from .corpus import random_corpus

    if grid not in GRIDS:
        raise ValueError(f"unknown grid {grid!r}; choose from {sorted(GRIDS)}")
    g = GRIDS[grid]
    results: list[LemmaResult] = []

    def record(name, params, fn):
        t0 = time.perf_counter()
        problems = fn()
        dt = time.perf_counter() - t0
        detail = f"{len(problems)} violations, first: {problems[0]}" if problems else ""
        results.append(LemmaResult(name, params, not problems, detail, dt))

    record("co_p recurrence for H(n,3,s)", "n<=30 s<=5 p<=6", recurrence_failures)
    record("co_p lower bound s(n-s)(n-2)^p", "n<=30 s<=5 p<=6", lower_bound_failures)

    def seq():
        bad = []
        for a in range(2, 6):
            for b in range(1, a):
                for n in range(1, g.seq_n + 1):
                    for c in range(0, min(3, n - 1) + 1):
                        for p in (2, 3):
                            for case in verify_sequence_inequality(a, b, c, n, p):
                                if case.maximum > case.bound:
                                    bad.append((a, b, c, n, p, case.m))
                                if (case.m - c * a) % b == 0 and not case.equal:
                                    bad.append((a, b, c, n, p, case.m, "no equality"))
        return bad

    record("capped sequence inequality", f"a<=5 b<a c<=3 n<={g.seq_n} p in 2,3", seq)

    for n, s in g.graph_cases:
        def gb(n=n, s=s):
            r = verify_graph_bound(n, s)
            return [] if r.holds else [f"max {r.maximum} > {r.bound}"]

        record("graph bound |H| <= s(2s+1)", f"n={n} s={s}", gb)

    corpus = random_corpus(g.corpus, seed=seed)
    params = f"{g.corpus} random families, seed={seed}"
    record("codegree identities", params, lambda: [v for it in corpus for v in identity_violations(it.family)])
    record("shadow matching lemma", params, lambda: [v for it in corpus for v in shadow_lemma_violations(it.family, it.s)])

    def restricted():
        out = []
        for it in corpus:
            if matching_number(it.family) == it.s:
                out.extend(restricted_lemma_violations(it.family, it.s))
        return out

    record("restricted-family lemmas", params + ", nu=s subset", restricted)

    def restricted_3s1():
        out = []
        for it in corpus:
            if it.family.k == 3 and matching_number(it.family) == it.s:
                out.extend(restricted_lemma_violations(it.family, it.s, degree_threshold=3 * it.s + 1))
        return out

    record("restricted-family lemmas, degree threshold 3s+1", params + ", nu=s subset", restricted_3s1)
    if g.exhaustive_shadow:
        record("shadow matching lemma (exhaustive)", "n=6 k=3 s=1", lambda: exhaustive_shadow_violations(6, 3, 1)[1])
    return results
