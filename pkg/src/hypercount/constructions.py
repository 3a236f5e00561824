"""Extremal candidate families and their closed-form statistics.

``A(n, k, s, i)`` is the family of k-sets meeting the window ``[i*s + i - 1]``
in at least i points; ``A(n, k, s, 1)`` is the union of the s stars centred
at 1..s, and ``A(n, k, s, k)`` is the complete k-graph on the window.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass

from .core import Family, binom


class DegenerateSpecWarning(UserWarning):
    """The window ``[i*s + i - 1]`` is larger than the ground set."""


@dataclass(frozen=True)
class ExtremalSpec:
    n: int
    k: int
    s: int
    i: int = 1

    def __post_init__(self):
        if not 1 <= self.i <= self.k <= self.n:
            raise ValueError(f"need 1 <= i <= k <= n, got i={self.i} k={self.k} n={self.n}")
        if self.s < 1:
            raise ValueError(f"s must be >= 1, got {self.s}")

    @property
    def window(self) -> int:
        return self.i * self.s + self.i - 1

    @property
    def degenerate(self) -> bool:
        return self.window > self.n


def build_A(spec: ExtremalSpec) -> Family:
    if spec.degenerate:
        warnings.warn(
            f"window [{spec.window}] exceeds [{spec.n}] for {spec}; the matching number "
            "of the result need not equal s",
            DegenerateSpecWarning,
            stacklevel=2,
        )
    w = min(spec.window, spec.n)
    edges = (
        F
        for F in itertools.combinations(range(1, spec.n + 1), spec.k)
        if sum(1 for v in F if v <= w) >= spec.i
    )
    return Family._trusted(spec.n, spec.k, edges)


def build_H(n: int, k: int, s: int) -> Family:
    return build_A(ExtremalSpec(n, k, s, 1))


def size_A(spec: ExtremalSpec) -> int:
    n, k, i = spec.n, spec.k, spec.i
    w = min(spec.window, n)
    return sum(binom(w, j) * binom(n - w, k - j) for j in range(i, k + 1))


def _A_profile(spec: ExtremalSpec):
    # (number of (k-1)-sets, their codegree) grouped by |E ∩ window| = j.
    n, k, i = spec.n, spec.k, spec.i
    w = min(spec.window, n)
    for j in range(0, k):
        count = binom(w, j) * binom(n - w, k - 1 - j)
        if not count:
            continue
        if j >= i:
            d = n - k + 1
        elif j == i - 1:
            d = w - j
        else:
            d = 0
        yield count, d


def co_norm_A_closed(spec: ExtremalSpec, p: int) -> int:
    """co_p of A(n, k, s, i) from its codegree profile (0**0 = 1)."""
    if spec.k < 2:
        raise ValueError("k must be >= 2")
    return sum(c * d**p for c, d in _A_profile(spec))


def sunflower_count_A_closed(spec: ExtremalSpec, l: int) -> int:
    if l < 2:
        raise ValueError("l must be >= 2")
    return sum(c * math.comb(d, l) for c, d in _A_profile(spec))


def co_norm_H_closed(n: int, k: int, s: int, p: int) -> int:
    """(k-1)-sets meeting [s] have codegree n-k+1; the others have codegree s."""
    if k < 2 or s < 0 or n < k:
        raise ValueError(f"need k >= 2, s >= 0, n >= k; got n={n} k={k} s={s}")
    avoid = binom(n - s, k - 1)
    return (binom(n, k - 1) - avoid) * (n - k + 1) ** p + avoid * s**p


def sunflower_count_H_closed(n: int, k: int, s: int, l: int) -> int:
    if l < 2:
        raise ValueError("l must be >= 2")
    if k < 2 or s < 0 or n < k:
        raise ValueError(f"need k >= 2, s >= 0, n >= k; got n={n} k={k} s={s}")
    avoid = binom(n - s, k - 1)
    return (binom(n, k - 1) - avoid) * math.comb(n - k + 1, l) + avoid * math.comb(s, l)


def size_H_closed(n: int, k: int, s: int) -> int:
    return binom(n, k) - binom(n - s, k)


def co_norm_H3_recurrence(n: int, s: int, p: int) -> int:
    """co_p of H(n, 3, s) via peeling off vertex 1: reduces to H(n-1, 3, s-1).

    The base s = 0 is the empty family, whose co_i is 0 for i >= 1 and
    C(n, 2) for i = 0.
    """
    if s == 0:
        return binom(n, 2) if p == 0 else 0
    rest = sum(math.comb(p, i) * co_norm_H3_recurrence(n - 1, s - 1, i) for i in range(p + 1))
    return (n - 1) * (n - 2) ** p + rest


@dataclass(frozen=True)
class ReferenceBounds:
    ekr: int
    hm: int


def reference_bounds(n: int, k: int) -> ReferenceBounds:
    """Largest intersecting family, and largest non-trivial one, for n >= 2k."""
    if n < 2 * k:
        raise ValueError(f"reference bounds need n >= 2k, got n={n} k={k}")
    ekr = binom(n - 1, k - 1)
    return ReferenceBounds(ekr=ekr, hm=ekr - binom(n - k - 1, k - 1) + 1)
