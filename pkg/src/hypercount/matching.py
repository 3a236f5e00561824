"""Exact matching and cover numbers, plus lifting of shadow matchings."""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .core import Edge, Family, codegree, mask_edge


@dataclass(frozen=True)
class Matching:
    edges: tuple[Edge, ...]

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class Cover:
    centers: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.centers)


def maximum_matching(H: Family) -> Matching:
    """A maximum matching; the lexicographically least one in edge order."""
    size, sel = kernels.max_matching(H.masks, 0)
    return Matching(tuple(H.edges[i] for i in sel[:size]))


def matching_number(H: Family) -> int:
    size, _ = kernels.max_matching(H.masks, 0)
    return int(size)


def has_matching(H: Family, m: int) -> Matching | None:
    """A matching of exactly m edges if one exists (early exit), else None."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return Matching(())
    if m > len(H):
        return None
    size, sel = kernels.max_matching(H.masks, m)
    if size < m:
        return None
    return Matching(tuple(H.edges[i] for i in sel[:m]))


def is_matching(edges) -> bool:
    seen: set[int] = set()
    for e in edges:
        if seen.intersection(e):
            return False
        seen.update(e)
    return True


def minimum_cover(H: Family) -> Cover:
    size, cov = kernels.min_cover(H.masks, H.n)
    if not H.edges:
        return Cover(())
    return Cover(mask_edge(int(cov)))


def cover_number(H: Family) -> int:
    return len(minimum_cover(H))


def lift_matching(H: Family, s: int, M) -> Matching:
    """Extend each (k-1)-set of a shadow matching to a disjoint edge of H.

    ``M`` must be pairwise disjoint (k-1)-sets, at most s + 1 of them, each of
    codegree >= s*k + 1 in H. Sets are extended in order; the i-th extension
    avoids the edges already chosen and the sets still waiting, and takes the
    smallest admissible extra vertex.
    """
    M = [tuple(sorted(F)) for F in M]
    k = H.k
    if len(M) > s + 1:
        raise ValueError(f"at most s+1={s + 1} sets can be lifted, got {len(M)}")
    for F in M:
        if len(F) != k - 1:
            raise ValueError(f"{F} is not a (k-1)-set")
    if not is_matching(M):
        raise ValueError("the sets to lift are not pairwise disjoint")
    for F in M:
        d = codegree(H, F)
        if d < s * k + 1:
            raise ValueError(f"codegree of {F} is {d} < s*k+1 = {s * k + 1}")
    lifted: list[Edge] = []
    blocked = set()
    for i, F in enumerate(M):
        waiting = {v for G in M[i + 1 :] for v in G}
        Fs = set(F)
        choice = None
        for x in range(1, H.n + 1):
            if x in Fs or x in blocked or x in waiting:
                continue
            G = tuple(sorted(Fs | {x}))
            if G in H:
                choice = G
                break
        if choice is None:
            # Unreachable when the codegree precondition holds.
            raise RuntimeError(f"no admissible extension for {F}")
        lifted.append(choice)
        blocked.update(choice)
    return Matching(tuple(lifted))


def verify_lift(H: Family, M, lifted: Matching) -> bool:
    """Lifted edges are edges of H, pairwise disjoint, and contain their sources."""
    if len(lifted) != len(M):
        return False
    if not is_matching(lifted.edges):
        return False
    return all(G in H and set(F) <= set(G) for F, G in zip(M, lifted.edges))

