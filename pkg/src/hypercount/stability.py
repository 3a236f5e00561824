"""Decompositions of a family into at most s stars."""

from __future__ import annotations

from dataclasses import dataclass

from .core import Edge, Family, binom, high_codegree_family, trivial_center, co_norm
from .matching import matching_number, maximum_matching, minimum_cover


@dataclass(frozen=True)
class StarDecomposition:
    centers: tuple[int, ...]
    parts: tuple[tuple[Edge, ...], ...]

    def to_json(self) -> dict:
        return {"centers": list(self.centers), "parts": [[list(e) for e in part] for part in self.parts]}


@dataclass(frozen=True)
class Diagnostic:
    step: str
    message: str

    def __str__(self) -> str:
        return f"{self.step}: {self.message}"


def _assign(H: Family, centers) -> StarDecomposition | None:
    centers = tuple(sorted(centers))
    parts: list[list[Edge]] = [[] for _ in centers]
    for e in H.edges:
        for idx, x in enumerate(centers):
            if x in e:
                parts[idx].append(e)
                break
        else:
            return None
    return StarDecomposition(centers, tuple(tuple(p) for p in parts))


def stars_cover(H: Family, s: int) -> StarDecomposition | None:
    """At most s stars covering H (exact cover search), or None."""
    if s < 0:
        raise ValueError("s must be >= 0")
    cover = minimum_cover(H)
    if len(cover) > s:
        return None
    return _assign(H, cover.centers)


def verify_decomposition(H: Family, dec: StarDecomposition, s: int) -> bool:
    """Parts partition H, each part lies in its centre's star, at most s centres."""
    if len(dec.centers) > s or len(set(dec.centers)) != len(dec.centers):
        return False
    seen: list[Edge] = []
    for x, part in zip(dec.centers, dec.parts):
        if any(x not in e for e in part):
            return False
        seen.extend(part)
    return sorted(seen) == list(H.edges)


def stability_decompose(H: Family, s: int) -> StarDecomposition | Diagnostic:
    """Star decomposition built from a maximum matching F_1..F_s.

    For each F_i collect the edges meeting F_i and no other F_j, take their
    common vertex (smallest label) as a centre, then check the centres cover
    H. Any failing step yields a :class:`Diagnostic` instead; this can happen
    for small n even when a decomposition exists (see :func:`stars_cover`).
    """
    nu = matching_number(H)
    if nu != s:
        raise ValueError(f"matching number is {nu}, expected {s}")
    F = maximum_matching(H).edges
    centers: list[int] = []
    for i, Fi in enumerate(F):
        others = set().union(*(set(Fj) for j, Fj in enumerate(F) if j != i))
        own = set(Fi)
        B = Family._trusted(H.n, H.k, (e for e in H.edges if own.intersection(e) and not others.intersection(e)))
        if not B.edges:
            continue
        x = trivial_center(B)
        if x is None:
            return Diagnostic("B_i trivial", f"edges private to {Fi} have no common vertex")
        centers.append(x)
    dec = _assign(H, set(centers))
    if dec is None:
        cset = set(centers)
        missed = next(e for e in H.edges if not cset.intersection(e))
        return Diagnostic("coverage", f"edge {missed} avoids centres {sorted(cset)}")
    return dec


def shadow_counting_bound(H: Family, s: int, p: int) -> tuple[int, int]:
    """(co_p(H), bound) where codegrees below s*k+1 are capped by s*k and the
    rest by n-k+1, the latter counted through the high-codegree shadow."""
    if H.k < 2:
        raise ValueError("k must be >= 2")
    n, k = H.n, H.k
    K = len(high_codegree_family(H, s * k + 1))
    bound = (s * k) ** p * (binom(n, k - 1) - K) + (n - k + 1) ** p * K
    return co_norm(H, p), bound


def check_shadow_counting_bound(H: Family, s: int, p: int, epsilon_rhs: int = 0) -> bool:
    lhs, bound = shadow_counting_bound(H, s, p)
    return lhs <= bound + epsilon_rhs


def star_completion(H: Family, centers) -> Family:
    """Every k-set meeting the given centres (H's star closure)."""
    cset = set(centers)
    full = Family.complete(H.n, H.k)
    return Family._trusted(H.n, H.k, (e for e in full.edges if cset.intersection(e)))
