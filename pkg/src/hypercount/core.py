"""k-uniform families on [n] and their codegree statistics.

Vertices are 1-based everywhere in the public API. Edges are sorted tuples;
a :class:`Family` keeps its edges sorted lexicographically and duplicate free.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

Vertex = int
Edge = tuple[int, ...]


class FamilyFormatError(ValueError):
    """Malformed family text; ``line`` is the 1-based offending line, if known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def binom(a: int, b: int) -> int:
    """C(a, b) with C(a, b) = 0 whenever b < 0 or b > a (a may be negative)."""
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


def edge_mask(edge: Iterable[int]) -> int:
    m = 0
    for v in edge:
        m |= 1 << (v - 1)
    return m


def mask_edge(mask: int) -> Edge:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


@dataclass(frozen=True)
class Family:
    """A k-uniform set system on the ground set [n]."""

    n: int
    k: int
    edges: tuple[Edge, ...] = field(default=())

    def __post_init__(self):
        n, k = self.n, self.k
        if k < 1:
            raise ValueError(f"uniformity must be >= 1, got {k}")
        if k > n:
            raise ValueError(f"uniformity {k} exceeds ground set size {n}")
        canon = []
        for e in self.edges:
            t = tuple(sorted(int(v) for v in e))
            if len(t) != k:
                raise ValueError(f"edge {t} does not have size {k}")
            if len(set(t)) != k:
                raise ValueError(f"edge {t} repeats a vertex")
            if t[0] < 1 or t[-1] > n:
                raise ValueError(f"edge {t} leaves the ground set [1, {n}]")
            canon.append(t)
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(canon))

    @classmethod
    def _trusted(cls, n: int, k: int, edges: Iterable[Edge]) -> "Family":
        # Skips validation; callers guarantee sorted distinct k-tuples inside [n].
        fam = object.__new__(cls)
        object.__setattr__(fam, "n", n)
        object.__setattr__(fam, "k", k)
        object.__setattr__(fam, "edges", tuple(sorted(edges)))
        return fam

    @classmethod
    def from_masks(cls, n: int, k: int, masks: Iterable[int]) -> "Family":
        return cls._trusted(n, k, (mask_edge(int(m)) for m in masks))

    @classmethod
    def complete(cls, n: int, k: int) -> "Family":
        return cls._trusted(n, k, itertools.combinations(range(1, n + 1), k))

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def __contains__(self, edge) -> bool:
        return tuple(sorted(edge)) in self.edge_set

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def masks(self) -> np.ndarray:
        return np.array([edge_mask(e) for e in self.edges], dtype=np.int64)

    def with_edges(self, edges: Iterable[Edge]) -> "Family":
        return Family(self.n, self.k, tuple(edges))

    def degree(self, v: Vertex) -> int:
        return sum(1 for e in self.edges if v in e)

    def to_text(self) -> str:
        lines = [f"{self.n} {self.k}"]
        lines += [" ".join(map(str, e)) for e in self.edges]
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"Family(n={self.n}, k={self.k}, edges={len(self.edges)})"


def parse_family(text: str) -> Family:
    """Parse the ``n k`` header plus one-edge-per-line text format."""
    header = None
    edges: list[Edge] = []
    seen: dict[Edge, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError:
            raise FamilyFormatError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if len(nums) != 2:
                raise FamilyFormatError("header must be 'n k'", lineno)
            n, k = nums
            if k < 1 or n < k:
                raise FamilyFormatError(f"need 1 <= k <= n, got n={n} k={k}", lineno)
            header = (n, k)
            continue
        n, k = header
        if len(nums) != k:
            raise FamilyFormatError(f"edge has {len(nums)} labels, expected {k}", lineno)
        if len(set(nums)) != k:
            dup = next(v for v in nums if nums.count(v) > 1)
            raise FamilyFormatError(f"edge repeats vertex {dup}", lineno)
        bad = [v for v in nums if not 1 <= v <= n]
        if bad:
            raise FamilyFormatError(f"vertex {bad[0]} outside [1, {n}]", lineno)
        e = tuple(sorted(nums))
        if e in seen:
            raise FamilyFormatError(f"duplicate edge {e} (first on line {seen[e]})", lineno)
        seen[e] = lineno
        edges.append(e)
    if header is None:
        raise FamilyFormatError("missing 'n k' header")
    return Family._trusted(header[0], header[1], edges)


def read_family(path) -> Family:
    with open(path) as fh:
        return parse_family(fh.read())


# -- codegrees ---------------------------------------------------------------


class CodegreeTable:
    """Codegrees of all (k-1)-subsets of [n]; absent keys read as 0."""

    def __init__(self, n: int, k: int, counts: dict[Edge, int]):
        self.n = n
        self.k = k
        self._counts = counts

    def __getitem__(self, key: Iterable[int]) -> int:
        return self._counts.get(tuple(sorted(key)), 0)

    def __len__(self) -> int:
        return binom(self.n, self.k - 1)

    def nonzero(self) -> dict[Edge, int]:
        return dict(self._counts)

    def items(self) -> Iterator[tuple[Edge, int]]:
        """All C(n, k-1) entries in lexicographic order, zeros included."""
        for key in itertools.combinations(range(1, self.n + 1), self.k - 1):
            yield key, self._counts.get(key, 0)

    def values(self) -> list[int]:
        return list(self._counts.values())

    def total(self) -> int:
        return sum(self._counts.values())


def _check_codegree_family(H: Family) -> None:
    if H.k < 2:
        raise ValueError("codegrees need k >= 2")


def codegree(H: Family, E: Iterable[int]) -> int:
    E = tuple(sorted(E))
    if len(E) != H.k - 1:
        raise ValueError(f"codegree set must have size k-1={H.k - 1}, got {len(E)}")
    if E and (E[0] < 1 or E[-1] > H.n):
        raise ValueError(f"{E} is not a subset of [1, {H.n}]")
    es = set(E)
    return sum(1 for F in H.edges if es.issubset(F))


def _codegree_counts(H: Family) -> dict[Edge, int]:
    cnt: Counter = Counter()
    for F in H.edges:
        cnt.update(itertools.combinations(F, H.k - 1))
    return dict(cnt)


def codegree_table(H: Family) -> CodegreeTable:
    _check_codegree_family(H)
    return CodegreeTable(H.n, H.k, _codegree_counts(H))


def co_norm(H: Family, p: int) -> int:
    """Sum over all (k-1)-sets of codegree**p, with 0**0 = 1."""
    _check_codegree_family(H)
    if p < 0:
        raise ValueError("p must be >= 0")
    if p == 0:
        return binom(H.n, H.k - 1)
    return sum(d**p for d in _codegree_counts(H).values())


def sunflower_count(H: Family, l: int) -> int:
    """Number of l-petal sunflowers whose core has size k-1."""
    if l < 2:
        raise ValueError("sunflowers need l >= 2 petals")
    if H.k < 2:
        raise ValueError("sunflowers with a (k-1)-core need k >= 2")
    return sum(math.comb(d, l) for d in _codegree_counts(H).values())


def is_sunflower(edges: Sequence[Edge], core_size: int) -> bool:
    """Direct predicate: common core of the given size, pairwise disjoint petals."""
    sets = [set(e) for e in edges]
    core = set.intersection(*sets)
    if len(core) != core_size:
        return False
    petals = [s - core for s in sets]
    for a, b in itertools.combinations(petals, 2):
        if a & b:
            return False
    return True


def sunflower_count_bruteforce(H: Family, l: int) -> int:
    """Count l-subsets of edges forming a sunflower with a (k-1)-core."""
    return sum(1 for group in itertools.combinations(H.edges, l) if is_sunflower(group, H.k - 1))


def high_codegree_family(H: Family, d: int) -> Family:
    """The (k-1)-uniform family of all (k-1)-sets with codegree >= d."""
    _check_codegree_family(H)
    if d <= 0:
        keys = itertools.combinations(range(1, H.n + 1), H.k - 1)
    else:
        keys = (E for E, c in _codegree_counts(H).items() if c >= d)
    return Family._trusted(H.n, H.k - 1, keys)


def restrict_avoid(H: Family, S: Iterable[int]) -> Family:
    mask = edge_mask(S)
    return Family._trusted(H.n, H.k, (e for e in H.edges if edge_mask(e) & mask == 0))


def max_codegree(H: Family) -> int:
    _check_codegree_family(H)
    return max(_codegree_counts(H).values(), default=0)


def trivial_center(H: Family) -> Vertex | None:
    """Smallest vertex common to every edge; vertex 1 for the empty family."""
    if not H.edges:
        return 1
    common = set(H.edges[0])
    for e in H.edges[1:]:
        common.intersection_update(e)
        if not common:
            return None
    return min(common)


def is_intersecting(H: Family) -> bool:
    masks = [int(x) for x in H.masks]
    return all(a & b for a, b in itertools.combinations(masks, 2))


# -- isomorphism ---------------------------------------------------------------


def _refine(n: int, edges: list[Edge], inc: list[list[int]], colors: list[int]) -> list[int]:
    # Colour refinement on the incidence structure; relabelling by sorted
    # signatures keeps the result isomorphism-invariant.
    ncls = len(set(colors))
    while True:
        sigs = []
        for v in range(n):
            around = sorted(tuple(sorted(colors[u] for u in edges[i] if u != v)) for i in inc[v])
            sigs.append((colors[v], tuple(around)))
        order = {sig: r for r, sig in enumerate(sorted(set(sigs)))}
        colors = [order[sig] for sig in sigs]
        if len(order) == ncls:
            return colors
        ncls = len(order)


def _individualize(colors: list[int], v: int) -> list[int]:
    keyed = [(c, 0 if u == v else 1) if c == colors[v] else (c, 0) for u, c in enumerate(colors)]
    order = {key: r for r, key in enumerate(sorted(set(keyed)))}
    return [order[key] for key in keyed]


def _twins(edge_set: set[Edge], inc: list[list[int]], edges: list[Edge], u: int, v: int) -> bool:
    # Is the transposition (u v) an automorphism?
    for i in inc[u]:
        e = edges[i]
        if v in e:
            continue
        swapped = tuple(sorted(v if x == u else x for x in e))
        if swapped not in edge_set:
            return False
    return len(inc[u]) == len(inc[v])


def canonical_form(H: Family) -> tuple[Edge, ...]:
    """Lexicographically least relabelled edge list over a pruned labelling search.

    Individualisation-refinement: colour refinement splits vertices by
    structure, the first non-singleton cell is branched on, and vertices of a
    cell that are twins (their transposition is an automorphism) are tried
    only once.
    """
    n = H.n
    edges = [tuple(v - 1 for v in e) for e in H.edges]
    edge_set = set(edges)
    inc: list[list[int]] = [[] for _ in range(n)]
    for i, e in enumerate(edges):
        for v in e:
            inc[v].append(i)
    best: list[tuple[Edge, ...] | None] = [None]

    def search(colors: list[int]) -> None:
        colors = _refine(n, edges, inc, colors)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            relabeled = tuple(sorted(tuple(sorted(colors[v] + 1 for v in e)) for e in edges))
            if best[0] is None or relabeled < best[0]:
                best[0] = relabeled
            return
        reps: list[int] = []
        for v in target:
            if not any(_twins(edge_set, inc, edges, r, v) for r in reps):
                reps.append(v)
        for v in reps:
            search(_individualize(colors, v))

    search([0] * n)
    return best[0]


def _degree_profile(H: Family) -> tuple[int, ...]:
    deg = Counter(v for e in H.edges for v in e)
    return tuple(sorted((deg.get(v, 0) for v in range(1, H.n + 1)), reverse=True))


def isomorphic(H1: Family, H2: Family) -> bool:
    """True iff a permutation of [n] maps H1's edges onto H2's."""
    if (H1.n, H1.k, len(H1)) != (H2.n, H2.k, len(H2)):
        return False
    if _degree_profile(H1) != _degree_profile(H2):
        return False
    return canonical_form(H1) == canonical_form(H2)
