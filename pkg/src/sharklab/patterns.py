"""Cyclic permutations as spatial order types of periodic orbits.

A pattern records where the i-th smallest point of a period-m orbit goes,
as a permutation of 1..m that is a single m-cycle.  Its connect-the-dots
map interpolates the pattern linearly on m equally spaced nodes in [0, 1];
the gaps between adjacent nodes form the nodes of a covering digraph whose
closed walks are exactly the interval loops the analytic engine can
realize as periodic points.

Štefan cycles are the odd-period patterns whose iterates from a central
point alternate sides with strictly growing amplitude; they are the
patterns forced to exist when an odd period is minimal in the Sharkovsky
order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DomainError, ResourceError
from .plmap import PLMap

__all__ = [
    "OrbitPattern",
    "CoverDigraph",
    "connect_the_dots",
    "gap_intervals",
    "cover_digraph",
    "loops",
    "is_stefan",
    "digraph_to_dot",
    "DEFAULT_WALK_BUDGET",
]

DEFAULT_WALK_BUDGET = 10**5


@dataclass(frozen=True)
class OrbitPattern:
    """A single m-cycle on {1..m}; ``images[i-1]`` is the image of i."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        m = len(self.images)
        if m < 2:
            raise DomainError("OrbitPattern: need m >= 2")
        if sorted(self.images) != list(range(1, m + 1)):
            raise DomainError(f"OrbitPattern: not a permutation of 1..{m}: {self.images}")
        seen = 1
        cur = self.images[0]
        while cur != 1:
            cur = self.images[cur - 1]
            seen += 1
        if seen != m:
            raise DomainError("OrbitPattern: permutation is not a single cycle")

    @property
    def m(self) -> int:
        return len(self.images)

    def sigma(self, i: int) -> int:
        return self.images[i - 1]

    @classmethod
    def parse(cls, text: str) -> "OrbitPattern":
        parts = text.split()
        if not parts:
            raise DomainError("pattern: empty")
        try:
            images = tuple(int(p) for p in parts)
        except ValueError:
            raise DomainError(f"pattern: not an integer list: {text!r}") from None
        return cls(images)

    def __str__(self) -> str:
        return " ".join(str(i) for i in self.images)


def connect_the_dots(p: OrbitPattern) -> PLMap:
    """Linear interpolation of the pattern on m uniform nodes in [0, 1]."""
    m = p.m
    den = m - 1
    return PLMap(
        [(Fraction(i, den), Fraction(p.sigma(i + 1) - 1, den)) for i in range(m)]
    )


def gap_intervals(p: OrbitPattern) -> list[tuple[Fraction, Fraction]]:
    """The m-1 gaps J_1..J_{m-1} between adjacent nodes, 1-indexed by J_i = element i-1."""
    den = p.m - 1
    return [(Fraction(i, den), Fraction(i + 1, den)) for i in range(den)]


@dataclass(frozen=True)
class CoverDigraph:
    """Gap-covering digraph: node i is the gap J_i, edge i -> j when the
    image of J_i under the connect-the-dots map covers J_j."""

    node_count: int
    edges: tuple[tuple[int, int], ...]

    def successors(self, i: int) -> list[int]:
        return [b for a, b in self.edges if a == i]

    def __contains__(self, edge: tuple[int, int]) -> bool:
        return edge in self.edges


def cover_digraph(p: OrbitPattern) -> CoverDigraph:
    """Covering digraph of a pattern, edges in ascending order.

    The connect-the-dots map is linear on each gap, so its image is the
    interval between the images of the gap's endpoints; the edge test is
    pure index arithmetic.
    """
    m = p.m
    edges = []
    for i in range(1, m):
        a, b = p.sigma(i), p.sigma(i + 1)
        lo, hi = (a, b) if a < b else (b, a)
        for j in range(lo, hi):
            edges.append((i, j))
    edges.sort()
    return CoverDigraph(m - 1, tuple(edges))


def loops(g: CoverDigraph, length: int, budget: Optional[int] = None) -> list[tuple[int, ...]]:
    """All closed walks of a given length, up to rotation.

    Each walk is returned as its lexicographically least rotation; the
    list is sorted.  Enumeration counts raw closed walks against a budget
    (default 10**5) before deduplication.
    """
    if length < 1:
        raise DomainError(f"loops: need length >= 1, got {length}")
    limit = budget if budget is not None else DEFAULT_WALK_BUDGET
    succ = {i: sorted(g.successors(i)) for i in range(1, g.node_count + 1)}
    found: set[tuple[int, ...]] = set()
    count = 0
    walk: list[int] = []

    def canonical(w: tuple[int, ...]) -> tuple[int, ...]:
        return min(w[k:] + w[:k] for k in range(len(w)))

    def extend(start: int) -> None:
        nonlocal count
        node = walk[-1]
        if len(walk) == length:
            if start in succ[node]:
                count += 1
                if count > limit:
                    raise ResourceError(f"walk budget {limit} exceeded enumerating loops")
                found.add(canonical(tuple(walk)))
            return
        for nxt in succ[node]:
            if nxt >= start:
                walk.append(nxt)
                extend(start)
                walk.pop()

    for start in range(1, g.node_count + 1):
        walk = [start]
        extend(start)
    return sorted(found)


def is_stefan(p: OrbitPattern) -> bool:
    """Whether the pattern spirals outward alternately around a center.

    True exactly when m is odd, m >= 3, and some point's successive images
    alternate sides of it with strictly increasing spread, in either
    orientation.  In index terms, writing e_k for the k-th image of the
    center s: e_{m-1} < ... < e_2 < e_0 < e_1 < e_3 < ... < e_{m-2}, or
    its mirror.
    """
    m = p.m
    if m < 3 or m % 2 == 0:
        return False
    for s in range(1, m + 1):
        seq = [s]
        cur = s
        for _ in range(m - 1):
            cur = p.sigma(cur)
            seq.append(cur)
        evens = seq[0::2]
        odds = seq[1::2]
        decreasing = all(a > b for a, b in zip(evens, evens[1:]))
        increasing = all(a < b for a, b in zip(odds, odds[1:]))
        if decreasing and increasing and seq[0] < seq[1]:
            return True
        inc_e = all(a < b for a, b in zip(evens, evens[1:]))
        dec_o = all(a > b for a, b in zip(odds, odds[1:]))
        if inc_e and dec_o and seq[1] < seq[0]:
            return True
    return False


def digraph_to_dot(g: CoverDigraph) -> str:
    """Render as DOT text, nodes J1..J{m-1}, edges in canonical order."""
    lines = ["digraph cover {"]
    for i in range(1, g.node_count + 1):
        lines.append(f"  J{i};")
    for a, b in g.edges:
        lines.append(f"  J{a} -> J{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
