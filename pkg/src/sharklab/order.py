"""Arithmetic of the Sharkovsky ordering.

The ordering on positive integers is

    1 < 2 < 4 < 8 < ...                          (powers of two, ascending)
      < ... < 9*2^2 < 7*2^2 < 5*2^2 < 3*2^2
      < ... < 9*2 < 7*2 < 5*2 < 3*2
      < ... < 9 < 7 < 5 < 3

together with one virtual point ``2^inf`` sitting strictly above every
power of two and strictly below every number with an odd factor > 1.  A
continuous interval map's set of least periods is always a downward-closed
tail of this order, which is what :func:`recognize_tail` detects.

Writing n = 2^i * q with q odd, the comparison rule is: powers of two
(q = 1) come first, ordered by ascending exponent; then ``2^inf``; then
numbers with q > 1, ordered by descending valuation i and, within equal
valuation, by descending odd part q.  This is the unique total order
consistent with the display above.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Union

from .errors import DomainError

__all__ = [
    "SharkClass",
    "TWO_INF",
    "DyadicDecomposition",
    "decompose",
    "shark_cmp",
    "shark_tail",
    "TailMatch",
    "recognize_tail",
]


class DyadicDecomposition(NamedTuple):
    """n = 2**valuation * odd_part with odd_part odd."""

    valuation: int
    odd_part: int


def decompose(n: int) -> DyadicDecomposition:
    """Split a positive integer into its dyadic valuation and odd part."""
    if n < 1:
        raise DomainError(f"decompose: need n >= 1, got {n}")
    i = (n & -n).bit_length() - 1
    return DyadicDecomposition(i, n >> i)


@dataclass(frozen=True)
class SharkClass:
    """A point of the Sharkovsky order: a positive integer, or 2^inf.

    ``n`` is the integer for finite classes and ``None`` for the ``2^inf``
    class.  Instances are immutable and hashable.
    """

    n: Optional[int]

    def __post_init__(self) -> None:
        if self.n is not None and self.n < 1:
            raise DomainError(f"SharkClass: need n >= 1, got {self.n}")

    @property
    def is_finite(self) -> bool:
        return self.n is not None

    @classmethod
    def finite(cls, n: int) -> "SharkClass":
        return cls(n)

    @classmethod
    def two_inf(cls) -> "SharkClass":
        return cls(None)

    @classmethod
    def parse(cls, text: str) -> "SharkClass":
        s = text.strip()
        if s == "2^inf":
            return TWO_INF
        if not s.isdigit():
            raise DomainError(f"SharkClass: expected a positive integer or '2^inf', got {text!r}")
        return cls(int(s))

    def __str__(self) -> str:
        return "2^inf" if self.n is None else str(self.n)


TWO_INF = SharkClass(None)

ClassLike = Union[SharkClass, int]


def _as_class(c: ClassLike) -> SharkClass:
    return c if isinstance(c, SharkClass) else SharkClass(c)


def _key(c: SharkClass) -> tuple:
    # Tier 0: powers of two ascending by exponent.  Tier 1: 2^inf.
    # Tier 2: 2^i*q with q > 1, earlier means larger i, then larger q.
    if c.n is None:
        return (1, 0, 0)
    i, q = decompose(c.n)
    if q == 1:
        return (0, i, 0)
    return (2, -i, -q)


def shark_cmp(a: ClassLike, b: ClassLike) -> int:
    """Three-way comparison in the Sharkovsky order.

    Returns -1 if a precedes b, 0 if equal, +1 if a succeeds b.
    """
    ka, kb = _key(_as_class(a)), _key(_as_class(b))
    return (ka > kb) - (ka < kb)


def shark_tail(c: ClassLike, bound: int) -> list[int]:
    """All m <= bound with m preceding-or-equal c, ascending.

    This is the period set forced by a period-c point, truncated at
    ``bound``: a map with a period-m point has period-n points for every
    n below m in the order.
    """
    if bound < 1:
        raise DomainError(f"shark_tail: need bound >= 1, got {bound}")
    kc = _key(_as_class(c))
    return [m for m in range(1, bound + 1) if _key(SharkClass(m)) <= kc]


class TailMatch(NamedTuple):
    """Result of tail recognition.

    ``shark`` is the class whose tail matches, or None when the set is not
    a tail.  ``ambiguous`` is set when the set consists exactly of the
    powers of two up to the bound: the data cannot distinguish the largest
    finite power of two from the 2^inf class, and the finite class is
    reported by convention.
    """

    shark: Optional[SharkClass]
    ambiguous: bool


def recognize_tail(periods: Iterable[int], bound: int) -> TailMatch:
    """Decide whether a set of periods is a Sharkovsky tail at a bound.

    When several classes share the same truncated tail (possible when the
    class exceeds the bound), the Sharkovsky-maximal element of the set
    itself is reported; it is the least class consistent with the data.
    """
    s = set(periods)
    if not s:
        return TailMatch(None, False)
    for m in s:
        if not isinstance(m, int) or m < 1 or m > bound:
            raise DomainError(f"recognize_tail: element {m!r} outside 1..{bound}")
    top = SharkClass(max(s, key=lambda m: _key(SharkClass(m))))
    if set(shark_tail(top, bound)) != s:
        return TailMatch(None, False)
    powers = {m for m in range(1, bound + 1) if decompose(m).odd_part == 1}
    return TailMatch(top, s == powers)
