"""Explicit map families and period-doubling constructions.

The families:

* ``tent``: x -> 1 - |2x - 1| on [0, 1]; it has points of every period.
* ``g``: the constant map 0; fixed points only.
* ``h``: up from (0, 1/2) to (1/4, 1), down to (1/2, 1/2), then 1 - x;
  it has period-6 points but no odd periods above 1.
* ``make_fn(n)``: the connect-the-dots map of the outward spiral on 2n+1
  nodes; a Štefan cycle of least period 2n+1 with no period-(2n-1) point.
* ``make_truncated_tent(n)``: the tent map flattened to the right of an
  innermost period-n orbit; exactly one period-n orbit and nothing above
  n in the Sharkovsky order.

Four doubling operators G, H, D, E place a rescaled copy of a map into
[0, a], a swap-back tail into [1-a, 1] and a decreasing connector between;
each turns a map with period set S into one with period set {1} ∪ 2S.
Composing G/H operators ad infinitum yields maps realizing exactly the
powers of two; finite truncations of that composition are computed here
together with their exact stabilization threshold and a sup-norm bound on
the remaining tail.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Union

from .errors import DomainError, VerificationError
from .order import SharkClass, decompose
from .patterns import OrbitPattern, connect_the_dots
from .periodic import period_orbits
from .plmap import PLMap
from .rational import format_rational

__all__ = [
    "make_named",
    "stefan_pattern",
    "make_fn",
    "make_truncated_tent",
    "DOUBLING_KINDS",
    "DoublingSpec",
    "double",
    "PhiSpec",
    "PhiTruncation",
    "phi_truncation",
    "WitnessResult",
    "witness",
]

_HALF = Fraction(1, 2)
_DEFAULT_A = Fraction(1, 3)

DOUBLING_KINDS = ("G", "H", "D", "E")


def make_named(kind: str) -> PLMap:
    """One of the three reference maps on [0, 1]: "tent", "g", or "h"."""
    if kind == "tent":
        return PLMap([(0, 0), (_HALF, 1), (1, 0)])
    if kind == "g":
        return PLMap([(0, 0), (1, 0)])
    if kind == "h":
        return PLMap([(0, _HALF), (Fraction(1, 4), 1), (_HALF, _HALF), (1, 0)])
    raise DomainError(f"make_named: unknown kind {kind!r} (want tent, g, or h)")


def stefan_pattern(n: int) -> OrbitPattern:
    """The outward-spiral pattern of period 2n+1 on nodes 1..2n+1.

    Node 1 goes to the center n+1; nodes 2..n+1 reflect to the right half
    in reverse; nodes n+2..2n+1 reflect back to the left half.
    """
    if n < 1:
        raise DomainError(f"stefan_pattern: need n >= 1, got {n}")
    m = 2 * n + 1
    images = [0] * m
    images[0] = n + 1
    for i in range(2, n + 2):
        images[i - 1] = 2 * n + 3 - i
    for j in range(n + 2, 2 * n + 2):
        images[j - 1] = 2 * n + 2 - j
    return OrbitPattern(tuple(images))


def make_fn(n: int) -> PLMap:
    """Connect-the-dots map of the period-(2n+1) spiral pattern, n >= 2."""
    if n < 2:
        raise DomainError(f"make_fn: need n >= 2, got {n}")
    return connect_the_dots(stefan_pattern(n))


def make_truncated_tent(n: int, budget: Optional[int] = None) -> PLMap:
    """Tent map flattened beyond an innermost period-n orbit, n >= 2.

    Among the period-n orbits of the tent map, pick one whose open span
    contains no other period-n orbit (ties: smallest maximum, then
    smallest minimum); keep the tent up to the orbit's maximum and send
    everything to its minimum beyond.
    """
    if n < 2:
        raise DomainError(f"make_truncated_tent: need n >= 2, got {n}")
    tent = make_named("tent")
    orbits = period_orbits(tent, n, budget)
    if not orbits:  # pragma: no cover - tent has orbits of every period
        raise VerificationError(f"tent map missing period-{n} orbits")
    innermost = [
        p
        for p in orbits
        if not any(q != p and p[0] < q[0] and q[-1] < p[-1] for q in orbits)
    ]
    chosen = min(innermost, key=lambda p: (p[-1], p[0]))
    mn, mx = chosen[0], chosen[-1]
    if tent.eval(mx) != mn:  # pragma: no cover - forced for tent orbits
        raise VerificationError("truncated tent: orbit maximum does not map to minimum")
    pts: list[tuple[Fraction, Fraction]] = [(Fraction(0), Fraction(0))]
    if _HALF < mx:
        pts.append((_HALF, Fraction(1)))
    pts.append((mx, mn))
    pts.append((Fraction(1), mn))
    return PLMap(pts)


# -- doubling operators -------------------------------------------------------


@dataclass(frozen=True)
class DoublingSpec:
    """Operator kind (G, H, D or E) and block width a in (0, 1/2)."""

    kind: str
    a: Fraction

    def __post_init__(self) -> None:
        if self.kind not in DOUBLING_KINDS:
            raise DomainError(f"DoublingSpec: unknown kind {self.kind!r}")
        if not 0 < self.a < _HALF:
            raise DomainError(f"DoublingSpec: need 0 < a < 1/2, got {self.a}")


def double(f: PLMap, kind: str = "G", a: Fraction = _DEFAULT_A) -> PLMap:
    """Apply a doubling operator to a self-map of [0, 1].

    A rescaled copy a*f(x/a) occupies [0, a], transformed per kind:

        G: 1 - copy(x)          H: copy(x) + (1 - a)
        D: 1 - a + copy(a - x)  E: 1 - copy(a - x)

    The tail on [1-a, 1] is 1 - x for G and D, x - (1-a) for H and E, and
    the middle [a, 1-a] is the straight line joining the two blocks (it is
    strictly decreasing: the left block lives above 1-a, the right below
    a).  The period set of the result is {1} ∪ {2k : k a period of f}.
    """
    spec = DoublingSpec(kind, Fraction(a))
    a = spec.a
    if f.domain_lo != 0 or f.domain_hi != 1:
        raise DomainError("double: operators act on self-maps of [0, 1]")
    copy = [(a * x, a * y) for x, y in f.points]
    if kind == "G":
        block = [(x, 1 - y) for x, y in copy]
    elif kind == "H":
        block = [(x, y + 1 - a) for x, y in copy]
    elif kind == "D":
        block = [(a - x, 1 - a + y) for x, y in reversed(copy)]
    else:  # E
        block = [(a - x, 1 - y) for x, y in reversed(copy)]
    if kind in ("G", "D"):
        tail = [(1 - a, a), (Fraction(1), Fraction(0))]
    else:
        tail = [(1 - a, Fraction(0)), (Fraction(1), a)]
    return PLMap(block + tail)


# -- infinite compositions, truncated ----------------------------------------


@dataclass(frozen=True)
class PhiSpec:
    """Recipe for a truncation of the infinite doubling composition.

    Bit i of ``alpha`` selects the i-th operator: 0 means G with width
    a_i, 1 means H with width b_i.  ``alpha`` and both width sequences are
    cycled when shorter than the depth, so a finite string like "01"
    denotes the eventually periodic sequence 0101...
    """

    alpha: str
    depth: int
    a_values: tuple[Fraction, ...] = (_DEFAULT_A,)
    b_values: tuple[Fraction, ...] = (_DEFAULT_A,)

    def __post_init__(self) -> None:
        if self.depth < 1:
            raise DomainError(f"PhiSpec: need depth >= 1, got {self.depth}")
        if not self.alpha or any(c not in "01" for c in self.alpha):
            raise DomainError(f"PhiSpec: alpha must be a nonempty bit string, got {self.alpha!r}")
        if not self.a_values or not self.b_values:
            raise DomainError("PhiSpec: width sequences must be nonempty")
        for v in (*self.a_values, *self.b_values):
            if not 0 < v < _HALF:
                raise DomainError(f"PhiSpec: widths must lie in (0, 1/2), got {v}")

    def bit(self, i: int) -> int:
        return int(self.alpha[(i - 1) % len(self.alpha)])

    def width(self, i: int) -> Fraction:
        if self.bit(i) == 0:
            return self.a_values[(i - 1) % len(self.a_values)]
        return self.b_values[(i - 1) % len(self.b_values)]

    def sup_width(self) -> Fraction:
        period = lcm(len(self.alpha), len(self.a_values), len(self.b_values))
        return max(self.width(i) for i in range(1, period + 1))


@dataclass(frozen=True)
class PhiTruncation:
    """A finite truncation of the infinite composition.

    ``threshold`` is the exact point to the right of which the next-depth
    truncation agrees with this one; ``tail_bound`` bounds the sup-norm
    distance from this truncation to the infinite limit.
    """

    plmap: PLMap
    threshold: Fraction
    tail_bound: Fraction


def phi_truncation(spec: PhiSpec, seed: Optional[PLMap] = None) -> PhiTruncation:
    """Apply the first ``depth`` operators of the recipe, innermost first.

    The default seed is the constant map 0; the truncation's period set is
    then the powers of two up to 2**depth.  Successive truncations differ
    by less than the product of the widths used so far, which is what
    makes the infinite composition converge uniformly.
    """
    m = seed if seed is not None else make_named("g")
    for i in range(spec.depth, 0, -1):
        m = double(m, "G" if spec.bit(i) == 0 else "H", spec.width(i))
    threshold = Fraction(1)
    for i in range(1, spec.depth):
        threshold *= spec.width(i)
    threshold *= 1 - spec.width(spec.depth)
    prefix = Fraction(1)
    for i in range(1, spec.depth):
        prefix *= spec.width(i)
    tail_bound = prefix / (1 - spec.sup_width())
    return PhiTruncation(m, threshold, tail_bound)


# -- witness synthesis --------------------------------------------------------


@dataclass(frozen=True)
class WitnessResult:
    """A constructed map together with its reproducibility recipe.

    The recipe is what gets embedded as the comment of the emitted map
    file: the target class, the strategy, operator kinds and parameters,
    and a bound at which a verification run reproduces the class.
    """

    plmap: PLMap
    recipe: dict


def witness(
    target: Union[SharkClass, int],
    strategy: str = "stefan-doubling",
    depth: Optional[int] = None,
    budget: Optional[int] = None,
) -> WitnessResult:
    """Construct a map whose period set is the tail of the target class.

    Finite n = 2^i * q: for q >= 3, i doublings of the period-q spiral map
    (or, under the "truncated-tent" strategy, the truncated tent for n
    directly); for q = 1, i doublings of the constant map.  The 2^inf
    class is approximated by a depth-k truncation of the infinite
    composition, whose period set is the powers of two up to 2^k; the
    recipe records the depth and exact stabilization threshold instead of
    pretending the limit is reached.
    """
    if strategy not in ("stefan-doubling", "truncated-tent"):
        raise DomainError(f"witness: unknown strategy {strategy!r}")
    cls = target if isinstance(target, SharkClass) else SharkClass(target)
    if not cls.is_finite:
        if depth is None:
            raise DomainError("witness: the 2^inf class needs an explicit truncation depth")
        spec = PhiSpec(alpha="01", depth=depth)
        res = phi_truncation(spec)
        recipe = {
            "class": str(cls),
            "strategy": "phi-truncation",
            "alpha": spec.alpha,
            "a": format_rational(_DEFAULT_A),
            "depth": depth,
            "approximation": f"period set is 1,2,4,...,2^{depth}; "
            f"truncations stabilize right of the threshold",
            "threshold": format_rational(res.threshold),
            "verify_bound": min(2**depth, 16),
        }
        return WitnessResult(res.plmap, recipe)

    n = cls.n
    assert n is not None
    i, q = decompose(n)
    recipe = {
        "class": str(cls),
        "strategy": strategy,
        "verify_bound": max(2, n),
    }
    if n == 1:
        return WitnessResult(make_named("g"), {**recipe, "base": "constant"})
    if strategy == "truncated-tent":
        return WitnessResult(
            make_truncated_tent(n, budget), {**recipe, "base": f"truncated-tent({n})"}
        )
    if q >= 3:
        base = connect_the_dots(stefan_pattern((q - 1) // 2))
        base_name = f"stefan({q})"
    else:
        base = make_named("g")
        base_name = "constant"
    m = base
    for _ in range(i):
        m = double(m, "G", _DEFAULT_A)
    return WitnessResult(
        m,
        {
            **recipe,
            "base": base_name,
            "operators": ["G"] * i,
            "a": format_rational(_DEFAULT_A),
        },
    )
