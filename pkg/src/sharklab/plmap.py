"""Exact continuous piecewise-linear self-maps of a rational interval.

A map is stored as its breakpoint list ``(x_0, y_0), ..., (x_k, y_k)`` with
strictly increasing rational ``x_i``; between breakpoints the map is the
straight line through its neighbours.  Everything downstream (periodic
points, covering checks, certificates) reduces to exact rational arithmetic
on these breakpoints, so evaluation, composition and iteration here are all
exact; no floating point enters the core.

Composition can square the number of pieces, so iteration is guarded by a
piece budget (default 10**6 breakpoints, overridable per call or through
the ``SHARKLAB_PIECE_BUDGET`` environment variable).

Values are immutable once constructed and all operations are pure, so maps
can be shared freely across threads.
"""

from __future__ import annotations

import json
import os
from bisect import bisect_right
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .errors import DomainError, ResourceError
from .rational import format_rational, parse_rational

__all__ = [
    "PLMap",
    "compose",
    "iterate",
    "normalize",
    "resolve_piece_budget",
    "dump_map",
    "load_map",
    "load_map_document",
    "DEFAULT_PIECE_BUDGET",
    "PIECE_BUDGET_ENV",
]

DEFAULT_PIECE_BUDGET = 10**6
PIECE_BUDGET_ENV = "SHARKLAB_PIECE_BUDGET"

Piece = tuple[Fraction, Fraction, Fraction, Fraction]  # (x1, x2, y1, y2)


def resolve_piece_budget(budget: Optional[int] = None) -> int:
    """Effective piece budget: explicit argument, else env var, else default."""
    if budget is not None:
        if budget < 2:
            raise DomainError(f"piece budget must be >= 2, got {budget}")
        return budget
    env = os.environ.get(PIECE_BUDGET_ENV)
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise DomainError(f"{PIECE_BUDGET_ENV}: not an integer: {env!r}") from None
        if value < 2:
            raise DomainError(f"{PIECE_BUDGET_ENV}: must be >= 2, got {value}")
        return value
    return DEFAULT_PIECE_BUDGET


class PLMap:
    """A continuous piecewise-linear self-map of ``[domain_lo, domain_hi]``.

    Invariants enforced on construction: at least two breakpoints, strictly
    increasing x-coordinates, and every y inside the domain (the map is a
    self-map).  Collinear interior breakpoints are permitted; use
    :func:`normalize` to drop them.
    """

    __slots__ = ("xs", "ys")

    def __init__(self, points: Iterable[tuple[Fraction, Fraction]]):
        pts = [(Fraction(x), Fraction(y)) for x, y in points]
        if len(pts) < 2:
            raise DomainError("PLMap: need at least 2 breakpoints")
        xs = tuple(p[0] for p in pts)
        ys = tuple(p[1] for p in pts)
        for a, b in zip(xs, xs[1:]):
            if not a < b:
                raise DomainError(f"PLMap: x-coordinates not strictly increasing at {a}")
        lo, hi = xs[0], xs[-1]
        for y in ys:
            if y < lo or y > hi:
                raise DomainError(f"PLMap: value {y} escapes domain [{lo}, {hi}]")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("PLMap is immutable")

    # -- basic queries ----------------------------------------------------

    @property
    def domain_lo(self) -> Fraction:
        return self.xs[0]

    @property
    def domain_hi(self) -> Fraction:
        return self.xs[-1]

    @property
    def points(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return tuple(zip(self.xs, self.ys))

    def __eq__(self, other) -> bool:
        return isinstance(other, PLMap) and self.xs == other.xs and self.ys == other.ys

    def __hash__(self) -> int:
        return hash((self.xs, self.ys))

    def __repr__(self) -> str:
        pts = ", ".join(f"({x}, {y})" for x, y in self.points)
        return f"PLMap([{pts}])"

    def pieces(self) -> Iterator[Piece]:
        """Yield the linear pieces as (x1, x2, y1, y2)."""
        xs, ys = self.xs, self.ys
        for k in range(len(xs) - 1):
            yield xs[k], xs[k + 1], ys[k], ys[k + 1]

    def lap_count(self) -> int:
        """Number of maximal monotone pieces (constant runs absorb into a lap)."""
        signs = []
        for x1, x2, y1, y2 in self.pieces():
            if y2 != y1:
                s = 1 if y2 > y1 else -1
                if not signs or signs[-1] != s:
                    signs.append(s)
        return max(1, len(signs))

    # -- evaluation -------------------------------------------------------

    def eval(self, x: Fraction) -> Fraction:
        """Exact value at ``x``; ``x`` must lie in the domain."""
        xs = self.xs
        if x < xs[0] or x > xs[-1]:
            raise DomainError(f"eval: {x} outside domain [{xs[0]}, {xs[-1]}]")
        k = bisect_right(xs, x) - 1
        if k == len(xs) - 1:
            return self.ys[-1]
        x1, x2 = xs[k], xs[k + 1]
        if x == x1:
            return self.ys[k]
        y1, y2 = self.ys[k], self.ys[k + 1]
        return y1 + (y2 - y1) * (x - x1) / (x2 - x1)

    def __call__(self, x: Fraction) -> Fraction:
        return self.eval(x)

    def eval_iterated(self, x: Fraction, n: int) -> Fraction:
        """n-fold application by repeated evaluation (no map composition)."""
        v = x
        for _ in range(n):
            v = self.eval(v)
        return v

    def orbit(self, x: Fraction, n: int) -> list[Fraction]:
        """[x, f(x), ..., f^n(x)] by repeated evaluation."""
        out = [x]
        v = x
        for _ in range(n):
            v = self.eval(v)
            out.append(v)
        return out

    # -- range queries ----------------------------------------------------

    def image_on(self, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
        """Exact image interval [min f, max f] over [lo, hi] in the domain."""
        if lo > hi:
            raise DomainError(f"image_on: empty interval [{lo}, {hi}]")
        vmin = vmax = self.eval(lo)
        v = self.eval(hi)
        vmin, vmax = min(vmin, v), max(vmax, v)
        xs, ys = self.xs, self.ys
        k = bisect_right(xs, lo)
        while k < len(xs) and xs[k] < hi:
            y = ys[k]
            if y < vmin:
                vmin = y
            elif y > vmax:
                vmax = y
            k += 1
        return vmin, vmax

    def solutions_on(self, c: Fraction, lo: Fraction, hi: Fraction) -> list[tuple[Fraction, Fraction]]:
        """Maximal closed intervals where f == c within [lo, hi], ascending.

        Isolated solutions come back as degenerate intervals.  Exact: on a
        linear piece the level set is empty, a point, or the whole piece.
        """
        if lo > hi:
            raise DomainError(f"solutions_on: empty interval [{lo}, {hi}]")
        if lo < self.xs[0] or hi > self.xs[-1]:
            raise DomainError(f"solutions_on: [{lo}, {hi}] outside domain")
        hits: list[tuple[Fraction, Fraction]] = []

        def add(a: Fraction, b: Fraction) -> None:
            if hits and a <= hits[-1][1]:
                prev = hits.pop()
                hits.append((prev[0], max(prev[1], b)))
            else:
                hits.append((a, b))

        for x1, x2, y1, y2 in self.pieces():
            a, b = max(x1, lo), min(x2, hi)
            if a > b:
                continue
            if y1 == y2:
                if y1 == c:
                    add(a, b)
                continue
            if not (min(y1, y2) <= c <= max(y1, y2)):
                continue
            t = x1 + (c - y1) * (x2 - x1) / (y2 - y1)
            if a <= t <= b:
                add(t, t)
        return hits

    # -- constructors -----------------------------------------------------

    @classmethod
    def identity(cls, lo: Fraction, hi: Fraction) -> "PLMap":
        return cls([(lo, lo), (hi, hi)])

    @classmethod
    def constant(cls, lo: Fraction, hi: Fraction, value: Fraction) -> "PLMap":
        return cls([(lo, value), (hi, value)])


# -- composition / iteration ----------------------------------------------


def _compose_onto_pieces(outer: PLMap, pieces: Iterable[Piece], limit: int) -> list[tuple[Fraction, Fraction]]:
    """Breakpoints of outer∘F where F is given by contiguous linear pieces.

    New breakpoints are the input breakpoints plus every preimage, under
    each piece, of an outer breakpoint crossed by that piece's value span.
    """
    gxs, gys = outer.xs, outer.ys
    glo, ghi = gxs[0], gxs[-1]

    def gval(v: Fraction) -> Fraction:
        k = bisect_right(gxs, v) - 1
        if k == len(gxs) - 1:
            return gys[-1]
        x1 = gxs[k]
        if v == x1:
            return gys[k]
        y1, y2 = gys[k], gys[k + 1]
        return y1 + (y2 - y1) * (v - x1) / (gxs[k + 1] - x1)

    out: list[tuple[Fraction, Fraction]] = []
    final: Optional[tuple[Fraction, Fraction]] = None
    for x1, x2, y1, y2 in pieces:
        if min(y1, y2) < glo or max(y1, y2) > ghi:
            raise DomainError(
                f"compose: inner value span [{min(y1, y2)}, {max(y1, y2)}] "
                f"escapes outer domain [{glo}, {ghi}]"
            )
        if not out or out[-1][0] != x1:
            out.append((x1, gval(y1)))
        if y1 != y2:
            # Cut at every preimage of an outer breakpoint strictly inside
            # this piece's value span; preimages are exact rationals.
            vlo, vhi = (y1, y2) if y1 < y2 else (y2, y1)
            dx, dy = x2 - x1, y2 - y1
            k = bisect_right(gxs, vlo)
            cuts: list[tuple[Fraction, Fraction]] = []
            while k < len(gxs) and gxs[k] < vhi:
                c = gxs[k]
                cuts.append((x1 + (c - y1) * dx / dy, gys[k]))
                k += 1
            if dy < 0:
                cuts.reverse()
            out.extend(cuts)
        if len(out) > limit:
            raise ResourceError(
                f"piece budget {limit} exceeded while composing (breakpoints > {limit})"
            )
        final = (x2, y2)
    if final is None:
        raise DomainError("compose: inner map has no pieces")
    out.append((final[0], gval(final[1])))
    return out


def compose(outer: PLMap, inner: PLMap, budget: Optional[int] = None) -> PLMap:
    """Exact representation of outer∘inner.

    Requires the value range of ``inner`` to lie inside the domain of
    ``outer``.  The result keeps collinear breakpoints; call
    :func:`normalize` to drop them.
    """
    limit = resolve_piece_budget(budget)
    return PLMap(_compose_onto_pieces(outer, inner.pieces(), limit))


def iterate(f: PLMap, n: int, budget: Optional[int] = None) -> PLMap:
    """Exact n-th iterate of ``f``; the 0-th iterate is the identity."""
    if n < 0:
        raise DomainError(f"iterate: need n >= 0, got {n}")
    if n == 0:
        return PLMap.identity(f.domain_lo, f.domain_hi)
    limit = resolve_piece_budget(budget)
    g = f
    for k in range(2, n + 1):
        try:
            g = compose(f, g, limit)
        except ResourceError:
            raise ResourceError(
                f"piece budget {limit} exceeded computing iterate {k} of {n}"
            ) from None
    return g


def iterates(f: PLMap, bound: int, budget: Optional[int] = None) -> Iterator[tuple[int, PLMap]]:
    """Yield (n, f^n) for n = 1..bound, sharing work between levels."""
    if bound < 1:
        raise DomainError(f"iterates: need bound >= 1, got {bound}")
    limit = resolve_piece_budget(budget)
    g = f
    yield 1, g
    for n in range(2, bound + 1):
        try:
            g = compose(f, g, limit)
        except ResourceError:
            raise ResourceError(
                f"piece budget {limit} exceeded computing iterate {n} of {bound}"
            ) from None
        yield n, g


def normalize(f: PLMap) -> PLMap:
    """Drop interior breakpoints exactly collinear with their neighbours."""
    kept: list[tuple[Fraction, Fraction]] = []
    for x, y in f.points:
        while len(kept) >= 2:
            (x1, y1), (x2, y2) = kept[-2], kept[-1]
            if (y2 - y1) * (x - x1) == (y - y1) * (x2 - x1):
                kept.pop()
            else:
                break
        kept.append((x, y))
    return PLMap(kept)


# -- canonical text format ---------------------------------------------------


def dump_map(f: PLMap, comment: Optional[dict] = None) -> str:
    """Serialize to the canonical text format (JSON with "p/q" strings).

    ``comment`` is an optional JSON-serializable object recording how the
    map was constructed; it is preserved verbatim and ignored on load.
    """
    doc: dict = {
        "domain": [format_rational(f.domain_lo), format_rational(f.domain_hi)],
        "points": [[format_rational(x), format_rational(y)] for x, y in f.points],
    }
    if comment is not None:
        doc["comment"] = comment
    return json.dumps(doc, indent=2) + "\n"


def load_map_document(text: str) -> tuple[PLMap, Optional[dict]]:
    """Parse the canonical map format, returning the map and its comment."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"map file: invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DomainError("map file: top level must be an object")
    unknown = set(doc) - {"domain", "points", "comment"}
    if unknown:
        raise DomainError(f"map file: unknown field {sorted(unknown)[0]!r}")
    if "domain" not in doc:
        raise DomainError("map file: missing field 'domain'")
    if "points" not in doc:
        raise DomainError("map file: missing field 'points'")
    dom = doc["domain"]
    if not (isinstance(dom, list) and len(dom) == 2 and all(isinstance(v, str) for v in dom)):
        raise DomainError("map file: field 'domain' must be a pair of rational strings")
    lo = parse_rational(dom[0], "domain[0]")
    hi = parse_rational(dom[1], "domain[1]")
    pts_raw = doc["points"]
    if not (isinstance(pts_raw, list) and len(pts_raw) >= 2):
        raise DomainError("map file: field 'points' must list at least 2 breakpoints")
    pts: list[tuple[Fraction, Fraction]] = []
    for i, entry in enumerate(pts_raw):
        if not (isinstance(entry, list) and len(entry) == 2 and all(isinstance(v, str) for v in entry)):
            raise DomainError(f"map file: points[{i}] must be a pair of rational strings")
        pts.append((parse_rational(entry[0], f"points[{i}].x"),
                    parse_rational(entry[1], f"points[{i}].y")))
    if pts[0][0] != lo or pts[-1][0] != hi:
        raise DomainError("map file: field 'domain' disagrees with first/last breakpoint")
    return PLMap(pts), doc.get("comment")


def load_map(text: str) -> PLMap:
    """Parse the canonical map format, discarding any comment."""
    return load_map_document(text)[0]
