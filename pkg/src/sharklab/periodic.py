"""Exact periodic-point analysis for piecewise-linear interval maps.

Everything here is decided by rational arithmetic on linear pieces:

* fixed points of f and of its iterates (isolated points and pointwise
  fixed slope-one segments),
* least periods and period sets with one exact witness per period,
* covering relations f(J) ⊇ L between closed intervals, and the
  constructive realization of a covering loop as a periodic point with an
  independently checkable certificate of nested subintervals,
* arithmetic relating least periods of f and of f^n,
* detection of a configuration (three iterates of a point straddling a
  fixed point in a spiral) that forces periodic points of all even periods.

A period set of a continuous interval map is always a tail of the
Sharkovsky order; :func:`verify_sharkovsky` enumerates the set exactly and
checks that it is one.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional

from .errors import DomainError, PreconditionError, VerificationError
from .order import SharkClass, recognize_tail
from .plmap import PLMap, _compose_onto_pieces, iterate, iterates, resolve_piece_budget
from .rational import format_rational

__all__ = [
    "FixedSet",
    "fixed_points",
    "divisors",
    "least_period",
    "PeriodReport",
    "period_set",
    "period_orbits",
    "has_least_period",
    "power_period",
    "lift_period",
    "Interval",
    "check_covering",
    "IntervalCycle",
    "LoopCertificate",
    "realize_loop",
    "verify_sharkovsky",
    "ImplicationResult",
    "ForcingReport",
    "check_forcing_implications",
    "EvenForcingWitness",
    "find_even_forcing_witness",
]

Interval = tuple[Fraction, Fraction]


def divisors(n: int) -> list[int]:
    """Positive divisors of n, ascending."""
    if n < 1:
        raise DomainError(f"divisors: need n >= 1, got {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


# -- fixed sets -------------------------------------------------------------


@dataclass(frozen=True)
class FixedSet:
    """Solutions of f(x) = x: isolated points plus pointwise-fixed segments.

    Sorted, disjoint; an isolated point never lies inside or on a segment.
    """

    isolated: tuple[Fraction, ...]
    segments: tuple[Interval, ...]

    def contains(self, x: Fraction) -> bool:
        k = bisect_right(self.isolated, x)
        if k > 0 and self.isolated[k - 1] == x:
            return True
        segs = self.segments
        j = bisect_right(segs, (x,))
        if j < len(segs) and segs[j][0] == x:
            return True
        return j > 0 and segs[j - 1][0] <= x <= segs[j - 1][1]

    def min_point(self) -> Optional[Fraction]:
        best = self.isolated[0] if self.isolated else None
        if self.segments and (best is None or self.segments[0][0] < best):
            best = self.segments[0][0]
        return best


def fixed_points(f: PLMap) -> FixedSet:
    """All exact solutions of f(x) = x.

    A piece of slope exactly one lying on the diagonal contributes a
    segment; every other piece contributes at most one isolated point.
    """
    iso: list[Fraction] = []
    segs: list[Interval] = []
    for x1, x2, y1, y2 in f.pieces():
        dx, dy = x2 - x1, y2 - y1
        if dy == dx:
            if y1 == x1:
                if segs and segs[-1][1] == x1:
                    segs[-1] = (segs[-1][0], x2)
                else:
                    segs.append((x1, x2))
            continue
        x_star = (y1 * dx - x1 * dy) / (dx - dy)
        if x1 <= x_star <= x2 and (not iso or iso[-1] != x_star):
            iso.append(x_star)
    iso = [p for p in iso if not any(lo <= p <= hi for lo, hi in segs)]
    return FixedSet(tuple(iso), tuple(segs))


# -- least periods ----------------------------------------------------------


def least_period(f: PLMap, x: Fraction, n: int) -> int:
    """Least period of a point known to satisfy f^n(x) = x.

    The least period divides n, so it is the smallest divisor d of n with
    f^d(x) = x; computed by repeated exact evaluation.
    """
    if n < 1:
        raise DomainError(f"least_period: need n >= 1, got {n}")
    orbit = f.orbit(x, n)
    if orbit[n] != x:
        raise PreconditionError(f"least_period: f^{n}({x}) = {orbit[n]} != {x}")
    for d in divisors(n):
        if orbit[d] == x:
            return d
    raise VerificationError("least_period: unreachable")  # pragma: no cover


@dataclass(frozen=True)
class PeriodReport:
    """Least periods of a map up to a bound, with one exact witness each.

    ``entries`` maps each realized least period to its smallest witness.
    ``tail_class`` is the Sharkovsky class whose tail the period set
    matches, when it matches one; ``ambiguous_at_bound`` flags the case
    where the data (all powers of two up to the bound) cannot distinguish
    the reported finite class from the 2^inf class.  ``sharkovsky_ok`` is
    filled by :func:`verify_sharkovsky`.
    """

    bound: int
    entries: tuple[tuple[int, Fraction], ...]
    tail_class: Optional[SharkClass]
    ambiguous_at_bound: bool
    sharkovsky_ok: Optional[bool] = None

    @property
    def periods(self) -> list[int]:
        return [n for n, _ in self.entries]

    def witness(self, n: int) -> Fraction:
        for k, w in self.entries:
            if k == n:
                return w
        raise KeyError(n)

    def to_json_dict(self) -> dict:
        return {
            "bound": self.bound,
            "periods": [[n, format_rational(w)] for n, w in self.entries],
            "tail_class": None if self.tail_class is None else str(self.tail_class),
            "ambiguous_at_bound": self.ambiguous_at_bound,
            "sharkovsky_pass": self.sharkovsky_ok,
        }


def _witness_candidates(fs: FixedSet) -> list[Fraction]:
    pts = list(fs.isolated)
    for lo, hi in fs.segments:
        pts.append(lo)
        if hi != lo:
            # Interior fallback: the left endpoint can in principle have a
            # smaller least period than the segment's interior.
            pts.append((lo + hi) / 2)
    pts.sort()
    return pts


def period_set(f: PLMap, bound: int, budget: Optional[int] = None) -> PeriodReport:
    """Enumerate all least periods of f up to ``bound`` with exact witnesses.

    For each n the fixed set of f^n is computed exactly; a point is a new
    least period n exactly when it is fixed under f^n but under no f^d for
    a proper divisor d.  The smallest such point is recorded as the
    witness and re-confirmed by an independent evaluation loop.
    """
    if bound < 1:
        raise DomainError(f"period_set: need bound >= 1, got {bound}")
    limit = resolve_piece_budget(budget)
    fixed_by_level: dict[int, FixedSet] = {}
    entries: list[tuple[int, Fraction]] = []
    for n, g in iterates(f, bound, limit):
        fs = fixed_points(g)
        fixed_by_level[n] = fs
        proper = [d for d in divisors(n) if d != n]
        chosen: Optional[Fraction] = None
        for w in _witness_candidates(fs):
            if any(fixed_by_level[d].contains(w) for d in proper):
                continue
            chosen = w
            break
        if chosen is not None:
            if least_period(f, chosen, n) != n:
                raise VerificationError(
                    f"period_set: witness {chosen} for period {n} failed re-check"
                )
            entries.append((n, chosen))
    match = recognize_tail([n for n, _ in entries], bound)
    return PeriodReport(bound, tuple(entries), match.shark, match.ambiguous)


def has_least_period(f: PLMap, n: int, budget: Optional[int] = None) -> bool:
    """Whether f has a point of least period exactly n (exact decision)."""
    if n < 1:
        raise DomainError(f"has_least_period: need n >= 1, got {n}")
    limit = resolve_piece_budget(budget)
    divs = divisors(n)
    lower = {d: fixed_points(iterate(f, d, limit)) for d in divs if d != n}
    fs = fixed_points(iterate(f, n, limit))
    for w in _witness_candidates(fs):
        if not any(lower[d].contains(w) for d in lower):
            return True
    return False


def period_orbits(f: PLMap, n: int, budget: Optional[int] = None) -> list[tuple[Fraction, ...]]:
    """All orbits of least period n, each returned sorted, ordered by minimum.

    Only defined when f has finitely many period-n points; a pointwise
    fixed segment of f^n whose points have least period n would make the
    collection infinite and raises a DomainError.
    """
    if n < 1:
        raise DomainError(f"period_orbits: need n >= 1, got {n}")
    limit = resolve_piece_budget(budget)
    divs = [d for d in divisors(n) if d != n]
    lower = {d: fixed_points(iterate(f, d, limit)) for d in divs}
    fs = fixed_points(iterate(f, n, limit))
    for lo, hi in fs.segments:
        probe = (lo + hi) / 2
        if not any(lower[d].contains(probe) for d in divs):
            raise DomainError(
                f"period_orbits: infinitely many period-{n} points (fixed segment [{lo}, {hi}])"
            )
    seen: set[Fraction] = set()
    orbits: list[tuple[Fraction, ...]] = []
    for p in fs.isolated:
        if p in seen or any(lower[d].contains(p) for d in divs):
            continue
        orb = f.orbit(p, n - 1) if n > 1 else [p]
        seen.update(orb)
        orbits.append(tuple(sorted(orb)))
    orbits.sort(key=lambda o: o[0])
    return orbits


# -- period arithmetic under iteration --------------------------------------


def power_period(m: int, n: int) -> int:
    """Least period under f^n of a point with least period m under f."""
    if m < 1 or n < 1:
        raise DomainError(f"power_period: need m, n >= 1, got {m}, {n}")
    return m // gcd(m, n)


def lift_period(k: int, n: int) -> list[int]:
    """Possible least f-periods of a point whose least f^n-period is k.

    These are k*n/s for the divisors s of n coprime to k, ascending.
    """
    if k < 1 or n < 1:
        raise DomainError(f"lift_period: need k, n >= 1, got {k}, {n}")
    return sorted({k * n // s for s in divisors(n) if gcd(s, k) == 1})


# -- covering intervals and loop certificates --------------------------------


def check_covering(f: PLMap, j: Interval, l: Interval) -> bool:
    """Exact test of the covering relation f(J) ⊇ L."""
    for name, (lo, hi) in (("J", j), ("L", l)):
        if lo > hi:
            raise DomainError(f"check_covering: empty interval {name}=[{lo}, {hi}]")
        if lo < f.domain_lo or hi > f.domain_hi:
            raise DomainError(f"check_covering: {name}=[{lo}, {hi}] outside domain")
    vmin, vmax = f.image_on(*j)
    return vmin <= l[0] and vmax >= l[1]


@dataclass(frozen=True)
class IntervalCycle:
    """Closed intervals J_0, ..., J_{n-1} intended to satisfy f(J_i) ⊇ J_{i+1 mod n}."""

    intervals: tuple[Interval, ...]

    def __post_init__(self) -> None:
        if not self.intervals:
            raise DomainError("IntervalCycle: need at least one interval")
        for lo, hi in self.intervals:
            if lo > hi:
                raise DomainError(f"IntervalCycle: empty interval [{lo}, {hi}]")

    def __len__(self) -> int:
        return len(self.intervals)


@dataclass(frozen=True)
class LoopCertificate:
    """A periodic point realizing a covering loop, with checkable evidence.

    ``nested`` lists Q_0, ..., Q_n with Q_n = J_0, Q_i ⊆ J_i and
    f(Q_i) = Q_{i+1} as an exact interval image; the witness w satisfies
    f^i(w) ∈ Q_i and f^n(w) = w.  The witness need not have least period
    n; classify it separately with :func:`least_period`.
    """

    cycle: IntervalCycle
    nested: tuple[Interval, ...]
    witness: Fraction

    def validate(self, f: PLMap) -> None:
        """Re-check every claim against f alone; raises VerificationError."""
        n = len(self.cycle)
        if len(self.nested) != n + 1:
            raise VerificationError("certificate: nested chain has wrong length")
        if self.nested[n] != self.cycle.intervals[0]:
            raise VerificationError("certificate: chain must close on J_0")
        for i in range(n):
            jlo, jhi = self.cycle.intervals[i]
            qlo, qhi = self.nested[i]
            if not (jlo <= qlo and qhi <= jhi):
                raise VerificationError(f"certificate: Q_{i} escapes J_{i}")
            if f.image_on(qlo, qhi) != self.nested[i + 1]:
                raise VerificationError(f"certificate: f(Q_{i}) != Q_{i + 1}")
        orbit = f.orbit(self.witness, n)
        if orbit[n] != self.witness:
            raise VerificationError("certificate: witness is not f^n-fixed")
        for i in range(n + 1):
            lo, hi = self.nested[i]
            if not (lo <= orbit[i] <= hi):
                raise VerificationError(f"certificate: f^{i}(witness) escapes Q_{i}")

    def to_json_dict(self) -> dict:
        pair = lambda iv: [format_rational(iv[0]), format_rational(iv[1])]
        return {
            "cycle": [pair(iv) for iv in self.cycle.intervals],
            "nested": [pair(iv) for iv in self.nested],
            "witness": format_rational(self.witness),
        }


def _pullback(f: PLMap, j: Interval, l: Interval) -> Interval:
    """Innermost closed K ⊆ J with f(K) = L exactly, given f(J) ⊇ L.

    Selection rule: take the smallest preimages p, q in J of the two ends
    of L, then shrink to the last preimage of the near end followed by the
    first preimage of the far end, so no interior point maps onto either
    end.  That forces the image to be exactly L.
    """
    a, b = l
    sols_a = f.solutions_on(a, *j)
    sols_b = f.solutions_on(b, *j)
    if not sols_a or not sols_b:
        raise PreconditionError(f"pullback: f(J) does not reach both ends of [{a}, {b}]")
    p = sols_a[0][0]
    if a == b:
        return (p, p)
    q = sols_b[0][0]
    if p < q:
        c = f.solutions_on(a, p, q)[-1][1]
        d = f.solutions_on(b, c, q)[0][0]
    else:
        c = f.solutions_on(b, q, p)[-1][1]
        d = f.solutions_on(a, c, p)[0][0]
    return (c, d)


def realize_loop(f: PLMap, cycle: IntervalCycle, budget: Optional[int] = None) -> LoopCertificate:
    """Realize a covering loop as a periodic point with a certificate.

    Builds the nested chain backwards from Q_n = J_0 by exact pullbacks,
    then finds the smallest fixed point of f^n on Q_0.  The returned
    certificate validates independently of this construction.
    """
    n = len(cycle)
    for i in range(n):
        if not check_covering(f, cycle.intervals[i], cycle.intervals[(i + 1) % n]):
            raise PreconditionError(
                f"realize_loop: covering fails at index {i}: "
                f"f(J_{i}) does not cover J_{(i + 1) % n}"
            )
    nested: list[Optional[Interval]] = [None] * (n + 1)
    nested[n] = cycle.intervals[0]
    for i in range(n - 1, -1, -1):
        nested[i] = _pullback(f, cycle.intervals[i], nested[i + 1])
    q0lo, q0hi = nested[0]
    witness = _min_fixed_on(f, n, q0lo, q0hi, budget)
    if witness is None:
        raise VerificationError("realize_loop: no fixed point of f^n on Q_0")
    cert = LoopCertificate(cycle, tuple(nested), witness)
    cert.validate(f)
    return cert


def _min_fixed_on(
    f: PLMap, n: int, lo: Fraction, hi: Fraction, budget: Optional[int] = None
) -> Optional[Fraction]:
    """Smallest solution of f^n(x) = x on [lo, hi], tracking f^n only there."""
    if lo == hi:
        return lo if f.eval_iterated(lo, n) == lo else None
    limit = resolve_piece_budget(budget)
    pts = [(lo, lo), (hi, hi)]
    for _ in range(n):
        pts = _compose_onto_pieces(f, _points_to_pieces(pts), limit)
    best: Optional[Fraction] = None
    for x1, x2, y1, y2 in _points_to_pieces(pts):
        dx, dy = x2 - x1, y2 - y1
        if dy == dx:
            if y1 == x1:
                best = x1 if best is None else min(best, x1)
            continue
        x_star = (y1 * dx - x1 * dy) / (dx - dy)
        if x1 <= x_star <= x2:
            best = x_star if best is None else min(best, x_star)
    return best


def _points_to_pieces(pts: list[tuple[Fraction, Fraction]]):
    return [
        (pts[k][0], pts[k + 1][0], pts[k][1], pts[k + 1][1])
        for k in range(len(pts) - 1)
    ]


# -- Sharkovsky verification -------------------------------------------------


def verify_sharkovsky(f: PLMap, bound: int, budget: Optional[int] = None) -> PeriodReport:
    """Period set plus the hard check that it is a Sharkovsky tail."""
    report = period_set(f, bound, budget)
    return replace(report, sharkovsky_ok=report.tail_class is not None)


@dataclass(frozen=True)
class ImplicationResult:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    detail: str


@dataclass(frozen=True)
class ForcingReport:
    bound: int
    periods: tuple[int, ...]
    results: tuple[ImplicationResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.results)


def check_forcing_implications(f: PLMap, bound: int, budget: Optional[int] = None) -> ForcingReport:
    """Test the three elementary forcing implications on the realized period set.

    (a) a period-3 or period-4 point forces a period-2 point;
    (b) a period-m point with m >= 3 odd forces a period-(m+2) point;
    (c) a period-m point with m >= 3 odd forces period-6 and period-2m points.

    Implications whose hypothesis never fires, or whose conclusion lies
    beyond the bound, are reported as skipped.
    """
    report = period_set(f, bound, budget)
    s = set(report.periods)
    results: list[ImplicationResult] = []

    hyp_a = sorted(m for m in (3, 4) if m in s)
    if not hyp_a:
        results.append(ImplicationResult("period2_from_3or4", "skipped", "no period-3 or period-4 point"))
    elif bound < 2:
        results.append(ImplicationResult("period2_from_3or4", "skipped", "bound < 2"))
    else:
        ok = 2 in s
        results.append(
            ImplicationResult(
                "period2_from_3or4",
                "pass" if ok else "fail",
                f"m in {hyp_a} present; period 2 {'found' if ok else 'missing'}",
            )
        )

    odds = sorted(m for m in s if m >= 3 and m % 2 == 1)
    testable_b = [m for m in odds if m + 2 <= bound]
    if not odds:
        results.append(ImplicationResult("odd_forces_plus_two", "skipped", "no odd period >= 3"))
    elif not testable_b:
        results.append(ImplicationResult("odd_forces_plus_two", "skipped", f"m+2 > bound for all odd m in {odds}"))
    else:
        missing = [m for m in testable_b if m + 2 not in s]
        results.append(
            ImplicationResult(
                "odd_forces_plus_two",
                "fail" if missing else "pass",
                f"checked m in {testable_b}" + (f"; missing m+2 for {missing}" if missing else ""),
            )
        )

    if not odds:
        results.append(ImplicationResult("odd_forces_six_and_double", "skipped", "no odd period >= 3"))
    else:
        checks: list[int] = []
        missing = []
        if 6 <= bound:
            checks.append(6)
            if 6 not in s:
                missing.append(6)
        for m in odds:
            if 2 * m <= bound:
                checks.append(2 * m)
                if 2 * m not in s:
                    missing.append(2 * m)
        if not checks:
            results.append(
                ImplicationResult("odd_forces_six_and_double", "skipped", "6 and 2m all exceed bound")
            )
        else:
            results.append(
                ImplicationResult(
                    "odd_forces_six_and_double",
                    "fail" if missing else "pass",
                    f"checked periods {sorted(set(checks))}" + (f"; missing {missing}" if missing else ""),
                )
            )
    return ForcingReport(bound, tuple(report.periods), tuple(results))


# -- even-period forcing witness ---------------------------------------------


@dataclass(frozen=True)
class EvenForcingWitness:
    """A point d and fixed point z whose first iterates spiral across z.

    Left variant: f^3(d) <= z and f^2(d) < d < z < f(d).
    Right variant: f(d) < z < d < f^2(d) and z <= f^3(d).
    Either configuration forces periodic points of every even period.
    """

    d: Fraction
    z: Fraction
    variant: str  # "left" | "right"

    def validate(self, f: PLMap) -> None:
        if f.eval(self.z) != self.z:
            raise VerificationError("witness: z is not a fixed point")
        o = f.orbit(self.d, 3)
        if self.variant == "left":
            ok = o[3] <= self.z and o[2] < self.d < self.z < o[1]
        elif self.variant == "right":
            ok = o[1] < self.z < self.d < o[2] and self.z <= o[3]
        else:  # pragma: no cover - constructor controlled
            raise VerificationError(f"witness: unknown variant {self.variant!r}")
        if not ok:
            raise VerificationError("witness: spiral inequalities fail")


def _linear_on(f: PLMap, u: Fraction, v: Fraction) -> tuple[Fraction, Fraction]:
    """Slope and intercept of f on a subinterval where f is linear."""
    fu, fv = f.eval(u), f.eval(v)
    slope = (fv - fu) / (v - u)
    return slope, fu - slope * u


def _strict_hull(
    constraints: list[tuple[Fraction, Fraction]], u: Fraction, v: Fraction
) -> Optional[tuple[Fraction, Fraction]]:
    """Hull of the subinterval of [u, v] where every slope*d + c < 0 holds."""
    lo, hi = u, v
    for slope, c in constraints:
        if slope == 0:
            if c >= 0:
                return None
        elif slope > 0:
            hi = min(hi, -c / slope)
        else:
            lo = max(lo, -c / slope)
    if lo > hi:
        return None
    return lo, hi


def find_even_forcing_witness(
    f: PLMap, bound: Optional[int] = None, budget: Optional[int] = None
) -> Optional[EvenForcingWitness]:
    """Search exactly for an even-period forcing configuration.

    z ranges over the isolated fixed points of f, ascending.  Candidate
    points d are, per linear piece of the third iterate, the piece's
    endpoints together with the midpoint of the subinterval where the
    strict spiral inequalities hold (the inequalities are linear in d on
    such a piece, so this finite candidate set decides satisfiability).
    Every candidate is verified exactly; the first valid (z, d) in
    ascending order is returned, or None.

    When ``bound`` is given and a witness exists, the forced consequence
    (every even period up to the bound is realized) is re-checked against
    :func:`period_set`.
    """
    f2 = iterate(f, 2, budget)
    f3 = iterate(f, 3, budget)
    fixed = fixed_points(f)
    found: Optional[EvenForcingWitness] = None
    for z in fixed.isolated:
        candidates: set[Fraction] = set(f3.xs)
        for x1, x2, _, _ in f3.pieces():
            m1, b1 = _linear_on(f, x1, x2)
            m2, b2 = _linear_on(f2, x1, x2)
            for variant in ("left", "right"):
                if variant == "left":
                    cons = [(m2 - 1, b2), (Fraction(1), -z), (-m1, z - b1)]
                else:
                    cons = [(m1, b1 - z), (Fraction(-1), z), (Fraction(1) - m2, -b2)]
                hull = _strict_hull(cons, x1, x2)
                if hull is not None:
                    candidates.add((hull[0] + hull[1]) / 2)
        for d in sorted(candidates):
            o = f.orbit(d, 3)
            if o[3] <= z and o[2] < d < z < o[1]:
                found = EvenForcingWitness(d, z, "left")
                break
            if o[1] < z < d < o[2] and z <= o[3]:
                found = EvenForcingWitness(d, z, "right")
                break
        if found is not None:
            break
    if found is None:
        return None
    found.validate(f)
    if bound is not None:
        realized = set(period_set(f, bound, budget).periods)
        missing = [n for n in range(2, bound + 1, 2) if n not in realized]
        if missing:
            raise VerificationError(
                f"even-period forcing witness found but periods {missing} missing up to {bound}"
            )
    return found
