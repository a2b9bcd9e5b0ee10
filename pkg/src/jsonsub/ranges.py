"""Exact rational intervals with an optional ``multipleOf`` step.

The decision procedure for containment between unions of conjunctions of
(possibly negated) number constraints lives here too.  It is exact: every
constraint is a union of intervals intersected with a periodic grid, so the
truth of any boolean combination is constant on the open segments between
breakpoints once grid points are examined separately, and grid membership
repeats with period ``lcm(steps)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .budget import CapacityLimit, point_budget, tick

INF = math.inf
Number = Fraction


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def gcd(a: Optional[Fraction], b: Optional[Fraction]) -> Optional[Fraction]:
    """Greatest common divisor of two positive rationals; an undefined argument yields the other."""
    if a is None:
        return b
    if b is None:
        return a
    a, b = _q(a), _q(b)
    return Fraction(math.gcd(a.numerator * b.denominator, b.numerator * a.denominator),
                    a.denominator * b.denominator)


def lcm(a: Optional[Fraction], b: Optional[Fraction]) -> Optional[Fraction]:
    """Least common multiple of two positive rationals; an undefined argument yields the other."""
    if a is None:
        return b
    if b is None:
        return a
    a, b = _q(a), _q(b)
    num = math.lcm(a.numerator * b.denominator, b.numerator * a.denominator)
    return Fraction(num, a.denominator * b.denominator)


def is_multiple(x: Fraction, m: Optional[Fraction]) -> bool:
    return m is None or (_q(x) / m).denominator == 1


@dataclass(frozen=True)
class NumericRange:
    """``lo``/``hi`` are Fractions or ``±math.inf``; ``multiple_of`` is a positive Fraction or None."""

    lo: object = -INF
    hi: object = INF
    lo_open: bool = False
    hi_open: bool = False
    multiple_of: Optional[Fraction] = None

    def __post_init__(self):
        if self.lo == -INF and not self.lo_open:
            object.__setattr__(self, "lo_open", True)
        if self.hi == INF and not self.hi_open:
            object.__setattr__(self, "hi_open", True)

    # interval part --------------------------------------------------
    def interval_empty(self) -> bool:
        if self.lo > self.hi:
            return True
        return self.lo == self.hi and (self.lo_open or self.hi_open)

    def in_interval(self, x) -> bool:
        if x < self.lo or (x == self.lo and self.lo_open):
            return False
        if x > self.hi or (x == self.hi and self.hi_open):
            return False
        return True

    def contains(self, x) -> bool:
        return self.in_interval(x) and is_multiple(x, self.multiple_of)

    def is_empty(self) -> bool:
        """True iff no number satisfies the range together with its step."""
        if self.interval_empty():
            return True
        return self.normalized().interval_empty()

    def normalized(self) -> "NumericRange":
        """Tighten finite bounds to the nearest included multiple of the step."""
        m = self.multiple_of
        if m is None:
            return self
        lo, lo_open, hi, hi_open = self.lo, self.lo_open, self.hi, self.hi_open
        if lo != -INF:
            k = math.floor(lo / m)
            cand = k * m
            while cand < lo or (cand == lo and lo_open):
                cand += m
            lo, lo_open = cand, False
        if hi != INF:
            k = math.ceil(hi / m)
            cand = k * m
            while cand > hi or (cand == hi and hi_open):
                cand -= m
            hi, hi_open = cand, False
        return NumericRange(lo, hi, lo_open, hi_open, m)

    def bounded(self) -> bool:
        return self.lo != -INF and self.hi != INF


FULL = NumericRange()


def range_intersect(a: NumericRange, b: NumericRange) -> NumericRange:
    if a.lo > b.lo or (a.lo == b.lo and a.lo_open):
        lo, lo_open = a.lo, a.lo_open
    else:
        lo, lo_open = b.lo, b.lo_open
    if a.hi < b.hi or (a.hi == b.hi and a.hi_open):
        hi, hi_open = a.hi, a.hi_open
    else:
        hi, hi_open = b.hi, b.hi_open
    return NumericRange(lo, hi, lo_open, hi_open, lcm(a.multiple_of, b.multiple_of))


def range_subtract(a: NumericRange, b: NumericRange) -> list[NumericRange]:
    """Interval difference ``a \\ b`` (ignoring b's step), keeping a's step; 0-2 pieces."""
    if range_intersect(NumericRange(a.lo, a.hi, a.lo_open, a.hi_open),
                       NumericRange(b.lo, b.hi, b.lo_open, b.hi_open)).interval_empty():
        return [] if a.interval_empty() else [a]
    out = []
    if b.lo != -INF:
        left = NumericRange(a.lo, b.lo, a.lo_open, not b.lo_open, a.multiple_of)
        left = range_intersect(left, NumericRange(a.lo, a.hi, a.lo_open, a.hi_open))
        left = NumericRange(left.lo, left.hi, left.lo_open, left.hi_open, a.multiple_of)
        if not left.interval_empty():
            out.append(left)
    if b.hi != INF:
        right = NumericRange(b.hi, a.hi, not b.hi_open, a.hi_open, a.multiple_of)
        right = range_intersect(right, NumericRange(a.lo, a.hi, a.lo_open, a.hi_open))
        right = NumericRange(right.lo, right.hi, right.lo_open, right.hi_open, a.multiple_of)
        if not right.interval_empty():
            out.append(right)
    return out


def intervals_overlap(a: NumericRange, b: NumericRange) -> bool:
    return not range_intersect(NumericRange(a.lo, a.hi, a.lo_open, a.hi_open),
                               NumericRange(b.lo, b.hi, b.lo_open, b.hi_open)).interval_empty()


# ----------------------------------------------------------- schemas

def schema2range(s: dict) -> NumericRange:
    lo = s.get("minimum", -INF)
    hi = s.get("maximum", INF)
    return NumericRange(
        _q(lo) if lo != -INF else -INF,
        _q(hi) if hi != INF else INF,
        bool(s.get("exclusiveMinimum", False)) and lo != -INF,
        bool(s.get("exclusiveMaximum", False)) and hi != INF,
        _q(s["multipleOf"]) if s.get("multipleOf") is not None else None,
    )


def range2schema(r: NumericRange) -> dict:
    """Canonical number leaf; infinite bounds are omitted, exclusivity flags are always present."""
    s: dict = {"type": "number"}
    if r.lo != -INF:
        s["minimum"] = r.lo
    if r.hi != INF:
        s["maximum"] = r.hi
    s["exclusiveMinimum"] = bool(r.lo_open) and r.lo != -INF
    s["exclusiveMaximum"] = bool(r.hi_open) and r.hi != INF
    if r.multiple_of is not None:
        s["multipleOf"] = r.multiple_of
    return s


# --------------------------------------------------- decision procedure

@dataclass(frozen=True)
class Conj:
    """A conjunction: inside ``pos`` and outside every range in ``negs``."""

    pos: NumericRange = FULL
    negs: tuple[NumericRange, ...] = ()

    def contains(self, x) -> bool:
        return self.pos.contains(x) and not any(n.contains(x) for n in self.negs)


@dataclass
class NumberConstraintSet:
    """Positive and negated number constraints, read as a single conjunction."""

    positive: list[NumericRange] = field(default_factory=list)
    negative: list[NumericRange] = field(default_factory=list)

    def to_conj(self) -> Conj:
        pos = FULL
        for r in self.positive:
            pos = range_intersect(pos, r)
        return Conj(pos, tuple(self.negative))


def _union_contains(conjs: Iterable[Conj], x) -> bool:
    return any(c.contains(x) for c in conjs)


def _floor_div(x, g: Fraction) -> int:
    return math.floor(x / g)


def candidate_points(ranges: list[NumericRange], budget: int | None = None):
    """Finite set of points deciding every boolean combination of ``ranges``.

    Yields each finite bound, one off-grid point per open segment, and up to
    one full period of grid points per segment.
    """
    budget = point_budget() if budget is None else budget
    bps = sorted({b for r in ranges for b in (r.lo, r.hi) if b not in (INF, -INF)})
    steps = {r.multiple_of for r in ranges if r.multiple_of is not None}
    g = period = None
    if steps:
        g = None
        big = None
        for m in steps:
            g = gcd(g, m)
            big = lcm(big, m)
        period = int(big / g)
    segments = []
    edges = [-INF] + bps + [INF]
    for a, b in zip(edges, edges[1:]):
        if a != b:
            segments.append((a, b))
    per_segment = 1 + (period or 0)
    if len(bps) + len(segments) * per_segment > budget:
        raise CapacityLimit(
            f"number check needs {len(bps) + len(segments) * per_segment} points, budget {budget}")
    yield from bps
    for a, b in segments:
        tick()
        yield _offgrid(a, b, g)
        if g is not None:
            yield from _grid(a, b, g, period)


def _offgrid(a, b, g):
    """A point strictly inside (a, b) that is not a multiple of ``g``."""
    if g is None:
        if a == -INF and b == INF:
            return Fraction(0)
        if a == -INF:
            return b - 1
        if b == INF:
            return a + 1
        return (a + b) / 2
    if a == -INF and b == INF:
        return g / 2
    if a == -INF:
        k = math.ceil(b / g) - 1
        return k * g - g / 2
    if b == INF:
        k = _floor_div(a, g) + 1
        return k * g + g / 2
    first = (_floor_div(a, g) + 1) * g
    if first >= b:
        return (a + b) / 2
    return (a + first) / 2


def _grid(a, b, g, period):
    if a == -INF and b == INF:
        for k in range(period):
            yield k * g
        return
    if a == -INF:
        k = math.ceil(b / g) - 1
        for i in range(period):
            yield (k - i) * g
        return
    k = _floor_div(a, g) + 1
    for i in range(period):
        x = (k + i) * g
        if b != INF and x >= b:
            return
        yield x


def number_subset(left: list[Conj], right: list[Conj], budget: int | None = None):
    """Return ``(True, None)`` if every number in ``left`` lies in ``right``; else ``(False, witness)``."""
    if not left:
        return True, None
    ranges = [r for c in list(left) + list(right) for r in (c.pos, *c.negs)]
    for x in candidate_points(ranges, budget):
        if _union_contains(left, x) and not _union_contains(right, x):
            return False, x
    return True, None


def number_example(conjs: list[Conj], budget: int | None = None):
    """Some number in the union, or None if it is empty."""
    holds, witness = number_subset(conjs, [], budget)
    return None if holds else witness


def divisibility_holds(pl: list[Fraction], pr: list[Fraction], nl: list[Fraction], nr: list[Fraction]) -> bool:
    """Sufficient condition for unbounded step constraints: left steps force right steps.

    Every right step must divide the lcm of the left steps, and every negated
    right step must be a multiple of some negated left step.  An absent left
    step is the trivial constraint (step undefined).
    """
    big = None
    for m in pl:
        big = lcm(big, m)
    for m in pr:
        if big is None or (big / m).denominator != 1:
            return False
    for m in nr:
        if not any((m / n).denominator == 1 for n in nl):
            return False
    return True


def subtype_number(lhs: NumberConstraintSet, rhs: NumberConstraintSet) -> bool:
    left, right = lhs.to_conj(), rhs.to_conj()
    all_ranges = [left.pos, *left.negs, right.pos, *right.negs]
    unbounded = all(r.lo == -INF and r.hi == INF for r in all_ranges)
    if unbounded and all(r.multiple_of is not None for r in lhs.negative + rhs.negative):
        if divisibility_holds([r.multiple_of for r in lhs.positive if r.multiple_of],
                              [r.multiple_of for r in rhs.positive if r.multiple_of],
                              [r.multiple_of for r in lhs.negative if r.multiple_of],
                              [r.multiple_of for r in rhs.negative if r.multiple_of]):
            return True
    holds, _ = number_subset([left], [right])
    return holds
