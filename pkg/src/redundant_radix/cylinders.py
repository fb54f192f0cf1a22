"""Cylinder sets: numbers admitting a representation that starts with a fixed word.

A rank-``m`` cylinder with base ``c_1..c_m`` is the closed interval
``[a, a + r/(s**m (s-1))]`` with ``a = sum(c_i / s**i)``.  Siblings overlap,
which is where the redundancy of the alphabet becomes visible.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UsageError
from .numerals import Params, Word, expand, format_rational, word_value

__all__ = [
    "Cylinder",
    "Interval",
    "interval",
    "same_cylinder",
    "children",
    "adjacent_overlap",
    "overlap_is_cylinder",
    "cylinder_containing",
]


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise UsageError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def issubset(self, other: Interval) -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def intersect(self, other: Interval) -> Interval | None:
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return Interval(lo, hi) if lo <= hi else None

    def to_json(self) -> dict:
        return {"lo": format_rational(self.lo), "hi": format_rational(self.hi)}


@dataclass(frozen=True)
class Cylinder:
    params: Params
    base: Word = ()

    def __post_init__(self):
        base = tuple(int(d) for d in self.base)
        for d in base:
            if not 0 <= d <= self.params.r:
                raise UsageError(f"base digit {d} outside 0..{self.params.r}")
        object.__setattr__(self, "base", base)

    @property
    def rank(self) -> int:
        return len(self.base)

    def __str__(self) -> str:
        return " ".join(map(str, self.base))


def _rank_length(params: Params, m: int) -> Fraction:
    return Fraction(params.r, params.s**m * (params.s - 1))


def interval(c: Cylinder) -> Interval:
    a = word_value(c.base, c.params.s)
    return Interval(a, a + _rank_length(c.params, c.rank))


def same_cylinder(c1: Cylinder, c2: Cylinder) -> bool:
    """Equal rank and equal left endpoint; different ranks never coincide."""
    if c1.params != c2.params:
        raise UsageError("cylinders belong to different (s, r) systems")
    if c1.rank != c2.rank:
        return False
    return word_value(c1.base, c1.params.s) == word_value(c2.base, c2.params.s)


def children(c: Cylinder) -> list[Cylinder]:
    return [Cylinder(c.params, c.base + (i,)) for i in range(c.params.r + 1)]


def adjacent_overlap(c: Cylinder, i: int) -> Interval:
    """Intersection of children ``i`` and ``i+1`` of ``c``.

    From the left end of child ``i+1`` (stream ``c (i+1) (0)``) to the right
    end of child ``i`` (stream ``c i (r)``).
    """
    r = c.params.r
    if not 0 <= i < r:
        raise UsageError(f"child {i} has no right neighbour (need 0 <= i < {r})")
    right = interval(Cylinder(c.params, c.base + (i + 1,)))
    left = interval(Cylinder(c.params, c.base + (i,)))
    return Interval(right.lo, left.hi)


def overlap_is_cylinder(params: Params, max_p: int = 64) -> int | None:
    """The ``p >= 1`` with ``r (s**p - 1) == s**p (s - 1)``, if any.

    For that ``p`` the sibling overlap is itself the cylinder ``c i r^p`` (equivalently
    ``c (i+1) 0^p``).  Checked in integers, so no rounding is involved.
    """
    s, r = params.s, params.r
    for p in range(1, max_p + 1):
        if r * (s**p - 1) == s**p * (s - 1):
            return p
    return None


def cylinder_containing(x: Fraction, m: int, params: Params, policy: str = "greedy", seed: int = 0) -> Cylinder:
    """Rank-``m`` cylinder whose base is the first ``m`` digits of ``expand(x, policy)``."""
    word, _ = expand(x, params, policy, m, seed=seed)
    return Cylinder(params, word)
