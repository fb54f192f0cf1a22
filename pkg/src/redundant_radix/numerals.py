"""Numeral systems with natural base ``s`` and redundant alphabet ``{0, ..., r}``.

A digit stream ``a_1 a_2 ...`` over ``{0..r}`` denotes ``sum(a_n / s**n)``; every
value in ``[0, r/(s-1)]`` is reachable and most have several streams.  All
arithmetic here is exact (:class:`fractions.Fraction`).
"""
from __future__ import annotations

import math
import random
import re
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, UsageError

__all__ = [
    "Params",
    "PeriodicRep",
    "PairSubstitution",
    "parse_rational",
    "format_rational",
    "word_value",
    "value_of",
    "admissible_digits",
    "expand",
    "expand_periodic",
    "interchangeable_pairs",
    "substitution_chains",
    "reflect",
    "is_rs_rational",
]

Word = tuple[int, ...]

POLICIES = ("greedy", "lazy", "random")


@dataclass(frozen=True)
class Params:
    """The pair ``(s, r)`` with ``2 <= s <= r``."""

    s: int
    r: int

    def __post_init__(self):
        if not (isinstance(self.s, int) and isinstance(self.r, int)):
            raise UsageError(f"s and r must be integers, got {self.s!r}, {self.r!r}")
        if not 2 <= self.s <= self.r:
            raise UsageError(f"need 2 <= s <= r, got s={self.s}, r={self.r}")

    @property
    def x_max(self) -> Fraction:
        """Value of the all-``r`` stream, the right end of the domain."""
        return Fraction(self.r, self.s - 1)

    @property
    def overlap_ratio(self) -> Fraction:
        return Fraction(self.r - self.s + 1, self.s * self.r)

    def check_point(self, x: Fraction) -> Fraction:
        x = Fraction(x)
        if not 0 <= x <= self.x_max:
            raise DomainError(f"x={x} outside [0, {self.x_max}] for s={self.s}, r={self.r}")
        return x


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or a bare integer ``"p"``.  Decimals are rejected."""
    m = re.fullmatch(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*", text)
    if m is None:
        raise UsageError(f"malformed rational {text!r}; expected 'p/q'")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise UsageError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _primitive_root(word: Word) -> Word:
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word[:p] * (n // p) == word:
            return word[:p]
    return word


@dataclass(frozen=True)
class PeriodicRep:
    """Eventually periodic digit stream ``preperiod (period)^inf``.

    Construction normalizes: the period is reduced to its primitive root and
    trailing preperiod digits are rolled into the period while they match, so
    two reps of the same stream compare equal.
    """

    preperiod: Word
    period: Word
    alphabet_bound: int

    def __post_init__(self):
        pre = tuple(int(d) for d in self.preperiod)
        per = tuple(int(d) for d in self.period)
        if not per:
            raise UsageError("period must be nonempty")
        for d in pre + per:
            if not 0 <= d <= self.alphabet_bound:
                raise UsageError(f"digit {d} outside alphabet 0..{self.alphabet_bound}")
        per = _primitive_root(per)
        while pre and pre[-1] == per[-1]:
            per = (pre[-1],) + per[:-1]
            pre = pre[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def parse(cls, text: str, alphabet_bound: int) -> PeriodicRep:
        """Read the compact form ``"d1 d2 (p1 p2)"``."""
        m = re.fullmatch(r"\s*([\d\s]*?)\s*\(\s*([\d\s]+?)\s*\)\s*", text)
        if m is None:
            raise UsageError(f"malformed periodic representation {text!r}")
        pre = tuple(int(t) for t in m.group(1).split())
        per = tuple(int(t) for t in m.group(2).split())
        return cls(pre, per, alphabet_bound)

    @classmethod
    def terminating(cls, word: Iterable[int], alphabet_bound: int) -> PeriodicRep:
        return cls(tuple(word), (0,), alphabet_bound)

    def __str__(self) -> str:
        per = "(" + " ".join(map(str, self.period)) + ")"
        if not self.preperiod:
            return per
        return " ".join(map(str, self.preperiod)) + " " + per

    def prefix(self, n: int) -> Word:
        """First ``n`` digits of the stream."""
        out = list(self.preperiod[:n])
        while len(out) < n:
            out.extend(self.period[: n - len(out)])
        return tuple(out)

    def prepend(self, digit: int) -> PeriodicRep:
        return PeriodicRep((digit,) + self.preperiod, self.period, self.alphabet_bound)

    def ends_in(self, digit: int) -> bool:
        return self.period == (digit,)


@dataclass(frozen=True)
class PairSubstitution:
    """Two digit pairs ``(a, b)``, ``(c, d)`` with ``a*s + b == c*s + d``."""

    left: tuple[int, int]
    right: tuple[int, int]

    def apply(self, word: Sequence[int], pos: int) -> Word | None:
        """Swap the pair at ``pos`` if it matches either side; None otherwise."""
        pair = tuple(word[pos : pos + 2])
        if pair == self.left:
            new = self.right
        elif pair == self.right:
            new = self.left
        else:
            return None
        return tuple(word[:pos]) + new + tuple(word[pos + 2 :])

    def __str__(self) -> str:
        return f"({self.left[0]},{self.left[1]})<->({self.right[0]},{self.right[1]})"


def word_value(word: Sequence[int], base: int) -> Fraction:
    """Exact value of the finite sum ``sum(w_i / base**i)``."""
    num = 0
    for d in word:
        num = num * base + d
    return Fraction(num, base ** len(word))


def value_of(rep: PeriodicRep, base: int) -> Fraction:
    """Exact sum of ``sum(digit_n / base**n)`` over the whole periodic stream.

    Digits may exceed ``base - 1``; that is the normal case for the redundant
    alphabet.
    """
    if base < 2:
        raise UsageError(f"base must be >= 2, got {base}")
    m, p = len(rep.preperiod), len(rep.period)
    head = word_value(rep.preperiod, base)
    per_num = 0
    for d in rep.period:
        per_num = per_num * base + d
    return head + Fraction(per_num, base**m * (base**p - 1))


def admissible_digits(y: Fraction, params: Params) -> range:
    """Digits ``a`` with ``0 <= s*y - a <= x_max``: the legal next digits at remainder ``y``."""
    y = params.check_point(y)
    t = params.s * y
    lo = max(0, math.ceil(t - params.x_max))
    hi = min(params.r, math.floor(t))
    return range(lo, hi + 1)


def _chooser(policy: str, seed: int):
    if policy == "greedy":
        return lambda digits: digits[-1]
    if policy == "lazy":
        return lambda digits: digits[0]
    if policy == "random":
        rng = random.Random(seed)
        return lambda digits: digits[rng.randrange(len(digits))]
    raise UsageError(f"unknown policy {policy!r}; choose from {POLICIES}")


def expand(x: Fraction, params: Params, policy: str, depth: int, seed: int = 0) -> tuple[Word, Fraction]:
    """First ``depth`` digits of an expansion of ``x`` and the scaled remainder.

    Each step picks a digit from :func:`admissible_digits` of the current
    remainder ``y`` and moves to ``s*y - digit``.  ``greedy`` takes the largest
    admissible digit, ``lazy`` the smallest, ``random`` a uniform one drawn from
    ``random.Random(seed)``.  The returned remainder lies in ``[0, x_max]``;
    ``x == word_value(word, s) + remainder / s**depth``.
    """
    y = params.check_point(x)
    if depth < 0:
        raise UsageError("depth must be >= 0")
    choose = _chooser(policy, seed)
    out = []
    for _ in range(depth):
        d = choose(admissible_digits(y, params))
        out.append(d)
        y = params.s * y - d
    return tuple(out), y


def expand_periodic(x: Fraction, params: Params, policy: str = "greedy") -> PeriodicRep:
    """Complete eventually periodic expansion under a deterministic policy.

    Remainders of ``p/q`` keep denominators dividing ``q`` inside a bounded
    interval, so the remainder sequence must revisit a state.
    """
    if policy not in ("greedy", "lazy"):
        raise UsageError(f"expand_periodic needs a deterministic policy, got {policy!r}")
    y = params.check_point(x)
    pick = max if policy == "greedy" else min
    seen: dict[Fraction, int] = {}
    digits: list[int] = []
    while y not in seen:
        seen[y] = len(digits)
        d = pick(admissible_digits(y, params))
        digits.append(d)
        y = params.s * y - d
    i = seen[y]
    return PeriodicRep(tuple(digits[:i]), tuple(digits[i:]), params.r)


def interchangeable_pairs(params: Params) -> list[PairSubstitution]:
    """All unordered pairs ``{(a,b), (c,d)}`` over ``{0..r}`` with ``a*s+b == c*s+d``.

    Oriented with ``a < c``; sorted by ``(left, right)``.
    """
    s, r = params.s, params.r
    out = []
    for a in range(r + 1):
        for b in range(r + 1):
            for c in range(a + 1, r + 1):
                d = b - (c - a) * s
                if d < 0:
                    break
                out.append(PairSubstitution((a, b), (c, d)))
    out.sort(key=lambda p: (p.left, p.right))
    return out


def substitution_chains(params: Params) -> list[tuple[tuple[int, int], ...]]:
    """Maximal groups of mutually interchangeable digit pairs, each ordered by first digit.

    For ``r == 2s`` only the three-pair chains ``(j,2s) (j+1,s) (j+2,0)`` are
    returned; otherwise every class of size >= 2.
    """
    s, r = params.s, params.r
    classes: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for a in range(r + 1):
        for b in range(r + 1):
            classes[a * s + b].append((a, b))
    chains = [tuple(sorted(v)) for _, v in sorted(classes.items()) if len(v) >= 2]
    if r == 2 * s:
        chains = [c for c in chains if len(c) == 3]
    return chains


def reflect(rep: PeriodicRep, params: Params) -> PeriodicRep:
    """Digitwise ``a -> r - a``; maps a rep of ``x`` to a rep of ``x_max - x``."""
    if rep.alphabet_bound != params.r:
        raise UsageError(f"rep alphabet 0..{rep.alphabet_bound} does not match r={params.r}")
    r = params.r
    return PeriodicRep(tuple(r - d for d in rep.preperiod), tuple(r - d for d in rep.period), r)


def is_rs_rational(x: Fraction, params: Params) -> tuple[bool, PeriodicRep | None]:
    """Whether ``x`` has a terminating representation (period ``(0)``), with a witness.

    Breadth-first search in the remainder automaton for remainder 0, so the
    witness has the shortest possible preperiod.
    """
    from .repcensus import build_automaton

    aut = build_automaton(x, params)
    path = aut.shortest_path_to(Fraction(0))
    if path is None:
        return False, None
    return True, PeriodicRep.terminating(path, params.r)
