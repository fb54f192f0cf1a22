"""The digit projection ``f``: read base-(r+1) digits of ``x`` as an (s, r) stream.

``f(sum a_n/(r+1)**n) = sum a_n/s**n`` on ``[0, 1]``, using the terminating
base-(r+1) form at points with two expansions.  ``f`` jumps at every such
point, satisfies ``f((i + x)/(r+1)) = i/s + f(x)/s`` and its graph is the
attractor of ``r + 1`` diagonal affine maps.

``f(1)`` is taken as ``r/(s-1)``, the value of the all-``r`` stream, so the
digit map stays consistent on the right edge.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .errors import BudgetError, DomainError, UsageError
from .numerals import Params, PeriodicRep, Word, format_rational, value_of, word_value
from .repcensus import CardinalityClass, Dimension, _dimension, build_automaton, classify

__all__ = [
    "IFSMap",
    "GraphSample",
    "Witness",
    "LevelSet",
    "canonical_base_rep",
    "f_eval",
    "f_of_rep",
    "is_binary_point",
    "jump_at",
    "one_sided_gap",
    "check_functional_eq",
    "ifs_maps",
    "graph_sample",
    "integral_exact",
    "integral_estimate",
    "variation_lower_bound",
    "monotonicity_witness",
    "self_affine_dimension",
    "box_count_estimate",
    "levelset_classify",
]

DEFAULT_SAMPLE_BUDGET = 5**10


def _check_unit(x: Fraction) -> Fraction:
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise DomainError(f"x={x} outside [0, 1]")
    return x


def canonical_base_rep(x: Fraction, params: Params) -> PeriodicRep:
    """Base-(r+1) digits of ``x`` by long division; terminating values end in ``(0)``.

    ``1`` is the only value whose canonical form has period ``(r)``.
    """
    x = _check_unit(x)
    r, b = params.r, params.r + 1
    if x == 1:
        return PeriodicRep((), (r,), r)
    q = x.denominator
    rem = x.numerator
    seen: dict[int, int] = {}
    digits: list[int] = []
    while rem not in seen:
        seen[rem] = len(digits)
        d, rem = divmod(rem * b, q)
        digits.append(d)
    i = seen[rem]
    return PeriodicRep(tuple(digits[:i]), tuple(digits[i:]), r)


def f_of_rep(rep: PeriodicRep, params: Params) -> Fraction:
    """``f`` on a digit stream, whichever base-(r+1) form it is."""
    return value_of(rep, params.s)


def f_eval(x: Fraction, params: Params) -> Fraction:
    return f_of_rep(canonical_base_rep(x, params), params)


def is_binary_point(x: Fraction, params: Params) -> int | None:
    """Rank ``m`` of ``x = k/(r+1)**m`` (lowest terms, ``0 < x < 1``); None otherwise."""
    x = _check_unit(x)
    if x in (0, 1):
        return None
    b, q = params.r + 1, x.denominator
    m, power = 1, b
    while power % q:
        m += 1
        power *= b
        if m > q.bit_length():
            return None
    return m


def _binary_rank(x: Fraction, params: Params) -> int:
    m = is_binary_point(x, params)
    if m is None:
        raise UsageError(f"{x} is not a point with two base-{params.r + 1} expansions")
    return m


def jump_at(x: Fraction, params: Params) -> Fraction:
    """Size of the jump of ``f`` at a rank-``m`` point: ``(r-s+1)/(s**m (s-1))``."""
    m = _binary_rank(x, params)
    s, r = params.s, params.r
    return Fraction(r - s + 1, s**m * (s - 1))


def one_sided_gap(x: Fraction, params: Params, k: int) -> Fraction:
    """``f(c_1..c_{m-1} [c_m - 1] r^k (0)) - f(x)``: the jump seen through a length-``k`` tail."""
    m = _binary_rank(x, params)
    if k < 1:
        raise UsageError("k must be >= 1")
    word = canonical_base_rep(x, params).prefix(m)
    left = word[:-1] + (word[-1] - 1,) + (params.r,) * k
    return word_value(left, params.s) - word_value(word, params.s)


def check_functional_eq(i: int, x: Fraction, params: Params, pointwise: bool = False) -> bool:
    """Check ``f((i + x)/(r+1)) == i/s + f(x)/s`` exactly.

    When the canonical form of ``(i + x)/(r+1)`` is not ``i`` prepended to that
    of ``x`` (only ``x = 1``, ``i < r``), the check is made on the digit stream
    ``i`` + canonical(x) unless ``pointwise`` is set.
    """
    x = _check_unit(x)
    if not 0 <= i <= params.r:
        raise DomainError(f"digit {i} outside 0..{params.r}")
    s = params.s
    rep = canonical_base_rep(x, params)
    rhs = Fraction(i, s) + f_of_rep(rep, params) / s
    image = (i + x) / (params.r + 1)
    if pointwise or canonical_base_rep(image, params) == rep.prepend(i):
        return f_eval(image, params) == rhs
    return f_of_rep(rep.prepend(i), params) == rhs


@dataclass(frozen=True)
class IFSMap:
    """``(x, y) -> (x/(r+1) + i/(r+1), y/s + i/s)``."""

    index: int
    x_scale: Fraction
    x_offset: Fraction
    y_scale: Fraction
    y_offset: Fraction

    def __call__(self, point: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
        x, y = point
        return self.x_scale * x + self.x_offset, self.y_scale * y + self.y_offset

    def apply_sample(self, sample: GraphSample) -> tuple[np.ndarray, np.ndarray]:
        """Image of every point of ``sample`` as numerators over the depth ``n+1`` denominators.

        Same affine map as ``__call__``; the coefficients are rescaled to the
        fixed denominators ``(r+1)**(n+1)`` and ``s**(n+1)`` and must come out integral.
        """
        n = sample.depth
        xd, yd = sample.x_den * sample.base, sample.y_den * sample.s
        coeffs = [self.x_scale * xd / sample.x_den, self.x_offset * xd, self.y_scale * yd / sample.y_den, self.y_offset * yd]
        if any(c.denominator != 1 for c in coeffs):
            raise ValueError(f"map {self.index} not integral at depth {n}")
        ax, bx, ay, by = (int(c) for c in coeffs)
        return ax * sample.x_num + bx, ay * sample.y_num + by

    def to_json(self) -> dict:
        z = "0/1"
        return {
            "index": self.index,
            "matrix": [[format_rational(self.x_scale), z], [z, format_rational(self.y_scale)]],
            "offset": [format_rational(self.x_offset), format_rational(self.y_offset)],
        }


def ifs_maps(params: Params) -> list[IFSMap]:
    b, s = params.r + 1, params.s
    return [IFSMap(i, Fraction(1, b), Fraction(i, b), Fraction(1, s), Fraction(i, s)) for i in range(b)]


@dataclass(frozen=True, eq=False)
class GraphSample:
    """Graph points at every ``k/(r+1)**n``, stored as integer numerators.

    Point ``k`` is ``(x_num[k] / (r+1)**n, y_num[k] / s**n)``; sorted by ``x``.
    """

    s: int
    base: int
    depth: int
    x_num: np.ndarray
    y_num: np.ndarray

    @property
    def x_den(self) -> int:
        return self.base**self.depth

    @property
    def y_den(self) -> int:
        return self.s**self.depth

    def __len__(self) -> int:
        return len(self.x_num)

    @property
    def points(self) -> list[tuple[Fraction, Fraction]]:
        xd, yd = self.x_den, self.y_den
        return [(Fraction(int(a), xd), Fraction(int(c), yd)) for a, c in zip(self.x_num, self.y_num)]

    def to_csv(self) -> str:
        rows = ["x_num,x_den,y_num,y_den"]
        for x, y in self.points:
            rows.append(f"{x.numerator},{x.denominator},{y.numerator},{y.denominator}")
        return "\n".join(rows) + "\n"


def graph_sample(params: Params, n: int, budget: int = DEFAULT_SAMPLE_BUDGET) -> GraphSample:
    """``(x, f(x))`` at all ``(r+1)**n`` terminating words of length ``n``.

    Each ``y`` is computed from the digits of ``k`` directly, not through the
    affine maps, so the sample can be used to test them.
    """
    b, s = params.r + 1, params.s
    if n < 0:
        raise UsageError("depth must be >= 0")
    if b**n > budget:
        raise BudgetError(f"(r+1)^n = {b**n} exceeds sample budget {budget}")
    if b ** (n + 1) * params.r >= 2**62:
        raise BudgetError("sample numerators would overflow int64")
    k = np.arange(b**n, dtype=np.int64)
    y = np.zeros_like(k)
    for j in range(1, n + 1):
        digit = (k // b ** (n - j)) % b
        y += digit * s ** (n - j)
    return GraphSample(s, b, n, k, y)


def integral_exact(params: Params) -> Fraction:
    return Fraction(params.r, 2 * (params.s - 1))


def integral_estimate(params: Params, n: int, budget: int = DEFAULT_SAMPLE_BUDGET) -> Fraction:
    """Left Riemann sum of ``f`` on the uniform ``(r+1)**-n`` grid."""
    g = graph_sample(params, n, budget)
    total = int(g.y_num.sum(dtype=object))
    return Fraction(total, g.y_den * g.x_den)


def variation_lower_bound(params: Params, n: int) -> Fraction:
    """Sum of jump sizes over all binary points of rank ``1..n`` (``r**m`` points at rank ``m``)."""
    if n < 1:
        raise UsageError("n must be >= 1")
    s, r = params.s, params.r
    return sum((Fraction(r**m * (r - s + 1), s**m * (s - 1)) for m in range(1, n + 1)), Fraction(0))


class Witness(NamedTuple):
    x1: Fraction
    x2: Fraction
    x3: Fraction
    f1: Fraction
    f2: Fraction
    f3: Fraction


def monotonicity_witness(base: Sequence[int], params: Params) -> Witness:
    """Three points of the cylinder ``base`` where ``f`` rises then falls.

    ``x1 = base (0)``, ``x2 = base 0 r (r-1)``, ``x3 = base 1 (0)``.
    """
    r, b = params.r, params.r + 1
    base = tuple(base)
    if any(not 0 <= d <= r for d in base):
        raise DomainError(f"base digits must lie in 0..{r}")
    reps = [
        PeriodicRep(base, (0,), r),
        PeriodicRep(base + (0, r), (r - 1,), r),
        PeriodicRep(base + (1,), (0,), r),
    ]
    xs = [value_of(rep, b) for rep in reps]
    fs = [f_eval(x, params) for x in xs]
    return Witness(*xs, *fs)


def self_affine_dimension(params: Params) -> Dimension:
    """``2 ln(r+1) / ln((r+1) s)``, the root of ``(r+1) * det(A)**(d/2) = 1``."""
    b = params.r + 1
    return _dimension((b, b), (b, params.s))


def box_count_estimate(sample: GraphSample, grid_exponents: Sequence[int]) -> list[tuple[float, int, float | None]]:
    """Count occupied boxes of width ``(r+1)**-k`` and height ``s**-k``; heuristic only.

    The boxes follow the two contraction ratios of the graph maps, so the
    scale of level ``k`` is the geometric mean side ``((r+1) s)**(-k/2)``.
    Returns ``(scale, count, slope)`` per exponent, ``slope`` being the
    log-log slope against the previous exponent (None for the first).  When
    ``s == r + 1`` the boxes are square and a line gives slope 1.
    """
    b, s, n = sample.base, sample.s, sample.depth
    out: list[tuple[float, int, float | None]] = []
    prev = None
    for k in grid_exponents:
        if not 0 <= k <= n:
            raise UsageError(f"grid exponent {k} outside 0..{n} (sample depth)")
        col = sample.x_num // b ** (n - k)
        row = sample.y_num // s ** (n - k)
        n_rows = int(row.max(initial=0)) + 1
        count = len(np.unique(col * n_rows + row))
        log_scale = 0.5 * k * math.log(b * s)
        slope = None
        if prev is not None:
            c0, l0 = prev
            slope = math.log(count / c0) / (log_scale - l0)
        out.append((math.exp(-log_scale), count, slope))
        prev = (count, log_scale)
    return out


class LevelSet(NamedTuple):
    cardinality: CardinalityClass
    period_r_tail: bool


def levelset_classify(y0: Fraction, params: Params) -> LevelSet:
    """Cardinality of ``f^-1(y0)``, taken as that of the representation set of ``y0``.

    ``period_r_tail`` flags ``y0`` with some representation ending in ``(r)``;
    the matching base-(r+1) stream is then not the canonical form of its value.
    """
    aut = build_automaton(y0, params)
    return LevelSet(classify(y0, params), params.x_max in aut.states)
