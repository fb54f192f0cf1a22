"""Acceptance suite: one test per criterion, each under its wall-clock limit.

The terminal summary lists every criterion with PASS or FAIL.
"""
import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from conftest import TESTED
from oracles import brute_pairs, brute_prefix_count, random_rationals, word_values
from redundant_radix.cylinders import Cylinder, adjacent_overlap, interval, overlap_is_cylinder
from redundant_radix.numerals import (
    Params,
    PeriodicRep,
    expand,
    expand_periodic,
    interchangeable_pairs,
    value_of,
    word_value,
)
from redundant_radix.projector import (
    box_count_estimate,
    graph_sample,
    ifs_maps,
    integral_estimate,
    integral_exact,
    is_binary_point,
    jump_at,
    monotonicity_witness,
    one_sided_gap,
    self_affine_dimension,
    variation_lower_bound,
)
from redundant_radix.repcensus import (
    CONTINUUM,
    COUNTABLE,
    CardinalityClass,
    cantor_levelset_dimension,
    classify,
    count_prefixes,
    unique_set_dimension,
)

SEED = 20261017
PARAMS = [Params(*sr) for sr in TESTED]


@contextmanager
def time_limit(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.1f}s, limit {seconds}s"


@pytest.mark.criterion(1, "pair-count law")
def test_criterion_01_pair_count():
    with time_limit(5):
        for s in range(2, 13):
            for r in range(s, 2 * s):
                pairs = interchangeable_pairs(Params(s, r))
                assert len(pairs) == r * (r - s + 1), (s, r)
                assert {frozenset([p.left, p.right]) for p in pairs} == brute_pairs(s, r), (s, r)
        assert len(interchangeable_pairs(Params(2, 2))) == 2
        assert len(interchangeable_pairs(Params(3, 4))) == 8


@pytest.mark.criterion(2, "expansion soundness")
def test_criterion_02_expansion_soundness():
    rng = random.Random(SEED)
    with time_limit(30):
        for p in PARAMS:
            s, r = p.s, p.r
            for x in random_rationals(rng, s, r, 500):
                for policy in ("greedy", "lazy"):
                    assert value_of(expand_periodic(x, p, policy), s) == x
                    word, _ = expand(x, p, policy, 40)
                    partial = Fraction(0)
                    for n, d in enumerate(word, 1):
                        partial += Fraction(d, s**n)
                        assert 0 <= x - partial <= Fraction(r, s**n * (s - 1))


@pytest.mark.criterion(3, "cylinder laws")
def test_criterion_03_cylinder_laws():
    rng = random.Random(SEED)
    with time_limit(5):
        for p in PARAMS:
            s, r = p.s, p.r
            for _ in range(200):
                m = rng.randint(0, 10)
                c = Cylinder(p, tuple(rng.randint(0, r) for _ in range(m)))
                i = rng.randrange(r)
                length = interval(c).length
                ov = adjacent_overlap(c, i)
                assert length == Fraction(r, s**m * (s - 1))
                assert ov.length == Fraction(r - s + 1, s ** (m + 1) * (s - 1))
                assert ov.length / length == Fraction(r - s + 1, s * r)
        expected = {(2, 2): 1, (2, 3): None, (3, 3): None, (3, 4): None}
        got = {sr: overlap_is_cylinder(Params(*sr)) for sr in expected}
        assert got == expected


@pytest.mark.criterion(4, "census oracle")
def test_criterion_04_census_oracle():
    rng = random.Random(SEED)
    with time_limit(60):
        for p in PARAMS:
            s, r = p.s, p.r
            xs = random_rationals(rng, s, r, 50)
            n = 1
            while (r + 1) ** n <= 10**6:
                vals = word_values(s, r, n)
                for x in xs:
                    assert count_prefixes(x, p, n) == brute_prefix_count(x, s, r, n, vals), (s, r, x, n)
                n += 1


def _periodic_class(c, s, r):
    if c in (r - s + 1, s - 1):
        return COUNTABLE
    if 1 <= c <= r - s or s <= c <= r - 1:
        return CONTINUUM
    return CardinalityClass.finite(1)


@pytest.mark.criterion(5, "level-set tables")
def test_criterion_05_levelset_tables():
    rng = random.Random(SEED)
    finite1 = CardinalityClass.finite(1)
    with time_limit(60):
        for s in range(2, 7):
            for r in range(s, 2 * s - 1):
                p = Params(s, r)
                for c in range(r + 1):
                    y = value_of(PeriodicRep((), (c,), r), s)
                    assert classify(y, p) == _periodic_class(c, s, r), (s, r, c)
        for s in range(2, 6):
            for r in range(2 * s - 1, 2 * s + 3):
                p = Params(s, r)
                assert classify(Fraction(0), p) == finite1
                assert classify(p.x_max, p) == finite1
                for x in random_rationals(rng, s, r, 100, max_den=200, interior=True):
                    assert classify(x, p) == CONTINUUM, (s, r, x)


@pytest.mark.criterion(6, "jump law")
def test_criterion_06_jump_law():
    rng = random.Random(SEED)
    with time_limit(10):
        for _ in range(100):
            p = rng.choice(PARAMS)
            s, r, b = p.s, p.r, p.r + 1
            mm = rng.randint(1, 8)
            x = Fraction(rng.randrange(1, b**mm), b**mm)
            m = is_binary_point(x, p)
            jump = jump_at(x, p)
            assert jump == Fraction(r - s + 1, s**m * (s - 1))
            assert 0 <= jump - one_sided_gap(x, p, 40) <= Fraction(r, s ** (m + 40) * (s - 1))


@pytest.mark.criterion(7, "self-affinity")
def test_criterion_07_self_affinity():
    with time_limit(30):
        for p in (Params(2, 3), Params(3, 4)):
            b = p.r + 1
            for n in range(0, 9):
                small, big = graph_sample(p, n), graph_sample(p, n + 1)
                covered = np.zeros(len(big), dtype=bool)
                produced = 0
                for phi in ifs_maps(p):
                    xs, ys = phi.apply_sample(small)
                    produced += len(xs)
                    # big.x_num is 0..b**(n+1)-1, so x picks the matching point
                    assert np.array_equal(big.x_num[xs], xs)
                    assert np.array_equal(big.y_num[xs], ys)
                    covered[xs] = True
                assert produced == b ** (n + 1) == len(big)
                assert covered.all()


@pytest.mark.criterion(8, "integral")
def test_criterion_08_integral():
    with time_limit(20):
        for p in PARAMS:
            assert integral_exact(p) == Fraction(p.r, 2 * (p.s - 1))
        p = Params(2, 3)
        assert integral_exact(p) == Fraction(3, 2)
        assert abs(integral_estimate(p, 10) - Fraction(3, 2)) < Fraction(1, 100)


@pytest.mark.criterion(9, "variation divergence")
def test_criterion_09_variation():
    with time_limit(1):
        for p in PARAMS:
            s, r = p.s, p.r
            q = Fraction(r, s)
            c = Fraction(r - s + 1, s - 1)
            sums = [variation_lower_bound(p, n) for n in range(1, 31)]
            for n, v in enumerate(sums, 1):
                geometric = c * n if q == 1 else c * q * (1 - q**n) / (1 - q)
                assert v == geometric
            inc = [sums[0]] + [b - a for a, b in zip(sums, sums[1:])]
            assert all(b / a == q for a, b in zip(inc, inc[1:]))
        assert any(v > 1000 for v in (variation_lower_bound(Params(2, 3), n) for n in range(1, 31)))


@pytest.mark.criterion(10, "monotonicity witnesses")
def test_criterion_10_witnesses():
    rng = random.Random(SEED)
    with time_limit(5):
        for p in PARAMS:
            for _ in range(100):
                base = tuple(rng.randint(0, p.r) for _ in range(rng.randint(0, 8)))
                w = monotonicity_witness(base, p)
                assert w.x1 < w.x2 < w.x3
                assert w.f2 - w.f1 > 0 and w.f3 - w.f2 < 0


@pytest.mark.criterion(11, "dimension formulas")
def test_criterion_11_dimensions():
    with time_limit(60):
        d = self_affine_dimension(Params(2, 3))
        assert d.exact_ratio() == Fraction(4, 3)
        assert (d.num_args, d.den_args) == ((4, 4), (4, 2))
        u = unique_set_dimension(Params(3, 3))
        assert (u.num_args, u.den_args) == ((2,), (3,))
        assert u.value == math.log(2) / math.log(3)
        for r in (2, 3, 4):
            assert cantor_levelset_dimension(Params(2, r)).exact_ratio() == Fraction(1, 2)
        # informational only: box-counting slopes for (2,3) at depth 10
        rows = box_count_estimate(graph_sample(Params(2, 3), 10), range(2, 9))
        slopes = [round(sl, 4) for _, _, sl in rows[1:]]
        within = all(abs(sl - 4 / 3) <= 0.2 for sl in slopes)
        print(f"box-count slopes (2,3) depth 10, k=3..8: {slopes}; within 4/3 +- 0.2: {within}")
