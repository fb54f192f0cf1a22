"""Brute-force reference computations, deliberately independent of the package code paths."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np


def random_rationals(rng: random.Random, s: int, r: int, count: int, max_den: int = 1000, interior=False):
    """``count`` rationals ``p/q`` (``q <= max_den``) in ``[0, r/(s-1)]``."""
    top = Fraction(r, s - 1)
    out = []
    while len(out) < count:
        q = rng.randint(1, max_den)
        p = rng.randint(0, int(q * top))
        x = Fraction(p, q)
        if interior and x in (0, top):
            continue
        out.append(x)
    return out


def brute_pair_count(s: int, r: int) -> int:
    """Unordered pairs {(a,b),(c,d)} of distinct digit pairs with a*s+b == c*s+d, over all of {0..r}^4."""
    d = np.arange(r + 1)
    a, b, c, e = np.meshgrid(d, d, d, d, indexing="ij")
    same_value = a * s + b == c * s + e
    same_pair = (a == c) & (b == e)
    return int(np.count_nonzero(same_value & ~same_pair)) // 2


def brute_pairs(s: int, r: int) -> set[frozenset]:
    """The same enumeration as ``brute_pair_count``, returning the pairs themselves."""
    d = np.arange(r + 1)
    a, b, c, e = np.meshgrid(d, d, d, d, indexing="ij")
    hit = (a * s + b == c * s + e) & ((a != c) | (b != e))
    return {frozenset([(int(w), int(x)), (int(y), int(z))]) for w, x, y, z in zip(a[hit], b[hit], c[hit], e[hit])}


def word_values(s: int, r: int, n: int) -> np.ndarray:
    """``sum(w_i s**(n-i))`` for every word ``w`` in ``{0..r}**n`` (one entry per word)."""
    vals = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        vals = (vals[:, None] * s + np.arange(r + 1)[None, :]).ravel()
    return vals


def brute_prefix_count(x: Fraction, s: int, r: int, n: int, vals: np.ndarray | None = None) -> int:
    """Words ``w`` of length ``n`` with ``0 <= x - w/s**n <= (r/(s-1))/s**n``, by exhaustive search."""
    if vals is None:
        vals = word_values(s, r, n)
    p, q = x.numerator, x.denominator
    # multiply through by q (s-1) s**n
    gap = (s - 1) * (p * s**n - q * vals)
    return int(np.count_nonzero((gap >= 0) & (gap <= q * r)))


def series_value(pre, per, base: int) -> Fraction:
    """Value of ``pre (per)^inf`` by explicit geometric-series summation of one period block."""
    head = sum(Fraction(d, base**i) for i, d in enumerate(pre, 1))
    block = sum(Fraction(d, base**i) for i, d in enumerate(per, 1))
    # block repeats every len(per) places: sum_k block * base**(-k len(per))
    ratio = Fraction(1, base ** len(per))
    return head + Fraction(1, base ** len(pre)) * block / (1 - ratio)


def brute_representations(x: Fraction, s: int, r: int, max_total: int) -> list[tuple]:
    """All ``(pre, per)`` with ``len(pre) + len(per) <= max_total``, primitive period, no rollable
    trailing digit and value ``x``; ordered by total length then lexicographically."""
    out = []
    for total in range(1, max_total + 1):
        batch = []
        for m in range(total):
            for word in itertools.product(range(r + 1), repeat=total):
                pre, per = word[:m], word[m:]
                if pre and pre[-1] == per[-1]:
                    continue
                n = len(per)
                if any(per == per[k:] + per[:k] for k in range(1, n) if n % k == 0):
                    continue
                if series_value(pre, per, s) == x:
                    batch.append((pre, per))
        out.extend(sorted(batch))
    return out
