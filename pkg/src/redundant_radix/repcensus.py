"""Census of all representations of a rational via its remainder automaton.

Reading digit ``a`` at remainder ``y`` moves to ``s*y - a``; the admissible
digits keep the remainder in ``[0, x_max]``.  For ``x = p/q`` every remainder
is ``k/q`` in that interval, so the reachable graph is finite and its infinite
paths from ``x`` are exactly the representations of ``x``.  How many there are
(finitely many, countably many, a continuum) is read off the strongly
connected components.
"""
from __future__ import annotations

import functools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, NamedTuple

import networkx as nx

from .errors import BudgetError, RegimeError
from .numerals import Params, PeriodicRep, Word, format_rational

__all__ = [
    "RemainderAutomaton",
    "CardinalityClass",
    "Dimension",
    "Enumeration",
    "build_automaton",
    "count_prefixes",
    "enumerate_representations",
    "classify",
    "unique_set_dimension",
    "cantor_levelset_dimension",
]


@dataclass(frozen=True, eq=False)
class RemainderAutomaton:
    """Finite graph of remainders reachable from ``start``.

    Every remainder is ``k/q`` with ``q = denom(start)``; internally states are
    the integers ``k`` and ``succ[k]`` lists ``(digit, k')`` by increasing digit.
    """

    params: Params
    start: Fraction
    succ: dict[int, list[tuple[int, int]]] = field(repr=False)

    @property
    def q(self) -> int:
        return self.start.denominator

    @property
    def start_key(self) -> int:
        return self.start.numerator

    @functools.cached_property
    def states(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(k, self.q) for k in sorted(self.succ))

    @functools.cached_property
    def edges(self) -> dict[tuple[Fraction, int], Fraction]:
        q = self.q
        return {(Fraction(k, q), d): Fraction(t, q) for k in sorted(self.succ) for d, t in self.succ[k]}

    @property
    def state_bound(self) -> int:
        """Upper bound ``floor(q * x_max) + 1`` on the state count."""
        return math.floor(self.q * self.params.x_max) + 1

    def key(self, y: Fraction) -> int:
        k = Fraction(y) * self.q
        if k.denominator != 1 or int(k) not in self.succ:
            raise KeyError(y)
        return int(k)

    def out(self, y: Fraction) -> list[tuple[int, Fraction]]:
        return [(d, Fraction(t, self.q)) for d, t in self.succ[self.key(y)]]

    def graph(self) -> nx.DiGraph:
        """The transition graph on integer keys, edges carrying their digit."""
        g = nx.DiGraph()
        g.add_nodes_from(self.succ)
        g.add_edges_from((k, t, {"digit": d}) for k, out in self.succ.items() for d, t in out)
        return g

    def shortest_path_to(self, target: Fraction) -> Word | None:
        """Digits of a shortest path from ``start`` to ``target`` (BFS), or None."""
        try:
            goal = self.key(target)
        except KeyError:
            return None
        parent: dict[int, tuple[int, int] | None] = {self.start_key: None}
        queue = deque([self.start_key])
        while queue:
            k = queue.popleft()
            if k == goal:
                word = []
                while parent[k] is not None:
                    k, d = parent[k]
                    word.append(d)
                return tuple(reversed(word))
            for d, t in self.succ[k]:
                if t not in parent:
                    parent[t] = (k, d)
                    queue.append(t)
        return None

    def to_json(self) -> dict:
        return {
            "start": format_rational(self.start),
            "states": [format_rational(y) for y in self.states],
            "edges": [
                {"from": format_rational(y), "digit": d, "to": format_rational(t)}
                for (y, d), t in self.edges.items()
            ],
        }

    def to_dot(self) -> str:
        lines = ["digraph remainders {", "  rankdir=LR;"]
        for y in self.states:
            shape = "doublecircle" if y == self.start else "circle"
            lines.append(f'  "{format_rational(y)}" [shape={shape}];')
        for (y, d), t in self.edges.items():
            lines.append(f'  "{format_rational(y)}" -> "{format_rational(t)}" [label="{d}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


@functools.lru_cache(maxsize=256)
def _build(x: Fraction, params: Params, max_states: int | None) -> RemainderAutomaton:
    s, r, q = params.s, params.r, x.denominator
    top = q * r  # remainder k/q <= x_max  <=>  (s-1) k <= top
    succ: dict[int, list[tuple[int, int]]] = {}
    queue = deque([x.numerator])
    seen = {x.numerator}
    while queue:
        k = queue.popleft()
        # admissible d: 0 <= s*k - d*q and (s-1)(s*k - d*q) <= top
        lo = max(0, -((top - (s - 1) * s * k) // ((s - 1) * q)))
        hi = min(r, s * k // q)
        out = succ[k] = []
        for d in range(lo, hi + 1):
            t = s * k - d * q
            out.append((d, t))
            if t not in seen:
                seen.add(t)
                if max_states is not None and len(seen) > max_states:
                    raise BudgetError(f"automaton exceeds {max_states} states")
                queue.append(t)
    return RemainderAutomaton(params, x, succ)


def build_automaton(x: Fraction, params: Params, max_states: int | None = None) -> RemainderAutomaton:
    """Remainder automaton of ``x``; memoized per ``(x, params)``."""
    x = params.check_point(x)
    return _build(x, params, max_states)


def count_prefixes(x: Fraction, params: Params, n: int) -> int:
    """Number of length-``n`` words that extend to a representation of ``x``."""
    aut = build_automaton(x, params)
    live = {aut.start_key: 1}
    for _ in range(n):
        nxt: dict[int, int] = {}
        for k, ways in live.items():
            for _, t in aut.succ[k]:
                nxt[t] = nxt.get(t, 0) + ways
        live = nxt
    return sum(live.values())


@dataclass(frozen=True)
class CardinalityClass:
    """Size of a representation set: ``finite`` (with ``count``), ``countable`` or ``continuum``."""

    kind: str
    count: int | None = None

    @classmethod
    def finite(cls, n: int) -> CardinalityClass:
        return cls("finite", n)

    def __str__(self) -> str:
        if self.kind == "finite":
            return f"Finite({self.count})"
        return {"countable": "CountablyInfinite", "continuum": "Continuum"}[self.kind]


COUNTABLE = CardinalityClass("countable")
CONTINUUM = CardinalityClass("continuum")


class _Structure(NamedTuple):
    component: dict          # state key -> component id
    cyclic: set              # ids of components carrying a cycle
    branching: set           # ids of components carrying two distinct cycles
    leaky: set               # cyclic components with an edge leaving them
    condensed: nx.DiGraph


def _structure(aut: RemainderAutomaton) -> _Structure:
    g = aut.graph()
    cond = nx.condensation(g)
    component = cond.graph["mapping"]
    inner_edges = {c: 0 for c in cond}
    for y, t in g.edges:
        if component[y] == component[t]:
            inner_edges[component[y]] += 1
    cyclic, branching, leaky = set(), set(), set()
    for c in cond:
        size = len(cond.nodes[c]["members"])
        # labels are determined by targets, so no parallel edges: a strongly
        # connected piece is one simple cycle iff #edges == #nodes
        if inner_edges[c] >= size and (size > 1 or inner_edges[c] == 1):
            cyclic.add(c)
            if inner_edges[c] > size:
                branching.add(c)
            if cond.out_degree(c) > 0:
                leaky.add(c)
    return _Structure(component, cyclic, branching, leaky, cond)


def classify(x: Fraction, params: Params, max_states: int | None = None) -> CardinalityClass:
    """Cardinality of the set of representations of ``x``.

    Continuum iff some component has two distinct cycles.  Otherwise each
    cyclic component is a single cycle; the count is infinite iff a path can
    leave a cycle (it then reaches another one, since no state is a dead end),
    and finite otherwise, counted over the acyclic condensation.
    """
    aut = build_automaton(x, params, max_states)
    st = _structure(aut)
    if st.branching:
        return CONTINUUM
    if st.leaky:
        return COUNTABLE
    paths: dict[int, int] = {}
    for c in reversed(list(nx.topological_sort(st.condensed))):
        if c in st.cyclic:
            paths[c] = 1
        else:
            paths[c] = sum(paths[t] for t in st.condensed.successors(c))
    return CardinalityClass.finite(paths[st.component[aut.start_key]])


class Enumeration(NamedTuple):
    reps: list[PeriodicRep]
    complete: bool


def _closed_walks(aut: RemainderAutomaton, k0: int, length: int, members: set, keep: int) -> list[Word]:
    """Lexicographically smallest primitive closed walks ``k0 -> k0`` of the given length.

    At most ``keep`` walks per final digit; the search only follows edges from
    which ``k0`` is still reachable in the remaining steps.
    """
    dist = {k0: 0}
    frontier = [k0]
    pred: dict[int, list[int]] = {}
    for k in members:
        for _, t in aut.succ[k]:
            if t in members:
                pred.setdefault(t, []).append(k)
    while frontier:
        nxt = []
        for t in frontier:
            for k in pred.get(t, ()):
                if k not in dist:
                    dist[k] = dist[t] + 1
                    nxt.append(k)
        frontier = nxt
    finals = {d for k in pred.get(k0, ()) for d, t in aut.succ[k] if t == k0}
    per_digit: dict[int, int] = {}
    out: list[Word] = []
    stack = [(k0, ())]
    while stack:
        k, word = stack.pop()
        if len(word) == length:
            if k == k0 and _primitive(word) and per_digit.get(word[-1], 0) < keep:
                out.append(word)
                per_digit[word[-1]] = per_digit.get(word[-1], 0) + 1
                if all(per_digit.get(d, 0) >= keep for d in finals):
                    break
            continue
        left = length - len(word) - 1
        for d, t in reversed(aut.succ[k]):
            if t in members and dist.get(t, length + 1) <= left:
                stack.append((t, word + (d,)))
    return out


def _primitive(word: Word) -> bool:
    n = len(word)
    return all(word != word[p:] + word[:p] for p in range(1, n) if n % p == 0)


def _next_layer(aut: RemainderAutomaton, layer: list[tuple[Word, int]], keep: int) -> list[tuple[Word, int]]:
    groups: dict[tuple[int, int], list[Word]] = {}
    for w, k in layer:
        for d, t in aut.succ[k]:
            groups.setdefault((t, d), []).append(w + (d,))
    out = []
    for (t, _), words in groups.items():
        words.sort()
        out.extend((w, t) for w in words[:keep])
    return out


def enumerate_representations(
    x: Fraction,
    params: Params,
    max_count: int = 20,
    max_preperiod: int | None = None,
    max_period: int | None = None,
) -> Enumeration:
    """Distinct eventually periodic representations of ``x``.

    Ordered by written length ``len(preperiod) + len(period)``, then
    lexicographically by ``(preperiod, period)``; stops after ``max_count``.
    ``max_preperiod`` and ``max_period`` default to ``len(states) + 1`` and
    ``len(states)``, enough for every rep when the set is finite; a countable
    set has reps with arbitrarily long preperiods, so only a prefix is seen.
    ``complete`` is True when the set is finite and all of it was returned.
    """
    aut = build_automaton(x, params)
    n_states = len(aut.succ)
    max_pre = n_states + 1 if max_preperiod is None else max_preperiod
    max_per = n_states if max_period is None else max_period
    st = _structure(aut)
    cls = classify(x, params)
    members: dict[int, set] = {}
    for k, c in st.component.items():
        members.setdefault(c, set()).add(k)

    # layers[m]: (word, end state) for paths of length m from start.  Whether
    # (pre, per) is canonical depends on pre only through its last digit, so
    # keeping the max_count smallest words per (end state, last digit) loses
    # nothing that could appear in the output.
    layers: list[list[tuple[Word, int]]] = [[((), aut.start_key)]]
    walks: dict[tuple[int, int], list[Word]] = {}
    found: list[PeriodicRep] = []
    for total in range(1, max_pre + max_per + 1):
        batch = []
        for m in range(max(0, total - max_per), min(total - 1, max_pre) + 1):
            while len(layers) <= m:
                layers.append(_next_layer(aut, layers[-1], max_count))
            p = total - m
            for pre, k in layers[m]:
                c = st.component[k]
                if c not in st.cyclic:
                    continue
                if (k, p) not in walks:
                    walks[k, p] = _closed_walks(aut, k, p, members[c], max_count)
                for per in walks[k, p]:
                    rep = PeriodicRep(pre, per, params.r)
                    if rep.preperiod == pre and rep.period == per:
                        batch.append(rep)
        batch.sort(key=lambda rep: (rep.preperiod, rep.period))
        for rep in batch:
            found.append(rep)
            if len(found) == max_count:
                break
        if len(found) == max_count or (cls.kind == "finite" and len(found) == cls.count):
            break
    complete = cls.kind == "finite" and len(found) == cls.count
    return Enumeration(found, complete)


class Dimension(NamedTuple):
    """``value == sum(ln a for a in num_args) / sum(ln b for b in den_args)``."""

    value: float
    num_args: tuple[int, ...]
    den_args: tuple[int, ...]

    def exact_ratio(self) -> Fraction | None:
        """The value as a fraction when both log arguments are powers of one integer."""
        num, den = math.prod(self.num_args), math.prod(self.den_args)
        if num == 1:
            return Fraction(0)
        g1, e1 = _perfect_power(num)
        g2, e2 = _perfect_power(den)
        return Fraction(e1, e2) if g1 == g2 else None

    def to_json(self) -> dict:
        return {"value": self.value, "formula": {"num_args": list(self.num_args), "den_args": list(self.den_args)}}


def _perfect_power(n: int) -> tuple[int, int]:
    """Smallest ``g`` and its ``e`` with ``g**e == n`` (``n >= 2``)."""
    for e in range(n.bit_length(), 1, -1):
        g = round(n ** (1 / e))
        for cand in (g - 1, g, g + 1):
            if cand >= 2 and cand**e == n:
                return cand, e
    return n, 1


def _dimension(num_args: tuple[int, ...], den_args: tuple[int, ...]) -> Dimension:
    value = sum(math.log(a) for a in num_args) / sum(math.log(b) for b in den_args)
    return Dimension(value, num_args, den_args)


def unique_set_dimension(params: Params) -> Dimension:
    """``ln(2s - r - 1) / ln s``, defined for ``r < 2s - 1``."""
    s, r = params.s, params.r
    if r >= 2 * s - 1:
        raise RegimeError(f"unique-representation dimension needs r < 2s-1 (s={s}, r={r})")
    return _dimension((2 * s - r - 1,), (s,))


def cantor_levelset_dimension(params: Params) -> Dimension:
    """``ln 2 / (2 ln s)``: a lower bound for a level set built on one interchangeable pair."""
    return _dimension((2,), (params.s, params.s))
