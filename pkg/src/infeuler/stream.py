"""Pull-based generators for one-way and two-way infinite Eulerian paths.

Stage ``n`` extends the current prefix to one that visits the ``n``-th edge
and is still extensible, found by exhaustive search over candidate
extensions ordered by (largest edge index used, length, edge sequence). The
prefixes only ever grow, so every edge handed out is final.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Iterator, Optional

from .core import EdgeId, FinitePath, Incidence, VertexId, concat_left, concat_right
from .deciders import (
    DEFAULT,
    Decided,
    Outcome,
    is_bi_extensible,
    is_distinguished,
    is_right_extensible,
)
from .oracle import E1, E2, GraphDescription


class Mode(str, Enum):
    ONE_WAY = "one-way"
    TWO_WAY = "two-way"


class Side(str, Enum):
    RIGHT = "right"
    LEFT = "left"


class BudgetExhausted(RuntimeError):
    """A configured safety budget ran out before a stage completed."""


@dataclass(frozen=True)
class StreamStep:
    position: int
    edge: EdgeId
    vertex: VertexId


def _trails(
    adj: dict[VertexId, list[Incidence]], start: VertexId
) -> Iterator[tuple[tuple[VertexId, ...], tuple[EdgeId, ...]]]:
    """Every nonempty trail from ``start`` in the finite graph ``adj``."""
    verts = [start]
    edges: list[EdgeId] = []
    used: set[EdgeId] = set()

    def walk(x: VertexId) -> Iterator[tuple[tuple[VertexId, ...], tuple[EdgeId, ...]]]:
        for inc in adj.get(x, ()):
            if inc.edge in used:
                continue
            y = inc.other(x)
            used.add(inc.edge)
            verts.append(y)
            edges.append(inc.edge)
            yield tuple(verts), tuple(edges)
            yield from walk(y)
            edges.pop()
            verts.pop()
            used.discard(inc.edge)

    return walk(start)


class _FreeGraph:
    """Edges of index <= bound that a prefix has not visited, grown one index at a time."""

    def __init__(self, description: GraphDescription, visited: frozenset[EdgeId]):
        self.oracle = description.oracle
        self.visited = visited
        self.adj: dict[VertexId, list[Incidence]] = {}
        self.bound = -1

    def grow(self) -> Optional[Incidence]:
        """Raise the bound by one; return the new edge if it is free."""
        self.bound += 1
        e = self.bound
        if e in self.visited or not self.oracle.is_edge(e):
            return None
        inc = self.oracle.incidence(e)
        self.adj.setdefault(inc.u, []).append(inc)
        if not inc.is_loop:
            self.adj.setdefault(inc.v, []).append(inc)
        return inc


class EulerStream:
    """Stateful generator of a computable infinite Eulerian path.

    Parameters
    ----------
    description:
        Graph plus declared metadata. One-way streams require E1 and
        two-way streams require E2 to be declared.
    mode:
        :attr:`Mode.ONE_WAY` or :attr:`Mode.TWO_WAY`.
    start:
        One-way only. Must be a distinguished vertex; by default the least
        distinguished vertex id is used.
    decider_budget:
        Step budget for each extensibility query (see the deciders).
    candidate_budget:
        Maximum candidate extensions examined per stage, or ``None``.
    """

    def __init__(
        self,
        description: GraphDescription,
        mode: Mode = Mode.ONE_WAY,
        start: Optional[VertexId] = None,
        decider_budget: Any = DEFAULT,
        candidate_budget: Optional[int] = None,
    ):
        self.description = description
        self.mode = Mode(mode)
        self.decider_budget = decider_budget
        self.candidate_budget = candidate_budget
        self.stage = 0
        self._edge_order = description.oracle.edges()
        self.targets: list[EdgeId] = []
        self.prefix: Optional[FinitePath] = None
        self._right = 0
        self._left = 0
        needed = E1 if self.mode is Mode.ONE_WAY else E2
        if not description.declares(needed):
            raise ValueError(f"{self.mode.value} streams need a graph declared {needed}")
        if self.mode is Mode.ONE_WAY:
            if start is None:
                start = next(
                    v for v in description.oracle.vertices()
                    if is_distinguished(description, v)
                )
            else:
                description.oracle._require_vertex(start)
                if not is_distinguished(description, start):
                    raise ValueError(f"start vertex {start} is not distinguished")
            self.prefix = FinitePath.empty(start)
        elif start is not None:
            raise ValueError("two-way streams choose their own start")

    # stage machinery

    def _target(self, n: int) -> EdgeId:
        while len(self.targets) <= n:
            self.targets.append(next(self._edge_order))
        return self.targets[n]

    def _decide(self, path: FinitePath) -> bool:
        check: Callable[..., Outcome] = (
            is_right_extensible if self.mode is Mode.ONE_WAY else is_bi_extensible
        )
        out = check(self.description, path, self.decider_budget)
        if not isinstance(out, Decided):
            raise BudgetExhausted(f"decider exhausted after {out.steps} steps on {path}")
        return out.answer

    def _examined(self, count: int) -> None:
        if self.candidate_budget is not None and count > self.candidate_budget:
            raise BudgetExhausted(
                f"stage {self.stage}: no extension within {self.candidate_budget} candidates"
            )

    def advance_stage(self) -> FinitePath:
        """Compute the next prefix, which visits the next edge in index order."""
        target = self._target(self.stage)
        if self.prefix is None:
            self.prefix = self._first_two_way(target)
        elif self.mode is Mode.ONE_WAY:
            self.prefix = self._extend_right(self.prefix, target)
        else:
            self.prefix = self._extend_both(self.prefix, target)
        self.stage += 1
        return self.prefix

    def _extend_right(self, t: FinitePath, target: EdgeId) -> FinitePath:
        if target in t.edge_set:
            return t
        free = _FreeGraph(self.description, t.edge_set)
        count = 0
        while True:
            new = free.grow()
            if new is None:
                continue
            found = sorted(
                (len(es), es, vs) for vs, es in _trails(free.adj, t.final) if new.edge in es
            )
            for _, es, vs in found:
                cand = concat_right(t, FinitePath(0, vs, es))
                if target not in cand.edge_set:
                    continue
                count += 1
                self._examined(count)
                if self._decide(cand):
                    return cand

    def _extend_both(self, t: FinitePath, target: EdgeId) -> FinitePath:
        free = _FreeGraph(self.description, t.edge_set)
        count = 0
        while True:
            new = free.grow()
            if new is None:
                continue
            rights = list(_trails(free.adj, t.final))
            lefts = list(_trails(free.adj, t.initial))
            pairs = []
            for rv, re in rights:
                for lv, le in lefts:
                    if new.edge not in re and new.edge not in le:
                        continue
                    if set(re) & set(le):
                        continue
                    pairs.append((len(re) + len(le), re, le, rv, lv))
            pairs.sort()
            for _, re, le, rv, lv in pairs:
                if target not in t.edge_set and target not in re and target not in le:
                    continue
                grown = concat_right(t, FinitePath(0, rv, re))
                cand = concat_left(grown, FinitePath(0, lv[::-1], le[::-1]))
                count += 1
                self._examined(count)
                if self._decide(cand):
                    return cand

    def _first_two_way(self, target: EdgeId) -> FinitePath:
        free = _FreeGraph(self.description, frozenset())
        count = 0
        while True:
            new = free.grow()
            if new is None:
                continue
            found = sorted(
                (len(es), vs[0], es, vs)
                for start in sorted(free.adj)
                for vs, es in _trails(free.adj, start)
                if new.edge in es and target in es
            )
            for _, _, es, vs in found:
                cand = FinitePath(0, vs, es)
                count += 1
                self._examined(count)
                if self._decide(cand):
                    return cand

    # pull interface

    def next_step(self, side: Side = Side.RIGHT) -> StreamStep:
        side = Side(side)
        if side is Side.LEFT and self.mode is Mode.ONE_WAY:
            raise ValueError("one-way streams only extend to the right")
        if self.prefix is None:
            self.advance_stage()
        assert self.prefix is not None
        if side is Side.RIGHT:
            while self._right + 1 > self.prefix.end:
                self.advance_stage()
            k = self._right
            self._right += 1
            return StreamStep(k + 1, self.prefix.edge_at(k), self.prefix.vertex_at(k + 1))
        while self._left - 1 < self.prefix.base:
            self.advance_stage()
        k = self._left - 1
        self._left = k
        return StreamStep(k, self.prefix.edge_at(k), self.prefix.vertex_at(k))

    def next_edge(self, side: Side = Side.RIGHT) -> tuple[EdgeId, VertexId]:
        step = self.next_step(side)
        return step.edge, step.vertex

    def __iter__(self) -> Iterator[StreamStep]:
        """Right-side steps for one-way streams; alternating right/left for two-way."""
        if self.mode is Mode.ONE_WAY:
            sides: Iterator[Side] = itertools.repeat(Side.RIGHT)
        else:
            sides = itertools.cycle((Side.RIGHT, Side.LEFT))
        for side in sides:
            yield self.next_step(side)

    @property
    def start(self) -> Optional[VertexId]:
        return None if self.prefix is None else self.prefix.initial


def one_way_stream(G: GraphDescription, start: Optional[VertexId] = None, **kw: Any) -> EulerStream:
    return EulerStream(G, Mode.ONE_WAY, start, **kw)


def two_way_stream(G: GraphDescription, **kw: Any) -> EulerStream:
    return EulerStream(G, Mode.TWO_WAY, **kw)
