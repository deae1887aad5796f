"""Extensibility deciders for finite paths in infinite Eulerian graphs.

Both deciders reduce to the question of whether removing a finite edge set
``E`` leaves a finite component. That question is only semidecidable on its
own; it becomes decidable by running a search for a finite component against
a complementary search for connecting paths, one step of each per round.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Optional, Union

from .core import EdgeId, FinitePath, Incidence, VertexId, is_finite, validate_path
from .finite import FiniteMultigraph
from .oracle import E1, E2, GraphDescription, GraphOracle

DEFAULT_BUDGET = 10**6


class _Default:
    def __repr__(self) -> str:
        return "DEFAULT"


DEFAULT: Any = _Default()


class DovetailConflict(AssertionError):
    """Two complementary semideciders halted in the same round."""


@dataclass(frozen=True)
class Decided:
    answer: bool
    steps: int = field(default=0, compare=False)
    witness: Any = field(default=None, compare=False, repr=False)

    def __bool__(self) -> bool:
        return self.answer


@dataclass(frozen=True)
class Exhausted:
    steps: int

    def __bool__(self) -> bool:
        return False


Outcome = Union[Decided, Exhausted]


def _check_edges(G: GraphOracle, E: Iterable[EdgeId]) -> frozenset[EdgeId]:
    E = frozenset(E)
    for e in E:
        G._require_edge(e)
    return E


def free_incident_edges(
    G: GraphOracle, v: VertexId, E: frozenset[EdgeId], limit: Optional[int] = None
) -> list[EdgeId]:
    """Edges at ``v`` outside ``E``, ascending, at most ``limit`` of them.

    Terminates for infinite-degree vertices only when ``limit`` is given.
    """
    if limit is None and not is_finite(G.degree(v)):
        raise ValueError(f"vertex {v} has infinitely many free edges; pass a limit")
    out = []
    for e in G.incident_edges(v):
        if limit is not None and len(out) >= limit:
            break
        if e not in E:
            out.append(e)
    return out


def incident_survivors(G: GraphOracle, E: Iterable[EdgeId]) -> list[VertexId]:
    """Endpoints of ``E`` that keep an incident edge outside ``E``, ascending."""
    E = _check_edges(G, E)
    endpoints = sorted({x for e in E for x in G.incidence(e)[1:]})
    out = []
    for v in endpoints:
        if not is_finite(G.degree(v)):
            out.append(v)
        elif free_incident_edges(G, v, E):
            out.append(v)
    return out


class Semidecider(ABC):
    """Resumable search that may halt. ``step`` is total and idempotent once halted."""

    def __init__(self) -> None:
        self.steps = 0
        self.halted = False
        self.witness: Any = None

    def step(self) -> bool:
        if not self.halted:
            self.steps += 1
            self.halted = self._advance()
        return self.halted

    @abstractmethod
    def _advance(self) -> bool: ...

    def run(self, budget: Optional[int]) -> bool:
        """Step until halted or ``budget`` further steps are spent."""
        for _ in itertools.count() if budget is None else range(budget):
            if self.step():
                break
        return self.halted


def diagonal_pairs() -> Iterator[tuple[int, int]]:
    """(r, s) with r + s = 0, 1, 2, ...; both coordinates grow without bound."""
    for k in itertools.count():
        for r in range(k + 1):
            yield r, k - r


class FiniteComponentSearch(Semidecider):
    """Halts iff ``G - E`` has a finite component.

    Each step inspects one ball ``G(v, r, s)`` around a fixed endpoint ``v``
    of ``E``. A component of ``ball - E`` whose vertices all have finite
    degree, and all of whose incident edges already lie in the ball, is a
    finite component of ``G - E``; it is kept as the witness.
    """

    def __init__(self, G: GraphOracle, E: Iterable[EdgeId]):
        super().__init__()
        self.G = G
        self.E = _check_edges(G, E)
        if not self.E:
            raise ValueError("edge set must be nonempty")
        self.center = min(x for e in self.E for x in G.incidence(e)[1:])
        self._pairs = diagonal_pairs()
        self._incs: list[Incidence] = []
        self._scanned = -1
        self._dist: dict[int, dict[VertexId, int]] = {}
        self._deg: dict[VertexId, Any] = {}
        self.last_pair: Optional[tuple[int, int]] = None

    def _edges_upto(self, s: int) -> list[Incidence]:
        while self._scanned < s:
            self._scanned += 1
            if self.G.is_edge(self._scanned):
                self._incs.append(self.G.incidence(self._scanned))
        return [inc for inc in self._incs if inc.edge <= s]

    def _distances(self, s: int, incs: list[Incidence]) -> dict[VertexId, int]:
        if s not in self._dist:
            adj: dict[VertexId, list[VertexId]] = {}
            for inc in incs:
                adj.setdefault(inc.u, []).append(inc.v)
                adj.setdefault(inc.v, []).append(inc.u)
            dist = {self.center: 0}
            queue = deque([self.center])
            while queue:
                x = queue.popleft()
                for y in adj.get(x, ()):
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        queue.append(y)
            self._dist[s] = dist
        return self._dist[s]

    def _degree(self, v: VertexId) -> Any:
        if v not in self._deg:
            self._deg[v] = self.G.degree(v)
        return self._deg[v]

    def _advance(self) -> bool:
        r, s = next(self._pairs)
        self.last_pair = (r, s)
        incs = self._edges_upto(s)
        dist = self._distances(s, incs)
        ball = [
            inc for inc in incs
            if min(dist.get(inc.u, r), dist.get(inc.v, r)) <= r - 1
        ]
        witness = closed_component(ball, self.E, self._degree)
        if witness is not None:
            self.witness = witness
            return True
        return False


def closed_component(
    ball: list[Incidence], E: frozenset[EdgeId], degree: Any
) -> Optional[FiniteMultigraph]:
    """First component of ``ball - E`` that is closed in ``G - E``, if any.

    Closed means every vertex has finite degree in ``G`` and every one of its
    edges in ``G`` is present in ``ball``.
    """
    ball_deg: dict[VertexId, int] = {}
    for inc in ball:
        ball_deg[inc.u] = ball_deg.get(inc.u, 0) + 1
        ball_deg[inc.v] = ball_deg.get(inc.v, 0) + 1
    rest = [inc for inc in ball if inc.edge not in E]
    parent: dict[VertexId, VertexId] = {}

    def find(x: VertexId) -> VertexId:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for inc in rest:
        a, b = find(inc.u), find(inc.v)
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[VertexId, list[VertexId]] = {}
    for x in parent:
        groups.setdefault(find(x), []).append(x)
    for root in sorted(groups):
        members = groups[root]
        if all(is_finite(degree(x)) and degree(x) == ball_deg[x] for x in members):
            mset = set(members)
            edges = {inc.edge: inc for inc in rest if inc.u in mset}
            return FiniteMultigraph(frozenset(mset), edges)
    return None


class JoinSearch(Semidecider):
    """Halts once every target is joined to some anchor by a path avoiding ``E``.

    Each step examines the next edge index: edges outside ``E`` are merged
    into a union-find over the part of ``G - E`` seen so far. Any path has a
    largest edge index, so every existing path is eventually found.
    """

    def __init__(
        self,
        G: GraphOracle,
        E: Iterable[EdgeId],
        targets: Iterable[VertexId],
        anchors: Iterable[VertexId],
    ):
        super().__init__()
        self.G = G
        self.E = frozenset(E)
        self.targets = sorted(set(targets))
        self.anchors = sorted(set(anchors))
        self._parent: dict[VertexId, VertexId] = {}
        self._seen: list[Incidence] = []
        self._next = 0

    def _find(self, x: VertexId) -> VertexId:
        p = self._parent
        p.setdefault(x, x)
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def joined(self) -> bool:
        roots = {self._find(a) for a in self.anchors}
        return all(self._find(t) in roots for t in self.targets)

    def _advance(self) -> bool:
        if not self.joined():
            e = self._next
            self._next += 1
            if self.G.is_edge(e) and e not in self.E:
                inc = self.G.incidence(e)
                self._seen.append(inc)
                a, b = self._find(inc.u), self._find(inc.v)
                if a != b:
                    self._parent[max(a, b)] = min(a, b)
        if self.joined():
            self.witness = self._witness_paths()
            return True
        return False

    def _witness_paths(self) -> dict[VertexId, FinitePath]:
        adj: dict[VertexId, list[Incidence]] = {}
        for inc in self._seen:
            adj.setdefault(inc.u, []).append(inc)
            if not inc.is_loop:
                adj.setdefault(inc.v, []).append(inc)
        paths = {}
        for t in self.targets:
            prev: dict[VertexId, Optional[tuple[VertexId, EdgeId]]] = {t: None}
            queue = deque([t])
            hit = None
            while queue:
                x = queue.popleft()
                if x in self.anchors:
                    hit = x
                    break
                for inc in adj.get(x, ()):
                    y = inc.other(x)
                    if y not in prev:
                        prev[y] = (x, inc.edge)
                        queue.append(y)
            assert hit is not None
            verts, edges = [hit], []
            while prev[verts[-1]] is not None:
                x, e = prev[verts[-1]]  # type: ignore[misc]
                edges.append(e)
                verts.append(x)
            paths[t] = FinitePath(0, tuple(reversed(verts)), tuple(reversed(edges)))
        return paths


def dovetail(
    negative: Semidecider, positive: Semidecider, budget: Optional[int]
) -> Outcome:
    """Alternate one step of each; ``negative`` halting means False.

    Raises :class:`DovetailConflict` if both halt in the same round, which
    the theory rules out for complementary procedures.
    """
    spent = 0
    while budget is None or spent < budget:
        neg = negative.step()
        spent += 1
        pos = False
        if budget is None or spent < budget:
            pos = positive.step()
            spent += 1
        if neg and pos:
            raise DovetailConflict(
                f"both semideciders halted after {spent} steps "
                f"({type(negative).__name__}, {type(positive).__name__})"
            )
        if neg:
            return Decided(False, spent, negative.witness)
        if pos:
            return Decided(True, spent, positive.witness)
    return Exhausted(spent)


def finite_component_semidecider(G: GraphOracle, E: Iterable[EdgeId]) -> FiniteComponentSearch:
    return FiniteComponentSearch(G, E)


def connectivity_decider_one_end(
    G: GraphOracle, E: Iterable[EdgeId], budget: Optional[int] = None
) -> Outcome:
    """Whether ``G - E`` is connected, for a connected one-ended ``G``."""
    E = _check_edges(G, E)
    survivors = incident_survivors(G, E)
    if len(survivors) <= 1:
        return Decided(True, 0)
    return dovetail(
        FiniteComponentSearch(G, E),
        JoinSearch(G, E, survivors, survivors[:1]),
        budget,
    )


def is_distinguished(G: GraphDescription, v: VertexId) -> bool:
    """Distinguished vertex test, relying on the declared odd-vertex flag."""
    d = G.oracle.degree(v)
    if G.has_odd_vertex:
        return is_finite(d) and d % 2 == 1
    return not is_finite(d)


def _budget(G: GraphDescription, condition: str, budget: Any) -> Optional[int]:
    if budget is DEFAULT:
        return None if G.declares(condition) else DEFAULT_BUDGET
    return budget


def is_right_extensible(
    G: GraphDescription, t: FinitePath, budget: Any = DEFAULT
) -> Outcome:
    """Whether ``t`` extends to a one-way infinite Eulerian path of ``G``.

    Checks, cheapest first: the initial vertex is distinguished; the final
    vertex keeps an unvisited edge; removing ``t`` leaves ``G`` connected.
    ``budget=None`` means unlimited; the default is unlimited only when
    ``G`` declares E1.
    """
    oracle = G.oracle
    validate_path(t, oracle.incidence)
    budget = _budget(G, E1, budget)
    if not is_distinguished(G, t.initial):
        return Decided(False, 0, "initial vertex not distinguished")
    E = t.edge_set
    if E:
        final_ok = t.final in incident_survivors(oracle, E)
    else:
        final_ok = bool(free_incident_edges(oracle, t.final, E, 1))
    if not final_ok:
        return Decided(False, 0, "final vertex has no unvisited edge")
    return connectivity_decider_one_end(oracle, E, budget)


def endpoint_conditions(G: GraphOracle, t: FinitePath) -> bool:
    """Unvisited edges ``e`` at the final and ``f != e`` at the initial vertex.

    For a circuit both ends are the same vertex, which then needs two
    unvisited edge-incidences; a loop supplies two.
    """
    E = t.edge_set
    if t.is_circuit:
        free = free_incident_edges(G, t.initial, E, 2)
        incidences = sum(2 if G.incidence(e).is_loop else 1 for e in free)
        return incidences >= 2
    at_final = free_incident_edges(G, t.final, E, 2)
    at_initial = free_incident_edges(G, t.initial, E, 2)
    if not at_final or not at_initial:
        return False
    return not (at_final == at_initial and len(at_final) == 1)


def is_bi_extensible(
    G: GraphDescription, t: FinitePath, budget: Any = DEFAULT
) -> Outcome:
    """Whether ``t`` extends to a two-way infinite Eulerian path of ``G``.

    After the endpoint conditions, runs a finite-component search (halting
    means False) against a search joining every other endpoint of the
    removed edges to the initial or final vertex (halting means True).
    """
    oracle = G.oracle
    validate_path(t, oracle.incidence)
    budget = _budget(G, E2, budget)
    if not endpoint_conditions(oracle, t):
        return Decided(False, 0, "endpoint conditions fail")
    E = t.edge_set
    if not E:
        return Decided(True, 0)
    survivors = incident_survivors(oracle, E)
    ends = {t.initial, t.final}
    return dovetail(
        FiniteComponentSearch(oracle, E),
        JoinSearch(oracle, E, [v for v in survivors if v not in ends], ends),
        budget,
    )
