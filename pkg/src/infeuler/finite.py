"""Finite multigraphs: induced subgraphs, edge removal, components, Euler."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Union

from .core import EdgeId, FinitePath, Incidence, VertexId

MAX_BRUTE_FORCE_EDGES = 10


@dataclass(frozen=True)
class FiniteMultigraph:
    vertices: frozenset[VertexId]
    edges: Mapping[EdgeId, Incidence] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", dict(sorted(self.edges.items())))
        for inc in self.edges.values():
            if inc.u not in self.vertices or inc.v not in self.vertices:
                raise ValueError(f"edge {inc.edge} has an endpoint outside the vertex set")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[VertexId, VertexId]]) -> "FiniteMultigraph":
        """Edges numbered 0, 1, ... in the order given."""
        edges = {i: Incidence.of(i, a, b) for i, (a, b) in enumerate(pairs)}
        return induced(edges, edges.__getitem__)

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def degree(self, v: VertexId) -> int:
        return sum((inc.u == v) + (inc.v == v) for inc in self.edges.values())

    def degrees(self) -> dict[VertexId, int]:
        deg = dict.fromkeys(self.vertices, 0)
        for inc in self.edges.values():
            deg[inc.u] += 1
            deg[inc.v] += 1
        return deg

    def odd_vertices(self) -> list[VertexId]:
        return sorted(v for v, d in self.degrees().items() if d % 2)

    def adjacency(self) -> dict[VertexId, list[Incidence]]:
        """Incident edges per vertex in ascending edge order (a loop listed once)."""
        adj: dict[VertexId, list[Incidence]] = {v: [] for v in sorted(self.vertices)}
        for inc in self.edges.values():
            adj[inc.u].append(inc)
            if not inc.is_loop:
                adj[inc.v].append(inc)
        return adj

    def is_subgraph_of(self, other: "FiniteMultigraph") -> bool:
        return self.vertices <= other.vertices and all(
            other.edges.get(e) == inc for e, inc in self.edges.items()
        )


@dataclass(frozen=True)
class Infeasible:
    reason: str

    def __bool__(self) -> bool:
        return False


def induced(
    edge_set: Iterable[EdgeId], incidence: Callable[[EdgeId], Incidence]
) -> FiniteMultigraph:
    """The subgraph whose edges are ``edge_set`` and whose vertices are their endpoints."""
    edges = {}
    for e in edge_set:
        try:
            edges[e] = incidence(e)
        except (KeyError, ValueError) as exc:
            raise ValueError(f"unknown edge {e}") from exc
    verts = {x for inc in edges.values() for x in (inc.u, inc.v)}
    return FiniteMultigraph(frozenset(verts), edges)


def remove_edges(H: FiniteMultigraph, edge_set: Iterable[EdgeId]) -> FiniteMultigraph:
    drop = set(edge_set)
    kept = [e for e in H.edges if e not in drop]
    return induced(kept, H.edges.__getitem__)


def components(H: FiniteMultigraph) -> list[FiniteMultigraph]:
    """Connected components, ordered by least vertex id."""
    parent = {v: v for v in H.vertices}

    def find(x: VertexId) -> VertexId:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for inc in H.edges.values():
        ru, rv = find(inc.u), find(inc.v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)

    verts: dict[VertexId, set[VertexId]] = defaultdict(set)
    edges: dict[VertexId, dict[EdgeId, Incidence]] = defaultdict(dict)
    for v in H.vertices:
        verts[find(v)].add(v)
    for e, inc in H.edges.items():
        edges[find(inc.u)][e] = inc
    return [
        FiniteMultigraph(frozenset(verts[root]), edges[root])
        for root in sorted(verts, key=lambda r: min(verts[r]))
    ]


def is_connected(H: FiniteMultigraph) -> bool:
    return len(components(H)) == 1


def handshake_check(H: FiniteMultigraph) -> bool:
    return sum(H.degrees().values()) == 2 * len(H.edges)


def euler_feasible(
    H: FiniteMultigraph, start: Optional[VertexId], stop: Optional[VertexId]
) -> Union[bool, Infeasible]:
    """Euler's theorem as a predicate; True or an :class:`Infeasible` reason."""
    if not H.edges:
        return Infeasible("empty")
    if not is_connected(H):
        return Infeasible("disconnected")
    for x in (start, stop):
        if x is not None and x not in H.vertices:
            return Infeasible(f"vertex {x} not in graph")
    odd = H.odd_vertices()
    if start is not None and stop is not None:
        if start == stop:
            if odd:
                return Infeasible(f"circuit needs all degrees even; odd vertices {odd}")
            return True
        if odd != sorted((start, stop)):
            return Infeasible(
                f"path {start}->{stop} needs exactly those two odd vertices; odd vertices {odd}"
            )
        return True
    pinned = start if start is not None else stop
    if not odd:
        return True
    if len(odd) != 2:
        return Infeasible(f"{len(odd)} odd-degree vertices")
    if pinned is not None and pinned not in odd:
        return Infeasible(f"vertex {pinned} is even but odd vertices {odd} exist")
    return True


def _hierholzer(H: FiniteMultigraph, start: VertexId) -> FinitePath:
    adj = H.adjacency()
    cursor = dict.fromkeys(adj, 0)
    used: set[EdgeId] = set()
    stack: list[tuple[VertexId, Optional[EdgeId]]] = [(start, None)]
    out: list[tuple[VertexId, Optional[EdgeId]]] = []
    while stack:
        x, _ = stack[-1]
        incs = adj[x]
        while cursor[x] < len(incs) and incs[cursor[x]].edge in used:
            cursor[x] += 1
        if cursor[x] < len(incs):
            inc = incs[cursor[x]]
            used.add(inc.edge)
            stack.append((inc.other(x), inc.edge))
        else:
            out.append(stack.pop())
    out.reverse()
    return FinitePath(0, tuple(v for v, _ in out), tuple(e for _, e in out[1:]))  # type: ignore[misc]


def eulerian_finite(
    H: FiniteMultigraph,
    start: Optional[VertexId] = None,
    stop: Optional[VertexId] = None,
) -> Union[FinitePath, Infeasible]:
    """Eulerian path of ``H`` by Hierholzer's algorithm.

    ``start == stop`` asks for a circuit at that vertex. Either end may be
    left open. Ties are broken by always taking the smallest unused edge id.
    """
    ok = euler_feasible(H, start, stop)
    if ok is not True:
        return ok
    odd = H.odd_vertices()
    if start is None and stop is None:
        first = odd[0] if odd else min(H.vertices)
        return _hierholzer(H, first)
    if start is None:
        assert stop is not None
        first = stop if not odd else next(v for v in odd if v != stop)
        return _hierholzer(H, first)
    return _hierholzer(H, start)


def brute_force_euler(
    H: FiniteMultigraph,
    start: Optional[VertexId] = None,
    stop: Optional[VertexId] = None,
) -> list[tuple[EdgeId, ...]]:
    """All Eulerian edge sequences of ``H`` with the given ends, by backtracking."""
    if len(H.edges) > MAX_BRUTE_FORCE_EDGES:
        raise ValueError(
            f"brute force limited to {MAX_BRUTE_FORCE_EDGES} edges, got {len(H.edges)}"
        )
    if not H.edges:
        return []
    adj = H.adjacency()
    m = len(H.edges)
    found: set[tuple[EdgeId, ...]] = set()
    trail: list[EdgeId] = []
    used: set[EdgeId] = set()

    def extend(x: VertexId) -> None:
        if len(trail) == m:
            if stop is None or x == stop:
                found.add(tuple(trail))
            return
        for inc in adj[x]:
            if inc.edge not in used:
                used.add(inc.edge)
                trail.append(inc.edge)
                extend(inc.other(x))
                trail.pop()
                used.discard(inc.edge)

    starts = [start] if start is not None else sorted(H.vertices)
    for s in starts:
        if s in adj:
            extend(s)
    return sorted(found)


def to_dot(H: FiniteMultigraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in sorted(H.vertices):
        lines.append(f"  {v};")
    for e, inc in H.edges.items():
        lines.append(f'  {inc.u} -- {inc.v} [label="{e}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
