"""Infinite multigraphs presented by decidable predicates and a degree function.

A :class:`GraphOracle` answers vertex/edge membership, incidence and degree
queries over natural-number indices. A :class:`GraphDescription` bundles an
oracle with metadata the caller asserts about it (odd-vertex existence,
which Eulerian conditions hold); that metadata is never inferred.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional, Union

from .core import INFINITE, Degree, EdgeId, Incidence, VertexId, is_finite
from .finite import FiniteMultigraph

E1 = "E1"
E2 = "E2"


class PresentationError(ValueError):
    """Malformed or inconsistent graph presentation file."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def zeta(k: int) -> int:
    """Bijection Z -> N: 0, -1, 1, -2, 2, ... map to 0, 1, 2, 3, 4, ..."""
    return 2 * k if k >= 0 else -2 * k - 1


def zeta_inv(n: int) -> int:
    return n // 2 if n % 2 == 0 else -(n + 1) // 2


class GraphOracle(ABC):
    """Read-only description of a countable multigraph.

    Subclasses implement the four queries; :meth:`incident_edges` has a
    generic scan that families may replace with a closed form.
    """

    @abstractmethod
    def is_vertex(self, n: int) -> bool: ...

    @abstractmethod
    def is_edge(self, n: int) -> bool: ...

    @abstractmethod
    def incidence(self, e: EdgeId) -> Incidence: ...

    @abstractmethod
    def degree(self, v: VertexId) -> Degree: ...

    def incident_edges(self, v: VertexId) -> Iterator[EdgeId]:
        """Edges at ``v`` in ascending index order.

        Finite for finite-degree vertices: the scan stops once the degree
        is accounted for. Infinite otherwise.
        """
        self._require_vertex(v)
        target = self.degree(v)
        seen = 0
        for e in itertools.count():
            if is_finite(target) and seen >= target:
                return
            if not self.is_edge(e):
                continue
            inc = self.incidence(e)
            hits = (inc.u == v) + (inc.v == v)
            if hits:
                seen += hits
                yield e

    def __eq__(self, other: object) -> bool:
        return type(self) is type(other) and vars(self) == vars(other)

    def __hash__(self) -> int:
        return hash(type(self))

    def edges(self) -> Iterator[EdgeId]:
        return (e for e in itertools.count() if self.is_edge(e))

    def vertices(self) -> Iterator[VertexId]:
        return (v for v in itertools.count() if self.is_vertex(v))

    def _require_vertex(self, v: VertexId) -> None:
        if not (isinstance(v, int) and v >= 0 and self.is_vertex(v)):
            raise ValueError(f"{v} is not a vertex")

    def _require_edge(self, e: EdgeId) -> None:
        if not (isinstance(e, int) and e >= 0 and self.is_edge(e)):
            raise ValueError(f"{e} is not an edge")


class _AllNaturals(GraphOracle):
    def is_vertex(self, n: int) -> bool:
        return n >= 0

    def is_edge(self, n: int) -> bool:
        return n >= 0


class RayOracle(_AllNaturals):
    """Vertices N; edge i joins i and i+1."""

    def incidence(self, e: EdgeId) -> Incidence:
        self._require_edge(e)
        return Incidence(e, e, e + 1)

    def degree(self, v: VertexId) -> Degree:
        self._require_vertex(v)
        return 1 if v == 0 else 2

    def incident_edges(self, v: VertexId) -> Iterator[EdgeId]:
        self._require_vertex(v)
        return iter([v] if v == 0 else [v - 1, v])


class LineOracle(_AllNaturals):
    """The two-way line Z coded into N by :func:`zeta`; edge zeta(k) joins k, k+1."""

    def incidence(self, e: EdgeId) -> Incidence:
        self._require_edge(e)
        k = zeta_inv(e)
        return Incidence.of(e, zeta(k), zeta(k + 1))

    def degree(self, v: VertexId) -> Degree:
        self._require_vertex(v)
        return 2

    def incident_edges(self, v: VertexId) -> Iterator[EdgeId]:
        self._require_vertex(v)
        k = zeta_inv(v)
        return iter(sorted((zeta(k - 1), zeta(k))))


class LoopStarOracle(GraphOracle):
    """A single vertex 0 carrying the loops 0, 1, 2, ..."""

    def is_vertex(self, n: int) -> bool:
        return n == 0

    def is_edge(self, n: int) -> bool:
        return n >= 0

    def incidence(self, e: EdgeId) -> Incidence:
        self._require_edge(e)
        return Incidence(e, 0, 0)

    def degree(self, v: VertexId) -> Degree:
        self._require_vertex(v)
        return INFINITE

    def incident_edges(self, v: VertexId) -> Iterator[EdgeId]:
        self._require_vertex(v)
        return itertools.count()


class FatRayOracle(_AllNaturals):
    """Ray with doubled edges: 2i and 2i+1 both join i and i+1."""

    def incidence(self, e: EdgeId) -> Incidence:
        self._require_edge(e)
        return Incidence(e, e // 2, e // 2 + 1)

    def degree(self, v: VertexId) -> Degree:
        self._require_vertex(v)
        return 2 if v == 0 else 4

    def incident_edges(self, v: VertexId) -> Iterator[EdgeId]:
        self._require_vertex(v)
        if v == 0:
            return iter([0, 1])
        return iter([2 * v - 2, 2 * v - 1, 2 * v, 2 * v + 1])


class PeriodicOracle(_AllNaturals):
    """Copies of a finite cell glued along link edges, optionally with a hub.

    Cells are numbered ``c = 0, 1, 2, ...`` (one-way) or ``c = zeta(k)`` for
    ``k`` in Z (two-way). Vertex ``u`` of cell ``c`` has id ``c*n + u``, plus
    one when a hub is present (the hub is vertex 0). Edge ``j`` of cell ``c``
    has id ``c*m + j``; per cell the cell edges come first, then the link
    edges, then the hub edge.
    """

    def __init__(
        self,
        n: int,
        cell_edges: Iterable[tuple[int, int]] = (),
        link_edges: Iterable[tuple[int, int]] = (),
        hub: bool = False,
        two_way: bool = False,
    ):
        self.n = n
        self.cell_edges = [tuple(p) for p in cell_edges]
        self.link_edges = [tuple(p) for p in link_edges]
        self.hub = hub
        self.two_way = two_way
        self.m = len(self.cell_edges) + len(self.link_edges) + int(hub)
        if n < 1:
            raise ValueError("cell must have at least one vertex")
        for u, v in self.cell_edges + self.link_edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"cell vertex out of range in edge {u} {v}")

    def is_edge(self, n: int) -> bool:
        return n >= 0 and self.m > 0

    # cell arithmetic

    def _next_cell(self, c: int) -> int:
        return zeta(zeta_inv(c) + 1) if self.two_way else c + 1

    def _prev_cell(self, c: int) -> Optional[int]:
        if self.two_way:
            return zeta(zeta_inv(c) - 1)
        return c - 1 if c > 0 else None

    def _vid(self, c: int, u: int) -> VertexId:
        return c * self.n + u + int(self.hub)

    def _locate(self, v: VertexId) -> tuple[int, int]:
        x = v - int(self.hub)
        return divmod(x, self.n)

    def is_hub(self, v: VertexId) -> bool:
        return self.hub and v == 0

    def incidence(self, e: EdgeId) -> Incidence:
        self._require_edge(e)
        c, j = divmod(e, self.m)
        ce = len(self.cell_edges)
        if j < ce:
            u, v = self.cell_edges[j]
            return Incidence.of(e, self._vid(c, u), self._vid(c, v))
        j -= ce
        if j < len(self.link_edges):
            u, v = self.link_edges[j]
            return Incidence.of(e, self._vid(c, u), self._vid(self._next_cell(c), v))
        return Incidence.of(e, 0, self._vid(c, 0))

    def _local_degree(self, u: int, has_prev: bool) -> int:
        d = sum((a == u) + (b == u) for a, b in self.cell_edges)
        d += sum(a == u for a, _ in self.link_edges)
        if has_prev:
            d += sum(b == u for _, b in self.link_edges)
        if self.hub and u == 0:
            d += 1
        return d

    def degree(self, v: VertexId) -> Degree:
        self._require_vertex(v)
        if self.is_hub(v):
            return INFINITE
        c, u = self._locate(v)
        return self._local_degree(u, self._prev_cell(c) is not None)

    def incident_edges(self, v: VertexId) -> Iterator[EdgeId]:
        self._require_vertex(v)
        if self.is_hub(v):
            return (c * self.m + self.m - 1 for c in itertools.count())
        c, u = self._locate(v)
        ce = len(self.cell_edges)
        out = [c * self.m + j for j, (a, b) in enumerate(self.cell_edges) if u in (a, b)]
        out += [c * self.m + ce + j for j, (a, _) in enumerate(self.link_edges) if a == u]
        p = self._prev_cell(c)
        if p is not None:
            out += [p * self.m + ce + j for j, (_, b) in enumerate(self.link_edges) if b == u]
        if self.hub and u == 0:
            out.append(c * self.m + self.m - 1)
        return iter(sorted(set(out)))

    def degree_classes(self) -> dict[str, list[int]]:
        """Degrees of the cell-local vertices, grouped by which cells share them."""
        if self.two_way:
            return {"every cell": [self._local_degree(u, True) for u in range(self.n)]}
        return {
            "cell 0": [self._local_degree(u, False) for u in range(self.n)],
            "cells >= 1": [self._local_degree(u, True) for u in range(self.n)],
        }


@dataclass(frozen=True)
class GraphDescription:
    """An oracle plus declared (never computed) metadata."""

    oracle: GraphOracle
    has_odd_vertex: bool
    conditions: frozenset[str] = field(default_factory=frozenset)
    name: str = "graph"

    def declares(self, condition: str) -> bool:
        return condition in self.conditions


def family_ray() -> GraphDescription:
    return GraphDescription(RayOracle(), True, frozenset({E1}), "ray")


def family_line() -> GraphDescription:
    return GraphDescription(LineOracle(), False, frozenset({E2}), "line")


def family_loop_star() -> GraphDescription:
    return GraphDescription(LoopStarOracle(), False, frozenset({E1, E2}), "loop_star")


def family_fat_ray() -> GraphDescription:
    return GraphDescription(FatRayOracle(), False, frozenset({E2}), "fat_ray")


FAMILIES = {
    "ray": family_ray,
    "line": family_line,
    "loop_star": family_loop_star,
    "fat_ray": family_fat_ray,
}

_CONDITIONS = {"E1": {E1}, "E2": {E2}, "E1E2": {E1, E2}, "none": set()}


def _parse_bool(tok: str, line: int) -> bool:
    if tok not in ("true", "false"):
        raise PresentationError(f"expected true|false, got {tok!r}", line)
    return tok == "true"


def _parse_nat(tok: str, line: int) -> int:
    if not tok.isdigit():
        raise PresentationError(f"expected a natural number, got {tok!r}", line)
    return int(tok)


def load_presentation(text: str) -> GraphDescription:
    """Build a description from the line-oriented presentation format."""
    family: Optional[str] = None
    orientation: Optional[str] = None
    n: Optional[int] = None
    cell_edges: list[tuple[int, int]] = []
    link_edges: list[tuple[int, int]] = []
    hub = False
    odd: Optional[bool] = None
    conds: Optional[set[str]] = None
    periodic_only = {"orientation", "cell_vertices", "cell_edge", "link_edge", "hub"}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        key, args = toks[0], toks[1:]
        if family is None:
            if key != "family" or len(args) != 1:
                raise PresentationError("first directive must be 'family <name>'", lineno)
            if args[0] not in (*FAMILIES, "periodic"):
                raise PresentationError(f"unknown family {args[0]!r}", lineno)
            family = args[0]
            continue
        arity = {"family": 1, "orientation": 1, "cell_vertices": 1, "cell_edge": 2,
                 "link_edge": 2, "hub": 0, "odd_vertex": 1, "conditions": 1}
        if key not in arity:
            raise PresentationError(f"unknown directive {key!r}", lineno)
        if len(args) != arity[key]:
            raise PresentationError(f"{key} takes {arity[key]} argument(s)", lineno)
        if key == "family":
            raise PresentationError("family given twice", lineno)
        if key in periodic_only and family != "periodic":
            raise PresentationError(f"{key} is only valid for periodic graphs", lineno)
        if key == "orientation":
            if args[0] not in ("one_way", "two_way"):
                raise PresentationError(f"orientation must be one_way|two_way, got {args[0]!r}", lineno)
            orientation = args[0]
        elif key == "cell_vertices":
            n = _parse_nat(args[0], lineno)
            if n < 1:
                raise PresentationError("cell_vertices must be at least 1", lineno)
        elif key in ("cell_edge", "link_edge"):
            if n is None:
                raise PresentationError(f"{key} before cell_vertices", lineno)
            u, v = (_parse_nat(a, lineno) for a in args)
            if u >= n or v >= n:
                raise PresentationError(f"cell vertex out of range 0..{n - 1}", lineno)
            (cell_edges if key == "cell_edge" else link_edges).append((u, v))
        elif key == "hub":
            hub = True
        elif key == "odd_vertex":
            odd = _parse_bool(args[0], lineno)
        elif key == "conditions":
            if args[0] not in _CONDITIONS:
                raise PresentationError(f"conditions must be E1|E2|E1E2|none, got {args[0]!r}", lineno)
            conds = set(_CONDITIONS[args[0]])

    if family is None:
        raise PresentationError("empty presentation")
    if odd is None or conds is None:
        raise PresentationError("metadata lines 'odd_vertex' and 'conditions' are required")

    if family != "periodic":
        desc = FAMILIES[family]()
        if (odd, frozenset(conds)) != (desc.has_odd_vertex, desc.conditions):
            raise PresentationError(
                f"metadata disagrees with built-in family {family}: "
                f"odd_vertex {str(desc.has_odd_vertex).lower()}, "
                f"conditions {''.join(sorted(desc.conditions)) or 'none'}"
            )
        return desc

    if orientation is None or n is None:
        raise PresentationError("periodic graphs need 'orientation' and 'cell_vertices'")
    oracle = PeriodicOracle(n, cell_edges, link_edges, hub, orientation == "two_way")
    violations = _periodic_violations(oracle, odd, conds)
    if violations:
        raise PresentationError("inconsistent metadata: " + "; ".join(violations))
    return GraphDescription(oracle, odd, frozenset(conds), "periodic")


def _periodic_violations(oracle: PeriodicOracle, odd: bool, conds: set[str]) -> list[str]:
    """Rules checkable from cell-local data. Connectivity and ends are trusted."""
    out = []
    if oracle.m == 0:
        out.append("edge set must be infinite: no edges per cell")
    classes = oracle.degree_classes()
    if oracle.two_way:
        odd_count: Union[int, float] = INFINITE if any(d % 2 for d in classes["every cell"]) else 0
    elif any(d % 2 for d in classes["cells >= 1"]):
        odd_count = INFINITE
    else:
        odd_count = sum(d % 2 for d in classes["cell 0"])
    if odd != (odd_count > 0):
        out.append(
            f"odd_vertex {str(odd).lower()} but the graph has "
            f"{'infinitely many' if odd_count == INFINITE else odd_count} odd-degree vertices"
        )
    if E1 in conds:
        if not (odd_count == 1 or (odd_count == 0 and oracle.hub)):
            out.append("E1 needs exactly one odd vertex, or none and an infinite-degree vertex")
        if oracle.two_way and not oracle.hub:
            out.append("E1 needs one end; a two-way chain without hub has two")
    if E2 in conds and odd_count:
        out.append("E2 needs every degree even or infinite")
    return out


def load_graph(source: Union[str, Path]) -> GraphDescription:
    """Resolve a file path (if it exists) or a built-in family name."""
    path = Path(source)
    if path.is_file():
        return load_presentation(path.read_text(encoding="utf-8"))
    name = str(source)
    if name in FAMILIES:
        return FAMILIES[name]()
    raise ValueError(f"no presentation file or built-in family named {name!r}")


def ball(G: GraphOracle, v: VertexId, r: int, s: int) -> FiniteMultigraph:
    """Subgraph induced by edges of index <= s on paths of length <= r through v.

    An edge ``{x, y}`` lies on such a path exactly when one endpoint is within
    distance ``r - 1`` of ``v`` in the subgraph of edges with index <= s: a
    shortest route to the nearer endpoint cannot use the edge itself.
    """
    G._require_vertex(v)
    incs = [G.incidence(e) for e in range(s + 1) if G.is_edge(e)]
    dist = bounded_distances(incs, v, r - 1)
    kept = {inc.edge: inc for inc in incs if inc.u in dist or inc.v in dist}
    verts = {x for inc in kept.values() for x in (inc.u, inc.v)}
    return FiniteMultigraph(frozenset(verts), kept)


def bounded_distances(
    incs: Iterable[Incidence], source: VertexId, limit: int
) -> dict[VertexId, int]:
    """Breadth-first distances from ``source`` up to ``limit`` (empty if limit < 0)."""
    if limit < 0:
        return {}
    adj: dict[VertexId, list[VertexId]] = {}
    for inc in incs:
        adj.setdefault(inc.u, []).append(inc.v)
        adj.setdefault(inc.v, []).append(inc.u)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        if dist[x] == limit:
            continue
        for y in adj.get(x, ()):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist
