"""Value types for multigraphs and finite paths.

Vertices and edges are natural numbers (indices into decidable sets).
Degrees live in N ∪ {∞}; infinity is represented by :data:`INFINITE`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Union

VertexId = int
EdgeId = int
Degree = Union[int, float]

INFINITE: float = math.inf


class PathError(ValueError):
    """A path was built or combined in violation of its invariants."""


def is_finite(d: Degree) -> bool:
    return d != INFINITE


def format_degree(d: Degree) -> str:
    return "inf" if d == INFINITE else str(int(d))


class Incidence(NamedTuple):
    """Edge together with its unordered endpoint pair, stored as ``u <= v``."""

    edge: EdgeId
    u: VertexId
    v: VertexId

    @classmethod
    def of(cls, edge: EdgeId, a: VertexId, b: VertexId) -> "Incidence":
        return cls(edge, min(a, b), max(a, b))

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def joins(self, a: VertexId, b: VertexId) -> bool:
        return (self.u, self.v) == (min(a, b), max(a, b))

    def other(self, x: VertexId) -> VertexId:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise ValueError(f"vertex {x} is not an endpoint of edge {self.edge}")


@dataclass(frozen=True)
class FinitePath:
    """A path ``t: [a, b] -> G`` stored as alternating vertices and edges.

    ``vertices[i]`` is ``t(base + i)`` and ``edges[i]`` is the edge between
    positions ``base + i`` and ``base + i + 1``. Length 0 is allowed.
    """

    base: int
    vertices: tuple[VertexId, ...]
    edges: tuple[EdgeId, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        if len(self.vertices) != len(self.edges) + 1:
            raise PathError(
                f"{len(self.vertices)} vertices do not fit {len(self.edges)} edges"
            )
        if len(set(self.edges)) != len(self.edges):
            raise PathError("path repeats an edge")

    @classmethod
    def empty(cls, v: VertexId, base: int = 0) -> "FinitePath":
        return cls(base, (v,), ())

    @classmethod
    def from_tokens(cls, tokens: Iterable[int], base: int = 0) -> "FinitePath":
        """Parse the flat ``v0 e0 v1 e1 ... vk`` form."""
        toks = list(tokens)
        if len(toks) % 2 == 0:
            raise PathError("path token list must have odd length (v0 e0 v1 ... vk)")
        return cls(base, tuple(toks[0::2]), tuple(toks[1::2]))

    def tokens(self) -> list[int]:
        out: list[int] = []
        for v, e in zip(self.vertices, self.edges):
            out += [v, e]
        out.append(self.vertices[-1])
        return out

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def end(self) -> int:
        return self.base + self.length

    @property
    def domain(self) -> tuple[int, int]:
        return (self.base, self.end)

    @property
    def initial(self) -> VertexId:
        return self.vertices[0]

    @property
    def final(self) -> VertexId:
        return self.vertices[-1]

    @property
    def is_circuit(self) -> bool:
        return self.initial == self.final

    @property
    def edge_set(self) -> frozenset[EdgeId]:
        return frozenset(self.edges)

    def vertex_at(self, k: int) -> VertexId:
        if not self.base <= k <= self.end:
            raise IndexError(k)
        return self.vertices[k - self.base]

    def edge_at(self, k: int) -> EdgeId:
        """Edge joining positions ``k`` and ``k + 1``."""
        if not self.base <= k < self.end:
            raise IndexError(k)
        return self.edges[k - self.base]

    def restrict(self, a: int, b: int) -> "FinitePath":
        if not self.base <= a <= b <= self.end:
            raise IndexError((a, b))
        i, j = a - self.base, b - self.base
        return FinitePath(a, self.vertices[i : j + 1], self.edges[i:j])

    def shifted(self, base: int) -> "FinitePath":
        return FinitePath(base, self.vertices, self.edges)

    def __str__(self) -> str:
        parts = [str(self.vertices[0])]
        for e, v in zip(self.edges, self.vertices[1:]):
            parts.append(f"-{e}-")
            parts.append(str(v))
        return f"[{' '.join(parts)}]@{self.base}"


def _check_joinable(left: FinitePath, right: FinitePath) -> None:
    if left.final != right.initial:
        raise PathError(
            f"endpoint mismatch: {left.final} does not meet {right.initial}"
        )
    shared = left.edge_set & right.edge_set
    if shared:
        raise PathError(f"paths share edges {sorted(shared)}")


def concat_right(t: FinitePath, s: FinitePath) -> FinitePath:
    """Append ``s`` after ``t``; the result has domain ``[a, b + (d - c)]``."""
    _check_joinable(t, s)
    return FinitePath(t.base, t.vertices + s.vertices[1:], t.edges + s.edges)


def concat_left(t: FinitePath, s: FinitePath) -> FinitePath:
    """Prepend ``s`` before ``t``; the result has domain ``[a - (d - c), b]``."""
    _check_joinable(s, t)
    return FinitePath(t.base - s.length, s.vertices + t.vertices[1:], s.edges + t.edges)


def invert(t: FinitePath) -> FinitePath:
    return FinitePath(-t.end, t.vertices[::-1], t.edges[::-1])


def degree_in_path(t: FinitePath, v: VertexId) -> int:
    """Edge-occurrences of ``t`` incident to ``v``; loops count twice."""
    count = 0
    for i in range(t.length):
        count += (t.vertices[i] == v) + (t.vertices[i + 1] == v)
    return count


def path_violations(
    t: FinitePath, incidence: Callable[[EdgeId], Incidence]
) -> list[str]:
    """List every way ``t`` fails to be a path under the given incidence map."""
    problems = []
    seen: set[EdgeId] = set()
    for i, e in enumerate(t.edges):
        if e in seen:
            problems.append(f"edge {e} repeated at position {t.base + i}")
        seen.add(e)
        try:
            inc = incidence(e)
        except (KeyError, ValueError) as exc:
            problems.append(f"edge {e}: {exc}")
            continue
        a, b = t.vertices[i], t.vertices[i + 1]
        if not inc.joins(a, b):
            problems.append(
                f"edge {e} joins {inc.u},{inc.v}, not {a},{b} (position {t.base + i})"
            )
    return problems


def validate_path(t: FinitePath, incidence: Callable[[EdgeId], Incidence]) -> None:
    problems = path_violations(t, incidence)
    if problems:
        raise PathError("; ".join(problems))
