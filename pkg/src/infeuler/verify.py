"""Independent checks: exhaustive finite corpus, prefix validation, cross-checks.

Everything here avoids the code paths it checks where it can. The ball and
parity oracles are separate brute-force implementations, not wrappers.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Optional, Sequence, Union

from .core import (
    EdgeId,
    FinitePath,
    Incidence,
    PathError,
    VertexId,
    path_violations,
)
from .deciders import (
    Decided,
    FiniteComponentSearch,
    connectivity_decider_one_end,
    incident_survivors,
    is_bi_extensible,
    is_distinguished,
    is_right_extensible,
)
from .finite import (
    FiniteMultigraph,
    brute_force_euler,
    eulerian_finite,
    handshake_check,
    induced,
    remove_edges,
)
from .oracle import (
    E1,
    FAMILIES,
    GraphDescription,
    GraphOracle,
    ball,
    family_fat_ray,
    family_line,
    family_loop_star,
    family_ray,
)
from .stream import EulerStream, Mode

CORPUS_MAX_VERTICES = 4
CORPUS_MAX_EDGES = 5


@dataclass
class PropertyReport:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, reproducer: Union[str, Callable[[], str]]) -> None:
        self.checked += 1
        if not ok:
            self.failures.append(reproducer() if callable(reproducer) else reproducer)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"PROP {self.name} {status} checked={self.checked} failures={len(self.failures)}"

    def render(self) -> str:
        return "\n".join([self.line(), *(f"  failure: {f}" for f in self.failures)])


# finite corpus


def _connected_pairs(k: int, pairs: Sequence[tuple[int, int]]) -> bool:
    seen = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for a, b in pairs:
            for p, q in ((a, b), (b, a)):
                if p == x and q not in seen:
                    seen.add(q)
                    frontier.append(q)
    return len(seen) == k


def finite_corpus(
    max_vertices: int = CORPUS_MAX_VERTICES, max_edges: int = CORPUS_MAX_EDGES
) -> list[FiniteMultigraph]:
    """All connected labeled multigraphs on vertices 0..k-1 (every vertex used).

    Loops and parallel edges included; edges numbered in sorted pair order.
    """
    out = []
    for k in range(1, max_vertices + 1):
        slots = [(a, b) for a in range(k) for b in range(a, k)]
        for m in range(1, max_edges + 1):
            for pairs in itertools.combinations_with_replacement(slots, m):
                used = {x for p in pairs for x in p}
                if len(used) == k and _connected_pairs(k, pairs):
                    out.append(FiniteMultigraph.from_pairs(pairs))
    return out


# Euler cross-check


def parity_predicate(H: FiniteMultigraph, start: VertexId, stop: VertexId) -> bool:
    """Euler's theorem, computed from scratch for a connected ``H``."""
    deg = {v: 0 for v in H.vertices}
    for inc in H.edges.values():
        deg[inc.u] += 1
        deg[inc.v] += 1
    odd = {v for v, d in deg.items() if d % 2}
    if not H.edges or start not in deg or stop not in deg:
        return False
    if start == stop:
        return not odd
    return odd == {start, stop}


def is_eulerian_path(H: FiniteMultigraph, p: FinitePath, start: VertexId, stop: VertexId) -> bool:
    return (
        not path_violations(p, H.edges.__getitem__)
        and sorted(p.edges) == sorted(H.edges)
        and p.initial == start
        and p.final == stop
    )


def crosscheck_euler(H: FiniteMultigraph, report: Optional[PropertyReport] = None) -> PropertyReport:
    """Parity predicate vs. Hierholzer vs. brute force, for every pair of ends."""
    report = report or PropertyReport("euler_crosscheck")
    verts = sorted(H.vertices)
    for start, stop in itertools.product(verts, verts):
        parity = parity_predicate(H, start, stop)
        built = eulerian_finite(H, start, stop)
        built_ok = isinstance(built, FinitePath)
        brute = brute_force_euler(H, start, stop)
        valid = not built_ok or is_eulerian_path(H, built, start, stop)
        listed = not built_ok or tuple(built.edges) in brute
        report.check(
            parity == built_ok == bool(brute) and valid and listed,
            lambda: (
                f"pairs={[(i.u, i.v) for i in H.edges.values()]} ends=({start},{stop}) "
                f"parity={parity} hierholzer={built} brute={len(brute)}"
            ),
        )
    return report


def handshake_report(graphs: Iterable[FiniteMultigraph]) -> PropertyReport:
    """Handshaking on each graph, each single-edge removal, and each induced half."""
    report = PropertyReport("handshake")
    for H in graphs:
        report.check(handshake_check(H), f"graph {dict(H.edges)}")
        edges = list(H.edges)
        for e in edges:
            R = remove_edges(H, {e})
            report.check(handshake_check(R), f"remove {e} from {dict(H.edges)}")
        half = induced(edges[::2], H.edges.__getitem__)
        report.check(handshake_check(half), f"induced {edges[::2]} of {dict(H.edges)}")
    return report


# ball oracle


def ball_by_enumeration(G: GraphOracle, v: VertexId, r: int, s: int) -> FiniteMultigraph:
    """Enumerate every path over edges of index <= s, keep those of length <= r visiting v."""
    incs = [G.incidence(e) for e in range(s + 1) if G.is_edge(e)]
    adj: dict[VertexId, list[Incidence]] = {}
    for inc in incs:
        adj.setdefault(inc.u, []).append(inc)
        if not inc.is_loop:
            adj.setdefault(inc.v, []).append(inc)
    kept: set[EdgeId] = set()

    def walk(x: VertexId, used: list[EdgeId], visits: bool) -> None:
        if visits and used:
            kept.update(used)
        if len(used) == r:
            return
        for inc in adj.get(x, ()):
            if inc.edge not in used:
                y = inc.other(x)
                used.append(inc.edge)
                walk(y, used, visits or y == v)
                used.pop()

    for x in adj:
        walk(x, [], x == v)
    return induced(sorted(kept), {inc.edge: inc for inc in incs}.__getitem__)


def ball_report(grid: int = 4) -> PropertyReport:
    report = PropertyReport("ball_exactness")
    examples = [
        (family_ray(), 0, 2, 5, {0, 1, 2}, {0, 1}),
        (family_ray(), 3, 1, 10, {2, 3, 4}, {2, 3}),
        (family_loop_star(), 0, 1, 2, {0}, {0, 1, 2}),
    ]
    for G, v, r, s, verts, edges in examples:
        fast = ball(G.oracle, v, r, s)
        slow = ball_by_enumeration(G.oracle, v, r, s)
        report.check(
            fast == slow and set(fast.vertices) == verts and set(fast.edges) == edges,
            f"{G.name} ball({v},{r},{s}) = {sorted(fast.vertices)}/{sorted(fast.edges)}",
        )
    for G in (family_ray(), family_line(), family_fat_ray()):
        for v in range(3):
            balls = {
                (r, s): ball(G.oracle, v, r, s)
                for r in range(grid + 1)
                for s in range(grid + 1)
            }
            for (r, s), B in balls.items():
                report.check(
                    B == ball_by_enumeration(G.oracle, v, r, s),
                    f"{G.name} ball({v},{r},{s}) differs from enumeration",
                )
                for r2, s2 in ((r + 1, s), (r, s + 1)):
                    if (r2, s2) in balls:
                        report.check(
                            B.is_subgraph_of(balls[r2, s2]),
                            f"{G.name} ball({v},{r},{s}) not inside ball({v},{r2},{s2})",
                        )
    return report


# decider ground truth


class SpurRayOracle(GraphOracle):
    """Ray plus an extra edge parallel to its first edge.

    Index 0 is the extra edge joining 0 and 1; index ``i + 1`` is the ray
    edge joining ``i`` and ``i + 1``. Vertex 1 is the only odd vertex.
    """

    def is_vertex(self, n: int) -> bool:
        return n >= 0

    def is_edge(self, n: int) -> bool:
        return n >= 0

    def incidence(self, e: EdgeId) -> Incidence:
        self._require_edge(e)
        return Incidence(0, 0, 1) if e == 0 else Incidence(e, e - 1, e)

    def degree(self, v: VertexId) -> int:
        self._require_vertex(v)
        return {0: 2, 1: 3}.get(v, 2)


def family_spur_ray() -> GraphDescription:
    return GraphDescription(SpurRayOracle(), True, frozenset({E1}), "spur_ray")


def _path(tokens: Sequence[int]) -> FinitePath:
    return FinitePath.from_tokens(tokens)


def decider_cases() -> list[tuple[str, Callable[[], Any], Any]]:
    """(label, thunk, expected) triples worked out by hand."""
    ray, line, star, fat, spur = (
        family_ray(), family_line(), family_loop_star(), family_fat_ray(), family_spur_ray()
    )

    def halts(G: GraphDescription, E: set[int], budget: int) -> Any:
        search = FiniteComponentSearch(G.oracle, E)
        if not search.run(budget):
            return None
        return sorted(search.witness.vertices)

    return [
        ("survivors ray {e1}", lambda: incident_survivors(ray.oracle, {1}), [1, 2]),
        ("survivors ray {e0}", lambda: incident_survivors(ray.oracle, {0}), [1]),
        ("survivors loop_star {e0}", lambda: incident_survivors(star.oracle, {0}), [0]),
        ("finite component ray {e1}", lambda: halts(ray, {1}, 10**5), [0, 1]),
        ("finite component ray {e0} running", lambda: halts(ray, {0}, 10**4), None),
        ("finite component fat_ray {A2,B2}", lambda: halts(fat, {4, 5}, 10**5), [0, 1, 2]),
        ("connected ray - {e0}", lambda: connectivity_decider_one_end(ray.oracle, {0}, 10**5), Decided(True)),
        ("connected ray - {e1}", lambda: connectivity_decider_one_end(ray.oracle, {1}, 10**5), Decided(False)),
        ("connected loop_star - {e0,e5}", lambda: connectivity_decider_one_end(star.oracle, {0, 5}, 10**5), Decided(True)),
        ("distinguished ray 0", lambda: is_distinguished(ray, 0), True),
        ("distinguished ray 1", lambda: is_distinguished(ray, 1), False),
        ("distinguished loop_star 0", lambda: is_distinguished(star, 0), True),
        ("right-extensible ray [0 e0 1 e1 2]", lambda: is_right_extensible(ray, _path([0, 0, 1, 1, 2])), Decided(True)),
        ("right-extensible ray [1 e1 2]", lambda: is_right_extensible(ray, _path([1, 1, 2])), Decided(False)),
        ("right-extensible spur_ray [1 e1 2]", lambda: is_right_extensible(spur, _path([1, 2, 2])), Decided(False)),
        ("bi-extensible line [0 f0 1]", lambda: is_bi_extensible(line, _path([0, 0, 2])), Decided(True)),
        ("bi-extensible loop_star [0 e0 0]", lambda: is_bi_extensible(star, _path([0, 0, 0])), Decided(True)),
        ("bi-extensible fat_ray [1 A1 2 B1 1]", lambda: is_bi_extensible(fat, _path([1, 2, 2, 3, 1])), Decided(False)),
    ]


def decider_report() -> PropertyReport:
    report = PropertyReport("decider_ground_truth")
    for label, thunk, expected in decider_cases():
        got = thunk()
        report.check(got == expected, f"{label}: expected {expected}, got {got}")
    return report


# prefixes and streams


def check_prefix(
    G: GraphDescription,
    prefix: Union[FinitePath, Sequence[int]],
    mode: Union[Mode, str],
    report: Optional[PropertyReport] = None,
) -> PropertyReport:
    """Path invariants plus a True verdict from the matching decider.

    ``prefix`` may be raw ``v0 e0 v1 ... vk`` tokens, so that malformed
    input (such as a repeated edge) is reported instead of raised.
    """
    mode = Mode(mode)
    report = report or PropertyReport(f"prefix_{G.name}_{mode.value}")
    if not isinstance(prefix, FinitePath):
        try:
            prefix = FinitePath.from_tokens(prefix)
        except PathError as exc:
            report.check(False, f"{list(prefix)}: {exc}")
            return report
    problems = path_violations(prefix, G.oracle.incidence)
    report.check(not problems, lambda: f"{prefix}: {'; '.join(problems)}")
    if problems:
        return report
    decide = is_right_extensible if mode is Mode.ONE_WAY else is_bi_extensible
    out = decide(G, prefix)
    report.check(out == Decided(True), f"{prefix}: decider returned {out}")
    return report


def stream_report(G: GraphDescription, mode: Union[Mode, str], stages: int = 40) -> PropertyReport:
    """Every stage prefix is valid and extensible, and covers the first n+1 edges."""
    mode = Mode(mode)
    report = PropertyReport(f"stream_{G.name}_{mode.value}")
    s = EulerStream(G, mode)
    previous: Optional[FinitePath] = None
    for n in range(stages):
        t = s.advance_stage()
        check_prefix(G, t, mode, report)
        missing = set(s.targets[: n + 1]) - t.edge_set
        report.check(not missing, f"stage {n}: edges {sorted(missing)} not visited")
        if previous is not None:
            extends = t.restrict(*previous.domain) == previous
            report.check(extends, f"stage {n}: {t} does not extend {previous}")
            if mode is Mode.TWO_WAY:
                report.check(
                    t.base < previous.base and t.end > previous.end,
                    f"stage {n}: domain {t.domain} does not grow both ways from {previous.domain}",
                )
        previous = t
    if mode is Mode.ONE_WAY:
        report.check(is_distinguished(G, s.prefix.initial), f"start {s.prefix.initial} not distinguished")
    return report


STREAM_CASES = [
    ("ray", Mode.ONE_WAY),
    ("loop_star", Mode.ONE_WAY),
    ("loop_star", Mode.TWO_WAY),
    ("line", Mode.TWO_WAY),
    ("fat_ray", Mode.TWO_WAY),
]


def run_all(stages: int = 40) -> Iterator[PropertyReport]:
    corpus = finite_corpus()
    euler = PropertyReport("euler_crosscheck")
    for H in corpus:
        crosscheck_euler(H, euler)
    yield euler
    yield handshake_report(corpus)
    yield ball_report()
    yield decider_report()
    for name, mode in STREAM_CASES:
        yield stream_report(FAMILIES[name](), mode, stages)
