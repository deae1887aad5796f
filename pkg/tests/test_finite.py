import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infeuler.core import FinitePath, path_violations
from infeuler.finite import (
    FiniteMultigraph,
    Infeasible,
    brute_force_euler,
    components,
    eulerian_finite,
    handshake_check,
    induced,
    remove_edges,
    to_dot,
)
from infeuler.oracle import RayOracle

G = FiniteMultigraph.from_pairs
TRIANGLE = G([(0, 1), (1, 2), (0, 2)])
PATH2 = G([(0, 1), (1, 2)])
K4 = G([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def permutation_oracle(H, start, stop):
    """Eulerian edge orders by trying every permutation (independent of backtracking)."""
    found = set()
    for order in itertools.permutations(H.edges):
        x = start
        for e in order:
            inc = H.edges[e]
            if x not in (inc.u, inc.v):
                break
            x = inc.other(x)
        else:
            if x == stop:
                found.add(order)
    return sorted(found)


def test_induced():
    ray = RayOracle()
    H = induced({0, 1}, ray.incidence)
    assert H.vertices == {0, 1, 2} and set(H.edges) == {0, 1}
    assert induced(set(), ray.incidence).is_empty
    loop = G([(0, 0)])
    assert loop.vertices == {0} and len(loop.edges) == 1


def test_induced_unknown_edge():
    with pytest.raises(ValueError):
        induced({5}, {}.__getitem__)


def test_remove_edges():
    assert remove_edges(PATH2, {1}) == G([(0, 1)])
    assert remove_edges(PATH2, {0, 1}).is_empty
    assert remove_edges(PATH2, set()) == PATH2


def test_components():
    assert len(components(G([(0, 1), (2, 3)]))) == 2
    assert len(components(TRIANGLE)) == 1
    assert components(FiniteMultigraph(frozenset())) == []
    parts = components(G([(5, 6), (0, 1), (1, 1)]))
    assert [min(p.vertices) for p in parts] == [0, 5]


def test_triangle_circuit():
    p = eulerian_finite(TRIANGLE, 0, 0)
    assert isinstance(p, FinitePath) and p.length == 3 and p.is_circuit
    assert not path_violations(p, TRIANGLE.edges.__getitem__)


def test_two_edge_path_is_forced():
    assert permutation_oracle(PATH2, 0, 2) == [(0, 1)]
    assert eulerian_finite(PATH2, 0, 2) == FinitePath(0, (0, 1, 2), (0, 1))


def test_k4_infeasible():
    out = eulerian_finite(K4)
    assert isinstance(out, Infeasible) and "4 odd" in out.reason
    assert brute_force_euler(K4) == []


def test_empty_and_disconnected():
    assert eulerian_finite(FiniteMultigraph(frozenset())) == Infeasible("empty")
    assert eulerian_finite(G([(0, 1), (2, 3)])) == Infeasible("disconnected")


def test_smallest_edge_tie_break():
    # two loops and a parallel pair at vertex 0
    H = G([(0, 0), (0, 1), (0, 1), (0, 0)])
    p = eulerian_finite(H, 0, 0)
    assert p.edges[0] == 0


def test_brute_force_counts():
    assert brute_force_euler(PATH2, 0, 2) == [(0, 1)]
    assert len(brute_force_euler(TRIANGLE, 0, 0)) == 2
    assert brute_force_euler(TRIANGLE, 0, 0) == permutation_oracle(TRIANGLE, 0, 0)


def test_brute_force_guard():
    with pytest.raises(ValueError):
        brute_force_euler(G([(0, 0)] * 11))


def test_handshake_examples():
    assert handshake_check(TRIANGLE)
    assert handshake_check(G([(0, 0)]))
    assert G([(0, 0)]).degree(0) == 2


def test_dot_export():
    dot = to_dot(G([(0, 1), (0, 1), (1, 1)]))
    assert dot.count("0 -- 1") == 2
    assert '1 -- 1 [label="2"]' in dot


@st.composite
def multigraphs(draw, max_vertices=4, max_edges=6):
    k = draw(st.integers(1, max_vertices))
    pairs = draw(
        st.lists(
            st.tuples(st.integers(0, k - 1), st.integers(0, k - 1)),
            min_size=1,
            max_size=max_edges,
        )
    )
    return G(pairs)


@settings(max_examples=150, deadline=None)
@given(multigraphs())
def test_hierholzer_agrees_with_permutations(H):
    for u, v in itertools.product(sorted(H.vertices), repeat=2):
        built = eulerian_finite(H, u, v)
        expected = permutation_oracle(H, u, v)
        if isinstance(built, FinitePath):
            assert tuple(built.edges) in expected
            assert (built.initial, built.final) == (u, v)
        else:
            assert expected == []
        assert brute_force_euler(H, u, v) == expected


@given(multigraphs(), st.data())
def test_handshake_holds_under_removal(H, data):
    assert handshake_check(H)
    drop = data.draw(st.sets(st.sampled_from(sorted(H.edges))))
    R = remove_edges(H, drop)
    assert handshake_check(R)
    assert all(R.degree(v) > 0 for v in R.vertices)
    assert sum(len(c.edges) for c in components(R)) == len(R.edges)
