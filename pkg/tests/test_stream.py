import itertools

import pytest

from infeuler.core import FinitePath
from infeuler.deciders import Decided, is_bi_extensible, is_right_extensible
from infeuler.oracle import (
    family_fat_ray,
    family_line,
    family_loop_star,
    family_ray,
    load_presentation,
    zeta_inv,
)
from infeuler.stream import (
    BudgetExhausted,
    EulerStream,
    Mode,
    Side,
    StreamStep,
    one_way_stream,
    two_way_stream,
)
from infeuler.verify import family_spur_ray

P = FinitePath.from_tokens

TRIPLE_RAY = load_presentation(
    "family periodic\norientation one_way\ncell_vertices 1\n"
    "link_edge 0 0\nlink_edge 0 0\nlink_edge 0 0\nodd_vertex true\nconditions E1\n"
)
LOOPED_LINE = load_presentation(
    "family periodic\norientation two_way\ncell_vertices 1\n"
    "cell_edge 0 0\nlink_edge 0 0\nodd_vertex false\nconditions E2\n"
)


def right_steps(stream, n):
    return [stream.next_step(Side.RIGHT) for _ in range(n)]


def test_ray_emits_edges_in_order():
    s = one_way_stream(family_ray())
    assert s.start == 0
    assert right_steps(s, 5) == [StreamStep(k + 1, k, k + 1) for k in range(5)]


def test_ray_rejects_undistinguished_start():
    with pytest.raises(ValueError, match="distinguished"):
        one_way_stream(family_ray(), start=1)
    with pytest.raises(ValueError):
        one_way_stream(family_ray(), start=-3)


def test_spur_ray_starts_at_its_odd_vertex():
    s = one_way_stream(family_spur_ray())
    assert s.start == 1
    edges = [st.edge for st in right_steps(s, 30)]
    assert len(set(edges)) == 30
    assert set(range(20)) <= set(edges)


def test_advance_stage_examples():
    s = one_way_stream(family_ray())
    assert s.advance_stage() == P([0, 0, 1])
    assert s.advance_stage() == P([0, 0, 1, 1, 2])
    star = one_way_stream(family_loop_star())
    assert star.advance_stage() == P([0, 0, 0])


def test_loop_star_covers_every_loop():
    s = one_way_stream(family_loop_star())
    edges = [st.edge for st in right_steps(s, 60)]
    assert sorted(edges) == list(range(60))
    assert all(st.vertex == 0 for st in right_steps(s, 5))


def test_left_pull_on_one_way_is_an_error():
    s = one_way_stream(family_ray())
    with pytest.raises(ValueError):
        s.next_step(Side.LEFT)
    with pytest.raises(ValueError):
        EulerStream(family_line(), Mode.TWO_WAY, start=0)


@pytest.mark.parametrize("G", [family_line(), family_fat_ray(), family_loop_star(), LOOPED_LINE],
                         ids=["line", "fat_ray", "loop_star", "looped_line"])
def test_two_way_positions_and_incidences(G):
    s = two_way_stream(G)
    steps = list(itertools.islice(iter(s), 60))
    assert [st.position for st in steps[:6]] == [1, -1, 2, -2, 3, -3]
    edges = [st.edge for st in steps]
    assert len(set(edges)) == len(edges)
    origin = s.prefix.vertex_at(0)
    for side in (1, -1):
        prev = origin
        for st in (x for x in steps if (x.position > 0) == (side > 0)):
            inc = G.oracle.incidence(st.edge)
            assert inc.joins(prev, st.vertex)
            prev = st.vertex


def test_line_cursors_move_outward():
    s = two_way_stream(family_line())
    steps = list(itertools.islice(iter(s), 40))
    origin = zeta_inv(s.prefix.vertex_at(0))
    right = [zeta_inv(st.vertex) - origin for st in steps if st.position > 0]
    left = [zeta_inv(st.vertex) - origin for st in steps if st.position < 0]
    assert right == list(range(1, 21))
    assert left == list(range(-1, -21, -1))


def test_fat_ray_two_way_hundred_edges():
    s = two_way_stream(family_fat_ray())
    edges = [st.edge for st in itertools.islice(iter(s), 100)]
    assert len(set(edges)) == 100
    assert set(range(40)) <= set(edges)


def test_interleaving_does_not_change_either_side():
    a, b = two_way_stream(family_fat_ray()), two_way_stream(family_fat_ray())
    R, L = Side.RIGHT, Side.LEFT
    a_seq = [a.next_step(side) for side in [R, R, L, L] * 8]
    b_seq = [b.next_step(side) for side in [R, L] * 16]
    for pick in (lambda x: x.position > 0, lambda x: x.position < 0):
        assert [x for x in a_seq if pick(x)] == [x for x in b_seq if pick(x)]


def test_runs_are_deterministic():
    def run():
        s = two_way_stream(LOOPED_LINE)
        return [s.advance_stage() for _ in range(15)]

    assert run() == run()


def test_two_way_stages_grow_both_ends():
    s = two_way_stream(family_line())
    previous = s.advance_stage()
    for _ in range(20):
        t = s.advance_stage()
        assert t.base < previous.base and t.end > previous.end
        assert t.restrict(*previous.domain) == previous
        previous = t


def test_streams_need_declared_conditions():
    with pytest.raises(ValueError, match="E1"):
        one_way_stream(family_fat_ray())
    with pytest.raises(ValueError, match="E2"):
        two_way_stream(family_ray())


def test_one_way_stage_covering_target_keeps_prefix():
    s = one_way_stream(TRIPLE_RAY)
    t0 = s.advance_stage()
    seen = t0.edge_set
    for _ in range(10):
        n = s.stage
        before = s.prefix
        t = s.advance_stage()
        if s.targets[n] in before.edge_set:
            assert t == before
        assert t.restrict(*before.domain) == before
        seen = t.edge_set
    assert set(range(11)) <= seen


def test_candidate_budget_exhaustion():
    # the spur ray's first stage must pass over short dead ends before it finds one
    s = one_way_stream(family_spur_ray(), candidate_budget=0)
    with pytest.raises(BudgetExhausted):
        s.advance_stage()


def test_decider_budget_exhaustion():
    s = two_way_stream(family_fat_ray(), decider_budget=1)
    with pytest.raises(BudgetExhausted):
        for _ in range(5):
            s.advance_stage()


def _short_trails(G, start_vertices, max_edge, max_len):
    incs = [G.oracle.incidence(e) for e in range(max_edge + 1)]

    def walk(vs, es):
        yield FinitePath(0, tuple(vs), tuple(es))
        if len(es) < max_len:
            for inc in incs:
                if inc.edge not in es and vs[-1] in (inc.u, inc.v):
                    yield from walk(vs + [inc.other(vs[-1])], es + [inc.edge])

    for v in start_vertices:
        yield from walk([v], [])


@pytest.mark.parametrize("G", [family_ray(), family_spur_ray(), TRIPLE_RAY],
                         ids=["ray", "spur_ray", "triple_ray"])
def test_every_extensible_prefix_reaches_any_edge_one_way(G):
    s = one_way_stream(G, candidate_budget=10**4)
    checked = 0
    for t in _short_trails(G, [s.start], 6, 4):
        if is_right_extensible(G, t) != Decided(True):
            continue
        for target in range(10):
            grown = s._extend_right(t, target)
            assert target in grown.edge_set
            assert grown.restrict(*t.domain) == t
            checked += 1
    # the ray alone has exactly five extensible prefixes here
    assert checked >= 50


@pytest.mark.parametrize("G", [family_fat_ray(), LOOPED_LINE], ids=["fat_ray", "looped_line"])
def test_every_extensible_prefix_reaches_any_edge_two_way(G):
    s = two_way_stream(G, candidate_budget=10**5)
    checked = 0
    for t in _short_trails(G, range(3), 5, 3):
        if not t.edges or is_bi_extensible(G, t) != Decided(True):
            continue
        for target in range(8):
            grown = s._extend_both(t, target)
            assert target in grown.edge_set
            assert grown.base < t.base and grown.end > t.end
            checked += 1
    assert checked > 20
