"""Paths, path systems, built-in cost functions, and the detour cache."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minpath import (
    INF,
    DetourTable,
    Path,
    PathSystem,
    anti_risk,
    blocked_cost,
    classic_distance,
    dijkstra_classic,
    expected_cost,
    format_path,
    generate_random,
    implied_properties,
    membership,
    parse_graph,
    path_value,
    remove_road,
)
from minpath.paths import (
    NDSP,
    NO_NEGATIVE_CIRCLES,
    NO_NONPOSITIVE_CIRCLES,
    OP,
    SOP,
    SOPSP,
    WISP,
)

from conftest import brute_min_distance, brute_simple_paths


def single_road():
    return parse_graph("g 2 1\nv 0\nv 1\narc 0 1 5.0\n")


class TestPath:
    def test_trivial_path(self, diamond):
        p = Path(diamond, 0)
        assert p.vertices == (0,)
        assert p.terminal == 0
        assert len(p) == 0
        assert p.father() is None
        assert p.is_simple

    def test_chaining(self, diamond):
        p = Path(diamond, 0, (0, 6))  # s -> a -> t
        assert p.vertices == (0, 1, 3)
        assert p.terminal == 3

    def test_broken_chain(self, diamond):
        with pytest.raises(ValueError, match="road chain broken"):
            Path(diamond, 0, (2, 6))  # s -> b then a -> t does not chain

    def test_extended_and_father_inverse(self, diamond):
        p = Path(diamond, 0, (0,))
        q = p.extended(6)
        assert q.roads == (0, 6)
        assert q.father() == p

    def test_prefix_order(self, diamond):
        p = Path(diamond, 0, (0,))
        q = Path(diamond, 0, (0, 6))
        assert p.is_proper_prefix_of(q)
        assert not q.is_proper_prefix_of(p)
        assert not p.is_proper_prefix_of(p)

    def test_format(self, diamond):
        assert format_path(Path(diamond, 0)) == "s=0"
        assert format_path(Path(diamond, 0, (0, 6))) == "s=0 -> 1[k0] -> 3[k6]"


class TestMembership:
    def test_simple_paths(self, diamond):
        simple = PathSystem.simple(0)
        assert membership(simple, Path(diamond, 0))
        assert membership(simple, Path(diamond, 0, (0, 4)))  # s, a, b distinct
        assert not membership(simple, Path(diamond, 0, (0, 1)))  # s -> a -> s revisits

    def test_all_paths(self, diamond):
        every = PathSystem.all_paths(0)
        assert membership(every, Path(diamond, 0, (0, 1)))

    def test_source_mismatch(self, diamond):
        assert not membership(PathSystem.simple(1), Path(diamond, 0))

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown path system kind"):
            PathSystem("weird", 0)


class TestPathValue:
    def test_trivial_is_base(self, diamond):
        f = classic_distance(diamond)
        assert path_value(f, Path(diamond, 0)) == 0.0

    def test_sum_of_weights(self):
        g = parse_graph("g 3 2\nv 0\nv 1\nv 2\narc 0 1 1.0\narc 1 2 2.0\n")
        f = classic_distance(g)
        assert path_value(f, Path(g, 0, (0, 1))) == 3.0

    def test_classic_equals_independent_resummation(self):
        g = generate_random(7, 18, 0.0, 10.0, "directed", 11)
        f = classic_distance(g)
        for vertices, keys in brute_simple_paths(g, 0):
            p = Path(g, 0, keys)
            assert path_value(f, p) == sum(g.road(k).weight for k in keys)

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2_000))
    def test_prefix_consistency(self, seed):
        g = generate_random(6, 12, 0.0, 10.0, "directed", seed)
        f = classic_distance(g)
        for vertices, keys in brute_simple_paths(g, 0):
            if not keys:
                continue
            p = Path(g, 0, keys)
            parent = p.father()
            road = g.road(keys[-1])
            assert path_value(f, p) == f.extend(path_value(f, parent), parent, road)


class TestDetourTable:
    def test_deletion_disconnects(self):
        g = single_road()
        table = DetourTable(g)
        assert table.distance(0, 0, 1) == INF

    def test_irrelevant_deletion(self, diamond):
        # Road 3->1 (key 7) lies on no path from 0 to 3.
        table = DetourTable(diamond)
        assert table.distance(7, 0, 3) == dijkstra_classic(diamond, 0)[3]

    def test_diamond_blocked_road(self, diamond):
        table = DetourTable(diamond)
        assert table.distance(6, 0, 3) == 4.0  # a->t blocked
        assert table.distance(6, 0, 3) == brute_min_distance(remove_road(diamond, 6), 0, 3)

    def test_unknown_road(self, diamond):
        with pytest.raises(ValueError, match="unknown road key"):
            DetourTable(diamond).distance(99, 0, 1)

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_matches_brute_force(self, seed):
        g = generate_random(6, 12, 0.0, 10.0, "directed", seed)
        table = DetourTable(g)
        for road in g.roads:
            deleted = remove_road(g, road.key)
            for target in range(g.n):
                assert table.distance(road.key, 0, target) == brute_min_distance(deleted, 0, target)

    def test_concurrent_fills_match_sequential(self, diamond):
        sequential = DetourTable(diamond)
        expected = {
            (r.key, t): sequential.distance(r.key, 0, t)
            for r in diamond.roads
            for t in range(diamond.n)
        }
        shared = DetourTable(diamond)
        with ThreadPoolExecutor(max_workers=8) as pool:
            futures = {
                (key, t): pool.submit(shared.distance, key, 0, t) for key, t in expected
            }
        assert {k: f.result() for k, f in futures.items()} == expected


def direct_risk(graph, path, detour_from_source):
    """The anti-risk value straight from its definition (test oracle).

    ``detour_from_source(key, target)`` must give the source-to-target
    distance with road ``key`` deleted.
    """
    if not path.roads:
        return 0.0
    weights = [graph.road(k).weight for k in path.roads]
    k = len(weights)
    terms = [sum(weights), detour_from_source(path.roads[-1], path.vertices[-1])]
    for i in range(1, k):
        suffix = sum(weights[i:])
        terms.append(suffix + detour_from_source(path.roads[i - 1], path.vertices[i]))
    return max(terms)


class TestAntiRisk:
    def test_base(self, diamond):
        r = anti_risk(diamond)
        assert path_value(r, Path(diamond, 0)) == 0.0

    def test_one_road_path(self, diamond):
        # max(detour s->a with s->a deleted, w + 0) = max(3, 1)
        r = anti_risk(diamond)
        assert path_value(r, Path(diamond, 0, (0,))) == 3.0

    def test_two_road_path(self, diamond):
        r = anti_risk(diamond)
        assert path_value(r, Path(diamond, 0, (0, 6))) == 4.0

    def test_recurrence_matches_direct_formula(self, diamond):
        r = anti_risk(diamond)

        def detour(key, target):
            return brute_min_distance(remove_road(diamond, key), 0, target)

        for vertices, keys in brute_simple_paths(diamond, 0):
            p = Path(diamond, 0, keys)
            assert path_value(r, p) == pytest.approx(direct_risk(diamond, p, detour), abs=1e-9)

    def test_rejects_negative_weights(self):
        g = parse_graph("g 2 1\nv 0\nv 1\narc 0 1 -1.0\n")
        with pytest.raises(ValueError, match="nonnegative"):
            anti_risk(g)


class TestBlockedCost:
    def test_base(self, diamond):
        c = blocked_cost(diamond, 0.5)
        assert path_value(c, Path(diamond, 0)) == 0.0

    def test_no_detour_means_infinite(self):
        g = single_road()
        c = blocked_cost(g, 0.5)
        assert path_value(c, Path(g, 0, (0,))) == INF

    def test_diamond_one_road(self, diamond):
        c = blocked_cost(diamond, 0.5)
        # 0.5 * detour(s->a deleted; s to a) + w + 0 = 0.5*3 + 1
        assert path_value(c, Path(diamond, 0, (0,))) == 2.5

    @pytest.mark.parametrize("p", [0.0, 1.0, -0.2, 1.5])
    def test_p_out_of_range(self, diamond, p):
        with pytest.raises(ValueError, match="p out of range"):
            blocked_cost(diamond, p)


class TestExpectedCost:
    def test_base(self, diamond):
        e = expected_cost(diamond, 0.5)
        assert path_value(e, Path(diamond, 0)) == 0.0

    def test_diamond_one_road(self, diamond):
        e = expected_cost(diamond, 0.5)
        # 0.5 * 3 + 0.5 * (1 + 0)
        assert path_value(e, Path(diamond, 0, (0,))) == 2.0

    def test_small_p_approaches_plain_cost(self, diamond):
        e = expected_cost(diamond, 0.01)
        for vertices, keys in brute_simple_paths(diamond, 0):
            if not keys:
                continue
            p = Path(diamond, 0, keys)
            parent = p.father()
            road = diamond.road(keys[-1])
            expected_near = road.weight + path_value(e, parent)
            assert path_value(e, p) == pytest.approx(expected_near, abs=0.1)

    @pytest.mark.parametrize("p", [0.0, 1.0])
    def test_p_out_of_range(self, diamond, p):
        with pytest.raises(ValueError, match="p out of range"):
            expected_cost(diamond, p)


class TestDeclaredProperties:
    def test_classic_nonnegative(self, diamond):
        f = classic_distance(diamond)
        assert {NDSP, SOP, OP, NO_NEGATIVE_CIRCLES} <= f.declared_properties

    def test_classic_conservative(self):
        g = parse_graph("g 3 3\nv 0\nv 1\nv 2\narc 0 1 2.0\narc 0 2 5.0\narc 1 2 -1.0\n")
        f = classic_distance(g)
        assert f.declared_properties == frozenset({OP, NO_NEGATIVE_CIRCLES})

    def test_simple_system_closure_gives_wisp(self, diamond):
        f = classic_distance(diamond)
        implied = implied_properties(f.declared_properties, PathSystem.simple(0))
        assert {SOPSP, WISP, NO_NONPOSITIVE_CIRCLES} <= implied

    def test_all_paths_closure_is_smaller(self, diamond):
        implied = implied_properties(frozenset({SOP}), PathSystem.all_paths(0))
        assert SOPSP in implied
        assert WISP not in implied
        assert NO_NEGATIVE_CIRCLES not in implied

    def test_op_implies_weak_and_semi(self):
        implied = implied_properties(frozenset({OP}))
        assert {SOP, SOPSP} <= implied

    def test_no_nonpositive_implies_no_negative(self):
        implied = implied_properties(frozenset({NO_NONPOSITIVE_CIRCLES}))
        assert NO_NEGATIVE_CIRCLES in implied
