from fractions import Fraction

import pytest

from fareyflats.geodesics import (
    FareyGraph,
    Subgraph,
    bfs_distance,
    build_ball,
    check_subgraph,
    geodesics,
    is_convex,
    is_totally_geodesic,
)
from fareyflats.slopes import (
    INFINITY,
    Slope,
    adjacent,
    distance,
    slopes_in_interval,
    slopes_up_to,
)


class TestOracleAgreement:
    def test_bfs_matches_closed_form_height_eight(self):
        verts = slopes_up_to(8)
        for i, a in enumerate(verts):
            for b in verts[i + 1 :]:
                got = bfs_distance(a, b, 24)
                assert got == distance(a, b), (str(a), str(b))

    def test_truncations_stay_connected(self):
        # Parent chains decrease height, so truncations are connected and
        # the unreachable branch of bfs_distance never fires in practice.
        graph = FareyGraph(12)
        reach = graph.bfs(Slope(0, 1))
        assert len(reach) == len(graph.vertices)

    def test_endpoints_must_respect_bound(self):
        with pytest.raises(ValueError):
            bfs_distance(Slope(1, 9), Slope(0, 1), 5)


class TestGeodesicEnumeration:
    def test_unit_interval_pair(self):
        g = geodesics(Slope(-1, 1), Slope(1, 1), 8)
        assert g.length == 2
        assert not g.truncated
        assert {tuple(map(str, p)) for p in g.paths} == {
            ("-1/1", "0/1", "1/1"),
            ("-1/1", "1/0", "1/1"),
        }

    def test_adjacent_pair_single_path(self):
        g = geodesics(Slope(0, 1), INFINITY, 6)
        assert g.length == 1
        assert g.paths == ((Slope(0, 1), INFINITY),)

    def test_paths_are_geodesics(self):
        g = geodesics(Slope(2, 5), Slope(-1, 2), 20)
        assert g.length == distance(Slope(2, 5), Slope(-1, 2))
        for path in g.paths:
            assert len(path) == g.length + 1
            assert path[0] == g.a and path[-1] == g.b
            for u, w in zip(path, path[1:]):
                assert adjacent(u, w)

    def test_json_round_trip_fields(self):
        g = geodesics(Slope(-1, 1), Slope(1, 1), 8)
        d = g.to_json_dict()
        assert d["count"] == 2
        assert d["truncated"] is False

    def test_geodesics_respect_endpoint_heights(self):
        # Observed invariant backing the truncation flag: no geodesic
        # vertex exceeds the height of the endpoints (exhaustive, h <= 5).
        verts = slopes_up_to(5)
        for i, a in enumerate(verts):
            for b in verts[i + 1 :]:
                g = geodesics(a, b, 5)
                assert not g.truncated
                cap = max(a.height, b.height)
                for path in g.paths:
                    assert all(v.height <= cap for v in path)


class TestBall:
    def test_ball_contains_center_and_respects_radius(self):
        ball = build_ball(Slope(0, 1), 2, 20)
        assert Slope(0, 1) in ball.vertices
        for v, d in ball.dist_from_center.items():
            assert d <= 2
            assert distance(Slope(0, 1), v) <= d

    def test_edges_are_farey_edges(self):
        ball = build_ball(INFINITY, 2, 10)
        for e in ball.edges:
            u, w = tuple(e)
            assert adjacent(u, w)

    def test_dot_output_mentions_all_vertices(self):
        ball = build_ball(Slope(0, 1), 1, 5)
        dot = ball.to_dot()
        for v in ball.vertices:
            assert f'"{v}"' in dot


@pytest.fixture(scope="module")
def host():
    return build_ball(Slope(0, 1), 6, 12)


class TestSubgraphChecks:
    def test_host_covers_truncation(self, host):
        # The radius-6 ball at height 12 exhausts the truncation, so ball
        # distances agree with the infinite graph on these vertices.
        assert set(slopes_up_to(12)) <= set(host.vertices)

    def test_interval_convex_but_not_totally_geodesic(self, host):
        iv = slopes_in_interval(Fraction(-1), Fraction(1), 12)
        sub = Subgraph.induced(iv, host)
        convex, cw = is_convex(sub, host)
        assert convex and cw is None
        tg, tw = is_totally_geodesic(sub, host)
        assert not tg
        assert tw == (Slope(-1, 1), INFINITY, Slope(1, 1))

    def test_triangle_passes_both(self, host):
        tri = [Slope(0, 1), Slope(1, 1), INFINITY]
        sub = Subgraph.induced(tri, host)
        assert is_convex(sub, host) == (True, None)
        assert is_totally_geodesic(sub, host) == (True, None)

    def test_missing_edge_breaks_convexity(self, host):
        verts = frozenset((Slope(0, 1), Slope(1, 1), INFINITY))
        sub = Subgraph(
            vertices=verts,
            edges=frozenset(
                {
                    frozenset((Slope(0, 1), INFINITY)),
                    frozenset((Slope(1, 1), INFINITY)),
                }
            ),
        )
        convex, witness = is_convex(sub, host)
        assert not convex
        assert witness == (Slope(0, 1), Slope(1, 1))

    def test_check_subgraph_report(self, host):
        iv = slopes_in_interval(Fraction(-1), Fraction(1), 12)
        sub = Subgraph.induced(iv, host)
        report = check_subgraph(sub, host)
        assert report["convex"] is True
        assert report["totally_geodesic"] is False
        assert report["geodesic_witness"] == ["-1/1", "1/0", "1/1"]
        assert report["passed"] is False

    def test_subgraph_json_round_trip(self, host):
        tri = Subgraph.induced([Slope(0, 1), Slope(1, 1), INFINITY], host)
        again = Subgraph.from_json_dict(tri.to_json_dict())
        assert again == tri

    def test_subgraph_rejects_dangling_edge(self):
        with pytest.raises(ValueError):
            Subgraph(
                vertices=frozenset({Slope(0, 1)}),
                edges=frozenset({frozenset((Slope(0, 1), Slope(1, 1)))}),
            )


def test_graph_adjacency_is_symmetric():
    graph = FareyGraph(6)
    for i, nbrs in enumerate(graph.adj):
        for j in nbrs:
            assert i in graph.adj[j]
