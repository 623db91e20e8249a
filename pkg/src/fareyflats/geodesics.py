"""Truncated Farey graphs, balls, geodesic enumeration, and subgraph checks.

Everything here works inside an explicit height truncation.  The closed
form :func:`fareyflats.slopes.distance` is the ground truth for lengths;
:func:`bfs_distance` exists as an independent oracle computed from nothing
but the adjacency relation, so the two can be checked against each other.

Geodesic enumeration is ball-relative: the set of geodesics between two
slopes is computed inside the height-H truncation, then recomputed at 2H,
and flagged as truncated when the two disagree.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .slopes import Slope, distance, neighbors, slopes_up_to


class FareyGraph:
    """The induced graph on all slopes of height <= height_bound."""

    def __init__(self, height_bound: int):
        self.height_bound = height_bound
        self.vertices: tuple[Slope, ...] = slopes_up_to(height_bound)
        self.index: dict[Slope, int] = {v: i for i, v in enumerate(self.vertices)}
        self.adj: list[tuple[int, ...]] = [
            tuple(self.index[w] for w in neighbors(v, height_bound))
            for v in self.vertices
        ]

    def __contains__(self, s: Slope) -> bool:
        return s in self.index

    def bfs(self, source: Slope, radius: int | None = None) -> dict[Slope, int]:
        """Distances from source within the truncation (optionally capped)."""
        if source not in self.index:
            raise ValueError(f"{source} exceeds height bound {self.height_bound}")
        dist = {self.index[source]: 0}
        frontier = deque([self.index[source]])
        while frontier:
            i = frontier.popleft()
            d = dist[i]
            if radius is not None and d >= radius:
                continue
            for j in self.adj[i]:
                if j not in dist:
                    dist[j] = d + 1
                    frontier.append(j)
        return {self.vertices[i]: d for i, d in dist.items()}


@lru_cache(maxsize=8)
def get_graph(height_bound: int) -> FareyGraph:
    return FareyGraph(height_bound)


def bfs_distance(a: Slope, b: Slope, height_bound: int) -> int | None:
    """Distance in the height truncation by plain breadth-first search.

    Returns None when b is not reachable from a within the truncation.
    This deliberately shares no logic with slopes.distance.
    """
    graph = get_graph(height_bound)
    if a not in graph or b not in graph:
        raise ValueError("both endpoints must respect the height bound")
    if a == b:
        return 0
    src, dst = graph.index[a], graph.index[b]
    dist = {src: 0}
    frontier = deque([src])
    while frontier:
        i = frontier.popleft()
        for j in graph.adj[i]:
            if j not in dist:
                dist[j] = dist[i] + 1
                if j == dst:
                    return dist[j]
                frontier.append(j)
    return None


@dataclass(frozen=True)
class GeodesicSet:
    """All length-minimal paths between two slopes, found inside a truncation.

    truncated is True when recomputing at twice the height bound changed
    the answer, i.e. the truncation was too tight to be conclusive.
    """

    a: Slope
    b: Slope
    length: int
    height_bound: int
    paths: tuple[tuple[Slope, ...], ...]
    truncated: bool

    def to_json_dict(self) -> dict:
        return {
            "a": str(self.a),
            "b": str(self.b),
            "length": self.length,
            "height_bound": self.height_bound,
            "count": len(self.paths),
            "truncated": self.truncated,
            "paths": [[str(s) for s in path] for path in self.paths],
        }


def _geodesics_at(a: Slope, b: Slope, length: int, height_bound: int):
    graph = get_graph(height_bound)
    if a not in graph or b not in graph:
        raise ValueError("both endpoints must respect the height bound")
    src, dst = graph.index[a], graph.index[b]
    level = {src: 0}
    frontier = deque([src])
    while frontier:
        i = frontier.popleft()
        if level[i] >= length:
            continue
        for j in graph.adj[i]:
            if j not in level:
                level[j] = level[i] + 1
                frontier.append(j)
    if dst not in level or level[dst] != length:
        return ()
    # Walk back from b through strictly decreasing levels.
    paths: list[tuple[Slope, ...]] = []
    stack: list[tuple[int, tuple[int, ...]]] = [(dst, (dst,))]
    while stack:
        i, tail = stack.pop()
        if i == src:
            paths.append(tuple(graph.vertices[k] for k in reversed(tail)))
            continue
        for j in sorted(graph.adj[i], key=lambda k: graph.vertices[k].sort_key()):
            if level.get(j) == level[i] - 1:
                stack.append((j, tail + (j,)))
    return tuple(sorted(paths, key=lambda p: tuple(s.sort_key() for s in p)))


def geodesics(a: Slope, b: Slope, height_bound: int) -> GeodesicSet:
    """Enumerate geodesics inside the truncation, with a stability flag.

    The target length is the exact infinite-graph distance, so paths found
    here are true geodesics; the flag only reports whether the *set* is
    still growing when the height bound is doubled.
    """
    length = distance(a, b)
    need = max(height_bound, a.height, b.height)
    here = _geodesics_at(a, b, length, need)
    wider = _geodesics_at(a, b, length, 2 * need)
    return GeodesicSet(
        a=a,
        b=b,
        length=length,
        height_bound=need,
        paths=here,
        truncated=(here != wider),
    )


@dataclass(frozen=True)
class FareyBall:
    """A breadth-first ball with its induced edges, inside a truncation."""

    center: Slope
    radius: int
    height_bound: int
    vertices: tuple[Slope, ...]
    edges: frozenset[frozenset[Slope]]
    dist_from_center: dict = field(hash=False, compare=False, default_factory=dict)

    def adjacency(self) -> dict[Slope, tuple[Slope, ...]]:
        table: dict[Slope, list[Slope]] = {v: [] for v in self.vertices}
        for edge in self.edges:
            u, w = tuple(edge)
            table[u].append(w)
            table[w].append(u)
        return {
            v: tuple(sorted(ws, key=Slope.sort_key)) for v, ws in table.items()
        }

    def bfs_within(self, source: Slope) -> dict[Slope, int]:
        adj = self.adjacency()
        dist = {source: 0}
        frontier = deque([source])
        while frontier:
            v = frontier.popleft()
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    frontier.append(w)
        return dist

    def to_json_dict(self) -> dict:
        return {
            "center": str(self.center),
            "radius": self.radius,
            "height_bound": self.height_bound,
            "vertex_count": len(self.vertices),
            "edge_count": len(self.edges),
            "vertices": [str(v) for v in self.vertices],
            "edges": sorted(
                sorted(str(v) for v in e) for e in self.edges
            ),
        }

    def to_dot(self) -> str:
        lines = ["graph fareyball {"]
        lines.append('  node [shape=circle fontsize=10];')
        for v in self.vertices:
            d = self.dist_from_center.get(v)
            label = f"{v}" if d is None else f"{v}\\nd={d}"
            lines.append(f'  "{v}" [label="{label}"];')
        for e in sorted(sorted(str(v) for v in e) for e in self.edges):
            lines.append(f'  "{e[0]}" -- "{e[1]}";')
        lines.append("}")
        return "\n".join(lines)


def build_ball(center: Slope, radius: int, height_bound: int) -> FareyBall:
    graph = get_graph(height_bound)
    if center not in graph:
        raise ValueError(f"{center} exceeds height bound {height_bound}")
    dist = graph.bfs(center, radius=radius)
    verts = tuple(sorted(dist, key=Slope.sort_key))
    vset = set(verts)
    edges = set()
    for v in verts:
        i = graph.index[v]
        for j in graph.adj[i]:
            w = graph.vertices[j]
            if w in vset:
                edges.add(frozenset((v, w)))
    return FareyBall(
        center=center,
        radius=radius,
        height_bound=height_bound,
        vertices=verts,
        edges=frozenset(edges),
        dist_from_center=dict(dist),
    )


@dataclass(frozen=True)
class Subgraph:
    """An explicit vertex/edge set to be tested against a host ball."""

    vertices: frozenset[Slope]
    edges: frozenset[frozenset[Slope]]

    def __post_init__(self):
        for e in self.edges:
            if len(e) != 2 or not e <= self.vertices:
                raise ValueError("edges must join two distinct listed vertices")

    @staticmethod
    def induced(vertices: Iterable[Slope], host: FareyBall) -> "Subgraph":
        vset = frozenset(vertices)
        missing = vset - set(host.vertices)
        if missing:
            raise ValueError(f"vertices outside the host ball: {sorted(map(str, missing))}")
        edges = frozenset(e for e in host.edges if e <= vset)
        return Subgraph(vertices=vset, edges=edges)

    @staticmethod
    def from_json_dict(data: dict) -> "Subgraph":
        verts = frozenset(Slope.parse(t) for t in data["vertices"])
        edges = frozenset(
            frozenset((Slope.parse(u), Slope.parse(w))) for u, w in data["edges"]
        )
        return Subgraph(vertices=verts, edges=edges)

    def to_json_dict(self) -> dict:
        return {
            "vertices": sorted(
                (str(v) for v in self.vertices),
                key=lambda t: Slope.parse(t).sort_key(),
            ),
            "edges": sorted(
                sorted(str(v) for v in e) for e in self.edges
            ),
        }

    def bfs_within(self, source: Slope) -> dict[Slope, int]:
        adj: dict[Slope, list[Slope]] = {v: [] for v in self.vertices}
        for e in self.edges:
            u, w = tuple(e)
            adj[u].append(w)
            adj[w].append(u)
        dist = {source: 0}
        frontier = deque([source])
        while frontier:
            v = frontier.popleft()
            for w in sorted(adj[v], key=Slope.sort_key):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    frontier.append(w)
        return dist


def _ball_geodesics(
    ball: FareyBall, adj: dict[Slope, tuple[Slope, ...]], a: Slope, b: Slope
):
    """All shortest a-b paths using only the ball's vertices and edges."""
    level = {a: 0}
    frontier = deque([a])
    while frontier:
        v = frontier.popleft()
        for w in adj[v]:
            if w not in level:
                level[w] = level[v] + 1
                frontier.append(w)
    if b not in level:
        return None, ()
    length = level[b]
    paths = []
    stack = [(b, (b,))]
    while stack:
        v, tail = stack.pop()
        if v == a:
            paths.append(tuple(reversed(tail)))
            continue
        for w in adj[v]:
            if level.get(w) == level[v] - 1:
                stack.append((w, tail + (w,)))
    return length, tuple(
        sorted(paths, key=lambda p: tuple(s.sort_key() for s in p))
    )


def is_totally_geodesic(
    sub: Subgraph, ball: FareyBall
) -> tuple[bool, tuple[Slope, ...] | None]:
    """Whether every ball-geodesic between subgraph vertices stays inside.

    Returns (True, None), or (False, witness) where witness is the first
    offending geodesic in the deterministic enumeration order.
    """
    if not sub.vertices <= set(ball.vertices):
        raise ValueError("subgraph must live inside the ball")
    adj = ball.adjacency()
    vs = sorted(sub.vertices, key=Slope.sort_key)
    for i, x in enumerate(vs):
        for y in vs[i + 1 :]:
            _, paths = _ball_geodesics(ball, adj, x, y)
            for path in paths:
                inside = all(v in sub.vertices for v in path) and all(
                    frozenset((path[k], path[k + 1])) in sub.edges
                    for k in range(len(path) - 1)
                )
                if not inside:
                    return False, path
    return True, None


def is_convex(
    sub: Subgraph, ball: FareyBall
) -> tuple[bool, tuple[Slope, Slope] | None]:
    """Whether subgraph-internal distances match the ball's distances.

    Returns (True, None) or (False, first offending vertex pair).
    """
    if not sub.vertices <= set(ball.vertices):
        raise ValueError("subgraph must live inside the ball")
    vs = sorted(sub.vertices, key=Slope.sort_key)
    for x in vs:
        inner = sub.bfs_within(x)
        outer = ball.bfs_within(x)
        for y in vs:
            if x.sort_key() >= y.sort_key():
                continue
            if inner.get(y) != outer.get(y):
                return False, (x, y)
    return True, None


def check_subgraph(sub: Subgraph, ball: FareyBall) -> dict:
    """Combined convexity / total geodesy report for a subgraph in a ball."""
    convex, convex_witness = is_convex(sub, ball)
    tg, tg_witness = is_totally_geodesic(sub, ball)
    return {
        "ball": {
            "center": str(ball.center),
            "radius": ball.radius,
            "height_bound": ball.height_bound,
        },
        "vertex_count": len(sub.vertices),
        "convex": convex,
        "convex_witness": (
            None if convex_witness is None else [str(v) for v in convex_witness]
        ),
        "totally_geodesic": tg,
        "geodesic_witness": (
            None if tg_witness is None else [str(v) for v in tg_witness]
        ),
        "passed": convex and tg,
    }
