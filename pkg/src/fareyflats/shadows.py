"""Local shadows of decomposition vertices near a handle family.

A handle family is a maximal-or-smaller collection of disjoint
complexity-1 pieces together with the complementary multicurve Q.  A
vertex of the decomposition graph is seen by the pieces only through its
traces: either the vertex contains the piece's own curve, or some of its
curves cross the piece in arcs.  This truncated view is exactly what the
coordinate projection consumes, so shadows model vertices as per-piece
trace data, moves as annotated exchanges, and the audits check distance
bounds between projected endpoint sets.

All reports are instance evidence: nothing here certifies that a path is
geodesic in the ambient graph.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from itertools import product as iproduct

from .flats import Coordinate, SurfaceDesc, max_handles, product_distance
from .orbifold import (
    PieceKind,
    PieceObject,
    curve,
    intersection_number,
    seam,
    seam_pairs,
    torus_arc,
    wave,
)
from .pieces import is_special_couple, project
from .slopes import Slope, distance, slopes_up_to


@dataclass(frozen=True)
class HandleSystem:
    """A family of n disjoint pieces on a fixed surface."""

    surface: SurfaceDesc
    pieces: tuple[PieceKind, ...]

    def __post_init__(self):
        n = len(self.pieces)
        if n < 2:
            raise ValueError("a handle system needs at least two pieces")
        if n > max_handles(self.surface):
            raise ValueError(
                f"{n} pieces exceed the maximum "
                f"{max_handles(self.surface)} for {self.surface}"
            )

    @property
    def n(self) -> int:
        return len(self.pieces)

    @property
    def multicurve_size(self) -> int:
        return self.surface.complexity - self.n

    def to_json_dict(self) -> dict:
        return {
            "surface": {
                "genus": self.surface.genus,
                "boundary": self.surface.boundary,
            },
            "pieces": [k.value for k in self.pieces],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "HandleSystem":
        return HandleSystem(
            SurfaceDesc(
                data["surface"]["genus"], data["surface"]["boundary"]
            ),
            tuple(PieceKind(v) for v in data["pieces"]),
        )


@dataclass(frozen=True)
class InGraph:
    """The piece is undisturbed: the vertex contains this curve in it."""

    slope: Slope


@dataclass(frozen=True)
class Crossing:
    """Trace of the vertex on the piece: contained curves and/or arcs.

    Components belong to pairwise disjoint curves, so distinct
    descriptors must have oracle crossing number zero.  An empty trace
    records that the curve being followed misses this piece entirely.
    """

    trace: tuple[PieceObject, ...]


PieceData = InGraph | Crossing


@dataclass(frozen=True)
class VertexShadow:
    """Per-piece view of a decomposition vertex.

    in_pq declares membership of P_Q (the vertices containing the full
    multicurve Q).  Membership forces every piece to be InGraph, but the
    converse direction cannot be seen locally: a vertex whose exchanged
    curve lives entirely outside the pieces still fails to contain Q, so
    in_pq=False is legal alongside all-InGraph data.
    """

    system: HandleSystem
    data: tuple[PieceData, ...]
    in_pq: bool

    def __post_init__(self):
        if len(self.data) != self.system.n:
            raise ValueError("one entry per piece required")
        for i, entry in enumerate(self.data):
            if isinstance(entry, InGraph):
                continue
            _validate_trace(entry.trace, self.system.pieces[i])
        if self.in_pq and not all(
            isinstance(e, InGraph) for e in self.data
        ):
            raise ValueError("a P_Q member leaves every piece undisturbed")

    def piece_objects(self, i: int) -> tuple[PieceObject, ...]:
        entry = self.data[i]
        if isinstance(entry, InGraph):
            return (curve(self.system.pieces[i], entry.slope),)
        return entry.trace

    def to_json_dict(self) -> dict:
        entries = []
        for entry in self.data:
            if isinstance(entry, InGraph):
                entries.append({"in_graph": str(entry.slope)})
            else:
                entries.append(
                    {"trace": [o.to_json_dict() for o in entry.trace]}
                )
        return {"in_pq": self.in_pq, "data": entries}

    @staticmethod
    def from_json_dict(system: HandleSystem, data: dict) -> "VertexShadow":
        entries: list[PieceData] = []
        for entry in data["data"]:
            if "in_graph" in entry:
                entries.append(InGraph(Slope.parse(entry["in_graph"])))
            else:
                entries.append(
                    Crossing(
                        tuple(
                            PieceObject.from_json_dict(d)
                            for d in entry["trace"]
                        )
                    )
                )
        return VertexShadow(system, tuple(entries), in_pq=data["in_pq"])


def _validate_trace(trace: tuple[PieceObject, ...], kind: PieceKind):
    for obj in trace:
        if obj.piece is not kind:
            raise ValueError(f"{obj} does not live on a {kind.value} piece")
    for i in range(len(trace)):
        for j in range(i + 1, len(trace)):
            if trace[i] == trace[j]:
                continue  # parallel strands of one curve
            if intersection_number(trace[i], trace[j]) != 0:
                raise ValueError(
                    f"trace components {trace[i]} and {trace[j]} intersect"
                )


def shadow_in_pq(system: HandleSystem, slopes) -> VertexShadow:
    return VertexShadow(
        system, tuple(InGraph(s) for s in slopes), in_pq=True
    )


@dataclass(frozen=True)
class ProductVertexSet:
    """A nonempty set of coordinate tuples; None marks a free coordinate."""

    tuples: frozenset[tuple[Coordinate, ...]]

    def __post_init__(self):
        if not self.tuples:
            raise ValueError("projection sets are never empty")
        ranks = {len(t) for t in self.tuples}
        if len(ranks) != 1:
            raise ValueError("mixed ranks in one product set")

    @property
    def is_singleton(self) -> bool:
        return len(self.tuples) == 1

    def the_tuple(self) -> tuple[Coordinate, ...]:
        if not self.is_singleton:
            raise ValueError("not a singleton")
        return next(iter(self.tuples))

    def min_distance(self, other: "ProductVertexSet") -> int:
        return min(
            product_distance(a, b)
            for a in self.tuples
            for b in other.tuples
        )


def project_shadow(v: VertexShadow) -> ProductVertexSet:
    """All coordinate tuples reachable by projecting one trace per piece.

    InGraph pieces contribute their slope, crossed pieces the projection
    of each trace component, and empty traces the free marker None.
    """
    per_piece: list[frozenset[Coordinate]] = []
    for entry in v.data:
        if isinstance(entry, InGraph):
            per_piece.append(frozenset((entry.slope,)))
        elif entry.trace:
            per_piece.append(frozenset(project(o) for o in entry.trace))
        else:
            per_piece.append(frozenset((None,)))
    return ProductVertexSet(frozenset(iproduct(*per_piece)))


def orthogonality_check(v0: VertexShadow, v1: VertexShadow) -> bool:
    """Does the neighbor outside P_Q project exactly onto the member?

    v0 must be declared in P_Q, v1 must not be; the check passes when
    project_shadow(v1) is a singleton matching v0's tuple (free markers
    match anything, encoding the convention that untouched pieces keep
    their curve).
    """
    if not v0.in_pq:
        raise ValueError("v0 must lie in P_Q")
    if v1.in_pq:
        raise ValueError("v1 must lie outside P_Q")
    if v0.system != v1.system:
        raise ValueError("shadows live over different handle systems")
    target = project_shadow(v0).the_tuple()
    projected = project_shadow(v1)
    if not projected.is_singleton:
        return False
    return product_distance(projected.the_tuple(), target) == 0


class MoveKind(Enum):
    FIRST = 1
    SECOND = 2


@dataclass(frozen=True)
class MoveAnnotation:
    """One edge of a path: the exchanged curve's traces, per piece.

    removed lists (piece index, object) pairs taken out of the source
    shadow, added the ones appearing in the target.  The global exchange
    crosses itself once (FIRST) or twice (SECOND); only the crossings
    inside pieces are visible here, so their total may fall short of the
    kind's count but never exceeds it.
    """

    kind: MoveKind
    removed: tuple[tuple[int, PieceObject], ...]
    added: tuple[tuple[int, PieceObject], ...]

    @property
    def active_pieces(self) -> tuple[int, ...]:
        return tuple(
            sorted({i for i, _ in self.removed} | {i for i, _ in self.added})
        )

    def visible_crossings(self) -> int:
        total = 0
        for i, x in self.removed:
            for j, y in self.added:
                if i == j:
                    total += intersection_number(x, y)
        return total

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "removed": [[i, o.to_json_dict()] for i, o in self.removed],
            "added": [[i, o.to_json_dict()] for i, o in self.added],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "MoveAnnotation":
        def pairs(key):
            return tuple(
                (i, PieceObject.from_json_dict(d)) for i, d in data[key]
            )

        return MoveAnnotation(
            kind=MoveKind(data["kind"]),
            removed=pairs("removed"),
            added=pairs("added"),
        )


@dataclass(frozen=True)
class PathShadow:
    vertices: tuple[VertexShadow, ...]
    moves: tuple[MoveAnnotation, ...]

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("empty path")
        if len(self.moves) != len(self.vertices) - 1:
            raise ValueError("one move per edge required")
        system = self.vertices[0].system
        if any(v.system != system for v in self.vertices):
            raise ValueError("all vertices share one handle system")
        for k, move in enumerate(self.moves):
            self._check_move(k, move)

    @property
    def system(self) -> HandleSystem:
        return self.vertices[0].system

    @property
    def length(self) -> int:
        return len(self.moves)

    def _check_move(self, k: int, move: MoveAnnotation):
        src, dst = self.vertices[k], self.vertices[k + 1]
        n = self.system.n
        for i, obj in move.removed + move.added:
            if not 0 <= i < n:
                raise ValueError(f"move {k} touches piece {i} out of range")
            if obj.piece is not self.system.pieces[i]:
                raise ValueError(f"move {k}: {obj} on wrong piece kind")
        active = set(move.active_pieces)
        for i in range(n):
            before = Counter(src.piece_objects(i))
            after = Counter(dst.piece_objects(i))
            if i not in active:
                if before != after:
                    raise ValueError(
                        f"move {k} silently changes piece {i}"
                    )
                continue
            expected = before.copy()
            expected.subtract(
                Counter(o for j, o in move.removed if j == i)
            )
            if any(c < 0 for c in expected.values()):
                raise ValueError(
                    f"move {k} removes an object absent from piece {i}"
                )
            expected.update(Counter(o for j, o in move.added if j == i))
            if +expected != after:
                raise ValueError(
                    f"move {k} does not transform piece {i} as annotated"
                )
        visible = move.visible_crossings()
        if visible > move.kind.value:
            raise ValueError(
                f"move {k} shows {visible} crossings, more than a "
                f"{move.kind.name.lower()}-kind move allows"
            )

    def to_json_dict(self) -> dict:
        return {
            "system": self.system.to_json_dict(),
            "vertices": [v.to_json_dict() for v in self.vertices],
            "moves": [m.to_json_dict() for m in self.moves],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "PathShadow":
        system = HandleSystem.from_json_dict(data["system"])
        return PathShadow(
            tuple(
                VertexShadow.from_json_dict(system, v)
                for v in data["vertices"]
            ),
            tuple(
                MoveAnnotation.from_json_dict(m) for m in data["moves"]
            ),
        )


@dataclass(frozen=True)
class SpecialCouple:
    seam_obj: PieceObject
    curve_obj: PieceObject


def detect_special_couples(
    path: PathShadow,
) -> list[tuple[int, int, SpecialCouple]]:
    """Edges whose exchanged traces form a seam/curve couple crossing twice.

    Only four-holed-sphere pieces can carry one, so first-kind (torus)
    moves are never flagged.
    """
    found = []
    for k, move in enumerate(path.moves):
        for i in move.active_pieces:
            outgoing = [o for j, o in move.removed if j == i]
            incoming = [o for j, o in move.added if j == i]
            for x in outgoing:
                for y in incoming:
                    if is_special_couple(x, y):
                        found.append((k, i, SpecialCouple(x, y)))
                    elif is_special_couple(y, x):
                        found.append((k, i, SpecialCouple(y, x)))
    return found


def audit_projection_bound(path: PathShadow) -> dict:
    """Best product distance between the endpoint projections, vs length.

    Minimizes over all choices in the two projection sets, the reading
    under which the distance bound "there exist projections within r" is
    checked.  Instance evidence only.
    """
    first = project_shadow(path.vertices[0])
    last = project_shadow(path.vertices[-1])
    best = first.min_distance(last)
    return {
        "r": path.length,
        "best": best,
        "pass": best <= path.length,
        "evidence": "instance",
    }


def special_couple_chain_probe(path: PathShadow) -> dict:
    """How many couples the edges adjacent to a special edge contribute.

    For each special edge, counts the distinct curves on each neighboring
    edge that form a special couple in the same piece, and flags the
    contradiction case where a neighboring couple reuses the same curve.
    Instance evidence only.
    """
    specials = detect_special_couples(path)
    entries = []
    overall = True
    for k, piece_idx, couple in specials:
        sides = {}
        for label, kk in (("left", k - 1), ("right", k + 1)):
            if not 0 <= kk < path.length:
                continue
            curves = set()
            repeated = False
            for edge, piece, other in specials:
                if edge != kk or piece != piece_idx:
                    continue
                curves.add(other.curve_obj)
                if other.curve_obj.slope == couple.curve_obj.slope:
                    repeated = True
            count = len(curves)
            ok = count <= 1
            overall = overall and ok and not repeated
            sides[label] = {
                "count": count,
                "pass": ok,
                "repeated_curve": repeated,
            }
        entries.append(
            {
                "edge": k,
                "piece": piece_idx,
                "seam": str(couple.seam_obj.slope),
                "curve": str(couple.curve_obj.slope),
                "sides": sides,
            }
        )
    return {
        "special_edges": entries,
        "pass": overall,
        "evidence": "instance",
    }


# ---------------------------------------------------------------------------
# the two-piece projection gap scenario


def projection_gap_scenario() -> tuple[PathShadow, dict]:
    """A single move whose endpoint projections sit at distance two.

    Two four-holed-sphere pieces on a six-holed sphere.  The moving curve
    crosses the first piece in a seam and the second in another seam; its
    replacement is a curve inside the first piece crossing that seam four
    times, twice on each of two parallel strands -- a special couple.
    The replacement's projection is then two steps from the seam's slope,
    and no other choice exists, so one move displaces the projection by
    two: the coordinate projection is not distance non-increasing.
    """
    system = HandleSystem(
        SurfaceDesc(0, 6),
        (PieceKind.FOUR_HOLED_SPHERE, PieceKind.FOUR_HOLED_SPHERE),
    )
    s1 = seam(PieceKind.FOUR_HOLED_SPHERE, Slope(0, 1))
    s2 = seam(PieceKind.FOUR_HOLED_SPHERE, Slope(0, 1))
    beta = curve(PieceKind.FOUR_HOLED_SPHERE, Slope(2, 1))
    v0 = VertexShadow(
        system, (Crossing((s1,)), Crossing((s2,))), in_pq=False
    )
    v1 = VertexShadow(
        system, (InGraph(Slope(2, 1)), Crossing(())), in_pq=False
    )
    move = MoveAnnotation(
        kind=MoveKind.SECOND,
        removed=((0, s1), (1, s2)),
        added=((0, beta),),
    )
    path = PathShadow((v0, v1), (move,))

    report = audit_projection_bound(path)
    report["special_couple"] = bool(detect_special_couples(path))

    # dropping the far trace does not relieve the gap
    v0_near = VertexShadow(
        system, (Crossing((s1,)), Crossing(())), in_pq=False
    )
    report["without_far_trace"] = project_shadow(v0_near).min_distance(
        project_shadow(v1)
    )

    # control: a replacement disjoint from the seam stays within one step
    v1_control = VertexShadow(
        system, (InGraph(Slope(0, 1)), Crossing(())), in_pq=False
    )
    report["disjoint_control"] = project_shadow(v0).min_distance(
        project_shadow(v1_control)
    )
    return path, report


# ---------------------------------------------------------------------------
# seeded fixture generators


def _random_slope(rng: random.Random, height: int) -> Slope:
    pool = slopes_up_to(height)
    return pool[rng.randrange(len(pool))]


def _disjoint_companion(
    rng: random.Random, kind: PieceKind, slope: Slope
) -> PieceObject:
    """An arc-like object of the given slope, hence disjoint from the curve."""
    if kind is PieceKind.ONE_HOLED_TORUS:
        return torus_arc(slope)
    pair = seam_pairs(slope)[rng.randrange(2)]
    s = seam(kind, slope, pair)
    if rng.random() < 0.5:
        return s
    return wave(s, pair[rng.randrange(2)])


def random_orthogonal_pair(
    system: HandleSystem, rng: random.Random, height: int = 6
) -> tuple[VertexShadow, VertexShadow]:
    """A P_Q member and a neighbor produced by exchanging a Q-curve.

    The exchanged curve's traces stay disjoint from each piece's own
    curve, which pins every trace projection to that curve's slope; the
    neighbor then projects onto the member exactly.  Some pairs leave all
    pieces untouched (the exchange happened entirely outside them).
    """
    slopes = [_random_slope(rng, height) for _ in range(system.n)]
    v0 = shadow_in_pq(system, slopes)
    hit = [i for i in range(system.n) if rng.random() < 0.6]
    data: list[PieceData] = []
    for i in range(system.n):
        if i not in hit:
            data.append(InGraph(slopes[i]))
            continue
        kind = system.pieces[i]
        own = curve(kind, slopes[i])
        strands = tuple(
            _disjoint_companion(rng, kind, slopes[i])
            for _ in range(rng.randrange(1, 3))
        )
        trace = (own,) + strands
        _validate_trace(trace, kind)  # oracle-backed disjointness
        data.append(Crossing(trace))
    v1 = VertexShadow(system, tuple(data), in_pq=False)
    return v0, v1


def _step_choices(kind: PieceKind, slope: Slope, height: int) -> list[Slope]:
    return [
        s
        for s in slopes_up_to(height)
        if s != slope and distance(s, slope) == 1
    ]


def random_path_shadow(
    system: HandleSystem,
    rng: random.Random,
    length: int,
    height: int = 5,
) -> PathShadow:
    """A path whose every move displaces the projection by at most one.

    Three move flavors: stepping a piece's curve to a Farey neighbor,
    sending a curve across a piece (trace disjoint from the piece curve),
    and pulling such a trace back in.  Each keeps all projection choices
    within one step in one coordinate, so the endpoint bound holds by
    construction; the audit re-checks it from the projections alone.
    """
    slopes = [_random_slope(rng, height) for _ in range(system.n)]
    vertices = [shadow_in_pq(system, slopes)]
    moves = []
    crossed: dict[int, tuple[PieceObject, ...]] = {}
    cur = list(slopes)
    for _ in range(length):
        v_prev = vertices[-1]
        i = rng.randrange(system.n)
        kind = system.pieces[i]
        if i in crossed:
            # pull the stray curve back out of the piece
            strands = crossed.pop(i)
            move = MoveAnnotation(
                kind=MoveKind.SECOND,
                removed=tuple((i, o) for o in strands),
                added=(),
            )
            new_data = list(v_prev.data)
            new_data[i] = InGraph(cur[i])
        else:
            choice = rng.random()
            if choice < 0.5:
                nxt_options = _step_choices(kind, cur[i], height + 2)
                nxt = nxt_options[rng.randrange(len(nxt_options))]
                move_kind = (
                    MoveKind.FIRST
                    if kind is PieceKind.ONE_HOLED_TORUS
                    else MoveKind.SECOND
                )
                move = MoveAnnotation(
                    kind=move_kind,
                    removed=((i, curve(kind, cur[i])),),
                    added=((i, curve(kind, nxt)),),
                )
                new_data = list(v_prev.data)
                new_data[i] = InGraph(nxt)
                cur[i] = nxt
            else:
                strands = tuple(
                    _disjoint_companion(rng, kind, cur[i])
                    for _ in range(rng.randrange(1, 3))
                )
                own = curve(kind, cur[i])
                trace = (own,) + strands
                _validate_trace(trace, kind)
                move = MoveAnnotation(
                    kind=MoveKind.SECOND,
                    removed=(),
                    added=tuple((i, o) for o in strands),
                )
                new_data = list(v_prev.data)
                new_data[i] = Crossing(trace)
                crossed[i] = strands
        in_pq = all(isinstance(e, InGraph) for e in new_data)
        vertices.append(
            VertexShadow(system, tuple(new_data), in_pq=in_pq)
        )
        moves.append(move)
    return PathShadow(tuple(vertices), tuple(moves))
