"""Slope projections of piece objects and the identities relating them.

Every essential object on a piece determines a vertex of the piece's
curve graph: a contained curve is its own slope, a seam or torus arc
projects to its slope, and a wave projects to the slope of the seam it
doubles.  The checks in this module recompute both sides of each identity
with the crossing oracle; nothing is taken from a formula.
"""

from __future__ import annotations

from dataclasses import dataclass

from .orbifold import (
    ObjectKind,
    PieceKind,
    PieceObject,
    corner_lift,
    curve,
    intersection_number,
    seam,
    seam_pairs,
)
from .slopes import Slope, distance


def project(obj: PieceObject) -> Slope:
    """The slope a single object contributes to the piece's curve graph."""
    return obj.slope


def project_trace(objects) -> frozenset[Slope]:
    """Deduplicated slopes of a family of objects on one piece."""
    objs = list(objects)
    if objs:
        kinds = {o.piece for o in objs}
        if len(kinds) != 1:
            raise ValueError("trace objects must share a piece")
    return frozenset(project(o) for o in objs)


def common_boundaries(a: PieceObject, b: PieceObject) -> int:
    """How many cone points / marked points the two objects' ends share."""
    ea = set(a.endpoints if a.kind is ObjectKind.SEAM else ())
    eb = set(b.endpoints if b.kind is ObjectKind.SEAM else ())
    return len(ea & eb)


def _corner_side_class(u: Slope, label: str) -> int:
    """Which side of the slope-u curve a corner sits on (0 or 1).

    The curve of slope u separates the four cone points into the two
    parity pairs; the class is the half-integer residue of u's functional
    at the corner lift, which is constant on each pair.
    """
    lift = corner_lift(label)
    value = u.p * lift[0] - u.q * lift[1]
    return int(2 * value) % 2


def associated_seam(
    u: PieceObject | Slope, reference: PieceObject | None = None
) -> PieceObject:
    """The seam of slope u crossing a reference object least.

    Of the two corner pairs a slope-u seam can join, this returns the one
    whose seam meets the reference fewest times (ties and the no-reference
    case go to the pair containing corner 00).  When u and a reference
    seam form a special couple with some curve, the winner is disjoint
    from the reference and shares both of its corners.
    """
    slope = u.slope if isinstance(u, PieceObject) else u
    pairs = seam_pairs(slope)
    candidates = [seam(PieceKind.FOUR_HOLED_SPHERE, slope, p) for p in pairs]
    if reference is None:
        return candidates[0]
    counts = [intersection_number(c, reference) for c in candidates]
    return candidates[0] if counts[0] <= counts[1] else candidates[1]


def is_special_couple(s: PieceObject, c: PieceObject) -> bool:
    """A seam and a contained curve crossing exactly twice.

    The crossing count comes from the oracle; the determinant never enters.
    """
    if s.kind is not ObjectKind.SEAM or c.kind is not ObjectKind.CURVE:
        return False
    if s.piece is not PieceKind.FOUR_HOLED_SPHERE:
        return False
    return intersection_number(s, c) == 2


def projection_identity_report(s: PieceObject, t: PieceObject) -> dict:
    """Both sides of the closing-up identity for a seam s against t.

    Replacing s by the curve of its slope multiplies every crossing by the
    number of strands the closed-up curve runs along s (two around a cone
    point, one through the torus mark) and picks up one crossing per
    shared endpoint.  Both sides are recomputed with the oracle.
    """
    if s.kind is not ObjectKind.SEAM:
        raise ValueError("the identity is about seams")
    if t.kind is ObjectKind.WAVE:
        raise ValueError("compare against curves or seams")
    factor = 1 if s.piece is PieceKind.ONE_HOLED_TORUS else 2
    pi_s = curve(s.piece, s.slope)
    lhs = intersection_number(pi_s, t)
    base = intersection_number(s, t)
    j = common_boundaries(s, t)
    rhs = factor * base + j
    return {
        "s": str(s),
        "t": str(t),
        "projected_crossings": lhs,
        "seam_crossings": base,
        "shared_ends": j,
        "strand_factor": factor,
        "rhs": rhs,
        "holds": lhs == rhs,
    }


def projection_distance(u: Slope, v: Slope) -> int:
    """Distance between two projections in the piece's curve graph.

    Both pieces' curve graphs are the Farey graph on slopes, so this is
    plain Farey distance.
    """
    return distance(u, v)


@dataclass(frozen=True)
class PieceFareyView:
    """Adjacency in a piece's curve graph, defined by crossing numbers.

    Two slopes are adjacent when their curves realize the minimal positive
    crossing number on the piece: 1 on the one-holed torus, 2 on the
    four-holed sphere.  The equivalence with the arithmetic condition
    |det| = 1 is a theorem the tests verify, not an assumption made here.
    """

    piece: PieceKind

    @property
    def minimal_positive_crossing(self) -> int:
        return 1 if self.piece is PieceKind.ONE_HOLED_TORUS else 2

    def adjacent(self, u: Slope, v: Slope) -> bool:
        if u == v:
            return False
        return (
            intersection_number(curve(self.piece, u), curve(self.piece, v))
            == self.minimal_positive_crossing
        )


__all__ = [
    "PieceFareyView",
    "associated_seam",
    "common_boundaries",
    "is_special_couple",
    "project",
    "project_trace",
    "projection_distance",
    "projection_identity_report",
]
