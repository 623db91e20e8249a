"""Exact intersection counts on the two flat model pieces.

The one-holed torus piece is modelled as R^2/Z^2 with the lattice point as
marked point; the four-holed sphere piece as the pillowcase quotient
R^2/(x ~ -x + v), whose four cone points are the half-lattice classes
(0,0), (1/2,0), (0,1/2), (1/2,1/2), written "00", "10", "01", "11".

Objects carried by a piece:

* Curve(slope): a straight closed geodesic avoiding the cone points.
* Seam(slope, endpoints): a straight arc between two cone points on the
  four-holed sphere, or the closed-up arc through the marked point on the
  torus (endpoints ("m", "m")).
* Wave(seam, over): the arc obtained by doubling a seam around one of its
  two cone points; both of its ends sit at the other cone point.

Every object gets a concrete realization with exact rational coordinates,
chosen deterministically from the object's index in a configuration so
that distinct objects are disjoint away from shared cone points.  Two
independent crossing counters are provided: a sweep counter that counts
integer translates of a line family crossed by a segment, and a literal
counter that intersects segments with translated segments over an explicit
window.  Both count crossings on the torus cover and halve on the
pillowcase (with an evenness check); no determinant formula is assumed
anywhere in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Sequence

from .slopes import Slope, _extgcd

Point = tuple[Fraction, Fraction]


class PieceKind(Enum):
    ONE_HOLED_TORUS = "one_holed_torus"
    FOUR_HOLED_SPHERE = "four_holed_sphere"


class ObjectKind(Enum):
    CURVE = "curve"
    SEAM = "seam"
    WAVE = "wave"


TORUS_MARK = "m"
CORNER_LABELS = ("00", "10", "01", "11")


def corner_vec(label: str) -> tuple[int, int]:
    if label not in CORNER_LABELS:
        raise ValueError(f"unknown corner label {label!r}")
    return (int(label[0]), int(label[1]))


def corner_lift(label: str) -> Point:
    a, b = corner_vec(label)
    return (Fraction(a, 2), Fraction(b, 2))


def partner_label(slope: Slope, label: str) -> str:
    """The other endpoint of a seam of this slope leaving the given corner.

    Moving by half the direction vector (q, p)/2 flips the corner parities
    by (q mod 2, p mod 2); since gcd(p, q) = 1 the partner always differs.
    """
    a, b = corner_vec(label)
    return f"{(a + slope.q) % 2}{(b + slope.p) % 2}"


def seam_pairs(slope: Slope) -> tuple[tuple[str, str], tuple[str, str]]:
    """The two corner pairs a seam of this slope can join, each sorted."""
    first = tuple(sorted(("00", partner_label(slope, "00"))))
    rest = tuple(sorted(l for l in CORNER_LABELS if l not in first))
    return first, rest  # type: ignore[return-value]


@dataclass(frozen=True)
class PieceObject:
    """An essential curve, seam, or wave on one of the two pieces."""

    piece: PieceKind
    kind: ObjectKind
    slope: Slope
    endpoints: tuple[str, ...] = ()
    over: str | None = None

    def __post_init__(self):
        if self.kind is ObjectKind.CURVE:
            if self.endpoints or self.over is not None:
                raise ValueError("a curve has no endpoints")
        elif self.kind is ObjectKind.SEAM:
            if self.over is not None:
                raise ValueError("only waves carry an 'over' corner")
            if self.piece is PieceKind.ONE_HOLED_TORUS:
                if self.endpoints != (TORUS_MARK, TORUS_MARK):
                    raise ValueError("torus arcs end at the marked point twice")
            else:
                if len(self.endpoints) != 2:
                    raise ValueError("a seam joins two corners")
                a, b = self.endpoints
                if partner_label(self.slope, a) != b:
                    raise ValueError(
                        f"corners {a},{b} are not joined by slope {self.slope}"
                    )
                if self.endpoints != tuple(sorted(self.endpoints)):
                    raise ValueError("seam endpoints must be sorted")
        elif self.kind is ObjectKind.WAVE:
            if self.piece is not PieceKind.FOUR_HOLED_SPHERE:
                raise ValueError("waves live on the four-holed sphere")
            if len(self.endpoints) != 1 or self.over is None:
                raise ValueError("a wave has one end corner and one 'over' corner")
            if partner_label(self.slope, self.endpoints[0]) != self.over:
                raise ValueError("wave corners must be partners for its slope")

    @property
    def seam_descriptor(self) -> "PieceObject":
        """For a wave, the seam it doubles; identity on seams."""
        if self.kind is ObjectKind.SEAM:
            return self
        if self.kind is ObjectKind.WAVE:
            return seam(
                self.piece, self.slope, tuple(sorted((self.endpoints[0], self.over)))
            )
        raise ValueError("curves have no seam descriptor")

    def realization_corner_labels(self) -> frozenset[str]:
        """Corner labels the canonical realization actually passes through."""
        if self.kind is ObjectKind.SEAM:
            return frozenset(self.endpoints)
        return frozenset()

    def sort_key(self):
        return (
            self.kind.value,
            self.slope.sort_key(),
            self.endpoints,
            self.over or "",
        )

    def to_json_dict(self) -> dict:
        data = {
            "piece": self.piece.value,
            "kind": self.kind.value,
            "slope": str(self.slope),
        }
        if self.endpoints:
            data["endpoints"] = list(self.endpoints)
        if self.over is not None:
            data["over"] = self.over
        return data

    @staticmethod
    def from_json_dict(data: dict) -> "PieceObject":
        return PieceObject(
            piece=PieceKind(data["piece"]),
            kind=ObjectKind(data["kind"]),
            slope=Slope.parse(data["slope"]),
            endpoints=tuple(data.get("endpoints", ())),
            over=data.get("over"),
        )

    def __str__(self):
        if self.kind is ObjectKind.CURVE:
            return f"curve({self.slope})"
        if self.kind is ObjectKind.SEAM:
            return f"seam({self.slope};{','.join(self.endpoints)})"
        return f"wave({self.slope};at {self.endpoints[0]} over {self.over})"


def curve(piece: PieceKind, slope: Slope) -> PieceObject:
    return PieceObject(piece=piece, kind=ObjectKind.CURVE, slope=slope)


def seam(
    piece: PieceKind, slope: Slope, endpoints: tuple[str, str] | None = None
) -> PieceObject:
    if piece is PieceKind.ONE_HOLED_TORUS:
        return PieceObject(
            piece=piece,
            kind=ObjectKind.SEAM,
            slope=slope,
            endpoints=(TORUS_MARK, TORUS_MARK),
        )
    if endpoints is None:
        endpoints = seam_pairs(slope)[0]
    return PieceObject(
        piece=piece,
        kind=ObjectKind.SEAM,
        slope=slope,
        endpoints=tuple(sorted(endpoints)),  # type: ignore[arg-type]
    )


def torus_arc(slope: Slope) -> PieceObject:
    return seam(PieceKind.ONE_HOLED_TORUS, slope)


def wave(seam_obj: PieceObject, over: str) -> PieceObject:
    if seam_obj.kind is not ObjectKind.SEAM:
        raise ValueError("waves double a seam")
    if over not in seam_obj.endpoints:
        raise ValueError(f"{over} is not an endpoint of {seam_obj}")
    end = next(l for l in seam_obj.endpoints if l != over)
    return PieceObject(
        piece=seam_obj.piece,
        kind=ObjectKind.WAVE,
        slope=seam_obj.slope,
        endpoints=(end,),
        over=over,
    )


# ---------------------------------------------------------------------------
# realizations


class DegenerateRealization(Exception):
    """A crossing landed on a realization endpoint or unshared cone point."""


@dataclass(frozen=True)
class SegmentRep:
    """One plane segment of a realization, with its cone-point passages.

    corners lists (parameter, point, label) for every cone-point lift the
    closed-up segment passes; parameters 0 and 1 denote the same downstairs
    point for period segments.
    """

    a: Point
    b: Point
    corners: tuple[tuple[Fraction, Point, str], ...] = ()

    def direction(self) -> Point:
        return (self.b[0] - self.a[0], self.b[1] - self.a[1])


def _functional(slope: Slope) -> tuple[int, int]:
    """Coefficients of c(x, y) = p*x - q*y, constant along the slope."""
    return (slope.p, -slope.q)


def _apply(coeff: tuple[int, int], pt: Point) -> Fraction:
    return coeff[0] * pt[0] + coeff[1] * pt[1]


def _unit_point(slope: Slope) -> Point:
    """An integer point where the slope's functional takes the value 1."""
    g, x0, y0 = _extgcd(slope.p, slope.q)
    assert g == 1
    return (Fraction(x0), Fraction(-y0))


class RealizationContext:
    """Deterministic exact offsets for a family of coexisting objects.

    Offsets are graded so that all degeneracies (crossings at segment ends,
    cone-point hits away from shared endpoints) are impossible; the
    stability tests shrink them further and re-count to double-check.
    """

    def __init__(self, objects: Sequence[PieceObject]):
        if not objects:
            raise ValueError("empty configuration")
        kinds = {o.piece for o in objects}
        if len(kinds) != 1:
            raise ValueError("objects must share a piece")
        self.piece = objects[0].piece
        self.objects = tuple(objects)
        self.norm = max(o.slope.p**2 + o.slope.q**2 for o in objects)
        n = len(objects)
        self.curve_offset = {
            i: Fraction(2 * i + 1, 4 * (n + 1)) for i in range(n)
        }
        self.wave_gap = Fraction(1, 64 * (n + 1) * self.norm**2)
        self.wave_normal = {
            i: Fraction(i + 1, 256 * (n + 1) ** 2 * self.norm**3)
            for i in range(n)
        }

    def scaled(self, factor: int) -> "RealizationContext":
        """A context with all small offsets divided by factor (stability)."""
        ctx = RealizationContext(self.objects)
        ctx.wave_gap = self.wave_gap / factor
        ctx.wave_normal = {i: v / factor for i, v in self.wave_normal.items()}
        return ctx


def _pt_add(a: Point, b: Point) -> Point:
    return (a[0] + b[0], a[1] + b[1])


def _pt_scale(t: Fraction, a: Point) -> Point:
    return (t * a[0], t * a[1])


def _pt_neg(a: Point) -> Point:
    return (-a[0], -a[1])


def cover_segments(
    obj: PieceObject,
    ctx: RealizationContext,
    index: int,
    anchor_shift: Fraction = Fraction(0),
) -> tuple[SegmentRep, ...]:
    """Plane segments projecting bijectively onto the torus-cover preimage.

    On the torus the preimage is the object itself; on the pillowcase it is
    the full preimage in R^2/Z^2 (two loops for a curve, one sigma-invariant
    loop for a seam, two truncated loops for a wave).
    """
    w: Point = (Fraction(obj.slope.q), Fraction(obj.slope.p))
    torus = obj.piece is PieceKind.ONE_HOLED_TORUS
    if obj.kind is ObjectKind.CURVE:
        o = ctx.curve_offset[index]
        anchor = _pt_add(
            _pt_scale(o, _unit_point(obj.slope)), _pt_scale(anchor_shift, w)
        )
        seg = SegmentRep(a=anchor, b=_pt_add(anchor, w))
        if torus:
            return (seg,)
        mirror = SegmentRep(a=_pt_neg(anchor), b=_pt_add(_pt_neg(anchor), _pt_neg(w)))
        return (seg, mirror)
    if obj.kind is ObjectKind.SEAM:
        if torus:
            zero = (Fraction(0), Fraction(0))
            return (
                SegmentRep(
                    a=zero,
                    b=w,
                    corners=(
                        (Fraction(0), zero, TORUS_MARK),
                        (Fraction(1), w, TORUS_MARK),
                    ),
                ),
            )
        base_label = obj.endpoints[0]
        base = corner_lift(base_label)
        mid = _pt_add(base, _pt_scale(Fraction(1, 2), w))
        return (
            SegmentRep(
                a=base,
                b=_pt_add(base, w),
                corners=(
                    (Fraction(0), base, base_label),
                    (Fraction(1, 2), mid, obj.endpoints[1]),
                    (Fraction(1), _pt_add(base, w), base_label),
                ),
            ),
        )
    # wave: straight loop at a small normal offset from the seam line,
    # opened up by a small gap at the end corner; the cone angle pi turns
    # the straight quotient into the U-turn around the 'over' corner.
    gap = ctx.wave_gap
    eps = ctx.wave_normal[index]
    normal: Point = (Fraction(obj.slope.p), Fraction(-obj.slope.q))
    base = _pt_add(corner_lift(obj.endpoints[0]), _pt_scale(eps, normal))
    lo = _pt_add(base, _pt_scale(gap, w))
    hi = _pt_add(base, _pt_scale(1 - gap, w))
    seg = SegmentRep(a=lo, b=hi)
    mirror = SegmentRep(a=_pt_neg(lo), b=_pt_neg(hi))
    return (seg, mirror)


def line_families(
    obj: PieceObject, ctx: RealizationContext, index: int
) -> tuple[tuple[tuple[int, int], Fraction], ...]:
    """(functional, offset) pairs whose integer translates carry the preimage.

    Only line-like objects (curves, seams, torus arcs) have them; a wave is
    not straight downstairs and must take the segment role in a count.
    """
    coeff = _functional(obj.slope)
    if obj.kind is ObjectKind.CURVE:
        o = ctx.curve_offset[index]
        if obj.piece is PieceKind.ONE_HOLED_TORUS:
            return ((coeff, o),)
        return ((coeff, o), (coeff, -o))
    if obj.kind is ObjectKind.SEAM:
        if obj.piece is PieceKind.ONE_HOLED_TORUS:
            return ((coeff, Fraction(0)),)
        return ((coeff, _apply(coeff, corner_lift(obj.endpoints[0]))),)
    raise ValueError("waves have no line family")


def _strict_between_count(f0: Fraction, f1: Fraction) -> int:
    lo, hi = (f0, f1) if f0 <= f1 else (f1, f0)
    return max(0, (math.ceil(hi) - 1) - (math.floor(lo) + 1) + 1)


def _count_segments_vs_families(
    segments: Iterable[SegmentRep],
    x_obj: PieceObject,
    y_obj: PieceObject,
    families,
) -> int:
    y_labels = y_obj.realization_corner_labels()
    total = 0
    for seg in segments:
        for coeff, off in families:
            f0 = _apply(coeff, seg.a) - off
            f1 = _apply(coeff, seg.b) - off
            if f0 == f1:
                continue
            count = _strict_between_count(f0, f1)
            for t, pt, label in seg.corners:
                fc = _apply(coeff, pt) - off
                if fc.denominator != 1:
                    continue
                # The family line passes a cone point; it must be one of
                # the line-like object's own endpoints, and the meeting is
                # a shared-endpoint touch, not a crossing.
                if label not in y_labels:
                    raise DegenerateRealization(
                        f"{y_obj} line passes foreign cone point {label}"
                    )
                if Fraction(0) < t < Fraction(1):
                    count -= 1
            for f, t in ((f0, Fraction(0)), (f1, Fraction(1))):
                if f.denominator == 1 and not any(
                    ct == t for ct, _, _ in seg.corners
                ):
                    raise DegenerateRealization(
                        f"segment endpoint of {x_obj} lies on a {y_obj} line"
                    )
            total += count
    return total


def _next_prime_above(n: int) -> int:
    k = max(n + 1, 2)
    while True:
        if all(k % d for d in range(2, int(math.isqrt(k)) + 1)):
            return k
        k += 1


def _fast_cover_count(
    x_obj: PieceObject,
    x_index: int,
    y_obj: PieceObject,
    y_index: int,
    ctx: RealizationContext,
) -> int:
    families = line_families(y_obj, ctx, y_index)
    # A closed curve's anchor may sit exactly on a family line; sliding it
    # along its own line by k/P fixes that.  P is a prime exceeding every
    # cross-functional value, so each (segment, family) pair rules out at
    # most one k and five candidates always contain a clean one.
    prime = _next_prime_above(2 * ctx.norm)
    last: DegenerateRealization | None = None
    for attempt in range(5):
        segs = cover_segments(
            x_obj, ctx, x_index, anchor_shift=Fraction(attempt, prime)
        )
        try:
            return _count_segments_vs_families(segs, x_obj, y_obj, families)
        except DegenerateRealization as exc:
            last = exc
            if x_obj.kind is not ObjectKind.CURVE:
                raise
    raise last  # pragma: no cover - five shifts cannot all degenerate


# ---------------------------------------------------------------------------
# literal counter


def _cross(a: Point, b: Point) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def _is_cone_point(pt: Point, piece: PieceKind) -> str | None:
    """The cone-point label of a plane point, or None."""
    if piece is PieceKind.ONE_HOLED_TORUS:
        if pt[0].denominator == 1 and pt[1].denominator == 1:
            return TORUS_MARK
        return None
    two = (2 * pt[0], 2 * pt[1])
    if two[0].denominator == 1 and two[1].denominator == 1:
        return f"{int(two[0]) % 2}{int(two[1]) % 2}"
    return None


def _segment_crossing(
    s: SegmentRep, t: SegmentRep
) -> tuple[Fraction, Fraction, Point] | None:
    ds, dt = s.direction(), t.direction()
    denom = _cross(ds, dt)
    if denom == 0:
        return None
    diff = (t.a[0] - s.a[0], t.a[1] - s.a[1])
    u = _cross(diff, dt) / denom
    v = _cross(diff, ds) / denom
    if u < 0 or u > 1 or v < 0 or v > 1:
        return None
    pt = _pt_add(s.a, _pt_scale(u, ds))
    return u, v, pt


def _literal_count(
    x_obj: PieceObject,
    x_segments: Sequence[SegmentRep],
    y_obj: PieceObject,
    y_segments: Sequence[SegmentRep],
    piece: PieceKind,
    margin: int = 1,
) -> int:
    """Crossings of x's cover with all integer translates of y's cover."""
    x_labels = x_obj.realization_corner_labels()
    y_labels = y_obj.realization_corner_labels()
    total = 0
    for xs in x_segments:
        xlo = (min(xs.a[0], xs.b[0]), min(xs.a[1], xs.b[1]))
        xhi = (max(xs.a[0], xs.b[0]), max(xs.a[1], xs.b[1]))
        for ys in y_segments:
            ylo = (min(ys.a[0], ys.b[0]), min(ys.a[1], ys.b[1]))
            yhi = (max(ys.a[0], ys.b[0]), max(ys.a[1], ys.b[1]))
            i_lo = math.floor(xlo[0] - yhi[0]) - margin
            i_hi = math.ceil(xhi[0] - ylo[0]) + margin
            j_lo = math.floor(xlo[1] - yhi[1]) - margin
            j_hi = math.ceil(xhi[1] - ylo[1]) + margin
            for i in range(i_lo, i_hi + 1):
                for j in range(j_lo, j_hi + 1):
                    shift: Point = (Fraction(i), Fraction(j))
                    moved = SegmentRep(
                        a=_pt_add(ys.a, shift), b=_pt_add(ys.b, shift)
                    )
                    hit = _segment_crossing(xs, moved)
                    if hit is None:
                        continue
                    u, v, pt = hit
                    label = _is_cone_point(pt, piece)
                    if label is not None:
                        if label in x_labels and label in y_labels:
                            continue
                        raise DegenerateRealization(
                            f"crossing of {x_obj} and {y_obj} at unshared "
                            f"cone point {label}"
                        )
                    if u in (0, 1) or v in (0, 1):
                        raise DegenerateRealization(
                            f"crossing at a segment endpoint of {x_obj}/{y_obj}"
                        )
                    total += 1
    return total


def _corner_markup(segments: Sequence[SegmentRep], piece: PieceKind):
    """Recompute cone-point passage metadata for custom segments."""
    out = []
    for seg in segments:
        d = seg.direction()
        corners: list[tuple[Fraction, Point, str]] = []
        scale = 1 if piece is PieceKind.ONE_HOLED_TORUS else 2
        # Solve seg.a + t*d on the (half-)integer lattice by scanning the
        # x-range (or y-range for vertical segments) of candidate values.
        if d[0] != 0:
            lo, hi = sorted((scale * seg.a[0], scale * seg.b[0]))
            for k in range(math.ceil(lo), math.floor(hi) + 1):
                t = (Fraction(k, scale) - seg.a[0]) / d[0]
                pt = _pt_add(seg.a, _pt_scale(t, d))
                label = _is_cone_point(pt, piece)
                if label is not None and 0 <= t <= 1:
                    corners.append((t, pt, label))
        else:
            lo, hi = sorted((scale * seg.a[1], scale * seg.b[1]))
            for k in range(math.ceil(lo), math.floor(hi) + 1):
                t = (Fraction(k, scale) - seg.a[1]) / d[1]
                pt = _pt_add(seg.a, _pt_scale(t, d))
                label = _is_cone_point(pt, piece)
                if label is not None and 0 <= t <= 1:
                    corners.append((t, pt, label))
        out.append(SegmentRep(a=seg.a, b=seg.b, corners=tuple(sorted(corners))))
    return out


# ---------------------------------------------------------------------------
# public counting interface


def _pair_context(x: PieceObject, y: PieceObject) -> RealizationContext:
    return RealizationContext((x, y))


def intersection_number(
    x: PieceObject,
    y: PieceObject,
    ctx: RealizationContext | None = None,
) -> int:
    """Geometric crossing number of two objects on a piece.

    Identical descriptors count zero.  Wave against wave goes through the
    literal counter; every other pair through the sweep counter.  On the
    pillowcase the cover count is halved after an evenness check.
    """
    if x.piece is not y.piece:
        raise ValueError("objects live on different pieces")
    if x == y:
        return 0
    if ctx is None:
        ctx = _pair_context(x, y)
    try:
        ix = ctx.objects.index(x)
        iy = ctx.objects.index(y)
    except ValueError as exc:
        raise ValueError("objects must belong to the context") from exc
    if x.kind is ObjectKind.WAVE and y.kind is ObjectKind.WAVE:
        raw = _literal_count(
            x,
            cover_segments(x, ctx, ix),
            y,
            cover_segments(y, ctx, iy),
            x.piece,
        )
    elif y.kind is ObjectKind.WAVE:
        raw = _fast_cover_count(y, iy, x, ix, ctx)
    else:
        raw = _fast_cover_count(x, ix, y, iy, ctx)
    if x.piece is PieceKind.FOUR_HOLED_SPHERE:
        if raw % 2:
            raise AssertionError(
                f"odd cover count {raw} for {x} vs {y}; realization bug"
            )
        return raw // 2
    return raw


def literal_intersection_number(
    x: PieceObject,
    y: PieceObject,
    ctx: RealizationContext | None = None,
    margin: int = 1,
    custom_x: Sequence[SegmentRep] | None = None,
    custom_y: Sequence[SegmentRep] | None = None,
) -> int:
    """The literal-counter route, optionally on custom realizations."""
    if x.piece is not y.piece:
        raise ValueError("objects live on different pieces")
    if ctx is None:
        ctx = _pair_context(x, y)
    ix = ctx.objects.index(x)
    iy = ctx.objects.index(y)
    if x == y and custom_x is None and custom_y is None:
        return 0
    # Closed-curve anchors may coincide with translates of the other
    # object's endpoints; slide each curve along itself (by multiples of
    # 1/P for primes beyond every functional value) until nothing does.
    p1 = _next_prime_above(2 * ctx.norm)
    p2 = _next_prime_above(p1)
    raw = None
    last: DegenerateRealization | None = None
    retryable = (custom_x is None and x.kind is ObjectKind.CURVE) or (
        custom_y is None and y.kind is ObjectKind.CURVE
    )
    for attempt in range(20):
        xs = (
            list(custom_x)
            if custom_x is not None
            else list(
                cover_segments(x, ctx, ix, anchor_shift=Fraction(attempt, p1))
            )
        )
        ys = (
            list(custom_y)
            if custom_y is not None
            else list(
                cover_segments(y, ctx, iy, anchor_shift=Fraction(attempt, p2))
            )
        )
        xs = _corner_markup(xs, x.piece)
        ys = _corner_markup(ys, y.piece)
        try:
            raw = _literal_count(x, xs, y, ys, x.piece, margin=margin)
            break
        except DegenerateRealization as exc:
            last = exc
            if not retryable:
                raise
    if raw is None:
        raise last  # pragma: no cover - shifts cannot all degenerate
    if x.piece is PieceKind.FOUR_HOLED_SPHERE:
        if raw % 2:
            raise AssertionError(f"odd cover count {raw} for {x} vs {y}")
        return raw // 2
    return raw


def tightness_check(
    x: PieceObject,
    y: PieceObject,
    custom_x: Sequence[SegmentRep] | None = None,
    custom_y: Sequence[SegmentRep] | None = None,
    margin: int = 1,
) -> dict:
    """Compare a literal count (possibly of custom realizations) with the
    canonical count; equality certifies the drawn position is tight."""
    canonical = intersection_number(x, y)
    literal = literal_intersection_number(
        x, y, margin=margin, custom_x=custom_x, custom_y=custom_y
    )
    return {
        "canonical": canonical,
        "literal": literal,
        "tight": literal == canonical,
    }


class Configuration:
    """A fixed tuple of objects on one piece sharing a realization context."""

    def __init__(self, objects: Sequence[PieceObject]):
        self.ctx = RealizationContext(objects)
        self.objects = self.ctx.objects
        self.piece = self.ctx.piece

    def intersection(self, i: int, j: int) -> int:
        return intersection_number(self.objects[i], self.objects[j], self.ctx)

    def intersection_matrix(self) -> list[list[int]]:
        n = len(self.objects)
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                out[i][j] = out[j][i] = self.intersection(i, j)
        return out

    def to_json_dict(self) -> dict:
        """Fixture form: descriptors plus the graded offsets as strings."""

        def frac(f: Fraction) -> str:
            return f"{f.numerator}/{f.denominator}"

        n = len(self.objects)
        return {
            "piece": self.piece.value,
            "objects": [o.to_json_dict() for o in self.objects],
            "offsets": {
                "curve": [frac(self.ctx.curve_offset[i]) for i in range(n)],
                "wave_gap": frac(self.ctx.wave_gap),
                "wave_normal": [
                    frac(self.ctx.wave_normal[i]) for i in range(n)
                ],
            },
        }

    @staticmethod
    def from_json_dict(data: dict) -> "Configuration":
        cfg = Configuration(
            [PieceObject.from_json_dict(d) for d in data["objects"]]
        )
        if data.get("piece", cfg.piece.value) != cfg.piece.value:
            raise ValueError("stored piece kind does not match the objects")
        stored = data.get("offsets")
        if stored is not None and stored != cfg.to_json_dict()["offsets"]:
            raise ValueError(
                "stored offsets disagree with the deterministic grading"
            )
        return cfg


# ---------------------------------------------------------------------------
# endpoint linking of torus arcs


def _angle_cmp(u: tuple[int, int], v: tuple[int, int]) -> int:
    def half(w):
        return 0 if (w[1] > 0 or (w[1] == 0 and w[0] > 0)) else 1

    hu, hv = half(u), half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = u[0] * v[1] - u[1] * v[0]
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def endpoint_linking(a: PieceObject, b: PieceObject) -> bool:
    """Whether two torus arcs' end directions alternate around the mark.

    Each arc leaves the marked point in directions +-(q, p); the four rays
    are sorted by exact angle and the ownership pattern must read ABAB.
    """
    for obj in (a, b):
        if (
            obj.piece is not PieceKind.ONE_HOLED_TORUS
            or obj.kind is not ObjectKind.SEAM
        ):
            raise ValueError("endpoint linking is about torus arcs")
    if a.slope == b.slope:
        raise ValueError("arcs must have distinct slopes")
    rays = []
    for owner, obj in (("a", a), ("b", b)):
        d = (obj.slope.q, obj.slope.p)
        rays.append((d, owner))
        rays.append(((-d[0], -d[1]), owner))
    rays.sort(key=cmp_to_key(lambda x, y: _angle_cmp(x[0], y[0])))
    owners = [o for _, o in rays]
    return owners[0] != owners[1] and owners[0] == owners[2] and owners[1] == owners[3]
