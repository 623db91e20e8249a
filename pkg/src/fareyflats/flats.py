"""Surface arithmetic, product metrics, and certified lattice flats.

A surface of genus g with r boundary circles and 3g - 3 + r >= 1 carries
families of disjoint complexity-1 pieces; the largest such family has
floor((3g + r - 2)/2) members.  Fixing one family, the decompositions
containing its complementary multicurve form a product of Farey graphs,
one factor per piece, metrized by the sum of factor distances.  This
module certifies isometric embeddings of Z^n into that product over
finite windows, using shipped geodesic lines that are re-verified (and
regenerable) by a deterministic search.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Sequence

from .orbifold import PieceKind
from .slopes import Slope, adjacent, distance, neighbors, slopes_up_to

Coordinate = Slope | None  # None is the base marker: "nothing projected here"


@dataclass(frozen=True)
class SurfaceDesc:
    """Genus and boundary count, constrained to complexity >= 1."""

    genus: int
    boundary: int

    def __post_init__(self):
        if self.genus < 0 or self.boundary < 0:
            raise ValueError("genus and boundary counts are nonnegative")
        if self.complexity < 1:
            raise ValueError(
                f"surface ({self.genus},{self.boundary}) has no decomposition"
            )

    @property
    def complexity(self) -> int:
        return 3 * self.genus - 3 + self.boundary

    @property
    def pants_count(self) -> int:
        return 2 * self.genus - 2 + self.boundary


def max_handles(surface: SurfaceDesc) -> int:
    """Largest number of disjoint complexity-1 pieces the surface carries."""
    return (3 * surface.genus + surface.boundary - 2) // 2


@dataclass(frozen=True)
class Template:
    """Piece counts for the standard maximal family."""

    tori: int
    spheres: int
    has_pants: bool

    @property
    def piece_count(self) -> int:
        return self.tori + self.spheres

    def piece_kinds(self) -> tuple[PieceKind, ...]:
        return (PieceKind.ONE_HOLED_TORUS,) * self.tori + (
            PieceKind.FOUR_HOLED_SPHERE,
        ) * self.spheres


def decompose_template(surface: SurfaceDesc) -> Template:
    g, r = surface.genus, surface.boundary
    tori = g
    spheres = (g + r) // 2 - 1
    if spheres < 0:
        # spheres need four ends; tiny surfaces use tori only
        spheres = 0
    has_pants = (g + r) % 2 == 1
    t = Template(tori=tori, spheres=spheres, has_pants=has_pants)
    expected = (surface.complexity + 1) // 2
    if t.piece_count != expected or t.piece_count != max_handles(surface):
        raise AssertionError(f"template count mismatch for {surface}")
    # area bookkeeping: pieces and the leftover pair of pants tile the surface
    if t.tori + 2 * t.spheres + int(t.has_pants) != surface.pants_count:
        raise AssertionError(f"template does not tile {surface}")
    return t


def product_distance(
    u: Sequence[Coordinate], v: Sequence[Coordinate]
) -> int:
    """Sum of factor distances; the base marker None matches anything."""
    if len(u) != len(v):
        raise ValueError("tuples live in products of different ranks")
    total = 0
    for a, b in zip(u, v):
        if a is None or b is None:
            continue
        total += distance(a, b)
    return total


# ---------------------------------------------------------------------------
# geodesic lines and lattice embeddings


@dataclass(frozen=True)
class GeodesicLine:
    """A finite window of a geodesic, indexed relative to base_index."""

    slopes: tuple[Slope, ...]
    base_index: int

    def __post_init__(self):
        if not 0 <= self.base_index < len(self.slopes):
            raise ValueError("base index outside the stored window")

    @property
    def lo(self) -> int:
        return -self.base_index

    @property
    def hi(self) -> int:
        return len(self.slopes) - 1 - self.base_index

    def point(self, i: int) -> Slope:
        if not self.lo <= i <= self.hi:
            raise ValueError(f"index {i} outside window [{self.lo}, {self.hi}]")
        return self.slopes[i + self.base_index]

    def check_window(self) -> tuple[bool, tuple[int, int] | None]:
        """All stored pairs at exact distance equal to their index gap."""
        n = len(self.slopes)
        for i in range(n):
            for j in range(i + 1, n):
                if distance(self.slopes[i], self.slopes[j]) != j - i:
                    return False, (i - self.base_index, j - self.base_index)
        return True, None

    def to_json_dict(self) -> dict:
        return {
            "slopes": [str(s) for s in self.slopes],
            "base_index": self.base_index,
        }

    @staticmethod
    def from_json_dict(data: dict) -> "GeodesicLine":
        return GeodesicLine(
            slopes=tuple(Slope.parse(s) for s in data["slopes"]),
            base_index=int(data["base_index"]),
        )


@dataclass(frozen=True)
class LatticeEmbedding:
    """Coordinatewise indexing of Z^n into a product of Farey graphs."""

    lines: tuple[GeodesicLine, ...]

    @property
    def rank(self) -> int:
        return len(self.lines)

    def map_point(self, x: Sequence[int]) -> tuple[Slope, ...]:
        if len(x) != self.rank:
            raise ValueError("wrong rank")
        return tuple(line.point(i) for line, i in zip(self.lines, x))


def search_geodesic_line(
    half_length: int, seed_pair: tuple[Slope, Slope], height_cap: int = 512
) -> GeodesicLine:
    """Grow a geodesic window around a seed edge by deterministic DFS.

    Extends alternately right and left; each candidate endpoint must keep
    every stored pair at distance equal to its index gap.  Candidates are
    tried in (height, q, p) order, backtracking when a side dead-ends
    below the height cap.
    """
    a, b = seed_pair
    if not adjacent(a, b):
        raise ValueError("seed pair must span an edge")

    # A candidate adjacent to the tip extends the window iff it sits at
    # full distance from the opposite end: the triangle inequality then
    # pins every intermediate distance to its index gap.  Candidate
    # heights are capped at a small multiple of the window's tallest
    # slope; geodesic continuations never need more, and the cap keeps
    # the neighbor scan and the exact distance checks cheap.
    def grow(line: list[Slope], want: int, cap: int) -> list[Slope] | None:
        if len(line) >= want:
            return line
        extend_right = len(line) % 2 == 0
        tip = line[-1] if extend_right else line[0]
        far = line[0] if extend_right else line[-1]
        local = min(cap, max(8, 4 * max(s.height for s in line)))
        for cand in neighbors(tip, local):
            if distance(cand, far) != len(line):
                continue
            nxt = line + [cand] if extend_right else [cand] + line
            found = grow(nxt, want, cap)
            if found is not None:
                return found
        return None

    want = 2 * half_length + 1
    grown = grow([a, b], want, height_cap)
    if grown is None:
        raise RuntimeError("geodesic search exhausted below the height cap")
    # the seed edge starts at position 0; recover the base offset
    base = grown.index(a)
    return GeodesicLine(slopes=tuple(grown), base_index=base)


DEFAULT_SEEDS = (
    (Slope(0, 1), Slope(1, 0)),
    (Slope(1, 1), Slope(1, 2)),
    (Slope(-1, 1), Slope(0, 1)),
)
DEFAULT_HALF_LENGTH = 6


def default_embedding(n: int) -> LatticeEmbedding:
    """The shipped verified geodesics, cycled to rank n."""
    data = json.loads(
        resources.files("fareyflats").joinpath("data/geodesics.json").read_text()
    )
    lines = [GeodesicLine.from_json_dict(d) for d in data["lines"]]
    if n < 1:
        raise ValueError("rank must be positive")
    return LatticeEmbedding(
        lines=tuple(lines[i % len(lines)] for i in range(n))
    )


def regenerate_default_lines() -> list[GeodesicLine]:
    return [
        search_geodesic_line(DEFAULT_HALF_LENGTH, seed) for seed in DEFAULT_SEEDS
    ]


# ---------------------------------------------------------------------------
# certification


def certify_flat(embedding: LatticeEmbedding, window: int) -> dict:
    """Exhaustive isometry check of the embedding over [-window, window]^n.

    Verifies each line on the window first, then every pair of lattice
    points; the certificate carries the first witness on failure.
    """
    n = embedding.rank
    if window < 1:
        raise ValueError("window must be positive")
    factor_reports = []
    rows: list[list[list[int]]] = []
    for idx, line in enumerate(embedding.lines):
        if line.lo > -window or line.hi < window:
            raise ValueError(
                f"line {idx} window [{line.lo},{line.hi}] too small for {window}"
            )
        ok, witness = line.check_window()
        factor_reports.append(
            {"line": idx, "geodesic": ok, "witness": witness}
        )
        pts = [line.point(i) for i in range(-window, window + 1)]
        rows.append(
            [[distance(p, q) for q in pts] for p in pts]
        )
    if not all(r["geodesic"] for r in factor_reports):
        return {
            "n": n,
            "window": window,
            "passed": False,
            "pairs_checked": 0,
            "witness": None,
            "factor_reports": factor_reports,
        }

    points = list(_lattice_window(n, window))
    pairs = 0
    witness = None
    for ai in range(len(points)):
        x = points[ai]
        for bi in range(ai + 1, len(points)):
            y = points[bi]
            expected = sum(abs(xi - yi) for xi, yi in zip(x, y))
            actual = 0
            for k in range(n):
                actual += rows[k][x[k] + window][y[k] + window]
            pairs += 1
            if actual != expected:
                witness = {
                    "x": list(x),
                    "y": list(y),
                    "expected": expected,
                    "actual": actual,
                }
                break
        if witness:
            break
    return {
        "n": n,
        "window": window,
        "passed": witness is None,
        "pairs_checked": pairs,
        "witness": witness,
        "factor_reports": factor_reports,
    }


def _lattice_window(n: int, window: int) -> Iterable[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for rest in _lattice_window(n - 1, window):
        for x in range(-window, window + 1):
            yield rest + (x,)


def _product_ball(
    n: int, radius: int, height: int, base: tuple[Slope, ...]
) -> list[tuple[Slope, ...]]:
    pool = slopes_up_to(height)
    out = []
    for tup in _tuples(pool, n):
        if product_distance(tup, base) <= radius:
            out.append(tup)
    return out


def _tuples(pool, n):
    if n == 0:
        yield ()
        return
    for rest in _tuples(pool, n - 1):
        for s in pool:
            yield rest + (s,)


def subproduct_total_geodesy(
    n: int,
    k: int,
    radius: int,
    height: int = 3,
    subgraph: str = "factor",
) -> dict:
    """Check that a subset of a truncated product ball is totally geodesic.

    subgraph "factor" keeps the first k coordinates free and pins the rest
    to the base slope; "diagonal" takes equal coordinates everywhere (the
    control case, which fails with a witness).  A point w lies on some
    geodesic between u and v exactly when the distances add up; total
    geodesy means no such w escapes the subset.
    """
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    base_slope = Slope(0, 1)
    base = (base_slope,) * n
    ball = _product_ball(n, radius, height, base)

    def inside(t: tuple[Slope, ...]) -> bool:
        if subgraph == "factor":
            return all(t[i] == base_slope for i in range(k, n))
        if subgraph == "diagonal":
            return all(t[i] == t[0] for i in range(1, n))
        raise ValueError(f"unknown subgraph {subgraph!r}")

    members = [t for t in ball if inside(t)]
    checked = 0
    for ui in range(len(members)):
        u = members[ui]
        for vi in range(ui + 1, len(members)):
            v = members[vi]
            duv = product_distance(u, v)
            for w in ball:
                if inside(w):
                    continue
                checked += 1
                if product_distance(u, w) + product_distance(w, v) == duv:
                    return {
                        "subgraph": subgraph,
                        "n": n,
                        "k": k,
                        "radius": radius,
                        "height": height,
                        "member_count": len(members),
                        "triples_checked": checked,
                        "totally_geodesic": False,
                        "witness": {
                            "u": [str(s) for s in u],
                            "v": [str(s) for s in v],
                            "via": [str(s) for s in w],
                        },
                    }
    return {
        "subgraph": subgraph,
        "n": n,
        "k": k,
        "radius": radius,
        "height": height,
        "member_count": len(members),
        "triples_checked": checked,
        "totally_geodesic": True,
        "witness": None,
    }


# ---------------------------------------------------------------------------
# weighted export and DOT


@dataclass(frozen=True)
class WeightedMetric:
    """Per-factor edge weights for length exports; checks stay unweighted."""

    weights: tuple[int, ...]

    def weighted_distance(
        self, u: Sequence[Coordinate], v: Sequence[Coordinate]
    ) -> int:
        if len(u) != len(v) != len(self.weights):
            raise ValueError("rank mismatch")
        total = 0
        for w, a, b in zip(self.weights, u, v):
            if a is None or b is None:
                continue
            total += w * distance(a, b)
        return total


def wp_rescale(piece_kinds: Sequence[PieceKind]) -> WeightedMetric:
    """Edge weight 1 on torus factors, 2 on four-holed-sphere factors."""
    return WeightedMetric(
        weights=tuple(
            1 if kind is PieceKind.ONE_HOLED_TORUS else 2
            for kind in piece_kinds
        )
    )


def flat_to_dot(embedding: LatticeEmbedding, window: int) -> str:
    """The window's grid graph; product edges are exactly the grid edges."""
    n = embedding.rank
    lines = ["graph flat {"]
    for x in _lattice_window(n, window):
        label = ",".join(str(s) for s in embedding.map_point(x))
        lines.append(f'  "{_pt_name(x)}" [label="{label}"];')
    for x in _lattice_window(n, window):
        for k in range(n):
            if x[k] + 1 <= window:
                y = tuple(
                    xi + 1 if i == k else xi for i, xi in enumerate(x)
                )
                lines.append(f'  "{_pt_name(x)}" -- "{_pt_name(y)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _pt_name(x: tuple[int, ...]) -> str:
    return "p" + "_".join(str(i) for i in x).replace("-", "m")
