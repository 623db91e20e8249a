"""Exact Farey graph primitives.

Vertices are reduced slopes p/q (q >= 0) together with 1/0, written "1/0"
and standing for the vertical direction.  Two slopes p/q and r/s span an
edge exactly when |p*s - r*q| = 1.  All arithmetic is integer arithmetic;
distances returned by :func:`distance` are distances in the full infinite
graph, not in any truncation.

The height of p/q is max(|p|, q).  Operations that would otherwise touch
infinitely many vertices (neighbour enumeration, truncated graphs) take an
explicit height bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Iterator


@dataclass(frozen=True, order=False)
class Slope:
    """A reduced rational slope p/q with q >= 0, or 1/0.

    The constructor canonicalizes: common factors are removed, the sign is
    carried by the numerator, and every (p, 0) input collapses to 1/0.
    Canonicalization is idempotent; equality is field equality.
    """

    p: int
    q: int

    def __post_init__(self) -> None:
        p, q = self.p, self.q
        if q == 0:
            if p == 0:
                raise ValueError("slope 0/0 is not defined")
            p = 1
        else:
            g = gcd(abs(p), abs(q))
            p //= g
            q //= g
            if q < 0:
                p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def height(self) -> int:
        return max(abs(self.p), self.q)

    @property
    def is_infinity(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction | None:
        """The slope as an exact rational, or None for 1/0."""
        if self.q == 0:
            return None
        return Fraction(self.p, self.q)

    def direction(self) -> tuple[int, int]:
        """Primitive direction vector (run, rise) = (q, p) of the slope."""
        return (self.q, self.p)

    def sort_key(self) -> tuple[int, int, int]:
        return (self.height, self.q, self.p)

    def __neg__(self) -> "Slope":
        return Slope(-self.p, self.q) if self.q else self

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"

    def __repr__(self) -> str:
        return f"Slope({self.p}, {self.q})"

    @staticmethod
    def parse(text: str) -> "Slope":
        """Parse the wire format "p/q" (q >= 0 after canonicalization)."""
        parts = text.strip().split("/")
        if len(parts) != 2:
            raise ValueError(f"slope must be written p/q, got {text!r}")
        try:
            p, q = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ValueError(f"slope must be written p/q, got {text!r}") from exc
        return Slope(p, q)


INFINITY = Slope(1, 0)


def det(a: Slope, b: Slope) -> int:
    """The integer p_a*q_b - q_a*p_b; its absolute value 1 means adjacency."""
    return a.p * b.q - a.q * b.p


def adjacent(a: Slope, b: Slope) -> bool:
    return abs(det(a, b)) == 1


def slope_from_direction(v: tuple[int, int]) -> Slope:
    """Slope whose direction vector is parallel to v (v need not be primitive)."""
    x, y = v
    if x == 0 and y == 0:
        raise ValueError("zero vector has no slope")
    return Slope(y, x)


def _extgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_x, x = x, old_x - quot * x
        old_y, y = y, old_y - quot * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def neighbors(a: Slope, height: int) -> list[Slope]:
    """All slopes adjacent to a with height <= the bound, sorted.

    Solves p*s - q*r = +-1 exactly; both solution families are enumerated
    over the height window.  The bound must be at least the height of a.
    """
    if height < a.height:
        raise ValueError(
            f"height bound {height} is below the height of {a} ({a.height})"
        )
    p, q = a.p, a.q
    found: set[Slope] = set()
    _, x, y = _extgcd(p, q)
    # p*x + q*y = 1, so (r0, s0) = (-eps*y, eps*x) solves p*s - q*r = eps.
    for eps in (1, -1):
        r0, s0 = -eps * y, eps * x
        # General solution (r, s) = (r0 + t*p, s0 + t*q); constrain t so
        # that |r| and |s| stay within the height window.
        lo: int | None = None
        hi: int | None = None
        empty = False
        for base, step in ((r0, p), (s0, q)):
            if step == 0:
                if abs(base) > height:
                    empty = True
                    break
                continue
            # -height <= base + t*step <= height, exact integer bounds
            if step > 0:
                t_lo = -((height + base) // step)
                t_hi = (height - base) // step
            else:
                t_lo = -((height - base) // -step)
                t_hi = (height + base) // -step
            lo = t_lo if lo is None else max(lo, t_lo)
            hi = t_hi if hi is None else min(hi, t_hi)
        if empty or lo is None or hi is None:
            continue
        for t in range(lo, hi + 1):
            r, s = r0 + t * p, s0 + t * q
            if s < 0 or (s == 0 and r < 0):
                r, s = -r, -s
            cand = Slope(r, s)
            if cand.height <= height:
                found.add(cand)
    return sorted(found, key=Slope.sort_key)


@lru_cache(maxsize=None)
def slopes_up_to(height: int) -> tuple[Slope, ...]:
    """Every slope of height <= the bound (including 1/0), sorted."""
    if height < 1:
        raise ValueError("height bound must be >= 1")
    out = [INFINITY]
    for q in range(1, height + 1):
        for p in range(-height, height + 1):
            if gcd(abs(p), q) == 1:
                out.append(Slope(p, q))
    out.sort(key=Slope.sort_key)
    return tuple(out)


_DIST_TO_INFINITY: dict[tuple[int, int], int] = {}


def _parents(p: int, q: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """The two neighbours of p/q with denominator < q (q >= 2).

    In the planar Farey tessellation the edge between them separates p/q
    from 1/0, so every path from p/q to 1/0 passes through one of them.
    """
    s1 = pow(p, -1, q)
    r1 = (p * s1 - 1) // q
    s2 = q - s1
    r2 = (p * s2 + 1) // q
    return (r1, s1), (r2, s2)


def _dist_to_infinity(p: int, q: int) -> int:
    if q == 0:
        return 0
    if q == 1:
        return 1
    memo = _DIST_TO_INFINITY
    stack = [(p, q)]
    while stack:
        key = stack[-1]
        if key in memo:
            stack.pop()
            continue
        deps = _parents(*key)
        missing = [d for d in deps if d[1] >= 2 and d not in memo]
        if missing:
            stack.extend(missing)
            continue
        best = min(1 if d[1] == 1 else memo[d] for d in deps)
        memo[key] = 1 + best
        stack.pop()
    return memo[(p, q)]


def distance(a: Slope, b: Slope) -> int:
    """Exact distance between a and b in the infinite Farey graph.

    b is moved to 1/0 by a determinant-one change of coordinates, after
    which the distance to 1/0 is computed by the parent recursion above.
    """
    if a == b:
        return 0
    r, s = b.p, b.q
    _, x, y = _extgcd(r, s)
    # M = [[x, y], [-s, r]] has det = x*r + y*s = 1 and sends b to 1/0.
    p2 = x * a.p + y * a.q
    q2 = -s * a.p + r * a.q
    if q2 < 0:
        p2, q2 = -p2, -q2
    if q2 == 0:
        raise AssertionError("distinct slopes mapped to the same vertex")
    g = gcd(abs(p2), q2)
    return _dist_to_infinity(p2 // g, q2 // g)


def apply_unimodular(m: tuple[int, int, int, int], a: Slope) -> Slope:
    """Linear fractional action of an integer matrix [[m0,m1],[m2,m3]].

    p/q maps to (m0*p + m1*q)/(m2*p + m3*q).  The determinant must be +-1,
    which makes the action a graph automorphism.
    """
    m0, m1, m2, m3 = m
    if abs(m0 * m3 - m1 * m2) != 1:
        raise ValueError("matrix must have determinant +-1")
    return Slope(m0 * a.p + m1 * a.q, m2 * a.p + m3 * a.q)


def slopes_in_interval(lo: Fraction, hi: Fraction, height: int) -> list[Slope]:
    """Finite slopes lo <= p/q <= hi of height <= the bound, sorted."""
    out = [
        s
        for s in slopes_up_to(height)
        if not s.is_infinity and lo <= Fraction(s.p, s.q) <= hi
    ]
    return sorted(out, key=Slope.sort_key)


def iter_pairs(slopes: Iterable[Slope]) -> Iterator[tuple[Slope, Slope]]:
    items = list(slopes)
    for i, a in enumerate(items):
        for b in items[i + 1 :]:
            yield a, b
