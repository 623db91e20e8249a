"""A tour of the slope graph: distances, geodesics, and a convex trap.

Vertices are reduced fractions p/q plus 1/0; two slopes are joined when
|ps - rq| = 1.  The closed-form distance is cross-checked against plain
breadth-first search, all shortest paths between two slopes are listed,
and the interval [-1, 1] is shown to be convex without containing every
geodesic between its members.
"""

from fractions import Fraction

from fareyflats.geodesics import (
    Subgraph,
    bfs_distance,
    build_ball,
    check_subgraph,
    geodesics,
)
from fareyflats.slopes import Slope, distance, neighbors, slopes_in_interval


def main() -> None:
    a, b = Slope.parse("2/5"), Slope.parse("5/3")
    print(f"distance({a}, {b}) = {distance(a, b)}")
    print(f"breadth-first search agrees: {bfs_distance(a, b, 60)}")
    print(f"neighbors of {a} up to height 5:",
          ", ".join(str(s) for s in neighbors(a, 5)))
    print()

    left, right = Slope.parse("-1/1"), Slope.parse("1/1")
    found = geodesics(left, right, 8)
    print(f"all shortest paths {left} -> {right} (length {found.length}):")
    for path in found.paths:
        print("   " + " - ".join(str(s) for s in path))
    print()

    host = build_ball(Slope(0, 1), 6, 12)
    interval = Subgraph.induced(
        slopes_in_interval(Fraction(-1), Fraction(1), 12), host
    )
    report = check_subgraph(interval, host)
    print("the interval [-1, 1] as an induced subgraph:")
    print(f"   convex:            {report['convex']}")
    print(f"   totally geodesic:  {report['totally_geodesic']}")
    print(f"   escaping geodesic: {' - '.join(report['geodesic_witness'])}")
    print("the path through 1/0 leaves the interval even though both of")
    print("its endpoints, and a same-length path through 0/1, stay inside.")


if __name__ == "__main__":
    main()
