"""Why one move can shift a projected vertex by two steps.

A path of decompositions casts a per-piece shadow; projecting each shadow
into the product of slope graphs usually moves at most one step per move.
The demo builds the crafted single-edge scenario whose projections sit
two steps apart -- a seam crossing a contained curve twice leaves no
one-step completion -- then runs the seeded fixture suites that confirm
the bounds everywhere the couple hypothesis holds.
"""

from fareyflats.shadows import detect_special_couples, projection_gap_scenario
from fareyflats.sweeps import (
    couple_trace_suite,
    disjoint_projection_suite,
    sphere_move_suite,
    torus_move_suite,
)


def main() -> None:
    path, audit = projection_gap_scenario()
    print("single-move scenario over two four-holed-sphere pieces:")
    print(f"   edge radius r:                 {audit['r']}")
    print(f"   best completion distance:      {audit['best']}")
    print(f"   within the radius bound:       {audit['pass']}")
    print(f"   dropping the far piece's mark: {audit['without_far_trace']}")
    print(f"   disjoint-control comparison:   {audit['disjoint_control']}")
    couples = detect_special_couples(path)
    print(f"   special couples on the path:   {len(couples)}")
    print("the seam crosses a contained curve twice, and every completion")
    print("of the projections stays two steps apart; no equally short")
    print("completion exists one step away.")
    print()

    print("seeded suites confirming the one-step bounds elsewhere:")
    for driver, kwargs in (
        (disjoint_projection_suite, {"samples": 120, "seed": 0}),
        (torus_move_suite, {"samples": 120, "seed": 0}),
        (sphere_move_suite, {"samples": 60, "seed": 0}),
        (couple_trace_suite, {"samples": 120, "seed": 0}),
    ):
        report = driver(**kwargs)
        extra = ""
        if report.get("witness_kinds"):
            kinds = ", ".join(
                f"{k}: {v}" for k, v in sorted(report["witness_kinds"].items())
            )
            extra = f"  (witnesses {kinds})"
        print(f"   {report['driver']}: checked {report['checked']},"
              f" violations {len(report['violations'])}{extra}")


if __name__ == "__main__":
    main()
