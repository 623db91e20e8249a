import itertools
from fractions import Fraction

import pytest

from fareyflats.orbifold import (
    Configuration,
    DegenerateRealization,
    ObjectKind,
    PieceKind,
    RealizationContext,
    SegmentRep,
    _strict_between_count,
    corner_lift,
    curve,
    endpoint_linking,
    intersection_number,
    literal_intersection_number,
    partner_label,
    seam,
    seam_pairs,
    tightness_check,
    torus_arc,
    wave,
)
from fareyflats.slopes import Slope, det, slopes_up_to

T = PieceKind.ONE_HOLED_TORUS
S = PieceKind.FOUR_HOLED_SPHERE
inum = intersection_number


class TestDescriptors:
    def test_partner_label_parity(self):
        assert partner_label(Slope(0, 1), "00") == "10"
        assert partner_label(Slope(1, 0), "00") == "01"
        assert partner_label(Slope(1, 1), "00") == "11"
        assert partner_label(Slope(2, 1), "01") == "11"

    def test_seam_pairs_partition_corners(self):
        for s in slopes_up_to(5):
            first, second = seam_pairs(s)
            assert set(first) | set(second) == {"00", "10", "01", "11"}
            assert not set(first) & set(second)

    def test_seam_rejects_mismatched_corners(self):
        with pytest.raises(ValueError):
            seam(S, Slope(3, 1), ("00", "10"))

    def test_torus_seam_is_arc(self):
        arc = torus_arc(Slope(1, 2))
        assert arc.endpoints == ("m", "m")

    def test_wave_descriptor(self):
        s = seam(S, Slope(0, 1))
        w = wave(s, over="10")
        assert w.endpoints == ("00",)
        assert w.over == "10"
        assert w.seam_descriptor == s
        with pytest.raises(ValueError):
            wave(s, over="11")

    def test_curve_takes_no_endpoints(self):
        with pytest.raises(ValueError):
            from fareyflats.orbifold import PieceObject

            PieceObject(
                piece=S, kind=ObjectKind.CURVE, slope=Slope(1, 1), endpoints=("00",)
            )


class TestFrozenInstances:
    """Values worked out by hand on the flat models and pinned here."""

    def test_torus_instances(self):
        assert inum(curve(T, Slope(0, 1)), curve(T, Slope(1, 0))) == 1
        assert inum(torus_arc(Slope(-1, 1)), torus_arc(Slope(1, 1))) == 1
        assert inum(torus_arc(Slope(0, 1)), torus_arc(Slope(1, 0))) == 0
        assert inum(curve(T, Slope(0, 1)), torus_arc(Slope(1, 0))) == 1

    def test_pillowcase_seam_instances(self):
        s01 = seam(S, Slope(0, 1))  # corners {00, 10}
        t10 = seam(S, Slope(1, 0))  # corners {00, 01}
        assert inum(s01, t10) == 0
        assert inum(curve(S, Slope(0, 1)), t10) == 1
        s21_same = seam(S, Slope(2, 1), ("00", "10"))
        s21_other = seam(S, Slope(2, 1), ("01", "11"))
        assert inum(s01, s21_same) == 0
        assert inum(s01, s21_other) == 1
        assert inum(curve(S, Slope(0, 1)), s21_same) == 2
        assert inum(curve(S, Slope(0, 1)), s21_other) == 2
        assert inum(s01, seam(S, Slope(4, 1), ("00", "10"))) == 1
        assert inum(curve(S, Slope(0, 1)), seam(S, Slope(4, 1), ("00", "10"))) == 4
        assert inum(seam(S, Slope(1, 1)), seam(S, Slope(-1, 1), ("01", "10"))) == 1

    def test_special_couple_instance(self):
        s01 = seam(S, Slope(0, 1))
        assert inum(s01, curve(S, Slope(2, 1))) == 2
        assert inum(s01, curve(S, Slope(1, 2))) == 1

    def test_wave_instances(self):
        s01 = seam(S, Slope(0, 1))
        w = wave(s01, over="10")
        assert inum(w, s01) == 0
        assert inum(w, curve(S, Slope(0, 1))) == 0
        assert inum(w, curve(S, Slope(2, 1))) == 4
        assert inum(w, seam(S, Slope(1, 0))) == 0
        w2 = wave(seam(S, Slope(1, 0)), over="01")
        assert inum(w, w2) == 0


class TestLaws:
    """Crossing-number laws emerge from counting; none are assumed."""

    def test_torus_curve_curve(self):
        for a, b in itertools.combinations(slopes_up_to(6), 2):
            assert inum(curve(T, a), curve(T, b)) == abs(det(a, b))

    def test_pillowcase_curve_curve(self):
        for a, b in itertools.combinations(slopes_up_to(6), 2):
            assert inum(curve(S, a), curve(S, b)) == 2 * abs(det(a, b))

    def test_torus_arc_arc(self):
        for a, b in itertools.combinations(slopes_up_to(6), 2):
            assert inum(torus_arc(a), torus_arc(b)) == abs(det(a, b)) - 1

    def test_torus_curve_arc(self):
        for a, b in itertools.combinations(slopes_up_to(5), 2):
            assert inum(curve(T, a), torus_arc(b)) == abs(det(a, b))
            assert inum(curve(T, b), torus_arc(a)) == abs(det(a, b))

    def test_pillowcase_seam_curve(self):
        for a, b in itertools.combinations(slopes_up_to(5), 2):
            for pair in seam_pairs(a):
                assert inum(seam(S, a, pair), curve(S, b)) == abs(det(a, b))

    def test_pillowcase_seam_seam(self):
        for a, b in itertools.combinations(slopes_up_to(5), 2):
            d = abs(det(a, b))
            for pa in seam_pairs(a):
                for pb in seam_pairs(b):
                    j = len(set(pa) & set(pb))
                    got = inum(seam(S, a, pa), seam(S, b, pb))
                    assert d >= j and (d - j) % 2 == 0
                    assert got == (d - j) // 2

    def test_same_slope_objects_disjoint(self):
        a = Slope(2, 3)
        pair0, pair1 = seam_pairs(a)
        assert inum(seam(S, a, pair0), seam(S, a, pair1)) == 0
        assert inum(seam(S, a, pair0), curve(S, a)) == 0
        assert inum(curve(T, a), torus_arc(a)) == 0


@pytest.fixture(scope="module")
def mixed_objects():
    return [
        curve(S, Slope(1, 2)),
        seam(S, Slope(3, 1), ("00", "11")),
        seam(S, Slope(1, 1)),
        curve(S, Slope(-1, 1)),
        wave(seam(S, Slope(1, 2)), over=seam(S, Slope(1, 2)).endpoints[1]),
        wave(seam(S, Slope(0, 1)), over="10"),
    ]


class TestRoutesAgree:
    def test_symmetry_and_dual_route(self, mixed_objects):
        for a, b in itertools.combinations(mixed_objects, 2):
            fwd = inum(a, b)
            assert fwd == inum(b, a)
            assert fwd == literal_intersection_number(a, b)

    def test_torus_dual_route(self):
        objs = [
            curve(T, Slope(1, 2)),
            torus_arc(Slope(1, 2)),
            torus_arc(Slope(-2, 3)),
            curve(T, Slope(1, 0)),
        ]
        for a, b in itertools.combinations(objs, 2):
            assert inum(a, b) == literal_intersection_number(a, b)

    def test_anchor_collision_is_resolved(self):
        # The cross functional of these two slopes divides small shift
        # denominators; the prime-step retry must still find a clean anchor.
        assert inum(curve(S, Slope(-1, 1)), curve(S, Slope(4, 3))) == 2 * abs(
            det(Slope(-1, 1), Slope(4, 3))
        )


class TestStability:
    def test_counts_survive_offset_shrinking(self, mixed_objects):
        for a, b in itertools.combinations(mixed_objects, 2):
            ctx = RealizationContext((a, b))
            assert inum(a, b, ctx) == inum(a, b, ctx.scaled(2))
            assert inum(a, b, ctx) == inum(a, b, ctx.scaled(5))

    def test_counts_survive_window_widening(self, mixed_objects):
        for a, b in itertools.combinations(mixed_objects[:4], 2):
            assert literal_intersection_number(
                a, b, margin=1
            ) == literal_intersection_number(a, b, margin=2)


class TestTightness:
    def test_canonical_realizations_are_tight(self):
        report = tightness_check(curve(T, Slope(0, 1)), curve(T, Slope(1, 0)))
        assert report["tight"] and report["canonical"] == 1

    def test_wiggly_realization_detected(self):
        # A period of the horizontal curve drawn with a backtracking zigzag
        # crosses each vertical line three times instead of once.
        f = Fraction
        zig = [
            SegmentRep(a=(f(0), f(1, 3)), b=(f(2, 3), f(2, 5))),
            SegmentRep(a=(f(2, 3), f(2, 5)), b=(f(1, 5), f(1, 2))),
            SegmentRep(a=(f(1, 5), f(1, 2)), b=(f(1), f(1, 3))),
        ]
        report = tightness_check(
            curve(T, Slope(0, 1)), curve(T, Slope(1, 0)), custom_x=zig
        )
        assert report["canonical"] == 1
        assert report["literal"] == 3
        assert not report["tight"]

    def test_degenerate_custom_realization_raises(self):
        # A custom arc through a corner it does not end at must be refused.
        f = Fraction
        diag = [SegmentRep(a=(f(-1, 2), f(-1, 2)), b=(f(1, 2), f(1, 2)))]
        with pytest.raises(DegenerateRealization):
            literal_intersection_number(
                curve(S, Slope(1, 1)),
                seam(S, Slope(1, 0)),
                custom_x=diag,
            )


class TestConfiguration:
    def test_matrix_is_symmetric_with_zero_diagonal(self, mixed_objects):
        cfg = Configuration(mixed_objects)
        m = cfg.intersection_matrix()
        n = len(mixed_objects)
        for i in range(n):
            assert m[i][i] == 0
            for j in range(n):
                assert m[i][j] == m[j][i]

    def test_rejects_mixed_pieces(self):
        with pytest.raises(ValueError):
            Configuration([curve(T, Slope(0, 1)), curve(S, Slope(0, 1))])


class TestEndpointLinking:
    def test_always_alternates(self):
        for a, b in itertools.combinations(slopes_up_to(8), 2):
            assert endpoint_linking(torus_arc(a), torus_arc(b))

    def test_rejects_same_slope(self):
        with pytest.raises(ValueError):
            endpoint_linking(torus_arc(Slope(1, 2)), torus_arc(Slope(1, 2)))

    def test_rejects_non_arcs(self):
        with pytest.raises(ValueError):
            endpoint_linking(curve(T, Slope(0, 1)), torus_arc(Slope(1, 0)))


class TestSerialization:
    def test_object_round_trip(self, mixed_objects):
        from fareyflats.orbifold import PieceObject

        for obj in [*mixed_objects, torus_arc(Slope(1, 2)), curve(T, Slope(0, 1))]:
            assert PieceObject.from_json_dict(obj.to_json_dict()) == obj

    def test_configuration_round_trip(self, mixed_objects):
        cfg = Configuration(mixed_objects)
        back = Configuration.from_json_dict(cfg.to_json_dict())
        assert back.objects == cfg.objects
        assert back.intersection_matrix() == cfg.intersection_matrix()

    def test_configuration_rejects_tampered_offsets(self, mixed_objects):
        data = Configuration(mixed_objects).to_json_dict()
        data["offsets"]["wave_gap"] = "1/3"
        with pytest.raises(ValueError):
            Configuration.from_json_dict(data)

    def test_configuration_rejects_wrong_piece(self, mixed_objects):
        data = Configuration(mixed_objects).to_json_dict()
        data["piece"] = PieceKind.ONE_HOLED_TORUS.value
        with pytest.raises(ValueError):
            Configuration.from_json_dict(data)

    def test_offsets_are_optional_on_input(self, mixed_objects):
        data = Configuration(mixed_objects).to_json_dict()
        del data["offsets"]
        back = Configuration.from_json_dict(data)
        assert back.objects == tuple(mixed_objects)


def test_strict_between_count():
    f = Fraction
    assert _strict_between_count(f(1, 2), f(5, 2)) == 2
    assert _strict_between_count(f(0), f(1)) == 0
    assert _strict_between_count(f(0), f(2)) == 1
    assert _strict_between_count(f(3), f(3)) == 0
    assert _strict_between_count(f(7, 3), f(-1, 3)) == 3


def test_corner_lift_round_trip():
    assert corner_lift("10") == (Fraction(1, 2), Fraction(0))
    assert corner_lift("01") == (Fraction(0), Fraction(1, 2))
