import pytest

from oracles import count_by_noncrossing_sets, random_star_polygon
from trichor.errors import (
    CrossingChordsError,
    InvalidChordError,
    NotSimpleError,
    OutOfRangeError,
    TooLargeError,
)
from trichor.geometry import Point
from trichor.polygons import (
    Chord,
    SimplePolygon,
    brute_force_count,
    catalan,
    catalan_generalized,
    count_triangulations,
    read_polygon,
    reflex_template,
    tr_with_chords,
    write_polygon,
)
from trichor.rng import SplitMix64


def convex_gon(k):
    return SimplePolygon([Point(t, t * t) for t in range(k)])


def test_catalan_values():
    assert [catalan(m) for m in range(7)] == [1, 1, 2, 5, 14, 42, 132]


def test_catalan_rejects_negative():
    with pytest.raises(OutOfRangeError):
        catalan(-1)


def test_generalized_catalan_known_values():
    assert catalan_generalized(2, 1) == 1  # C'_2
    assert catalan_generalized(3, 1) == 3  # C'_3
    assert catalan_generalized(4, 2) == 6  # C''_4
    assert catalan_generalized(5, 2) == 19  # C''_5
    assert catalan_generalized(4, 0) == catalan(4)


def test_generalized_catalan_identities():
    for n in range(2, 12):
        assert catalan_generalized(n, 1) == catalan(n) - catalan(n - 1)
    for n in range(4, 12):
        assert catalan_generalized(n, 2) == catalan(n) - 2 * catalan(n - 1) + catalan(n - 2)


def test_generalized_catalan_range_errors():
    with pytest.raises(OutOfRangeError):
        catalan_generalized(3, 2)  # r > n/2
    with pytest.raises(OutOfRangeError):
        catalan_generalized(2, -1)


def test_triangle_has_one_triangulation():
    assert count_triangulations(convex_gon(3)) == 1


def test_convex_counts_are_catalan():
    for k in range(3, 10):
        assert count_triangulations(convex_gon(k)) == catalan(k - 2)


def test_reflex_templates_match_formula():
    for n in range(2, 8):
        assert count_triangulations(reflex_template(n, 1)) == catalan_generalized(n, 1)
    for n in range(4, 8):
        assert count_triangulations(reflex_template(n, 2)) == catalan_generalized(n, 2)


def test_reflex_templates_match_brute_force():
    for n in range(2, 7):
        t = reflex_template(n, 1)
        assert brute_force_count(t) == count_triangulations(t)
    for n in range(4, 7):
        t = reflex_template(n, 2)
        assert brute_force_count(t) == count_triangulations(t)


def test_template_range_errors():
    with pytest.raises(OutOfRangeError):
        reflex_template(1, 1)
    with pytest.raises(OutOfRangeError):
        reflex_template(3, 2)
    with pytest.raises(OutOfRangeError):
        reflex_template(5, 3)


def test_dp_equals_brute_force_on_random_star_polygons():
    rng = SplitMix64(77)
    for i in range(60):
        k = 4 + (i % 7)  # 4..10
        poly = random_star_polygon(k, rng)
        dp = count_triangulations(poly)
        bf = brute_force_count(poly)
        assert dp == bf, (i, k, dp, bf)
        assert 1 <= dp <= catalan(k - 2)
        assert (dp == catalan(k - 2)) == poly.is_convex()


def test_dp_equals_noncrossing_subset_count():
    rng = SplitMix64(123)
    for i in range(20):
        k = 4 + (i % 5)
        poly = random_star_polygon(k, rng)
        assert count_triangulations(poly) == count_by_noncrossing_sets(poly)


def test_brute_force_size_limit():
    with pytest.raises(TooLargeError):
        brute_force_count(convex_gon(13))


def test_tr_with_chords_hexagon_main_diagonal():
    hexagon = convex_gon(6)
    assert tr_with_chords(hexagon, [Chord(0, 3)]) == 4  # C_2 * C_2
    assert count_triangulations(hexagon) == 14


def test_tr_with_chords_pentagon_ear():
    pentagon = convex_gon(5)
    assert tr_with_chords(pentagon, [Chord(0, 2)]) == 2  # triangle x quad


def test_tr_with_chords_empty_is_full_count():
    p = convex_gon(6)
    assert tr_with_chords(p, []) == count_triangulations(p)


def test_tr_with_chords_partition_product():
    p = convex_gon(7)
    chords = [Chord(0, 3), Chord(3, 6)]
    got = tr_with_chords(p, chords)
    # pieces: 0-1-2-3, 3-4-5-6, 6-0-3(triangle)
    assert got == catalan(2) * catalan(2) * 1


def test_tr_with_chords_crossing_rejected():
    p = convex_gon(6)
    with pytest.raises(CrossingChordsError):
        tr_with_chords(p, [Chord(0, 3), Chord(1, 4)])


def test_tr_with_chords_invalid_chord():
    p = convex_gon(6)
    with pytest.raises(InvalidChordError):
        tr_with_chords(p, [Chord(0, 1)])  # adjacent
    dented = reflex_template(4, 1)
    blocked = Chord(0, len(dented) - 2)  # the pair the reflex vertex blocks
    with pytest.raises(InvalidChordError):
        tr_with_chords(dented, [blocked])


def test_chord_normalizes_and_validates():
    assert Chord(5, 2) == Chord(2, 5)
    with pytest.raises(InvalidChordError):
        Chord(3, 3)


def test_bowtie_rejected():
    with pytest.raises(NotSimpleError):
        SimplePolygon([(0, 0), (2, 2), (2, 0), (0, 2)])


def test_kernel_witness_validated():
    # A square is star-shaped around its centre but not around an
    # outside point.
    sq = [(0, 0), (4, 0), (4, 4), (0, 4)]
    SimplePolygon(sq, kernel_witness=Point(2, 2))
    with pytest.raises(NotSimpleError):
        SimplePolygon(sq, kernel_witness=Point(9, 2))


def test_cw_input_normalized_to_ccw():
    p = SimplePolygon([(0, 0), (0, 4), (4, 4), (4, 0)])
    assert count_triangulations(p) == 2


def test_visibility_blocked_through_vertex():
    # Vertex 2 sits on the segment from 0 to 4's candidate line: grazing
    # a vertex counts as blocked.
    poly = SimplePolygon([(0, 0), (4, 0), (4, 4), (2, 2), (0, 4)])
    assert not poly.sees(1, 4)  # segment (4,0)-(0,4) passes through (2,2)


def test_polygon_roundtrip(tmp_path):
    poly = reflex_template(4, 1)
    path = tmp_path / "poly.txt"
    write_polygon(poly, path)
    again = read_polygon(path)
    assert again.boundary == poly.boundary


def test_exclusive_chord_pair_sums_to_total():
    # In the one-reflex pentagon, the chords (1,4) and (0,2) cross, and
    # every triangulation contains exactly one of them, so their chord
    # counts add up to the full count.
    t = reflex_template(3, 1)
    total = count_triangulations(t)
    a = tr_with_chords(t, [Chord(1, 4)])
    b = tr_with_chords(t, [Chord(0, 2)])
    assert (a, b, total) == (2, 1, 3)
    assert a + b == total
    # Requiring two chords at once narrows further.
    assert tr_with_chords(t, [Chord(1, 4), Chord(1, 3)]) == 1


def test_brute_force_on_convex_polygons():
    for k in range(3, 10):
        assert brute_force_count(convex_gon(k)) == catalan(k - 2)
