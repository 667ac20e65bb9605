from fractions import Fraction

import pytest

import halving_circles as hc


def test_predicates():
    assert hc.orientation((0, 0), (1, 0), (0, 1)) == "CounterClockwise"
    assert hc.in_circle((0, 0), (2, 0), (0, 2), (1, 1)) == "Inside"
    assert hc.in_circle((0, 0), (2, 0), (0, 2), ("3/2", "7/2")) == "Outside"
    assert Fraction(hc.circumcenter_param((0, 0), (4, 0), (0, 4))) == Fraction(1, 2)
    with pytest.raises(hc.HalvingError):
        hc.in_circle((0, 0), (1, 1), (2, 2), (5, 0))


def test_point_set_round_trip():
    s = hc.PointSet([(0, 0), ("1/2", "0.25"), (-3, 7)])
    assert s.points()[1] == ("1/2", "1/4")
    assert hc.PointSet.from_text(s.to_text()) == s
    assert hc.PointSet.from_text(s.to_json()) == s
    assert len(s) == 3
    with pytest.raises(hc.DuplicatePoints):
        hc.PointSet([(0, 0), (0, 0), (1, 2)])
    with pytest.raises(hc.ParseError):
        hc.PointSet.from_text("halving-points v1\n1 2 3\n")


def test_general_position():
    report = hc.check_general_position([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert not report["ok"]
    assert report["concyclic_quadruples"] == [[0, 1, 2, 3]]
    assert hc.gen_random(9, 4).in_general_position()


@pytest.mark.parametrize("m", [3, 5, 7, 9, 11])
def test_halving_count(m):
    n = (m - 1) // 2
    s = hc.gen_random(m, 100 + m)
    assert hc.count_halving(s) == n * n
    hist = hc.census(s, engine="sweep")
    assert sum(hist.values()) == m * (m - 1) * (m - 2) // 6
    assert hist.get((n - 1, n - 1), 0) == n * n
    assert hc.verify_theorem1(s)["pass"]
    assert hc.verify_theorem2(s)["pass"]
    assert hc.verify_pair_odd(s)["pass"]


def test_classify_and_pairs():
    s = hc.gen_random(7, 2)
    a, b = hc.classify_circle(s, 0, 1, 2)
    assert a + b == 4
    assert hc.count_pair_halving(s, 0, 1) % 2 == 1
    with pytest.raises(hc.EvenSize):
        hc.count_halving(hc.gen_random(6, 1))


def test_gon_recursion():
    report = hc.verify_gon_recursion(3)
    assert report["pass"]
    assert report["values"]["N_7"] == 9
    assert len(hc.gen_gon_config(3)) == 7


def test_deformation():
    s = hc.PointSet([(0, 0), (10, 0), (5, 8), (20, 1), (-4, 3)])
    events = hc.find_crossings(s, 3, [(20, 1), (20, -1)])
    assert [e["boundary"] for e in events] == ["line(0,1)"]
    report = hc.verify_path_invariance(s, 3, [(20, 1), (-6, -2), (20, -1)])
    assert report["pass"], report["detail"]
    assert report["halving_start"] == report["halving_end"] == 4
    with pytest.raises(hc.InadmissiblePath):
        hc.find_crossings(s, 4, [(-4, 3), (4, -3)])


def test_svg():
    svg = hc.render_svg(hc.gen_random(5, 3), show_halving=True)
    assert svg.count("<circle") == 5 + 4
