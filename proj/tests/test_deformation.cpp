#include "halving/deformation.hpp"
#include "halving/errors.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace halving;

namespace {

PointSet make(std::initializer_list<std::pair<long, long>> pts) {
    std::vector<Point> v;
    for (auto [x, y] : pts) v.emplace_back(x, y);
    return PointSet(std::move(v));
}

MotionPath path_of(std::size_t moving, std::initializer_list<std::pair<long, long>> pts) {
    MotionPath p;
    p.moving_index = moving;
    for (auto [x, y] : pts) p.waypoints.emplace_back(x, y);
    return p;
}

/// Boundary signs at p computed without the library predicates.
std::vector<int> oracle_signs(const PointSet& s, std::size_t moving, const Point& p) {
    std::vector<int> out;
    for (const auto& b : boundaries(s.size(), moving)) {
        const auto& [i, j, k] = b.indices;
        if (b.kind == Boundary::Kind::Line) {
            Scalar cross = (s[j].x - s[i].x) * (p.y - s[i].y) - (s[j].y - s[i].y) * (p.x - s[i].x);
            out.push_back(sgn(cross));
        } else {
            out.push_back(-oracle::distance_side(oracle::circle_through(s[i], s[j], s[k]), p));
        }
    }
    return out;
}

std::size_t differing(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

// Static triangle A=(0,0), B=(10,0), C=(5,8); its circumcircle has center
// (5, 39/16) and radius about 5.56.
const PointSet kTriangle = make({{0, 0}, {10, 0}, {5, 8}, {20, 1}});

}  // namespace

TEST(Boundaries, EnumeratesLinesThenCircles) {
    const auto b = boundaries(5, 2);
    ASSERT_EQ(b.size(), 6u + 4u);
    EXPECT_EQ(b.front(), Boundary::line(0, 1));
    EXPECT_EQ(b[6], Boundary::circle(0, 1, 3));
    for (const auto& x : b) {
        for (std::size_t t = 0; t < (x.kind == Boundary::Kind::Line ? 2u : 3u); ++t) EXPECT_NE(x.indices[t], 2u);
    }
    EXPECT_EQ(to_string(Boundary::circle(4, 1, 3)), "circle(1,3,4)");
}

TEST(EdgePolynomial, MatchesDirectEvaluation) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = gen_random(6, 100 + trial, 50);
        const Point from = oracle::random_point(rng), to = oracle::random_point(rng);
        for (const auto& b : boundaries(6, 0)) {
            const auto poly = edge_polynomial(s, b, from, to);
            EXPECT_LE(poly.degree(), b.kind == Boundary::Kind::Line ? 1 : 2);
            for (int k = 0; k < 4; ++k) {
                const Scalar lambda = oracle::random_rational(rng, 20, 13);
                const Point p(Scalar(from.x + lambda * (to.x - from.x)), Scalar(from.y + lambda * (to.y - from.y)));
                EXPECT_EQ(sgn(poly(lambda)), boundary_sign(s, b, p));
            }
        }
    }
}

TEST(FindCrossings, SingleLineCrossing) {
    const auto events = find_crossings(kTriangle, path_of(3, {{20, 1}, {20, -1}}));
    ASSERT_EQ(events.size(), 1u);
    EXPECT_EQ(events[0].boundary, Boundary::line(0, 1));
    EXPECT_LT(events[0].bracket_lo, Scalar(1, 2));
    EXPECT_GT(events[0].bracket_hi, Scalar(1, 2));

    const auto x = verify_crossing_exchange(kTriangle, events[0]);
    EXPECT_TRUE(x.pass) << x.detail;
    ASSERT_EQ(x.affected.size(), 1u);
    EXPECT_EQ(x.affected[0].after, x.affected[0].before.swapped());
}

TEST(FindCrossings, ChordEntersAndLeavesTheCircle) {
    const auto s = kTriangle.with_point(3, Point(-3L, 3L));
    const auto events = find_crossings(s, path_of(3, {{-3, 3}, {13, 3}}));
    std::size_t circle_events = 0, entering = 0;
    for (const auto& e : events) {
        if (e.boundary != Boundary::circle(0, 1, 2)) continue;
        ++circle_events;
        const auto x = verify_crossing_exchange(s, e);
        EXPECT_TRUE(x.pass) << x.detail;
        entering += x.entering;
    }
    EXPECT_EQ(circle_events, 2u);
    EXPECT_EQ(entering, 1u);
}

TEST(FindCrossings, EventsChangeExactlyOneBoundarySign) {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = gen_random(7, 200 + trial, 60);
        const auto path = fixtures::random_path(s, rng, 60, 2);
        const auto events = find_crossings(s, path);
        EXPECT_FALSE(events.empty());
        const auto all = boundaries(7, path.moving_index);
        for (const auto& e : events) {
            const auto before = oracle_signs(s, e.moving_index, e.before_point);
            const auto after = oracle_signs(s, e.moving_index, e.after_point);
            EXPECT_EQ(differing(before, after), 1u);
            const auto idx = std::find(all.begin(), all.end(), e.boundary) - all.begin();
            EXPECT_NE(before[idx], after[idx]);
            EXPECT_EQ(std::count(before.begin(), before.end(), 0), 0);
            EXPECT_EQ(std::count(after.begin(), after.end(), 0), 0);
            EXPECT_LT(e.before_sample, e.after_sample);
            EXPECT_EQ(e.before_point, point_on_path(path, e.segment_index, e.before_sample));
        }
        // Path order.
        for (std::size_t i = 1; i < events.size(); ++i) {
            const auto& a = events[i - 1];
            const auto& b = events[i];
            EXPECT_TRUE(a.segment_index < b.segment_index ||
                        (a.segment_index == b.segment_index && a.after_sample < b.before_sample));
        }
    }
}

TEST(CrossingExchange, EveryEventConservesTheHalvingCount) {
    std::mt19937_64 rng(33);
    std::size_t lines = 0, circles = 0;
    for (int trial = 0; trial < 6; ++trial) {
        const auto s = gen_random(7, 300 + trial, 80);
        const auto path = fixtures::random_path(s, rng, 80, 2);
        for (const auto& e : find_crossings(s, path)) {
            const auto x = verify_crossing_exchange(s, e);
            EXPECT_TRUE(x.pass) << to_string(e.boundary) << ": " << x.detail;
            EXPECT_EQ(x.histogram_before.halving(), x.histogram_after.halving());
            EXPECT_EQ(x.affected.size(), e.boundary.kind == Boundary::Kind::Line ? 1u : 4u);
            if (e.boundary.kind == Boundary::Kind::Circle) {
                EXPECT_EQ(x.changed.size(), 4u);
                // The 2-for-2 trade leaves even the ordered histogram untouched.
                EXPECT_EQ(x.histogram_before, x.histogram_after);
            }
            (e.boundary.kind == Boundary::Kind::Line ? lines : circles)++;
        }
    }
    EXPECT_GT(lines, 0u);
    EXPECT_GT(circles, 0u);
}

TEST(CrossingExchange, DetectsAFabricatedEvent) {
    // Claim a crossing of line (0,2) where the path really crosses line (0,1).
    auto events = find_crossings(kTriangle, path_of(3, {{20, 1}, {20, -1}}));
    ASSERT_EQ(events.size(), 1u);
    auto forged = events[0];
    forged.boundary = Boundary::line(0, 2);
    EXPECT_FALSE(verify_crossing_exchange(kTriangle, forged).pass);
}

TEST(PathInvariance, RandomPaths) {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 4; ++trial) {
        const auto s = gen_random(9, 400 + trial, 100);
        const auto path = fixtures::random_path(s, rng, 100, 2);
        const auto r = verify_path_invariance(s, path);
        EXPECT_TRUE(r.pass) << r.detail;
        EXPECT_TRUE(r.signs_chain);
        ASSERT_TRUE(r.halving_start && r.halving_end);
        EXPECT_EQ(*r.halving_start, 16u);
        EXPECT_EQ(*r.halving_end, 16u);
        EXPECT_EQ(r.histogram_end, census(s.with_point(path.moving_index, path.waypoints.back())));
    }
}

TEST(PathInvariance, OutAndBack) {
    const auto s = gen_random(7, 5, 50);
    MotionPath path{2, {s[2], Point(40L, -37L), s[2]}};
    const auto r = verify_path_invariance(s, path);
    EXPECT_TRUE(r.pass) << r.detail;
    EXPECT_EQ(r.histogram_start, r.histogram_end);
    // Every crossing on the way out is undone on the way back.
    EXPECT_EQ(r.exchanges.size() % 2, 0u);
}

TEST(PathInvariance, BetweenTwoRandomArrangements) {
    const auto a = gen_random(7, 1, 1000);
    const auto b = gen_random(7, 2, 1000);
    MotionPath path{0, {a[0], b[0]}};
    ASSERT_TRUE(a.with_point(0, b[0]).in_general_position());
    const auto r = verify_path_invariance(a, path);
    EXPECT_TRUE(r.pass) << r.detail;
    EXPECT_EQ(*r.halving_start, 9u);
    EXPECT_EQ(*r.halving_end, 9u);
}

TEST(PathInvariance, EvenSetsConserveUnorderedClasses) {
    std::mt19937_64 rng(35);
    const auto s = gen_random(8, 9, 100);
    const auto r = verify_path_invariance(s, fixtures::random_path(s, rng, 100, 1));
    EXPECT_TRUE(r.pass) << r.detail;
    EXPECT_FALSE(r.halving_start.has_value());
}

TEST(InadmissiblePaths, Tangent) {
    // Circle x^2 + y^2 = 25 through the static points; the path y = 5 touches it at (0,5).
    const auto s = make({{5, 0}, {-5, 0}, {3, -4}, {-10, 5}});
    EXPECT_THROW(find_crossings(s, path_of(3, {{-10, 5}, {10, 5}})), TangentialContact);
}

TEST(InadmissiblePaths, ThroughAStaticPoint) {
    const auto s = make({{0, 0}, {10, 1}, {3, 9}, {-5, -1}});
    EXPECT_THROW(find_crossings(s, path_of(3, {{-5, -1}, {5, 1}})), SimultaneousCrossing);
}

TEST(InadmissiblePaths, ThroughTwoLinesAtOnce) {
    // Lines (0,1) and (2,3) meet at (5,5), which the path passes through.
    const auto s = make({{0, 0}, {10, 10}, {2, 8}, {8, 2}, {1, 5}});
    ASSERT_TRUE(s.in_general_position());
    EXPECT_THROW(find_crossings(s, path_of(4, {{1, 5}, {9, 5}})), SimultaneousCrossing);
}

TEST(InadmissiblePaths, BadWaypoints) {
    const auto s = gen_random(5, 3, 100);
    EXPECT_THROW(find_crossings(s, MotionPath{0, {Point(1000L, 1000L), Point(0L, 0L)}}), InadmissiblePath);
    EXPECT_THROW(find_crossings(s, MotionPath{0, {s[0]}}), InadmissiblePath);
    EXPECT_THROW(find_crossings(s, MotionPath{0, {s[0], s[0]}}), InadmissiblePath);
    EXPECT_THROW(find_crossings(s, MotionPath{0, {s[0], s[1]}}), InadmissiblePath);
    EXPECT_THROW(find_crossings(s, MotionPath{9, {s[0], s[1]}}), InadmissiblePath);
    // Waypoint on the line through points 1 and 2.
    const Point on_line(Scalar(2 * s[2].x - s[1].x), Scalar(2 * s[2].y - s[1].y));
    EXPECT_THROW(find_crossings(s, MotionPath{0, {s[0], on_line}}), InadmissiblePath);
}

TEST(PathFiles, ParseAndFormat) {
    const auto p = parse_path("halving-path v1\n# comment\nmoving 3\n0 0\n1/2 0.25\n-4 7\n");
    EXPECT_EQ(p.moving_index, 3u);
    ASSERT_EQ(p.waypoints.size(), 3u);
    EXPECT_EQ(p.waypoints[1], Point(Scalar(1, 2), Scalar(1, 4)));
    EXPECT_EQ(to_text(p), "halving-path v1\nmoving 3\n0 0\n1/2 1/4\n-4 7\n");

    const auto j = parse_path(R"({"version": 1, "moving": 1, "waypoints": [["0", "1"], [2, 3]]})");
    EXPECT_EQ(j.moving_index, 1u);
    EXPECT_EQ(j.waypoints[1], Point(2L, 3L));

    EXPECT_THROW(parse_path("halving-path v1\nmove 3\n0 0\n"), ParseError);
    EXPECT_THROW(parse_path("halving-path v1\nmoving -1\n0 0\n"), ParseError);
    EXPECT_THROW(parse_path("halving-points v1\nmoving 1\n"), ParseError);
    EXPECT_THROW(parse_path("halving-path v1\nmoving 1\n0 zz\n"), NonRationalNumber);
}
