#pragma once

#include "halving/census.hpp"
#include "halving/point_set.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace halving {

/// One point of a set travelling along a polyline. waypoints.front() must be
/// the point's current position.
struct MotionPath {
    std::size_t moving_index = 0;
    std::vector<Point> waypoints;
};

/// A line through two, or a circle through three, of the static points.
struct Boundary {
    enum class Kind { Line, Circle };

    Kind kind = Kind::Line;
    std::array<std::size_t, 3> indices{};  // strictly increasing; the third is unused for lines

    static Boundary line(std::size_t i, std::size_t j);
    static Boundary circle(std::size_t i, std::size_t j, std::size_t k);

    friend bool operator==(const Boundary&, const Boundary&) = default;
};

std::string to_string(const Boundary& b);

/// Every boundary of the points other than `moving`, lines first.
std::vector<Boundary> boundaries(std::size_t m, std::size_t moving);

/// Sign of the boundary predicate for the moving point at `p`: the orientation
/// of (P_i, P_j, p) for a line, the in-circle sign of p for a circle.
int boundary_sign(const PointSet& s, const Boundary& b, const Point& p);

/// Boundary signs in the order of boundaries(s.size(), moving).
std::vector<int> boundary_signs(const PointSet& s, std::size_t moving, const Point& p);

/// Exact boundary predicate restricted to a segment, c0 + c1 l + c2 l^2.
struct EdgePolynomial {
    Scalar c0, c1, c2;

    Scalar operator()(const Scalar& lambda) const;
    int degree() const;
};

/// Position on edge `segment` at parameter lambda in [0, 1].
Point point_on_path(const MotionPath& path, std::size_t segment, const Scalar& lambda);

EdgePolynomial edge_polynomial(const PointSet& s, const Boundary& b, const Point& from, const Point& to);

struct CrossingEvent {
    std::size_t moving_index = 0;
    std::size_t segment_index = 0;
    /// The crossing parameter lies strictly inside (bracket_lo, bracket_hi).
    Scalar bracket_lo, bracket_hi;
    Boundary boundary;
    /// Edge parameters just before and after the crossing. No boundary vanishes
    /// there, and only `boundary` changes sign between them.
    Scalar before_sample, after_sample;
    Point before_point, after_point;
};

/// Isolates every boundary crossing along the path, in path order.
/// Throws InadmissiblePath when a waypoint configuration is not in general
/// position, TangentialContact when the path touches a circle without crossing
/// it and SimultaneousCrossing when two crossings cannot be separated.
std::vector<CrossingEvent> find_crossings(const PointSet& s, const MotionPath& path);

struct CircleChange {
    Triple triple;
    SplitClass before, after;
};

struct ExchangeReport {
    CrossingEvent event;
    /// For circles only: whether the moving point enters the boundary circle.
    bool entering = false;
    /// The circles the boundary can affect (1 for a line, 4 for a circle).
    std::vector<CircleChange> affected;
    /// Every circle whose split changed.
    std::vector<CircleChange> changed;
    DepthHistogram histogram_before, histogram_after;
    bool pass = false;
    std::string detail;
};

/// Full census on both sides of the event, then the local exchange rule:
/// crossing line P_i P_j turns circle {moving, i, j} from (a,b) into (b,a);
/// leaving circle P_i P_j P_k turns it and one circle through the moving point
/// from (a,b) into (a-1,b+1) and the other two from (a-1,b+1) into (a,b)
/// (entering is the mirror image). Nothing else may change, and every unordered
/// class count must be conserved.
ExchangeReport verify_crossing_exchange(const PointSet& s, const CrossingEvent& event, unsigned threads = 1);

struct PathReport {
    std::vector<ExchangeReport> exchanges;
    DepthHistogram histogram_start, histogram_end;
    std::optional<std::uint64_t> halving_start, halving_end;
    /// Boundary signs recomputed at successive samples chain consistently.
    bool signs_chain = false;
    bool pass = false;
    std::string detail;
};

/// find_crossings, then verify_crossing_exchange on every event. Passes when all
/// exchanges pass, the sign states chain and the endpoint halving counts agree.
PathReport verify_path_invariance(const PointSet& s, const MotionPath& path, unsigned threads = 1);

/// Checks the path against the set: moving index in range, at least two
/// waypoints, consecutive waypoints distinct, first waypoint at the moving point,
/// every waypoint configuration in general position. Throws InadmissiblePath.
void validate_path(const PointSet& s, const MotionPath& path);

// Path files: a "halving-path v1" header, a "moving <index>" line, then one
// waypoint "<x> <y>" per line. JSON {"version": 1, "moving": i, "waypoints": [["x","y"], ...]}
// is accepted interchangeably.
inline constexpr std::string_view kPathHeader = "halving-path v1";

MotionPath parse_path(std::string_view text);
std::string to_text(const MotionPath& path);

}  // namespace halving
