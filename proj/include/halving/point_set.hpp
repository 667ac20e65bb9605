#pragma once

#include "halving/kernel.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace halving {

struct GeneralPositionReport {
    bool ok = true;
    std::vector<std::array<std::size_t, 2>> duplicate_pairs;
    std::vector<std::array<std::size_t, 3>> collinear_triples;
    std::vector<std::array<std::size_t, 4>> concyclic_quadruples;
};

/// Exhaustive exact scan: duplicates, all C(m,3) triples and all C(m,4)
/// quadruples. Index tuples are strictly increasing and listed in
/// lexicographic order.
GeneralPositionReport check_general_position(std::span<const Point> points);

namespace detail {
struct GeneralPositionCache;
}

/// Immutable ordered set of pairwise distinct points. Indices are stable and
/// every report refers to them. Copies share the lazily computed
/// general-position status.
class PointSet {
public:
    PointSet();
    /// Throws DuplicatePoints if two points coincide.
    explicit PointSet(std::vector<Point> points);

    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    const Point& operator[](std::size_t i) const { return points_[i]; }
    const Point& at(std::size_t i) const;
    std::span<const Point> points() const noexcept { return points_; }
    auto begin() const noexcept { return points_.begin(); }
    auto end() const noexcept { return points_.end(); }

    /// Cached result of check_general_position(points()).ok.
    bool in_general_position() const;

    /// Copy with point `index` moved to `p`.
    PointSet with_point(std::size_t index, Point p) const;

    /// Copy restricted to the given indices, in the given order.
    PointSet subset(std::span<const std::size_t> indices) const;

    friend bool operator==(const PointSet& a, const PointSet& b) { return a.points_ == b.points_; }

private:
    std::vector<Point> points_;
    std::shared_ptr<detail::GeneralPositionCache> cache_;
};

GeneralPositionReport check_general_position(const PointSet& s);

/// Throws NotGeneralPosition naming the first violation.
void require_general_position(const PointSet& s);

/// m points with integer coordinates in [-coord_bound, coord_bound]^2, in
/// general position, deterministic in seed. Candidates that would break general
/// position are redrawn; throws GenerationExhausted when the draw budget runs out.
PointSet gen_random(std::size_t m, std::uint64_t seed, std::int64_t coord_bound);

/// Recursive witness set: O at index 0, a slightly perturbed regular
/// (2n-1)-gon P_1..P_{2n-1} at indices 1..2n-1 labelled clockwise around O,
/// and a far point Q on the positive x axis at index 2n.
struct GonConfig {
    std::size_t n = 0;
    PointSet point_set;
    /// Denominator used to rationalize the polygon vertices.
    Scalar denominator;
    /// x coordinate of Q.
    Scalar q_distance;

    std::size_t polygon_size() const { return 2 * n - 1; }
    static constexpr std::size_t o_index() { return 0; }
    /// Index of P_i, i in 1..2n-1. Subscripts wrap modulo 2n-1.
    std::size_t p_index(std::int64_t i) const;
    std::size_t q_index() const { return 2 * n; }
    /// {P_1..P_{2n-1}} on their own, in label order.
    PointSet polygon() const;
};

/// Builds the witness for n >= 2 and verifies exactly that: the set is in
/// general position, each line O P_i halves the other vertices, each circle
/// P_i P_j P_k contains O and Q lies outside every circle through three of the
/// other points. Refines the construction until all of these hold; throws
/// ConstructionFailed if the retry schedule is exhausted.
GonConfig gen_gon_config(std::size_t n);

/// Reasons a candidate gon configuration was rejected; empty when valid.
std::vector<std::string> gon_config_violations(const GonConfig& config);

// Point-set files.
//
// Text form: a "halving-points v1" header line, then one "<x> <y>" pair per
// line. '#' starts a comment. Coordinates are integers, fractions or decimal
// literals. The JSON form {"version": 1, "points": [["x", "y"], ...]} is
// accepted interchangeably; it is detected by a leading '{'.

inline constexpr std::string_view kPointsHeader = "halving-points v1";

/// Parses points without enforcing distinctness, so callers can report
/// duplicates. Throws ParseError or NonRationalNumber.
std::vector<Point> parse_points(std::string_view text);
PointSet parse_point_set(std::string_view text);

PointSet load(std::istream& in);
PointSet load(const std::filesystem::path& path);
std::vector<Point> load_points(const std::filesystem::path& path);

/// Canonical text form with reduced fractions.
std::string to_text(const PointSet& s);
std::string to_json(const PointSet& s);

void save(std::ostream& out, const PointSet& s);
void save(const std::filesystem::path& path, const PointSet& s);

std::string read_file(const std::filesystem::path& path);

}  // namespace halving
