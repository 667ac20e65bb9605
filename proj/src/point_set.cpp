#include "halving/point_set.hpp"

#include "halving/errors.hpp"
#include "text_lines.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>

namespace halving {

namespace detail {
struct GeneralPositionCache {
    std::once_flag once;
    bool ok = false;
};
}  // namespace detail

GeneralPositionReport check_general_position(std::span<const Point> pts) {
    GeneralPositionReport report;
    const std::size_t m = pts.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (pts[i] == pts[j]) report.duplicate_pairs.push_back({i, j});
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            for (std::size_t k = j + 1; k < m; ++k) {
                if (orientation(pts[i], pts[j], pts[k]) == Orientation::Collinear) {
                    report.collinear_triples.push_back({i, j, k});
                }
            }
        }
    }
    // A quadruple with a collinear triple cannot lie on one circle, so only
    // quadruples whose first triple spans a circle need the lifted test.
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            for (std::size_t k = j + 1; k < m; ++k) {
                if (orientation(pts[i], pts[j], pts[k]) == Orientation::Collinear) continue;
                for (std::size_t l = k + 1; l < m; ++l) {
                    if (in_circle(pts[i], pts[j], pts[k], pts[l]) == CirclePosition::On) {
                        report.concyclic_quadruples.push_back({i, j, k, l});
                    }
                }
            }
        }
    }
    report.ok = report.duplicate_pairs.empty() && report.collinear_triples.empty() &&
                report.concyclic_quadruples.empty();
    return report;
}

PointSet::PointSet() : cache_(std::make_shared<detail::GeneralPositionCache>()) {}

PointSet::PointSet(std::vector<Point> points)
    : points_(std::move(points)), cache_(std::make_shared<detail::GeneralPositionCache>()) {
    std::vector<std::size_t> order(points_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points_[a] < points_[b]; });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (points_[order[i - 1]] == points_[order[i]]) {
            auto lo = std::min(order[i - 1], order[i]), hi = std::max(order[i - 1], order[i]);
            throw DuplicatePoints("points " + std::to_string(lo) + " and " + std::to_string(hi) + " coincide");
        }
    }
}

const Point& PointSet::at(std::size_t i) const {
    if (i >= points_.size()) {
        throw IndexOutOfRange("point index " + std::to_string(i) + " out of range for " +
                              std::to_string(points_.size()) + " points");
    }
    return points_[i];
}

bool PointSet::in_general_position() const {
    std::call_once(cache_->once, [this] { cache_->ok = check_general_position(points_).ok; });
    return cache_->ok;
}

PointSet PointSet::with_point(std::size_t index, Point p) const {
    auto pts = points_;
    pts.at(index) = std::move(p);
    return PointSet(std::move(pts));
}

PointSet PointSet::subset(std::span<const std::size_t> indices) const {
    std::vector<Point> pts;
    pts.reserve(indices.size());
    for (auto i : indices) pts.push_back(at(i));
    return PointSet(std::move(pts));
}

GeneralPositionReport check_general_position(const PointSet& s) { return check_general_position(s.points()); }

void require_general_position(const PointSet& s) {
    if (s.in_general_position()) return;
    auto r = check_general_position(s);
    if (!r.collinear_triples.empty()) {
        auto [i, j, k] = r.collinear_triples.front();
        throw NotGeneralPosition("points " + std::to_string(i) + ", " + std::to_string(j) + ", " +
                                 std::to_string(k) + " are collinear");
    }
    auto [i, j, k, l] = r.concyclic_quadruples.front();
    throw NotGeneralPosition("points " + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(k) +
                             ", " + std::to_string(l) + " are concyclic");
}

namespace {

/// Whether `c` can join the general-position set `accepted`.
bool extends_general_position(const std::vector<Point>& accepted, const Point& c) {
    const std::size_t k = accepted.size();
    for (const auto& p : accepted) {
        if (p == c) return false;
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            if (orientation(accepted[i], accepted[j], c) == Orientation::Collinear) return false;
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            for (std::size_t l = j + 1; l < k; ++l) {
                if (in_circle(accepted[i], accepted[j], accepted[l], c) == CirclePosition::On) return false;
            }
        }
    }
    return true;
}

}  // namespace

PointSet gen_random(std::size_t m, std::uint64_t seed, std::int64_t coord_bound) {
    if (m < 3) throw Error("gen_random: need at least 3 points");
    if (coord_bound < 1) throw Error("gen_random: coordinate bound must be positive");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> coord(-coord_bound, coord_bound);
    const std::size_t budget = 1000 * m;

    std::vector<Point> pts;
    pts.reserve(m);
    std::size_t draws = 0;
    while (pts.size() < m) {
        if (draws++ == budget) {
            throw GenerationExhausted("gen_random: could not place " + std::to_string(m) +
                                      " points in general position within bound " + std::to_string(coord_bound));
        }
        Point c(static_cast<long>(coord(rng)), static_cast<long>(coord(rng)));
        if (extends_general_position(pts, c)) pts.push_back(std::move(c));
    }
    return PointSet(std::move(pts));
}

// ---------------------------------------------------------------------------
// Gon configuration

std::size_t GonConfig::p_index(std::int64_t i) const {
    const auto k = static_cast<std::int64_t>(polygon_size());
    auto r = ((i - 1) % k + k) % k;
    return static_cast<std::size_t>(r + 1);
}

PointSet GonConfig::polygon() const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 1; i <= polygon_size(); ++i) idx.push_back(i);
    return point_set.subset(idx);
}

std::vector<std::string> gon_config_violations(const GonConfig& config) {
    std::vector<std::string> out;
    const auto& s = config.point_set;
    const std::size_t k = config.polygon_size();
    if (s.size() != 2 * config.n + 1) {
        out.push_back("wrong number of points");
        return out;
    }
    if (!s.in_general_position()) out.push_back("not in general position");

    const Point& o = s[GonConfig::o_index()];
    for (std::size_t i = 1; i <= k; ++i) {
        std::size_t left = 0, right = 0;
        for (std::size_t j = 1; j <= k; ++j) {
            if (j == i) continue;
            switch (orientation(o, s[i], s[j])) {
                case Orientation::CounterClockwise: ++left; break;
                case Orientation::Clockwise: ++right; break;
                case Orientation::Collinear: break;
            }
        }
        if (left != config.n - 1 || right != config.n - 1) {
            out.push_back("line O P_" + std::to_string(i) + " does not halve the polygon");
        }
    }
    for (std::size_t i = 1; i <= k; ++i) {
        for (std::size_t j = i + 1; j <= k; ++j) {
            for (std::size_t l = j + 1; l <= k; ++l) {
                if (orientation(s[i], s[j], s[l]) == Orientation::Collinear ||
                    in_circle(s[i], s[j], s[l], o) != CirclePosition::Inside) {
                    out.push_back("circle P_" + std::to_string(i) + " P_" + std::to_string(j) + " P_" +
                                  std::to_string(l) + " does not contain O");
                }
            }
        }
    }
    const Point& q = s[config.q_index()];
    for (std::size_t i = 0; i < 2 * config.n; ++i) {
        for (std::size_t j = i + 1; j < 2 * config.n; ++j) {
            for (std::size_t l = j + 1; l < 2 * config.n; ++l) {
                if (orientation(s[i], s[j], s[l]) == Orientation::Collinear ||
                    in_circle(s[i], s[j], s[l], q) != CirclePosition::Outside) {
                    out.push_back("Q is not outside circle " + std::to_string(i) + " " + std::to_string(j) + " " +
                                  std::to_string(l));
                }
            }
        }
    }
    return out;
}

namespace {

std::vector<Point> rational_polygon(std::size_t n, const mpz_class& denominator) {
    const std::size_t k = 2 * n - 1;
    const Scalar delta = Scalar(1, 1) / (Scalar(denominator) * Scalar(denominator));
    const double d = denominator.get_d();
    std::vector<Point> pts;
    pts.emplace_back(0L, 0L);
    for (std::size_t i = 1; i <= k; ++i) {
        // P_1 at the top, then clockwise; no vertex lands on the x axis since k is odd.
        double theta = std::numbers::pi / 2 - 2 * std::numbers::pi * static_cast<double>(i - 1) / static_cast<double>(k);
        mpz_class cx(static_cast<long>(std::llround(std::cos(theta) * d)));
        mpz_class cy(static_cast<long>(std::llround(std::sin(theta) * d)));
        Scalar x = Scalar(cx, denominator) + Scalar(static_cast<long>(i)) * delta;
        Scalar y = Scalar(cy, denominator) + Scalar(static_cast<long>(i * i)) * delta;
        x.canonicalize();
        y.canonicalize();
        pts.emplace_back(std::move(x), std::move(y));
    }
    return pts;
}

}  // namespace

GonConfig gen_gon_config(std::size_t n) {
    if (n < 2) throw Error("gen_gon_config: n must be at least 2");

    mpz_class denominator = 1000000;
    for (int attempt = 0; attempt < 7; ++attempt, denominator *= 10) {
        auto base = rational_polygon(n, denominator);

        // Start Q at four times an upper bound on the diameter (the L1 extent).
        Scalar min_x = base[0].x, max_x = base[0].x, min_y = base[0].y, max_y = base[0].y;
        for (const auto& p : base) {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
        Scalar extent = (max_x - min_x) + (max_y - min_y);
        mpz_class start;
        mpz_cdiv_q(start.get_mpz_t(), extent.get_num_mpz_t(), extent.get_den_mpz_t());
        Scalar distance = Scalar(4 * start);

        for (int doubling = 0; doubling < 64; ++doubling, distance *= 2) {
            auto pts = base;
            pts.emplace_back(distance, Scalar(0));
            GonConfig config{n, PointSet(std::move(pts)), Scalar(denominator), distance};
            auto problems = gon_config_violations(config);
            if (problems.empty()) return config;
            // Only a Q problem is cured by moving Q farther.
            bool q_only = std::all_of(problems.begin(), problems.end(), [](const std::string& p) {
                return p.rfind("Q is not outside", 0) == 0 || p == "not in general position";
            });
            if (!q_only) break;
        }
    }
    throw ConstructionFailed("gen_gon_config: retry schedule exhausted for n = " + std::to_string(n));
}

// ---------------------------------------------------------------------------
// Files

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

std::vector<Point> parse_json_points(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError(e.what(), line, column);
    }
    if (!doc.is_object() || !doc.contains("version") || !doc.contains("points")) {
        throw ParseError("expected an object with \"version\" and \"points\"", 1, 1);
    }
    if (doc["version"] != 1) throw ParseError("unsupported version", 1, 1);
    const auto& arr = doc["points"];
    if (!arr.is_array()) throw ParseError("\"points\" must be an array", 1, 1);

    auto coordinate = [](const nlohmann::json& v, std::size_t index) -> Scalar {
        if (v.is_string()) return parse_scalar(v.get<std::string>());
        if (v.is_number_integer()) return parse_scalar(v.dump());
        throw NonRationalNumber("point " + std::to_string(index) + ": coordinates must be strings or integers");
    };
    std::vector<Point> pts;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto& p = arr[i];
        if (!p.is_array() || p.size() != 2) {
            throw ParseError("point " + std::to_string(i) + " must be a pair [x, y]", 1, 0);
        }
        pts.emplace_back(coordinate(p[0], i), coordinate(p[1], i));
    }
    return pts;
}

}  // namespace

std::vector<Point> parse_points(std::string_view text) {
    if (detail::looks_like_json(text)) return parse_json_points(text);

    const auto lines = detail::content_lines(text);
    if (lines.empty() || detail::joined(lines.front()) != kPointsHeader) {
        throw ParseError("expected header '" + std::string(kPointsHeader) + "'", lines.empty() ? 1 : lines.front().number,
                         1);
    }
    std::vector<Point> pts;
    for (std::size_t i = 1; i < lines.size(); ++i) pts.push_back(detail::point_at(lines[i]));
    return pts;
}

PointSet parse_point_set(std::string_view text) { return PointSet(parse_points(text)); }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

PointSet load(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_point_set(ss.str());
}

PointSet load(const std::filesystem::path& path) { return parse_point_set(read_file(path)); }

std::vector<Point> load_points(const std::filesystem::path& path) { return parse_points(read_file(path)); }

std::string to_text(const PointSet& s) {
    std::string out(kPointsHeader);
    out += '\n';
    for (const auto& p : s) {
        out += to_string(p.x);
        out += ' ';
        out += to_string(p.y);
        out += '\n';
    }
    return out;
}

std::string to_json(const PointSet& s) {
    nlohmann::json doc;
    doc["version"] = 1;
    doc["points"] = nlohmann::json::array();
    for (const auto& p : s) doc["points"].push_back({to_string(p.x), to_string(p.y)});
    return doc.dump(2) + "\n";
}

void save(std::ostream& out, const PointSet& s) { out << to_text(s); }

void save(const std::filesystem::path& path, const PointSet& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    save(out, s);
}

}  // namespace halving
