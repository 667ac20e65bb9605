#include "halving/deformation.hpp"

#include "halving/errors.hpp"
#include "text_lines.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

namespace halving {

Boundary Boundary::line(std::size_t i, std::size_t j) {
    Boundary b;
    b.kind = Kind::Line;
    b.indices = {std::min(i, j), std::max(i, j), 0};
    return b;
}

Boundary Boundary::circle(std::size_t i, std::size_t j, std::size_t k) {
    Boundary b;
    b.kind = Kind::Circle;
    b.indices = {i, j, k};
    std::sort(b.indices.begin(), b.indices.end());
    return b;
}

std::string to_string(const Boundary& b) {
    if (b.kind == Boundary::Kind::Line) {
        return "line(" + std::to_string(b.indices[0]) + "," + std::to_string(b.indices[1]) + ")";
    }
    return "circle(" + std::to_string(b.indices[0]) + "," + std::to_string(b.indices[1]) + "," +
           std::to_string(b.indices[2]) + ")";
}

std::vector<Boundary> boundaries(std::size_t m, std::size_t moving) {
    std::vector<std::size_t> fixed;
    for (std::size_t i = 0; i < m; ++i) {
        if (i != moving) fixed.push_back(i);
    }
    std::vector<Boundary> out;
    for (std::size_t a = 0; a < fixed.size(); ++a)
        for (std::size_t b = a + 1; b < fixed.size(); ++b) out.push_back(Boundary::line(fixed[a], fixed[b]));
    for (std::size_t a = 0; a < fixed.size(); ++a)
        for (std::size_t b = a + 1; b < fixed.size(); ++b)
            for (std::size_t c = b + 1; c < fixed.size(); ++c)
                out.push_back(Boundary::circle(fixed[a], fixed[b], fixed[c]));
    return out;
}

namespace {

Scalar boundary_value(const PointSet& s, const Boundary& b, const Point& p) {
    const auto& [i, j, k] = b.indices;
    if (b.kind == Boundary::Kind::Line) return orientation_det(s[i], s[j], p);
    return in_circle_det(s[i], s[j], s[k], p);
}

}  // namespace

int boundary_sign(const PointSet& s, const Boundary& b, const Point& p) { return sgn(boundary_value(s, b, p)); }

std::vector<int> boundary_signs(const PointSet& s, std::size_t moving, const Point& p) {
    std::vector<int> out;
    for (const auto& b : boundaries(s.size(), moving)) out.push_back(boundary_sign(s, b, p));
    return out;
}

Scalar EdgePolynomial::operator()(const Scalar& lambda) const { return Scalar(c0 + lambda * (c1 + lambda * c2)); }

int EdgePolynomial::degree() const {
    if (sgn(c2) != 0) return 2;
    if (sgn(c1) != 0) return 1;
    return 0;
}

Point point_on_path(const MotionPath& path, std::size_t segment, const Scalar& lambda) {
    const Point& a = path.waypoints.at(segment);
    const Point& b = path.waypoints.at(segment + 1);
    return Point(Scalar(a.x + lambda * (b.x - a.x)), Scalar(a.y + lambda * (b.y - a.y)));
}

EdgePolynomial edge_polynomial(const PointSet& s, const Boundary& b, const Point& from, const Point& to) {
    // The moving point enters the determinant affinely (and through |p|^2 for
    // circles), so three samples pin the polynomial down exactly.
    auto at = [&](long l) {
        const Scalar lambda(l);
        return boundary_value(s, b, Point(Scalar(from.x + lambda * (to.x - from.x)),
                                          Scalar(from.y + lambda * (to.y - from.y))));
    };
    const Scalar v0 = at(0), v1 = at(1), v2 = at(2);
    EdgePolynomial p;
    p.c0 = v0;
    p.c2 = (v2 - 2 * v1 + v0) / 2;
    p.c1 = v1 - v0 - p.c2;
    return p;
}

namespace {

/// Open interval isolating one simple root of a polynomial that is monotone
/// on [lo, hi] and nonzero at both ends.
struct Bracket {
    const EdgePolynomial* poly;
    std::size_t boundary;
    Scalar lo, hi;
    int sign_lo;

    void refine() {
        Scalar mid = (lo + hi) / 2;
        const int s = sgn((*poly)(mid));
        if (s == 0) {
            // The root is exactly mid; shrink symmetrically around it.
            Scalar new_lo = (lo + mid) / 2;
            hi = (mid + hi) / 2;
            lo = std::move(new_lo);
        } else if (s == sign_lo) {
            lo = std::move(mid);
        } else {
            hi = std::move(mid);
        }
    }
};

void isolate_roots(const EdgePolynomial& p, std::size_t boundary, const std::vector<Boundary>& all,
                   std::vector<Bracket>& out) {
    const Scalar zero(0), one(1);
    std::vector<Scalar> cuts{zero};
    if (p.degree() == 2) {
        const Scalar vertex = -p.c1 / (2 * p.c2);
        if (vertex > zero && vertex < one) {
            if (sgn(p(vertex)) == 0) {
                throw TangentialContact("path touches " + to_string(all[boundary]) + " without crossing it");
            }
            cuts.push_back(vertex);
        }
    } else if (p.degree() == 0 && sgn(p.c0) == 0) {
        throw InadmissiblePath("path edge runs along " + to_string(all[boundary]));
    }
    cuts.push_back(one);
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const int sl = sgn(p(cuts[c]));
        const int sr = sgn(p(cuts[c + 1]));
        if (sl * sr < 0) out.push_back(Bracket{&p, boundary, cuts[c], cuts[c + 1], sl});
    }
}

constexpr int kMaxRefinementRounds = 256;

/// Refines brackets until they are pairwise separated by a gap.
void separate(std::vector<Bracket>& brackets, const std::vector<Boundary>& all, std::size_t segment) {
    for (int round = 0;; ++round) {
        std::sort(brackets.begin(), brackets.end(), [](const Bracket& a, const Bracket& b) { return a.lo < b.lo; });
        std::vector<char> conflict(brackets.size(), 0);
        bool any = false;
        std::size_t reach = 0;  // bracket with the largest hi so far
        std::size_t first_a = 0, first_b = 0;
        for (std::size_t i = 1; i < brackets.size(); ++i) {
            if (brackets[i].lo <= brackets[reach].hi) {
                if (!any) {
                    first_a = reach;
                    first_b = i;
                }
                conflict[i] = conflict[reach] = 1;
                any = true;
            }
            if (brackets[i].hi > brackets[reach].hi) reach = i;
        }
        if (!any) return;
        if (round == kMaxRefinementRounds) {
            throw SimultaneousCrossing("edge " + std::to_string(segment) + " crosses " +
                                       to_string(all[brackets[first_a].boundary]) + " and " +
                                       to_string(all[brackets[first_b].boundary]) +
                                       " at the same place; perturb the path");
        }
        for (std::size_t i = 0; i < brackets.size(); ++i) {
            if (conflict[i]) brackets[i].refine();
        }
    }
}

}  // namespace

void validate_path(const PointSet& s, const MotionPath& path) {
    if (path.moving_index >= s.size()) {
        throw InadmissiblePath("moving index " + std::to_string(path.moving_index) + " out of range");
    }
    if (path.waypoints.size() < 2) throw InadmissiblePath("a path needs at least two waypoints");
    if (!(path.waypoints.front() == s[path.moving_index])) {
        throw InadmissiblePath("first waypoint must be the moving point's position");
    }
    for (std::size_t w = 0; w < path.waypoints.size(); ++w) {
        if (w > 0 && path.waypoints[w] == path.waypoints[w - 1]) {
            throw InadmissiblePath("waypoints " + std::to_string(w - 1) + " and " + std::to_string(w) + " coincide");
        }
        bool ok = false;
        try {
            ok = s.with_point(path.moving_index, path.waypoints[w]).in_general_position();
        } catch (const DuplicatePoints&) {
            ok = false;
        }
        if (!ok) throw InadmissiblePath("configuration at waypoint " + std::to_string(w) + " is not in general position");
    }
}

std::vector<CrossingEvent> find_crossings(const PointSet& s, const MotionPath& path) {
    validate_path(s, path);
    const auto all = boundaries(s.size(), path.moving_index);

    std::vector<CrossingEvent> events;
    for (std::size_t seg = 0; seg + 1 < path.waypoints.size(); ++seg) {
        const Point& from = path.waypoints[seg];
        const Point& to = path.waypoints[seg + 1];
        std::vector<EdgePolynomial> polys;
        polys.reserve(all.size());
        for (const auto& b : all) polys.push_back(edge_polynomial(s, b, from, to));

        std::vector<Bracket> brackets;
        for (std::size_t b = 0; b < all.size(); ++b) isolate_roots(polys[b], b, all, brackets);
        separate(brackets, all, seg);

        for (const auto& br : brackets) {
            CrossingEvent e;
            e.moving_index = path.moving_index;
            e.segment_index = seg;
            e.bracket_lo = br.lo;
            e.bracket_hi = br.hi;
            e.boundary = all[br.boundary];
            e.before_sample = br.lo;
            e.after_sample = br.hi;
            e.before_point = point_on_path(path, seg, br.lo);
            e.after_point = point_on_path(path, seg, br.hi);
            events.push_back(std::move(e));
        }
    }
    return events;
}

namespace {

Triple sorted_triple(std::size_t a, std::size_t b, std::size_t c) {
    Triple t{a, b, c};
    std::sort(t.begin(), t.end());
    return t;
}

std::string change_name(const CircleChange& c) {
    return "{" + std::to_string(c.triple[0]) + "," + std::to_string(c.triple[1]) + "," + std::to_string(c.triple[2]) +
           "} " + to_string(c.before) + "->" + to_string(c.after);
}

bool unordered_classes_conserved(const DepthHistogram& before, const DepthHistogram& after) {
    std::set<std::pair<std::size_t, std::size_t>> classes;
    for (const auto* h : {&before, &after}) {
        for (const auto& [c, _] : h->counts()) classes.insert({std::min(c.inside, c.outside), std::max(c.inside, c.outside)});
    }
    for (const auto& [a, b] : classes) {
        if (before.unordered(a, b) != after.unordered(a, b)) return false;
    }
    return true;
}

}  // namespace

ExchangeReport verify_crossing_exchange(const PointSet& s, const CrossingEvent& event, unsigned threads) {
    const std::size_t mv = event.moving_index;
    ExchangeReport report;
    report.event = event;

    const PointSet before = s.with_point(mv, event.before_point);
    const PointSet after = s.with_point(mv, event.after_point);
    const auto rec_before = census_records_sweep(before, threads);
    const auto rec_after = census_records_sweep(after, threads);
    report.histogram_before = DepthHistogram::from_records(s.size(), rec_before);
    report.histogram_after = DepthHistogram::from_records(s.size(), rec_after);

    std::map<Triple, CircleChange> by_triple;
    for (std::size_t t = 0; t < rec_before.size(); ++t) {
        CircleChange c{rec_before[t].triple, rec_before[t].split, rec_after[t].split};
        if (c.before != c.after) report.changed.push_back(c);
        by_triple.emplace(c.triple, c);
    }

    const auto& [i, j, k] = event.boundary.indices;
    std::vector<Triple> affected;
    if (event.boundary.kind == Boundary::Kind::Line) {
        affected = {sorted_triple(mv, i, j)};
    } else {
        affected = {sorted_triple(i, j, k), sorted_triple(mv, i, j), sorted_triple(mv, j, k), sorted_triple(mv, i, k)};
    }
    for (const auto& t : affected) report.affected.push_back(by_triple.at(t));

    auto fail = [&](std::string why) {
        report.pass = false;
        report.detail = std::move(why);
        return report;
    };

    for (const auto& c : report.changed) {
        if (std::find(affected.begin(), affected.end(), c.triple) == affected.end()) {
            return fail("unrelated circle changed: " + change_name(c));
        }
    }

    if (event.boundary.kind == Boundary::Kind::Line) {
        const auto& c = report.affected.front();
        if (c.after != c.before.swapped()) return fail("line crossing expected a swap, got " + change_name(c));
    } else {
        const Point& pi = s[i];
        const Point& pj = s[j];
        const Point& pk = s[k];
        report.entering = in_circle(pi, pj, pk, event.before_point) == CirclePosition::Outside;
        const CircleChange& boundary_circle = report.affected.front();
        const SplitClass from = boundary_circle.before;
        if (report.entering ? from.outside == 0 : from.inside == 0) {
            return fail("boundary circle " + change_name(boundary_circle) + " cannot lose a point");
        }
        const SplitClass to = report.entering ? SplitClass{from.inside + 1, from.outside - 1}
                                              : SplitClass{from.inside - 1, from.outside + 1};
        if (boundary_circle.after != to) return fail("boundary circle: " + change_name(boundary_circle));

        std::size_t forward = 0, backward = 0;
        for (std::size_t a = 1; a < report.affected.size(); ++a) {
            const auto& c = report.affected[a];
            if (c.before == from && c.after == to) {
                ++forward;
            } else if (c.before == to && c.after == from) {
                ++backward;
            } else {
                return fail("circle through the moving point: " + change_name(c));
            }
        }
        if (forward != 1 || backward != 2) {
            return fail("expected one circle to follow the boundary circle and two to move back, got " +
                        std::to_string(forward) + " and " + std::to_string(backward));
        }
    }

    if (!unordered_classes_conserved(report.histogram_before, report.histogram_after)) {
        return fail("unordered class counts changed");
    }
    report.pass = true;
    return report;
}

PathReport verify_path_invariance(const PointSet& s, const MotionPath& path, unsigned threads) {
    PathReport report;
    const auto events = find_crossings(s, path);
    const std::size_t mv = path.moving_index;
    const PointSet start = s.with_point(mv, path.waypoints.front());
    const PointSet end = s.with_point(mv, path.waypoints.back());

    report.histogram_start = census_sweep(start, threads);
    report.histogram_end = census_sweep(end, threads);
    if (s.size() % 2 == 1) {
        report.halving_start = report.histogram_start.halving();
        report.halving_end = report.histogram_end.halving();
    }

    const auto all = boundaries(s.size(), mv);
    auto state = boundary_signs(s, mv, path.waypoints.front());
    report.signs_chain = true;
    for (const auto& e : events) {
        report.exchanges.push_back(verify_crossing_exchange(s, e, threads));

        const auto at_before = boundary_signs(s, mv, e.before_point);
        const auto at_after = boundary_signs(s, mv, e.after_point);
        std::size_t flips = 0;
        bool flipped_own = false;
        for (std::size_t b = 0; b < all.size(); ++b) {
            if (at_before[b] != at_after[b]) {
                ++flips;
                flipped_own = flipped_own || all[b] == e.boundary;
            }
        }
        if (at_before != state || flips != 1 || !flipped_own) report.signs_chain = false;
        state = at_after;
    }
    if (boundary_signs(s, mv, path.waypoints.back()) != state) report.signs_chain = false;

    bool all_pass = true;
    for (const auto& x : report.exchanges) {
        if (!x.pass && all_pass) {
            report.detail = "event on " + to_string(x.event.boundary) + ": " + x.detail;
        }
        all_pass = all_pass && x.pass;
    }
    const bool halving_equal = report.halving_start == report.halving_end;
    const bool classes_equal = unordered_classes_conserved(report.histogram_start, report.histogram_end);
    if (all_pass && !report.signs_chain) report.detail = "boundary signs do not chain along the path";
    if (all_pass && report.signs_chain && !halving_equal) report.detail = "endpoint halving counts differ";
    if (all_pass && report.signs_chain && halving_equal && !classes_equal) {
        report.detail = "endpoint unordered class counts differ";
    }
    report.pass = all_pass && report.signs_chain && halving_equal && classes_equal;
    return report;
}

// ---------------------------------------------------------------------------
// Path files

namespace {

MotionPath parse_json_path(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), 1, e.byte);
    }
    if (!doc.is_object() || doc.value("version", 0) != 1 || !doc.contains("moving") || !doc.contains("waypoints")) {
        throw ParseError("expected {\"version\": 1, \"moving\": i, \"waypoints\": [...]}", 1, 1);
    }
    if (!doc["moving"].is_number_unsigned()) throw ParseError("\"moving\" must be a nonnegative integer", 1, 0);
    MotionPath path;
    path.moving_index = doc["moving"].get<std::size_t>();
    for (const auto& w : doc["waypoints"]) {
        if (!w.is_array() || w.size() != 2) throw ParseError("waypoints must be pairs [x, y]", 1, 0);
        auto coord = [](const nlohmann::json& v) {
            if (v.is_string()) return parse_scalar(v.get<std::string>());
            if (v.is_number_integer()) return parse_scalar(v.dump());
            throw NonRationalNumber("waypoint coordinates must be strings or integers");
        };
        path.waypoints.emplace_back(coord(w[0]), coord(w[1]));
    }
    return path;
}

}  // namespace

MotionPath parse_path(std::string_view text) {
    if (detail::looks_like_json(text)) return parse_json_path(text);

    const auto lines = detail::content_lines(text);
    if (lines.empty() || detail::joined(lines.front()) != kPathHeader) {
        throw ParseError("expected header '" + std::string(kPathHeader) + "'", lines.empty() ? 1 : lines.front().number,
                         1);
    }
    if (lines.size() < 2 || lines[1].tokens.size() != 2 || lines[1].tokens[0].text != "moving") {
        throw ParseError("expected 'moving <index>'", lines.size() < 2 ? lines.front().number + 1 : lines[1].number, 1);
    }
    MotionPath path;
    const auto& idx = lines[1].tokens[1];
    try {
        std::size_t used = 0;
        path.moving_index = std::stoul(std::string(idx.text), &used);
        if (used != idx.text.size() || idx.text.front() == '-') throw std::invalid_argument("index");
    } catch (const std::exception&) {
        throw ParseError("moving index must be a nonnegative integer", lines[1].number, idx.column);
    }
    for (std::size_t i = 2; i < lines.size(); ++i) path.waypoints.push_back(detail::point_at(lines[i]));
    return path;
}

std::string to_text(const MotionPath& path) {
    std::string out(kPathHeader);
    out += "\nmoving " + std::to_string(path.moving_index) + "\n";
    for (const auto& p : path.waypoints) out += to_string(p.x) + " " + to_string(p.y) + "\n";
    return out;
}

}  // namespace halving
