#pragma once

#include "halving/deformation.hpp"
#include "halving/errors.hpp"
#include "halving/point_set.hpp"
#include "oracle.hpp"

#include <array>
#include <optional>
#include <random>

namespace halving::fixtures {

/// Random polyline for one point of `s`: `segments` edges whose interior
/// waypoints and endpoint are integer points in [-bound, bound]^2 that keep the
/// set in general position.
inline MotionPath random_path(const PointSet& s, std::mt19937_64& rng, std::int64_t bound, std::size_t segments) {
    std::uniform_int_distribution<std::size_t> pick(0, s.size() - 1);
    std::uniform_int_distribution<std::int64_t> coord(-bound, bound);
    MotionPath path;
    path.moving_index = pick(rng);
    path.waypoints.push_back(s[path.moving_index]);
    while (path.waypoints.size() < segments + 1) {
        Point w(static_cast<long>(coord(rng)), static_cast<long>(coord(rng)));
        if (w == path.waypoints.back()) continue;
        bool ok = false;
        try {
            ok = s.with_point(path.moving_index, w).in_general_position();
        } catch (const DuplicatePoints&) {
        }
        if (ok) path.waypoints.push_back(std::move(w));
    }
    return path;
}

/// x -> s R x + t with R a rotation by a rational angle (Pythagorean triple),
/// optionally followed by a reflection.
struct Similarity {
    Scalar scale, cos, sin, tx, ty;
    bool reflect = false;

    Point operator()(const Point& p) const {
        Scalar y = reflect ? Scalar(-p.y) : p.y;
        return Point(Scalar(scale * (cos * p.x - sin * y) + tx), Scalar(scale * (sin * p.x + cos * y) + ty));
    }
};

inline Similarity random_similarity(std::mt19937_64& rng) {
    static const std::array<std::array<long, 3>, 4> triples{{{3, 4, 5}, {5, 12, 13}, {8, 15, 17}, {7, 24, 25}}};
    std::uniform_int_distribution<int> pick(0, 3), coin(0, 1);
    const auto& t = triples[pick(rng)];
    Similarity f;
    f.cos = Scalar(t[0], t[2]) * (coin(rng) ? 1 : -1);
    f.sin = Scalar(t[1], t[2]) * (coin(rng) ? 1 : -1);
    do f.scale = oracle::random_rational(rng, 9, 5); while (f.scale <= 0);
    f.tx = oracle::random_rational(rng, 100, 7);
    f.ty = oracle::random_rational(rng, 100, 7);
    f.reflect = coin(rng);
    return f;
}

inline PointSet apply(const Similarity& f, const PointSet& s) {
    std::vector<Point> out;
    for (const auto& p : s) out.push_back(f(p));
    return PointSet(std::move(out));
}

}  // namespace halving::fixtures
