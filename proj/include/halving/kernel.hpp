#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

namespace halving {

/// Exact rational coordinate. GMP keeps every value in canonical form
/// (reduced, positive denominator), so structural equality is value equality.
using Scalar = mpq_class;

/// Parses an integer ("-3"), a fraction ("1/3") or a decimal literal ("0.25").
/// A decimal with d fractional digits is read as an exact fraction over 10^d.
/// Throws NonRationalNumber on anything else, including a zero denominator.
Scalar parse_scalar(std::string_view token);

/// Reduced form: "n" for integers, "n/d" otherwise.
std::string to_string(const Scalar& value);

struct Point {
    Scalar x;
    Scalar y;

    Point() = default;
    Point(Scalar x_, Scalar y_) : x(std::move(x_)), y(std::move(y_)) {}
    Point(long x_, long y_) : x(x_), y(y_) {}

    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }

    /// Lexicographic (x, then y).
    friend bool operator<(const Point& a, const Point& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
};

std::ostream& operator<<(std::ostream& os, const Point& p);

enum class Orientation { CounterClockwise, Clockwise, Collinear };

enum class CirclePosition { Inside, On, Outside };

const char* to_string(Orientation o);
const char* to_string(CirclePosition c);

/// Sign of det(b - a, c - a).
Orientation orientation(const Point& a, const Point& b, const Point& c);

/// Raw orientation determinant det(b - a, c - a); positive for counter-clockwise.
Scalar orientation_det(const Point& a, const Point& b, const Point& c);

/// Position of q relative to the circle through a, b, c, independent of the
/// order of a, b, c. Throws CollinearTriple when a, b, c are collinear.
CirclePosition in_circle(const Point& a, const Point& b, const Point& c, const Point& q);

/// Lifted in-circle determinant multiplied by the orientation sign of (a, b, c):
/// positive when q is inside, zero on, negative outside. Zero (not an error)
/// when a, b, c are collinear.
Scalar in_circle_det(const Point& a, const Point& b, const Point& c, const Point& q);

/// Pencil coordinate of the circle through a, b and p: the circumcenter equals
/// M + s * R where M is the midpoint of ab and R is (b - a) rotated by +90 degrees.
/// Throws CoincidentPair if a == b and CollinearTriple if p lies on line ab.
Scalar circumcenter_param(const Point& a, const Point& b, const Point& p);

/// Point on the perpendicular bisector of ab at pencil coordinate s.
Point pencil_center(const Point& a, const Point& b, const Scalar& s);

/// Exact circumcenter of a non-collinear triple.
Point circumcenter(const Point& a, const Point& b, const Point& c);

Scalar squared_distance(const Point& a, const Point& b);

}  // namespace halving
