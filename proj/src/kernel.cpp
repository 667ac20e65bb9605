#include "halving/kernel.hpp"

#include "halving/errors.hpp"

#include <cctype>

namespace halving {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

int sign(const Scalar& v) { return sgn(v); }

}  // namespace

Scalar parse_scalar(std::string_view token) {
    auto fail = [&]() -> Scalar { throw NonRationalNumber("not a rational number: '" + std::string(token) + "'"); };

    std::string_view body = token;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    if (body.empty()) return fail();

    Scalar value;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return fail();
        mpz_class d(std::string(den), 10);
        if (d == 0) return fail();
        value = Scalar(mpz_class(std::string(num), 10), d);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        auto whole = body.substr(0, dot);
        auto frac = body.substr(dot + 1);
        if (whole.empty() && frac.empty()) return fail();
        if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) return fail();
        std::string digits = std::string(whole) + std::string(frac);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        value = Scalar(mpz_class(digits, 10), den);
    } else {
        if (!all_digits(body)) return fail();
        value = Scalar(mpz_class(std::string(body), 10));
    }
    value.canonicalize();
    if (negative) value = -value;
    return value;
}

std::string to_string(const Scalar& value) { return value.get_str(10); }

std::ostream& operator<<(std::ostream& os, const Point& p) {
    return os << '(' << to_string(p.x) << ", " << to_string(p.y) << ')';
}

const char* to_string(Orientation o) {
    switch (o) {
        case Orientation::CounterClockwise: return "CounterClockwise";
        case Orientation::Clockwise: return "Clockwise";
        case Orientation::Collinear: return "Collinear";
    }
    return "?";
}

const char* to_string(CirclePosition c) {
    switch (c) {
        case CirclePosition::Inside: return "Inside";
        case CirclePosition::On: return "On";
        case CirclePosition::Outside: return "Outside";
    }
    return "?";
}

Scalar orientation_det(const Point& a, const Point& b, const Point& c) {
    Scalar bx = b.x - a.x, by = b.y - a.y;
    Scalar cx = c.x - a.x, cy = c.y - a.y;
    return Scalar(bx * cy - by * cx);
}

Orientation orientation(const Point& a, const Point& b, const Point& c) {
    int s = sign(orientation_det(a, b, c));
    if (s > 0) return Orientation::CounterClockwise;
    if (s < 0) return Orientation::Clockwise;
    return Orientation::Collinear;
}

Scalar in_circle_det(const Point& a, const Point& b, const Point& c, const Point& q) {
    // Translate q to the origin and expand the 3x3 lifted determinant.
    Scalar ax = a.x - q.x, ay = a.y - q.y;
    Scalar bx = b.x - q.x, by = b.y - q.y;
    Scalar cx = c.x - q.x, cy = c.y - q.y;
    Scalar al = ax * ax + ay * ay;
    Scalar bl = bx * bx + by * by;
    Scalar cl = cx * cx + cy * cy;
    Scalar det = al * (bx * cy - by * cx) - bl * (ax * cy - ay * cx) + cl * (ax * by - ay * bx);
    int o = sign(orientation_det(a, b, c));
    if (o < 0) det = -det;
    if (o == 0) det = 0;
    return det;
}

CirclePosition in_circle(const Point& a, const Point& b, const Point& c, const Point& q) {
    if (orientation(a, b, c) == Orientation::Collinear) {
        throw CollinearTriple("in_circle: defining triple is collinear");
    }
    int s = sign(in_circle_det(a, b, c, q));
    if (s > 0) return CirclePosition::Inside;
    if (s < 0) return CirclePosition::Outside;
    return CirclePosition::On;
}

Scalar circumcenter_param(const Point& a, const Point& b, const Point& p) {
    if (a == b) throw CoincidentPair("circumcenter_param: a and b coincide");
    Scalar cross = orientation_det(a, b, p);
    if (sign(cross) == 0) throw CollinearTriple("circumcenter_param: p lies on line ab");
    // |M - A|^2 - |M - P|^2 = 2 s R.(A - P), and R.(A - P) = -cross(b - a, p - a).
    Scalar mx = (a.x + b.x) / 2, my = (a.y + b.y) / 2;
    Scalar ma = (mx - a.x) * (mx - a.x) + (my - a.y) * (my - a.y);
    Scalar mp = (mx - p.x) * (mx - p.x) + (my - p.y) * (my - p.y);
    return Scalar((ma - mp) / (-2 * cross));
}

Point pencil_center(const Point& a, const Point& b, const Scalar& s) {
    Scalar mx = (a.x + b.x) / 2, my = (a.y + b.y) / 2;
    Scalar rx = -(b.y - a.y), ry = b.x - a.x;
    return Point(Scalar(mx + s * rx), Scalar(my + s * ry));
}

Point circumcenter(const Point& a, const Point& b, const Point& c) {
    return pencil_center(a, b, circumcenter_param(a, b, c));
}

Scalar squared_distance(const Point& a, const Point& b) {
    Scalar dx = a.x - b.x, dy = a.y - b.y;
    return Scalar(dx * dx + dy * dy);
}

}  // namespace halving
