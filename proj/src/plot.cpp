#include "halving/plot.hpp"

#include "halving/census.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace halving {

namespace {

std::string fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s(buf);
    if (s == "-0.000") s = "0.000";
    return s;
}

struct Circle {
    double cx, cy, r;
};

}  // namespace

std::string render_svg(const PointSet& s, const PlotOptions& options) {
    require_general_position(s);

    std::vector<Circle> circles;
    if (options.show_halving) {
        for (const auto& rec : halving_circles(s)) {
            const auto& [i, j, k] = rec.triple;
            const Point c = circumcenter(s[i], s[j], s[k]);
            circles.push_back({c.x.get_d(), c.y.get_d(), std::sqrt(squared_distance(c, s[i]).get_d())});
        }
    }

    double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
    double max_x = -min_x, max_y = -min_x;
    auto extend = [&](double x0, double y0, double x1, double y1) {
        min_x = std::min(min_x, x0);
        min_y = std::min(min_y, y0);
        max_x = std::max(max_x, x1);
        max_y = std::max(max_y, y1);
    };
    for (const auto& p : s) extend(p.x.get_d(), p.y.get_d(), p.x.get_d(), p.y.get_d());
    for (const auto& c : circles) extend(c.cx - c.r, c.cy - c.r, c.cx + c.r, c.cy + c.r);
    if (s.empty()) min_x = min_y = max_x = max_y = 0;

    const double span_x = std::max(max_x - min_x, 1e-12);
    const double span_y = std::max(max_y - min_y, 1e-12);
    const double scale = std::min((options.width - 2 * options.margin) / span_x,
                                  (options.height - 2 * options.margin) / span_y);
    // Center the drawing; y grows upwards in the data and downwards in SVG.
    const double off_x = (options.width - scale * span_x) / 2;
    const double off_y = (options.height - scale * span_y) / 2;
    auto sx = [&](double x) { return off_x + (x - min_x) * scale; };
    auto sy = [&](double y) { return options.height - (off_y + (y - min_y) * scale); };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(options.width) + "\" height=\"" +
           fixed(options.height) + "\" viewBox=\"0 0 " + fixed(options.width) + " " + fixed(options.height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!circles.empty()) {
        out += "<g class=\"halving-circles\" fill=\"none\" stroke=\"#3b6ea8\" stroke-width=\"1.2\">\n";
        for (const auto& c : circles) {
            out += "<circle cx=\"" + fixed(sx(c.cx)) + "\" cy=\"" + fixed(sy(c.cy)) + "\" r=\"" + fixed(c.r * scale) +
                   "\"/>\n";
        }
        out += "</g>\n";
    }
    out += "<g class=\"points\" fill=\"black\" font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double x = sx(s[i].x.get_d()), y = sy(s[i].y.get_d());
        out += "<circle cx=\"" + fixed(x) + "\" cy=\"" + fixed(y) + "\" r=\"3.500\"/>\n";
        out += "<text x=\"" + fixed(x + 6) + "\" y=\"" + fixed(y - 6) + "\">" + std::to_string(i) + "</text>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace halving
