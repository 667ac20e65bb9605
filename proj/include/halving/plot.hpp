#pragma once

#include "halving/point_set.hpp"

#include <string>

namespace halving {

struct PlotOptions {
    bool show_halving = false;
    double width = 640;
    double height = 640;
    double margin = 40;
};

/// SVG figure of the set: one labelled dot per point and, with show_halving,
/// every halving circle. Circle centers and radii are rounded for display only.
/// Throws NotGeneralPosition, and EvenSize when show_halving is set for even m.
std::string render_svg(const PointSet& s, const PlotOptions& options = {});

}  // namespace halving
