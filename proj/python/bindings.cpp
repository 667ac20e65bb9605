#include "halving/census.hpp"
#include "halving/deformation.hpp"
#include "halving/errors.hpp"
#include "halving/plot.hpp"
#include "halving/point_set.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace halving;

namespace {

Scalar to_scalar(const py::handle& v) { return parse_scalar(py::str(v).cast<std::string>()); }

Point to_point(const py::handle& p) {
    auto seq = py::reinterpret_borrow<py::sequence>(p);
    if (seq.size() != 2) throw py::value_error("points are (x, y) pairs");
    return Point(to_scalar(seq[0]), to_scalar(seq[1]));
}

std::vector<Point> to_points(const py::iterable& pts) {
    std::vector<Point> out;
    for (auto p : pts) out.push_back(to_point(p));
    return out;
}

py::tuple point_tuple(const Point& p) { return py::make_tuple(to_string(p.x), to_string(p.y)); }

Engine engine_from(const std::string& e) {
    if (e == "brute") return Engine::Brute;
    if (e == "sweep") return Engine::Sweep;
    if (e == "both") return Engine::Both;
    throw py::value_error("engine must be 'brute', 'sweep' or 'both'");
}

py::dict histogram_dict(const DepthHistogram& h) {
    py::dict d;
    for (const auto& [c, k] : h.counts()) d[py::make_tuple(c.inside, c.outside)] = k;
    return d;
}

py::dict report_dict(const VerificationReport& r) {
    py::dict d;
    d["subject"] = r.subject;
    d["pass"] = r.pass;
    py::list checks;
    for (const auto& c : r.checks) {
        py::dict cd;
        cd["name"] = c.name;
        cd["pass"] = c.pass;
        cd["detail"] = c.detail;
        checks.append(cd);
    }
    d["checks"] = checks;
    d["values"] = r.values;
    if (r.histogram) d["histogram"] = histogram_dict(*r.histogram);
    return d;
}

MotionPath make_path(std::size_t moving, const py::iterable& waypoints) {
    MotionPath path;
    path.moving_index = moving;
    path.waypoints = to_points(waypoints);
    return path;
}

py::dict event_dict(const CrossingEvent& e) {
    py::dict d;
    d["segment"] = e.segment_index;
    d["boundary"] = to_string(e.boundary);
    d["bracket"] = py::make_tuple(to_string(e.bracket_lo), to_string(e.bracket_hi));
    d["before"] = point_tuple(e.before_point);
    d["after"] = point_tuple(e.after_point);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact census of the circles through triples of a planar point set.";

    auto base = py::register_exception<Error>(m, "HalvingError");
    py::register_exception<NotGeneralPosition>(m, "NotGeneralPosition", base.ptr());
    py::register_exception<DuplicatePoints>(m, "DuplicatePoints", base.ptr());
    py::register_exception<EvenSize>(m, "EvenSize", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<NonRationalNumber>(m, "NonRationalNumber", base.ptr());
    py::register_exception<InadmissiblePath>(m, "InadmissiblePath", base.ptr());
    py::register_exception<EngineDisagreement>(m, "EngineDisagreement", base.ptr());

    m.def("orientation", [](const py::handle& a, const py::handle& b, const py::handle& c) {
        return to_string(orientation(to_point(a), to_point(b), to_point(c)));
    }, "Orientation of three points: 'CounterClockwise', 'Clockwise' or 'Collinear'.");
    m.def("in_circle", [](const py::handle& a, const py::handle& b, const py::handle& c, const py::handle& q) {
        return to_string(in_circle(to_point(a), to_point(b), to_point(c), to_point(q)));
    }, "Position of q relative to the circle through a, b, c: 'Inside', 'On' or 'Outside'.");
    m.def("circumcenter_param", [](const py::handle& a, const py::handle& b, const py::handle& p) {
        return to_string(circumcenter_param(to_point(a), to_point(b), to_point(p)));
    }, "Pencil coordinate of the circle through a, b, p, as an exact fraction string.");

    py::class_<PointSet>(m, "PointSet")
        .def(py::init([](const py::iterable& pts) { return PointSet(to_points(pts)); }), py::arg("points"))
        .def_static("from_text", [](const std::string& text) { return parse_point_set(text); })
        .def("to_text", [](const PointSet& s) { return to_text(s); })
        .def("to_json", [](const PointSet& s) { return to_json(s); })
        .def("points", [](const PointSet& s) {
            py::list out;
            for (const auto& p : s) out.append(point_tuple(p));
            return out;
        })
        .def("in_general_position", &PointSet::in_general_position)
        .def("__len__", &PointSet::size)
        .def("__eq__", [](const PointSet& a, const PointSet& b) { return a == b; })
        .def("__repr__", [](const PointSet& s) { return "<PointSet of " + std::to_string(s.size()) + " points>"; });

    m.def("check_general_position", [](const py::iterable& pts) {
        auto r = check_general_position(to_points(pts));
        py::dict d;
        d["ok"] = r.ok;
        d["duplicate_pairs"] = r.duplicate_pairs;
        d["collinear_triples"] = r.collinear_triples;
        d["concyclic_quadruples"] = r.concyclic_quadruples;
        return d;
    }, py::arg("points"));

    m.def("gen_random", &gen_random, py::arg("m"), py::arg("seed"), py::arg("coord_bound") = 1000);
    m.def("gen_gon_config", [](std::size_t n) { return gen_gon_config(n).point_set; }, py::arg("n"));

    m.def("census", [](const PointSet& s, const std::string& engine, unsigned threads) {
        DepthHistogram h;
        {
            py::gil_scoped_release release;
            h = census(s, engine_from(engine), threads);
        }
        return histogram_dict(h);
    }, py::arg("s"), py::arg("engine") = "both", py::arg("threads") = 0);
    m.def("count_halving", [](const PointSet& s, const std::string& engine, unsigned threads) {
        return count_halving(s, engine_from(engine), threads);
    }, py::arg("s"), py::arg("engine") = "both", py::arg("threads") = 0);
    m.def("count_pair_halving", &count_pair_halving, py::arg("s"), py::arg("i"), py::arg("j"));
    m.def("classify_circle", [](const PointSet& s, std::size_t i, std::size_t j, std::size_t k) {
        auto c = classify_circle(s, i, j, k);
        return py::make_tuple(c.inside, c.outside);
    });

    m.def("verify_theorem1", [](const PointSet& s, const std::string& engine) {
        return report_dict(verify_theorem1(s, engine_from(engine)));
    }, py::arg("s"), py::arg("engine") = "both");
    m.def("verify_theorem2", [](const PointSet& s, const std::string& engine) {
        return report_dict(verify_theorem2(s, engine_from(engine)));
    }, py::arg("s"), py::arg("engine") = "both");
    m.def("verify_pair_odd", [](const PointSet& s) { return report_dict(verify_pair_odd(s)); }, py::arg("s"));
    m.def("verify_gon_recursion", [](std::size_t n) { return report_dict(verify_gon_recursion(n)); }, py::arg("n"));

    m.def("find_crossings", [](const PointSet& s, std::size_t moving, const py::iterable& waypoints) {
        py::list out;
        for (const auto& e : find_crossings(s, make_path(moving, waypoints))) out.append(event_dict(e));
        return out;
    }, py::arg("s"), py::arg("moving"), py::arg("waypoints"));
    m.def("verify_path_invariance", [](const PointSet& s, std::size_t moving, const py::iterable& waypoints) {
        auto r = verify_path_invariance(s, make_path(moving, waypoints));
        py::dict d;
        d["pass"] = r.pass;
        d["detail"] = r.detail;
        d["events"] = r.exchanges.size();
        d["signs_chain"] = r.signs_chain;
        d["halving_start"] = r.halving_start ? py::cast(*r.halving_start) : py::none();
        d["halving_end"] = r.halving_end ? py::cast(*r.halving_end) : py::none();
        return d;
    }, py::arg("s"), py::arg("moving"), py::arg("waypoints"));

    m.def("render_svg", [](const PointSet& s, bool show_halving) {
        PlotOptions o;
        o.show_halving = show_halving;
        return render_svg(s, o);
    }, py::arg("s"), py::arg("show_halving") = false);
}
