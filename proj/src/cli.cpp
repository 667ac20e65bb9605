#include "halving/cli.hpp"

#include "halving/census.hpp"
#include "halving/deformation.hpp"
#include "halving/errors.hpp"
#include "halving/plot.hpp"
#include "halving/point_set.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

namespace halving::cli {

nlohmann::json RunReport::deterministic_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["input_digest"] = input_digest;
    j["results"] = results;
    return j;
}

std::string RunReport::render() const {
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    nlohmann::json j = deterministic_json();
    nlohmann::json t = nlohmann::json::object();
    for (const auto& [phase, ms] : timing_ms) t[phase] = ms;
    j["timing_ms"] = t;
    out += kReportMarker;
    out += "\n" + j.dump(2) + "\n";
    return out;
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

namespace {

using Clock = std::chrono::steady_clock;

/// Runs f and records its wall time under `phase`.
template <typename F>
auto timed(RunReport& r, const std::string& phase, F&& f) {
    const auto t0 = Clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
        f();
        r.timing_ms.emplace_back(phase, std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
    } else {
        auto v = f();
        r.timing_ms.emplace_back(phase, std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
        return v;
    }
}

nlohmann::json histogram_json(const DepthHistogram& h) {
    nlohmann::json arr = nlohmann::json::array();
    // [inside, outside, count]
    for (const auto& [c, k] : h.counts()) {
        arr.push_back(nlohmann::json::array({c.inside, c.outside, k}));
    }
    return arr;
}

void histogram_lines(RunReport& r, const DepthHistogram& h) {
    r.lines.push_back("histogram (inside,outside): count");
    for (const auto& [c, k] : h.counts()) r.lines.push_back("  " + to_string(c) + ": " + std::to_string(k));
    r.lines.push_back("total: " + std::to_string(h.total()) + " (C(" + std::to_string(h.m()) + ",3) = " +
                      std::to_string(binomial(h.m(), 3)) + ")");
}

nlohmann::json report_json(const VerificationReport& v) {
    nlohmann::json j;
    j["subject"] = v.subject;
    j["pass"] = v.pass;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : v.checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["values"] = v.values;
    if (v.histogram) j["histogram"] = histogram_json(*v.histogram);
    return j;
}

Engine parse_engine(const std::string& e) {
    if (e == "brute") return Engine::Brute;
    if (e == "sweep") return Engine::Sweep;
    return Engine::Both;
}

std::string approx(const Scalar& v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", v.get_d());
    return buf;
}

struct Options {
    std::string engine = "both";
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string output;

    std::string input;
    std::string path_file;

    std::string suite;
    std::size_t m = 7;
    std::size_t seeds = 10;
    std::int64_t bound = 1000;
    std::vector<std::size_t> ns;

    std::vector<std::size_t> sizes{9, 13, 21};

    std::string generator;
    std::string format = "text";
    bool show_halving = false;
};

void emit(const Options& o, const std::string& text, std::ostream& out) {
    if (o.output.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.output, std::ios::binary);
    if (!f) throw Error("cannot write " + o.output);
    f << text;
}

int cmd_check(const Options& o, RunReport& r) {
    const auto text = read_file(o.input);
    const auto pts = parse_points(text);
    r.input_digest = sha256_hex(text);
    const auto report = timed(r, "check", [&] { return check_general_position(pts); });

    r.lines.push_back("points: " + std::to_string(pts.size()));
    r.lines.push_back(std::string("general position: ") + (report.ok ? "yes" : "no"));
    auto list = [](const auto& tuples) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& t : tuples) arr.push_back(t);
        return arr;
    };
    auto name = [](const auto& t) {
        std::string s;
        for (auto i : t) s += (s.empty() ? "" : " ") + std::to_string(i);
        return s;
    };
    for (const auto& t : report.duplicate_pairs) r.lines.push_back("duplicate: " + name(t));
    for (const auto& t : report.collinear_triples) r.lines.push_back("collinear: " + name(t));
    for (const auto& t : report.concyclic_quadruples) r.lines.push_back("concyclic: " + name(t));
    r.results["ok"] = report.ok;
    r.results["points"] = pts.size();
    r.results["duplicate_pairs"] = list(report.duplicate_pairs);
    r.results["collinear_triples"] = list(report.collinear_triples);
    r.results["concyclic_quadruples"] = list(report.concyclic_quadruples);
    return report.ok ? kPass : kDegenerateInput;
}

int cmd_count(const Options& o, RunReport& r) {
    const auto text = read_file(o.input);
    const PointSet s = parse_point_set(text);
    r.input_digest = sha256_hex(to_text(s));
    const Engine engine = parse_engine(o.engine);
    const auto h = timed(r, "census", [&] { return census(s, engine, o.threads); });

    r.lines.push_back("points: " + std::to_string(s.size()));
    r.lines.push_back(std::string("engine: ") + to_string(engine));
    histogram_lines(r, h);
    r.results["m"] = s.size();
    r.results["engine"] = to_string(engine);
    r.results["histogram"] = histogram_json(h);
    if (s.size() % 2 == 0) {
        r.lines.push_back("N_S: undefined for an even number of points");
        return kPass;
    }
    const std::uint64_t n = (s.size() - 1) / 2;
    const bool match = h.halving() == n * n;
    r.lines.push_back("N_S=" + std::to_string(h.halving()) + ", expected " + std::to_string(n * n) + ", " +
                      (match ? "PASS" : "FAIL"));
    r.results["N_S"] = h.halving();
    r.results["expected"] = n * n;
    r.results["match"] = match;
    return match ? kPass : kFailed;
}

int cmd_verify(const Options& o, RunReport& r, std::ostream& err) {
    const Engine engine = parse_engine(o.engine);
    const std::vector<std::string> random_suites{"theorem1", "theorem2", "parity", "pair-odd"};
    std::vector<std::string> suites;
    if (o.suite == "all") {
        suites = random_suites;
        suites.push_back("gon");
    } else {
        suites = {o.suite};
    }

    bool all_pass = true;
    std::string first_failure;
    std::string digest_input;
    nlohmann::json runs = nlohmann::json::array();
    auto record = [&](const VerificationReport& v, const std::string& suite) {
        auto j = report_json(v);
        j["suite"] = suite;
        runs.push_back(j);
        if (!v.pass && all_pass) {
            const Check* c = v.first_failure();
            first_failure = v.subject + ": " + (c ? c->name + " (" + c->detail + ")" : std::string("failed"));
        }
        all_pass = all_pass && v.pass;
    };

    const bool needs_random = std::any_of(suites.begin(), suites.end(), [&](const std::string& s) {
        return std::find(random_suites.begin(), random_suites.end(), s) != random_suites.end();
    });
    std::vector<PointSet> sets;
    if (needs_random) {
        if (o.m % 2 == 0 || o.m < 3) throw EvenSize("--m must be odd and at least 3");
        timed(r, "generate", [&] {
            for (std::size_t i = 0; i < o.seeds; ++i) {
                sets.push_back(gen_random(o.m, o.seed + i, o.bound));
                digest_input += to_text(sets.back());
            }
        });
    }

    for (const auto& suite : suites) {
        if (suite == "gon") {
            const std::vector<std::size_t> ns = o.ns.empty() ? std::vector<std::size_t>{2, 3, 4, 5} : o.ns;
            for (auto n : ns) {
                const auto v = timed(r, "gon n=" + std::to_string(n), [&] { return verify_gon_recursion(n, o.threads); });
                record(v, suite);
                const auto cur = v.values.at("N_" + std::to_string(2 * n + 1));
                const auto prev = v.values.at("N_" + std::to_string(2 * n - 1));
                r.lines.push_back("gon n=" + std::to_string(n) + ": N_" + std::to_string(2 * n + 1) + " = N_" +
                                  std::to_string(2 * n - 1) + " + " + std::to_string(2 * n - 1) + " = " +
                                  std::to_string(prev) + " + " + std::to_string(2 * n - 1) + " = " +
                                  std::to_string(cur) + "  " + (v.pass ? "PASS" : "FAIL"));
            }
            continue;
        }
        std::size_t passed = 0;
        timed(r, suite, [&] {
            for (std::size_t i = 0; i < sets.size(); ++i) {
                VerificationReport v;
                if (suite == "theorem1") v = verify_theorem1(sets[i], engine, o.threads);
                else if (suite == "theorem2") v = verify_theorem2(sets[i], engine, o.threads);
                else if (suite == "parity") v = verify_parity(sets[i], engine, o.threads);
                else v = verify_pair_odd(sets[i], o.threads);
                v.subject += " seed=" + std::to_string(o.seed + i);
                record(v, suite);
                if (v.pass) ++passed;
            }
        });
        r.lines.push_back(suite + " m=" + std::to_string(o.m) + ": " + std::to_string(passed) + "/" +
                          std::to_string(sets.size()) + " pass");
    }
    r.input_digest = sha256_hex(digest_input);
    r.results["suite"] = o.suite;
    r.results["pass"] = all_pass;
    r.results["runs"] = runs;
    r.lines.push_back(all_pass ? "ALL PASS" : "FAIL: " + first_failure);
    if (!all_pass) err << "first failing check: " << first_failure << "\n";
    return all_pass ? kPass : kFailed;
}

int cmd_deform(const Options& o, RunReport& r) {
    const auto text = read_file(o.input);
    const PointSet s = parse_point_set(text);
    const auto path_text = read_file(o.path_file);
    const MotionPath path = parse_path(path_text);
    r.input_digest = sha256_hex(to_text(s) + to_text(path));
    require_general_position(s);

    const auto report = timed(r, "deform", [&] { return verify_path_invariance(s, path, o.threads); });
    r.lines.push_back("moving point: " + std::to_string(path.moving_index) + ", waypoints: " +
                      std::to_string(path.waypoints.size()) + ", events: " + std::to_string(report.exchanges.size()));
    nlohmann::json events = nlohmann::json::array();
    for (std::size_t e = 0; e < report.exchanges.size(); ++e) {
        const auto& x = report.exchanges[e];
        std::string changes;
        nlohmann::json affected = nlohmann::json::array();
        for (const auto& c : x.affected) {
            const std::string t = "{" + std::to_string(c.triple[0]) + "," + std::to_string(c.triple[1]) + "," +
                                  std::to_string(c.triple[2]) + "}";
            changes += " " + t + " " + to_string(c.before) + "->" + to_string(c.after);
            affected.push_back({{"triple", c.triple}, {"before", {c.before.inside, c.before.outside}},
                                {"after", {c.after.inside, c.after.outside}}});
        }
        std::string kind = to_string(x.event.boundary);
        if (x.event.boundary.kind == Boundary::Kind::Circle) kind += x.entering ? " entering" : " leaving";
        r.lines.push_back("event " + std::to_string(e) + ": segment " + std::to_string(x.event.segment_index) +
                          " lambda~" + approx((x.event.bracket_lo + x.event.bracket_hi) / 2) + " " + kind + ":" +
                          changes + "  " + (x.pass ? "PASS" : "FAIL " + x.detail));
        events.push_back({{"segment", x.event.segment_index},
                          {"boundary", to_string(x.event.boundary)},
                          {"entering", x.entering},
                          {"bracket", {to_string(x.event.bracket_lo), to_string(x.event.bracket_hi)}},
                          {"affected", affected},
                          {"pass", x.pass},
                          {"detail", x.detail}});
    }
    if (report.halving_start) {
        r.lines.push_back("N_S start=" + std::to_string(*report.halving_start) +
                          " end=" + std::to_string(*report.halving_end));
        r.results["halving_start"] = *report.halving_start;
        r.results["halving_end"] = *report.halving_end;
    }
    r.lines.push_back(std::string("sign states chain: ") + (report.signs_chain ? "yes" : "no"));
    r.lines.push_back(report.pass ? "PASS" : "FAIL: " + report.detail);
    r.results["events"] = events;
    r.results["signs_chain"] = report.signs_chain;
    r.results["histogram_start"] = histogram_json(report.histogram_start);
    r.results["histogram_end"] = histogram_json(report.histogram_end);
    r.results["pass"] = report.pass;
    return report.pass ? kPass : kFailed;
}

int cmd_bench(const Options& o, RunReport& r) {
    std::string digest_input;
    nlohmann::json rows = nlohmann::json::array();
    char line[160];
    std::snprintf(line, sizeof line, "%6s %10s %12s %12s %8s", "m", "triples", "brute_ms", "sweep_ms", "ratio");
    r.lines.push_back(line);
    for (auto m : o.sizes) {
        const PointSet s = gen_random(m, o.seed, o.bound);
        digest_input += to_text(s);
        auto t0 = Clock::now();
        const auto brute = census_brute(s, o.threads);
        auto t1 = Clock::now();
        const auto sweep = census_sweep(s, o.threads);
        auto t2 = Clock::now();
        const double brute_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        const double sweep_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
        if (!(brute == sweep)) {
            throw EngineDisagreement("m=" + std::to_string(m) + ": brute " + to_string(brute) + " != sweep " +
                                     to_string(sweep));
        }
        const double ratio = sweep_ms > 0 ? brute_ms / sweep_ms : 0.0;
        std::snprintf(line, sizeof line, "%6zu %10llu %12.3f %12.3f %8.2f", m,
                      static_cast<unsigned long long>(binomial(m, 3)), brute_ms, sweep_ms, ratio);
        r.lines.push_back(line);
        r.timing_ms.emplace_back("brute m=" + std::to_string(m), brute_ms);
        r.timing_ms.emplace_back("sweep m=" + std::to_string(m), sweep_ms);
        rows.push_back({{"m", m}, {"triples", binomial(m, 3)}, {"histogram", histogram_json(brute)}, {"agree", true}});
    }
    r.lines.push_back("engines agree on every size");
    r.input_digest = sha256_hex(digest_input);
    r.results["rows"] = rows;
    return kPass;
}

int cmd_gen(const Options& o, std::ostream& out) {
    PointSet s;
    if (o.generator == "gon") {
        const std::size_t n = o.ns.empty() ? 2 : o.ns.front();
        s = gen_gon_config(n).point_set;
    } else {
        s = gen_random(o.m, o.seed, o.bound);
    }
    emit(o, o.format == "json" ? to_json(s) : to_text(s), out);
    return kPass;
}

int cmd_plot(const Options& o, std::ostream& out) {
    const PointSet s = parse_point_set(read_file(o.input));
    PlotOptions po;
    po.show_halving = o.show_halving;
    emit(o, render_svg(s, po), out);
    return kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exact census of circles through triples of a planar point set", "halving"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--engine", o.engine, "brute, sweep or both (both asserts agreement)")
            ->check(CLI::IsMember({"brute", "sweep", "both"}));
        sub->add_option("--seed", o.seed, "Base random seed");
        sub->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
        sub->add_option("--output", o.output, "Write output here instead of stdout");
    };

    auto* check = app.add_subcommand("check", "Check a point set for general position");
    check->add_option("input", o.input, "Point-set file")->required();
    add_common(check);

    auto* count = app.add_subcommand("count", "Depth histogram and halving-circle count");
    count->add_option("input", o.input, "Point-set file")->required();
    add_common(count);

    auto* verify = app.add_subcommand("verify", "Verify the counting theorems on generated inputs");
    verify->add_option("suite", o.suite, "theorem1|theorem2|parity|pair-odd|gon|all")
        ->required()
        ->check(CLI::IsMember({"theorem1", "theorem2", "parity", "pair-odd", "gon", "all"}));
    verify->add_option("--m", o.m, "Set size for random suites (odd)");
    verify->add_option("--seeds", o.seeds, "Number of random sets");
    verify->add_option("--bound", o.bound, "Coordinate bound for random sets");
    verify->add_option("--n", o.ns, "Gon configuration sizes (default 2 3 4 5)");
    add_common(verify);

    auto* deform = app.add_subcommand("deform", "Move one point along a path and check every crossing");
    deform->add_option("input", o.input, "Point-set file")->required();
    deform->add_option("path", o.path_file, "Path file")->required();
    add_common(deform);

    auto* bench = app.add_subcommand("bench", "Time the brute-force and sweep engines");
    bench->add_option("--sizes", o.sizes, "Set sizes")->delimiter(',');
    bench->add_option("--bound", o.bound, "Coordinate bound");
    add_common(bench);

    auto* gen = app.add_subcommand("gen", "Write a generated point set");
    gen->add_option("generator", o.generator, "random or gon")->required()->check(CLI::IsMember({"random", "gon"}));
    gen->add_option("--m", o.m, "Number of random points");
    gen->add_option("--bound", o.bound, "Coordinate bound");
    gen->add_option("--n", o.ns, "Gon configuration size");
    gen->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    add_common(gen);

    auto* plot = app.add_subcommand("plot", "Render the set (and its halving circles) as SVG");
    plot->add_option("input", o.input, "Point-set file")->required();
    plot->add_flag("--show-halving", o.show_halving, "Draw every halving circle");
    add_common(plot);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kPass : kFailed;
    }

    RunReport report;
    report.command = "halving";
    for (const auto& a : args) report.command += " " + a;

    try {
        int code = kPass;
        if (check->parsed()) code = cmd_check(o, report);
        else if (count->parsed()) code = cmd_count(o, report);
        else if (verify->parsed()) code = cmd_verify(o, report, err);
        else if (deform->parsed()) code = cmd_deform(o, report);
        else if (bench->parsed()) code = cmd_bench(o, report);
        else if (gen->parsed()) return cmd_gen(o, out);
        else if (plot->parsed()) return cmd_plot(o, out);
        emit(o, report.render(), out);
        return code;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kParseError;
    } catch (const NonRationalNumber& e) {
        err << "parse error: " << e.what() << "\n";
        return kParseError;
    } catch (const NotGeneralPosition& e) {
        err << "degenerate input: " << e.what() << "\n";
        return kDegenerateInput;
    } catch (const DuplicatePoints& e) {
        err << "degenerate input: " << e.what() << "\n";
        return kDegenerateInput;
    } catch (const InadmissiblePath& e) {
        err << "inadmissible path: " << e.what() << "\n";
        if (dynamic_cast<const SimultaneousCrossing*>(&e)) {
            err << "hint: perturb the path slightly so it avoids boundary intersections\n";
        }
        return kInadmissiblePath;
    } catch (const EngineDisagreement& e) {
        err << "engine disagreement (bug): " << e.what() << "\n";
        return kEngineDisagreement;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kFailed;
    }
}

}  // namespace halving::cli
