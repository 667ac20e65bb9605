#include "halving/cli.hpp"
#include "halving/point_set.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

using namespace halving;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;

    /// Text before the report marker.
    std::string text() const { return out.substr(0, out.find(cli::kReportMarker)); }
    nlohmann::json json() const {
        const auto at = out.find(cli::kReportMarker);
        return nlohmann::json::parse(out.substr(at + std::string(cli::kReportMarker).size()));
    }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / ("halving_cli_" + std::string(info->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string file(const std::string& name, const std::string& contents) {
        const auto p = dir_ / name;
        std::ofstream(p, std::ios::binary) << contents;
        return p.string();
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

std::size_t occurrences(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1)) ++n;
    return n;
}

}  // namespace

TEST_F(CliTest, CheckGeneralPosition) {
    auto ok = run({"check", file("ok.txt", "halving-points v1\n0 0\n1 0\n0 1\n")});
    EXPECT_EQ(ok.code, 0);
    EXPECT_NE(ok.text().find("general position: yes"), std::string::npos);
    EXPECT_EQ(ok.json()["results"]["ok"], true);

    auto line = run({"check", file("line.txt", "halving-points v1\n0 0\n1 1\n2 2\n")});
    EXPECT_EQ(line.code, 3);
    EXPECT_NE(line.text().find("collinear: 0 1 2"), std::string::npos);

    auto square = run({"check", file("sq.txt", "halving-points v1\n0 0\n1 0\n1 1\n0 1\n")});
    EXPECT_EQ(square.code, 3);
    EXPECT_NE(square.text().find("concyclic: 0 1 2 3"), std::string::npos);
    EXPECT_EQ(square.json()["results"]["concyclic_quadruples"].size(), 1u);
}

TEST_F(CliTest, ParseErrorsExitTwo) {
    auto bad = run({"check", file("bad.txt", "halving-points v1\n0 0\n1 0\n1 x\n")});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("line 4"), std::string::npos);
    EXPECT_EQ(run({"count", file("hdr.txt", "points\n0 0\n")}).code, 2);
    EXPECT_EQ(run({"check", file("float.txt", "halving-points v1\n1e5 0\n")}).code, 2);
}

TEST_F(CliTest, CountKnownSizes) {
    auto three = run({"count", file("3.txt", "halving-points v1\n0 0\n4 0\n1 3\n")});
    EXPECT_EQ(three.code, 0);
    EXPECT_NE(three.text().find("N_S=1, expected 1, PASS"), std::string::npos);
    EXPECT_EQ(three.json()["results"]["histogram"], nlohmann::json::parse("[[0,0,1]]"));

    auto five = run({"count", file("5.txt", to_text(gen_random(5, 17, 100)))});
    EXPECT_EQ(five.code, 0);
    EXPECT_NE(five.text().find("N_S=4, expected 4, PASS"), std::string::npos);

    for (const char* engine : {"brute", "sweep", "both"}) {
        auto r = run({"count", file("13.txt", to_text(gen_random(13, 5, 1000))), "--engine", engine});
        EXPECT_EQ(r.code, 0) << engine;
        EXPECT_NE(r.text().find("N_S=36, expected 36, PASS"), std::string::npos);
        EXPECT_EQ(r.json()["results"]["engine"], engine);
    }

    auto even = run({"count", file("4.txt", "halving-points v1\n0 0\n4 0\n1 3\n2 -5\n")});
    EXPECT_EQ(even.code, 0);
    EXPECT_NE(even.text().find("undefined"), std::string::npos);
}

TEST_F(CliTest, CountRejectsDegenerateInput) {
    EXPECT_EQ(run({"count", file("line.txt", "halving-points v1\n0 0\n1 1\n2 2\n3 -7\n5 1\n")}).code, 3);
    EXPECT_EQ(run({"count", file("dup.txt", "halving-points v1\n0 0\n1 1\n0 0\n")}).code, 3);
}

TEST_F(CliTest, VerifySuites) {
    auto gon = run({"verify", "gon", "--n", "4"});
    EXPECT_EQ(gon.code, 0) << gon.err;
    EXPECT_NE(gon.text().find("N_9 = N_7 + 7 = 9 + 7 = 16  PASS"), std::string::npos) << gon.text();

    auto t2 = run({"verify", "theorem2", "--m", "9", "--seeds", "20"});
    EXPECT_EQ(t2.code, 0) << t2.err;
    EXPECT_NE(t2.text().find("theorem2 m=9: 20/20 pass"), std::string::npos);

    auto odd = run({"verify", "pair-odd", "--m", "7", "--seeds", "20"});
    EXPECT_EQ(odd.code, 0) << odd.err;
    EXPECT_NE(odd.text().find("pair-odd m=7: 20/20 pass"), std::string::npos);
    EXPECT_EQ(odd.json()["results"]["runs"].size(), 20u);

    auto all = run({"verify", "all", "--m", "7", "--seeds", "3", "--n", "2", "3"});
    EXPECT_EQ(all.code, 0) << all.err;
    EXPECT_NE(all.text().find("ALL PASS"), std::string::npos);

    EXPECT_EQ(run({"verify", "theorem1", "--m", "8"}).code, 1);
    EXPECT_EQ(run({"verify", "nonsense"}).code, 1);
}

TEST_F(CliTest, ReportsAreDeterministic) {
    const auto input = file("9.txt", to_text(gen_random(9, 3, 500)));
    auto a = run({"count", input, "--threads", "1"});
    auto b = run({"count", input, "--threads", "3", "--engine", "both"});
    EXPECT_EQ(a.text(), b.text());
    auto ja = a.json(), jb = b.json();
    EXPECT_TRUE(ja.contains("timing_ms"));
    EXPECT_EQ(ja["input_digest"], jb["input_digest"]);
    EXPECT_EQ(ja["results"], jb["results"]);
    EXPECT_EQ(ja["input_digest"].get<std::string>().size(), 64u);

    auto v1 = run({"verify", "theorem1", "--m", "7", "--seeds", "4", "--seed", "11"});
    auto v2 = run({"verify", "theorem1", "--m", "7", "--seeds", "4", "--seed", "11"});
    auto v3 = run({"verify", "theorem1", "--m", "7", "--seeds", "4", "--seed", "12"});
    ja = v1.json();
    jb = v2.json();
    ja.erase("timing_ms");
    jb.erase("timing_ms");
    EXPECT_EQ(ja, jb);
    EXPECT_NE(v1.json()["input_digest"], v3.json()["input_digest"]);
}

TEST_F(CliTest, Sha256) {
    EXPECT_EQ(cli::sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    EXPECT_EQ(cli::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_F(CliTest, Deform) {
    const auto input = file("set.txt", "halving-points v1\n0 0\n10 0\n5 8\n20 1\n-4 3\n");
    auto ok = run({"deform", input, file("p.txt", "halving-path v1\nmoving 3\n20 1\n20 -1\n")});
    EXPECT_EQ(ok.code, 0) << ok.err;
    EXPECT_NE(ok.text().find("line(0,1)"), std::string::npos);
    EXPECT_NE(ok.text().find("N_S start=4 end=4"), std::string::npos);
    EXPECT_EQ(ok.json()["results"]["pass"], true);

    // Straight through static point 0.
    auto through = run({"deform", input, file("q.txt", "halving-path v1\nmoving 4\n-4 3\n4 -3\n")});
    EXPECT_EQ(through.code, 4);
    EXPECT_NE(through.err.find("perturb"), std::string::npos);

    auto wrong_start = run({"deform", input, file("r.txt", "halving-path v1\nmoving 4\n-3 3\n4 -3\n")});
    EXPECT_EQ(wrong_start.code, 4);
    EXPECT_EQ(run({"deform", input, file("s.txt", "halving-path v1\nmoving\n")}).code, 2);
}

TEST_F(CliTest, Bench) {
    auto r = run({"bench", "--sizes", "3,9"});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto rows = r.json()["results"]["rows"];
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0]["histogram"], nlohmann::json::parse("[[0,0,1]]"));
    EXPECT_EQ(rows[1]["triples"], 84);
    EXPECT_EQ(r.json()["timing_ms"].size(), 4u);
}

TEST_F(CliTest, GenWritesLoadableFiles) {
    auto text = run({"gen", "random", "--m", "9", "--seed", "4", "--bound", "50"});
    EXPECT_EQ(text.code, 0);
    EXPECT_EQ(text.out, to_text(gen_random(9, 4, 50)));

    auto json = run({"gen", "gon", "--n", "3", "--format", "json", "--output", path("gon.json")});
    EXPECT_EQ(json.code, 0);
    EXPECT_TRUE(json.out.empty());
    EXPECT_EQ(load(fs::path(path("gon.json"))), gen_gon_config(3).point_set);

    auto count = run({"count", path("gon.json")});
    EXPECT_NE(count.text().find("N_S=9, expected 9, PASS"), std::string::npos);
}

TEST_F(CliTest, Plot) {
    const auto five = file("5.txt", to_text(gen_random(5, 8, 100)));
    auto svg = run({"plot", five, "--show-halving"});
    EXPECT_EQ(svg.code, 0) << svg.err;
    EXPECT_EQ(svg.out.rfind("<?xml", 0), 0u);
    EXPECT_NE(svg.out.find("<svg"), std::string::npos);
    EXPECT_NE(svg.out.find("</svg>"), std::string::npos);
    EXPECT_EQ(occurrences(svg.out, "r=\"3.500\""), 5u);
    EXPECT_EQ(occurrences(svg.out, "<circle"), 5u + 4u);
    EXPECT_EQ(occurrences(svg.out, "<text"), 5u);
    EXPECT_EQ(run({"plot", five, "--show-halving"}).out, svg.out);

    auto three = run({"plot", file("3.txt", "halving-points v1\n0 0\n4 0\n1 3\n"), "--show-halving"});
    EXPECT_EQ(occurrences(three.out, "<circle"), 3u + 1u);

    auto dots = run({"plot", five, "--output", path("dots.svg")});
    EXPECT_EQ(dots.code, 0);
    std::ifstream in(path("dots.svg"));
    const std::string body((std::istreambuf_iterator<char>(in)), {});
    EXPECT_EQ(occurrences(body, "<circle"), 5u);
    EXPECT_EQ(occurrences(body, "halving-circles"), 0u);

    EXPECT_EQ(run({"plot", file("line.txt", "halving-points v1\n0 0\n1 1\n2 2\n")}).code, 3);
}

TEST_F(CliTest, Usage) {
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"--help"}).code, 0);
    EXPECT_EQ(run({"count"}).code, 1);
    EXPECT_EQ(run({"count", path("missing.txt")}).code, 1);
}
