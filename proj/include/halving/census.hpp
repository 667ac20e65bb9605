#pragma once

#include "halving/point_set.hpp"

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace halving {

/// Depth classification of one circle: `inside` points strictly inside it and
/// `outside` strictly outside. For m points, inside + outside = m - 3.
struct SplitClass {
    std::size_t inside = 0;
    std::size_t outside = 0;

    SplitClass swapped() const { return {outside, inside}; }
    friend auto operator<=>(const SplitClass&, const SplitClass&) = default;
};

std::string to_string(const SplitClass& c);

using Triple = std::array<std::size_t, 3>;

struct CircleRecord {
    Triple triple;  // strictly increasing
    SplitClass split;

    friend bool operator==(const CircleRecord&, const CircleRecord&) = default;
};

/// Number of circles per ordered (inside, outside) class. (a,b) and (b,a) are
/// kept apart; unordered sums are taken on demand.
class DepthHistogram {
public:
    DepthHistogram() = default;
    explicit DepthHistogram(std::size_t m) : m_(m) {}

    std::size_t m() const noexcept { return m_; }
    const std::map<SplitClass, std::uint64_t>& counts() const noexcept { return counts_; }

    std::uint64_t count(std::size_t inside, std::size_t outside) const;
    /// count(a,b) + count(b,a), or count(a,a) when a == b.
    std::uint64_t unordered(std::size_t a, std::size_t b) const;
    std::uint64_t total() const;
    /// The (n-1, n-1) cell for m = 2n + 1. Throws EvenSize for even m.
    std::uint64_t halving() const;

    void add(const SplitClass& c, std::uint64_t amount = 1);
    void merge(const DepthHistogram& other);

    static DepthHistogram from_records(std::size_t m, const std::vector<CircleRecord>& records);

    friend bool operator==(const DepthHistogram&, const DepthHistogram&) = default;

private:
    std::size_t m_ = 0;
    std::map<SplitClass, std::uint64_t> counts_;
};

std::string to_string(const DepthHistogram& h);

enum class Engine { Brute, Sweep, Both };

const char* to_string(Engine e);

/// Worker count for the census engines; 0 means one per hardware thread.
unsigned resolve_threads(unsigned threads);

/// Exact split of the circle through points i, j, k. Throws NotGeneralPosition
/// if the triple is collinear or another point lies on the circle.
SplitClass classify_circle(const PointSet& s, std::size_t i, std::size_t j, std::size_t k);

/// classify_circle over every triple, lexicographic order. O(m^4).
std::vector<CircleRecord> census_records_brute(const PointSet& s, unsigned threads = 1);

/// Pencil sweep over every pair, O(m^3 log m). Each circle is reached from
/// each of its three pairs; the three classifications must agree
/// (EngineDisagreement otherwise). Records in lexicographic order.
std::vector<CircleRecord> census_records_sweep(const PointSet& s, unsigned threads = 1);

DepthHistogram census_brute(const PointSet& s, unsigned threads = 0);
DepthHistogram census_sweep(const PointSet& s, unsigned threads = 0);

/// Runs the chosen engine; Engine::Both runs both and throws
/// EngineDisagreement unless the histograms are identical.
DepthHistogram census(const PointSet& s, Engine engine = Engine::Both, unsigned threads = 0);

/// Throws EvenSize unless m is odd.
std::size_t half_size(const PointSet& s);

std::uint64_t count_halving(const PointSet& s, Engine engine = Engine::Both, unsigned threads = 0);

/// Halving circles through points i and j.
std::uint64_t count_pair_halving(const PointSet& s, std::size_t i, std::size_t j);

/// Every halving circle, lexicographic order.
std::vector<CircleRecord> halving_circles(const PointSet& s);

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerificationReport {
    std::string subject;
    bool pass = true;
    std::vector<Check> checks;
    std::optional<DepthHistogram> histogram;
    std::map<std::string, std::int64_t> values;

    void add(std::string name, bool ok, std::string detail = {});
    /// First failing check, if any.
    const Check* first_failure() const;
};

/// count_halving == n^2, plus the lower bound 3 N >= n(2n+1), the parity
/// N = n (mod 2) and the histogram mass C(m,3).
VerificationReport verify_theorem1(const PointSet& s, Engine engine = Engine::Both, unsigned threads = 0);

/// For every a < b with a + b = m - 3: count(a,b) + count(b,a) = 2(a+1)(b+1);
/// the halving cell holds n^2; the total is C(m,3).
VerificationReport verify_theorem2(const PointSet& s, Engine engine = Engine::Both, unsigned threads = 0);

/// N = n (mod 2).
VerificationReport verify_parity(const PointSet& s, Engine engine = Engine::Both, unsigned threads = 0);

/// Every pair lies on an odd number of halving circles and the pair counts
/// sum to 3 N.
VerificationReport verify_pair_odd(const PointSet& s, unsigned threads = 0);

/// Builds gen_gon_config(n) and checks the structure behind the recursions
/// N_{2n+1} = N_{2n-1} + 2n - 1 and N(a,b) = N(a-1,b-1) + 4n - 2.
VerificationReport verify_gon_recursion(std::size_t n, unsigned threads = 0);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace halving
