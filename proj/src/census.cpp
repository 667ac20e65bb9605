#include "halving/census.hpp"

#include "halving/errors.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <thread>

namespace halving {

std::string to_string(const SplitClass& c) {
    return "(" + std::to_string(c.inside) + "," + std::to_string(c.outside) + ")";
}

std::uint64_t DepthHistogram::count(std::size_t inside, std::size_t outside) const {
    auto it = counts_.find(SplitClass{inside, outside});
    return it == counts_.end() ? 0 : it->second;
}

std::uint64_t DepthHistogram::unordered(std::size_t a, std::size_t b) const {
    return a == b ? count(a, a) : count(a, b) + count(b, a);
}

std::uint64_t DepthHistogram::total() const {
    std::uint64_t t = 0;
    for (const auto& [_, c] : counts_) t += c;
    return t;
}

std::uint64_t DepthHistogram::halving() const {
    if (m_ % 2 == 0) throw EvenSize("halving circles need an odd number of points, got " + std::to_string(m_));
    const std::size_t n = (m_ - 1) / 2;
    return count(n - 1, n - 1);
}

void DepthHistogram::add(const SplitClass& c, std::uint64_t amount) {
    if (amount != 0) counts_[c] += amount;
}

void DepthHistogram::merge(const DepthHistogram& other) {
    for (const auto& [c, k] : other.counts_) add(c, k);
}

DepthHistogram DepthHistogram::from_records(std::size_t m, const std::vector<CircleRecord>& records) {
    DepthHistogram h(m);
    for (const auto& r : records) h.add(r.split);
    return h;
}

std::string to_string(const DepthHistogram& h) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [c, k] : h.counts()) {
        if (!first) os << ", ";
        first = false;
        os << to_string(c) << ": " << k;
    }
    os << '}';
    return os.str();
}

const char* to_string(Engine e) {
    switch (e) {
        case Engine::Brute: return "brute";
        case Engine::Sweep: return "sweep";
        case Engine::Both: return "both";
    }
    return "?";
}

unsigned resolve_threads(unsigned threads) {
    if (threads != 0) return threads;
    return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

namespace {

std::string triple_name(std::size_t i, std::size_t j, std::size_t k) {
    return std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(k);
}

/// All strictly increasing triples of [0, m), lexicographic.
std::vector<Triple> all_triples(std::size_t m) {
    std::vector<Triple> out;
    out.reserve(binomial(m, 3));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = j + 1; k < m; ++k) out.push_back({i, j, k});
    return out;
}

/// Position of a sorted triple in lexicographic order.
class TripleIndex {
public:
    explicit TripleIndex(std::size_t m) : m_(m), row_(m + 1, 0) {
        // row_[i] = number of triples whose first element is < i.
        for (std::size_t i = 0; i < m; ++i) row_[i + 1] = row_[i] + binomial(m - i - 1, 2);
    }

    std::size_t operator()(std::size_t i, std::size_t j, std::size_t k) const {
        // Within row i, pairs (j, k) of (i, m) in lexicographic order.
        const std::size_t r = m_ - i - 1;       // elements after i
        const std::size_t a = j - i - 1;        // rank of j among them
        const std::size_t before = a * (r - 1) - a * (a - 1) / 2;  // pairs with first element < j
        return row_[i] + before + (k - j - 1);
    }

private:
    std::size_t m_;
    std::vector<std::size_t> row_;
};

}  // namespace

SplitClass classify_circle(const PointSet& s, std::size_t i, std::size_t j, std::size_t k) {
    const std::size_t m = s.size();
    if (i >= m || j >= m || k >= m) throw IndexOutOfRange("classify_circle: index out of range");
    if (i == j || j == k || i == k) throw Error("classify_circle: indices must be distinct");
    const Point &a = s[i], &b = s[j], &c = s[k];
    if (orientation(a, b, c) == Orientation::Collinear) {
        throw NotGeneralPosition("points " + triple_name(i, j, k) + " are collinear");
    }
    SplitClass split;
    for (std::size_t l = 0; l < m; ++l) {
        if (l == i || l == j || l == k) continue;
        switch (in_circle(a, b, c, s[l])) {
            case CirclePosition::Inside: ++split.inside; break;
            case CirclePosition::Outside: ++split.outside; break;
            case CirclePosition::On:
                throw NotGeneralPosition("points " + triple_name(i, j, k) + ", " + std::to_string(l) +
                                         " are concyclic");
        }
    }
    return split;
}

std::vector<CircleRecord> census_records_brute(const PointSet& s, unsigned threads) {
    const auto triples = all_triples(s.size());
    std::vector<CircleRecord> records(triples.size());
    detail::parallel_for(triples.size(), resolve_threads(threads), [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            const auto& [i, j, k] = triples[t];
            records[t] = CircleRecord{triples[t], classify_circle(s, i, j, k)};
        }
    });
    return records;
}

std::vector<CircleRecord> census_records_sweep(const PointSet& s, unsigned threads) {
    const std::size_t m = s.size();
    const auto triples = all_triples(m);
    const TripleIndex index(m);

    // Each circle gets one slot per defining pair: (x,y) -> 0, (x,z) -> 1, (y,z) -> 2.
    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    std::vector<std::array<std::size_t, 3>> inside(triples.size(), {kUnset, kUnset, kUnset});

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);

    detail::parallel_for(pairs.size(), resolve_threads(threads), [&](std::size_t begin, std::size_t end) {
        struct Entry {
            Scalar t;
            std::size_t point;
            bool left;
        };
        std::vector<Entry> entries;
        std::vector<Scalar> left_t, right_t;
        for (std::size_t p = begin; p < end; ++p) {
            const auto [ai, bi] = pairs[p];
            const Point &a = s[ai], &b = s[bi];
            entries.clear();
            left_t.clear();
            right_t.clear();
            for (std::size_t k = 0; k < m; ++k) {
                if (k == ai || k == bi) continue;
                const int side = sgn(orientation_det(a, b, s[k]));
                if (side == 0) throw NotGeneralPosition("points " + triple_name(ai, bi, k) + " are collinear");
                entries.push_back({circumcenter_param(a, b, s[k]), k, side > 0});
                (side > 0 ? left_t : right_t).push_back(entries.back().t);
            }
            std::sort(left_t.begin(), left_t.end());
            std::sort(right_t.begin(), right_t.end());

            // Equal pencil coordinates mean four concyclic points.
            std::vector<const Entry*> by_t;
            for (const auto& e : entries) by_t.push_back(&e);
            std::sort(by_t.begin(), by_t.end(), [](const Entry* x, const Entry* y) { return x->t < y->t; });
            for (std::size_t q = 1; q < by_t.size(); ++q) {
                if (by_t[q - 1]->t == by_t[q]->t) {
                    throw NotGeneralPosition("points " + triple_name(ai, bi, by_t[q - 1]->point) + ", " +
                                             std::to_string(by_t[q]->point) + " are concyclic");
                }
            }

            // Along the pencil a point left of a->b is inside for every center
            // past its own coordinate, a point on the right for every center before it.
            for (const auto& e : entries) {
                const std::size_t in_left = std::lower_bound(left_t.begin(), left_t.end(), e.t) - left_t.begin();
                const std::size_t in_right = right_t.end() - std::upper_bound(right_t.begin(), right_t.end(), e.t);

                std::array<std::size_t, 3> t{ai, bi, e.point};
                std::sort(t.begin(), t.end());
                std::size_t slot = 0;
                if (ai == t[0] && bi == t[2]) slot = 1;
                if (ai == t[1]) slot = 2;
                inside[index(t[0], t[1], t[2])][slot] = in_left + in_right;
            }
        }
    });

    std::vector<CircleRecord> records(triples.size());
    for (std::size_t t = 0; t < triples.size(); ++t) {
        const auto& v = inside[t];
        if (v[0] == kUnset || v[0] != v[1] || v[1] != v[2]) {
            const auto& [i, j, k] = triples[t];
            throw EngineDisagreement("sweep visits of circle " + triple_name(i, j, k) + " disagree");
        }
        records[t] = CircleRecord{triples[t], SplitClass{v[0], m - 3 - v[0]}};
    }
    return records;
}

DepthHistogram census_brute(const PointSet& s, unsigned threads) {
    return DepthHistogram::from_records(s.size(), census_records_brute(s, threads));
}

DepthHistogram census_sweep(const PointSet& s, unsigned threads) {
    return DepthHistogram::from_records(s.size(), census_records_sweep(s, threads));
}

DepthHistogram census(const PointSet& s, Engine engine, unsigned threads) {
    switch (engine) {
        case Engine::Brute: return census_brute(s, threads);
        case Engine::Sweep: return census_sweep(s, threads);
        case Engine::Both: break;
    }
    auto brute = census_brute(s, threads);
    auto sweep = census_sweep(s, threads);
    if (!(brute == sweep)) {
        throw EngineDisagreement("brute " + to_string(brute) + " != sweep " + to_string(sweep));
    }
    return brute;
}

std::size_t half_size(const PointSet& s) {
    if (s.size() % 2 == 0 || s.size() < 3) {
        throw EvenSize("halving circles need an odd number (>= 3) of points, got " + std::to_string(s.size()));
    }
    return (s.size() - 1) / 2;
}

std::uint64_t count_halving(const PointSet& s, Engine engine, unsigned threads) {
    half_size(s);
    return census(s, engine, threads).halving();
}

std::uint64_t count_pair_halving(const PointSet& s, std::size_t i, std::size_t j) {
    const std::size_t n = half_size(s);
    if (i >= s.size() || j >= s.size()) throw IndexOutOfRange("count_pair_halving: index out of range");
    if (i == j) throw Error("count_pair_halving: indices must differ");
    std::uint64_t count = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (k == i || k == j) continue;
        if (classify_circle(s, i, j, k) == SplitClass{n - 1, n - 1}) ++count;
    }
    return count;
}

std::vector<CircleRecord> halving_circles(const PointSet& s) {
    const std::size_t n = half_size(s);
    std::vector<CircleRecord> out;
    for (const auto& r : census_records_sweep(s)) {
        if (r.split == SplitClass{n - 1, n - 1}) out.push_back(r);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verification

void VerificationReport::add(std::string name, bool ok, std::string detail) {
    checks.push_back(Check{std::move(name), ok, std::move(detail)});
    pass = pass && ok;
}

const Check* VerificationReport::first_failure() const {
    for (const auto& c : checks) {
        if (!c.pass) return &c;
    }
    return nullptr;
}

namespace {

std::string eq_detail(std::uint64_t got, std::uint64_t want) {
    return "got " + std::to_string(got) + ", expected " + std::to_string(want);
}

void add_mass_check(VerificationReport& r, const DepthHistogram& h) {
    const auto want = binomial(h.m(), 3);
    r.add("histogram total = C(m,3)", h.total() == want, eq_detail(h.total(), want));
}

}  // namespace

VerificationReport verify_theorem1(const PointSet& s, Engine engine, unsigned threads) {
    const std::uint64_t n = half_size(s);
    VerificationReport r;
    r.subject = "theorem1 m=" + std::to_string(s.size());
    auto h = census(s, engine, threads);
    const auto halving = h.halving();
    r.values["m"] = static_cast<std::int64_t>(s.size());
    r.values["N_S"] = static_cast<std::int64_t>(halving);
    r.values["n^2"] = static_cast<std::int64_t>(n * n);
    r.add("N_S = n^2", halving == n * n, eq_detail(halving, n * n));
    r.add("3 N_S >= n(2n+1)", 3 * halving >= n * (2 * n + 1),
          std::to_string(3 * halving) + " vs " + std::to_string(n * (2 * n + 1)));
    r.add("N_S = n (mod 2)", halving % 2 == n % 2, "N_S=" + std::to_string(halving) + ", n=" + std::to_string(n));
    add_mass_check(r, h);
    r.histogram = std::move(h);
    return r;
}

VerificationReport verify_theorem2(const PointSet& s, Engine engine, unsigned threads) {
    const std::uint64_t n = half_size(s);
    VerificationReport r;
    r.subject = "theorem2 m=" + std::to_string(s.size());
    auto h = census(s, engine, threads);
    for (std::uint64_t a = 0; a + a < 2 * n - 2; ++a) {
        const std::uint64_t b = 2 * n - 2 - a;
        const auto got = h.unordered(a, b);
        const auto want = 2 * (a + 1) * (b + 1);
        r.values["N(" + std::to_string(a) + "," + std::to_string(b) + ")"] = static_cast<std::int64_t>(got);
        r.add("N(" + std::to_string(a) + "," + std::to_string(b) + ") = 2(a+1)(b+1)", got == want,
              eq_detail(got, want));
    }
    r.add("N_S = n^2", h.halving() == n * n, eq_detail(h.halving(), n * n));
    add_mass_check(r, h);
    r.histogram = std::move(h);
    return r;
}

VerificationReport verify_parity(const PointSet& s, Engine engine, unsigned threads) {
    const std::uint64_t n = half_size(s);
    VerificationReport r;
    r.subject = "parity m=" + std::to_string(s.size());
    const auto halving = census(s, engine, threads).halving();
    r.values["N_S"] = static_cast<std::int64_t>(halving);
    r.add("N_S = n (mod 2)", halving % 2 == n % 2, "N_S=" + std::to_string(halving) + ", n=" + std::to_string(n));
    return r;
}

VerificationReport verify_pair_odd(const PointSet& s, unsigned threads) {
    const std::size_t n = half_size(s);
    const std::size_t m = s.size();
    VerificationReport r;
    r.subject = "pair-odd m=" + std::to_string(m);

    std::vector<std::uint64_t> per_pair(m * m, 0);
    std::uint64_t halving = 0;
    for (const auto& rec : census_records_sweep(s, threads)) {
        if (rec.split != SplitClass{n - 1, n - 1}) continue;
        ++halving;
        const auto& [i, j, k] = rec.triple;
        ++per_pair[i * m + j];
        ++per_pair[i * m + k];
        ++per_pair[j * m + k];
    }
    std::uint64_t sum = 0;
    std::size_t even_pairs = 0;
    std::string first_even;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const auto c = per_pair[i * m + j];
            sum += c;
            if (c % 2 == 0) {
                if (even_pairs++ == 0) first_even = "pair (" + std::to_string(i) + "," + std::to_string(j) + ") has " +
                                                    std::to_string(c);
            }
        }
    }
    r.values["N_S"] = static_cast<std::int64_t>(halving);
    r.values["pairs"] = static_cast<std::int64_t>(binomial(m, 2));
    r.add("every pair on an odd number of halving circles", even_pairs == 0,
          even_pairs == 0 ? std::to_string(binomial(m, 2)) + " pairs odd" : first_even);
    r.add("sum over pairs = 3 N_S", sum == 3 * halving, eq_detail(sum, 3 * halving));
    return r;
}

VerificationReport verify_gon_recursion(std::size_t n, unsigned threads) {
    const GonConfig config = gen_gon_config(n);
    const PointSet& s = config.point_set;
    const std::size_t k = config.polygon_size();
    const std::size_t o = GonConfig::o_index();
    const std::size_t q = config.q_index();

    VerificationReport r;
    r.subject = "gon n=" + std::to_string(n);

    auto problems = gon_config_violations(config);
    r.add("construction invariants", problems.empty(), problems.empty() ? "" : problems.front());

    const auto records = census_records_sweep(s, threads);
    const auto hist = DepthHistogram::from_records(s.size(), records);
    const PointSet polygon = config.polygon();
    const auto poly_records = census_records_sweep(polygon, threads);
    const auto poly_hist = DepthHistogram::from_records(polygon.size(), poly_records);

    const SplitClass halving_class{n - 1, n - 1};
    std::map<Triple, SplitClass> split_of;
    for (const auto& rec : records) split_of[rec.triple] = rec.split;
    auto split = [&](std::size_t x, std::size_t y, std::size_t z) {
        Triple t{x, y, z};
        std::sort(t.begin(), t.end());
        return split_of.at(t);
    };

    // (i) circles through three polygon vertices gain O inside and Q outside.
    {
        bool ok = true;
        std::string detail;
        for (const auto& rec : poly_records) {
            // polygon index p corresponds to S index p + 1
            const auto& [x, y, z] = rec.triple;
            const SplitClass in_s = split(x + 1, y + 1, z + 1);
            const SplitClass want{rec.split.inside + 1, rec.split.outside + 1};
            const bool halving_s = in_s == halving_class;
            const bool halving_p = rec.split == SplitClass{n - 2, n - 2};
            if (in_s != want || halving_s != halving_p) {
                ok = false;
                detail = "circle P_" + std::to_string(x + 1) + " P_" + std::to_string(y + 1) + " P_" +
                         std::to_string(z + 1) + " is " + to_string(in_s) + " in S but " + to_string(rec.split) +
                         " in the polygon";
                break;
            }
        }
        r.add("P_i P_j P_k halving in S iff halving in the polygon", ok, detail);
    }

    // (ii) no circle O P_i P_j is halving.
    {
        std::size_t bad = 0;
        for (std::size_t i = 1; i <= k; ++i)
            for (std::size_t j = i + 1; j <= k; ++j)
                if (split(o, i, j) == halving_class) ++bad;
        r.add("no circle O P_i P_j is halving", bad == 0, std::to_string(bad) + " halving");
    }

    // (iii) the halving circles through Q are exactly the O P_i Q.
    {
        std::set<Triple> got, want;
        for (const auto& rec : records) {
            if (rec.split == halving_class && rec.triple[2] == q) got.insert(rec.triple);
        }
        for (std::size_t i = 1; i <= k; ++i) want.insert(Triple{o, i, q});
        r.add("halving circles through Q are exactly the 2n-1 circles O P_i Q", got == want,
              std::to_string(got.size()) + " halving circles through Q");
    }

    // (iv) circle Q X Y contains P iff P and Q are on the same side of line X Y.
    {
        bool ok = true;
        std::string detail;
        for (std::size_t x = 0; x < q && ok; ++x) {
            for (std::size_t y = x + 1; y < q && ok; ++y) {
                const int q_side = sgn(orientation_det(s[x], s[y], s[q]));
                for (std::size_t p = 0; p < q; ++p) {
                    if (p == x || p == y) continue;
                    const bool inside = in_circle(s[q], s[x], s[y], s[p]) == CirclePosition::Inside;
                    const bool same_side = sgn(orientation_det(s[x], s[y], s[p])) == q_side;
                    if (inside != same_side) {
                        ok = false;
                        detail = "circle Q " + std::to_string(x) + " " + std::to_string(y) + " vs point " +
                                 std::to_string(p);
                        break;
                    }
                }
            }
        }
        r.add("circle Q X Y splits S like line X Y", ok, detail);
    }

    // (v) the (a,b)/(b,a) circles among O P_i P_j and Q P_i P_j are the
    // O P_i P_{i+a+1} and Q P_i P_{i+a+1}; none of the O P_i Q qualify.
    for (std::size_t a = 0; a + a < 2 * n - 2; ++a) {
        const std::size_t b = 2 * n - 2 - a;
        for (std::size_t apex : {o, q}) {
            std::set<Triple> got, want;
            for (std::size_t i = 1; i <= k; ++i) {
                for (std::size_t j = i + 1; j <= k; ++j) {
                    const auto c = split(apex, i, j);
                    if (c == SplitClass{a, b} || c == SplitClass{b, a}) {
                        Triple t{apex, i, j};
                        std::sort(t.begin(), t.end());
                        got.insert(t);
                    }
                }
                Triple t{apex, i, config.p_index(static_cast<std::int64_t>(i + a + 1))};
                std::sort(t.begin(), t.end());
                want.insert(t);
            }
            const std::string label = apex == o ? "O" : "Q";
            r.add("(" + std::to_string(a) + "," + std::to_string(b) + ") circles through " + label +
                      " are the " + label + " P_i P_{i+" + std::to_string(a + 1) + "}",
                  got == want, std::to_string(got.size()) + " found, " + std::to_string(want.size()) + " expected");
        }
        std::size_t through_both = 0;
        for (std::size_t i = 1; i <= k; ++i) {
            const auto c = split(o, i, q);
            if (c == SplitClass{a, b} || c == SplitClass{b, a}) ++through_both;
        }
        r.add("no (" + std::to_string(a) + "," + std::to_string(b) + ") circle among O P_i Q", through_both == 0,
              std::to_string(through_both) + " found");

        // N(a,b) = N(a-1,b-1) + 4n - 2, with N(-1, .) = 0.
        const std::uint64_t previous = a == 0 ? 0 : poly_hist.unordered(a - 1, b - 1);
        const std::uint64_t current = hist.unordered(a, b);
        r.add("N(" + std::to_string(a) + "," + std::to_string(b) + ") = N(" + std::to_string(a) + "-1," +
                  std::to_string(b) + "-1) + 4n-2",
              current == previous + 4 * n - 2, eq_detail(current, previous + 4 * n - 2));
    }

    const std::uint64_t current = hist.halving();
    const std::uint64_t previous = poly_hist.halving();
    r.values["N_" + std::to_string(2 * n + 1)] = static_cast<std::int64_t>(current);
    r.values["N_" + std::to_string(2 * n - 1)] = static_cast<std::int64_t>(previous);
    r.add("N_{2n+1} = N_{2n-1} + 2n-1", current == previous + 2 * n - 1, eq_detail(current, previous + 2 * n - 1));
    r.add("N_{2n+1} = n^2", current == n * n, eq_detail(current, n * n));
    r.histogram = hist;
    return r;
}

}  // namespace halving
