#include <doctest.h>

#include <cmath>
#include <numeric>

#include "sn/analysis.hpp"
#include "sn/closure.hpp"

using namespace sn;

namespace {

NeighborSet delta_range(unsigned long p) {
    std::vector<Nat> seed;
    for (unsigned long i = 1; i <= p; ++i) seed.push_back(Nat(i));
    auto s = delta(seed).set;
    s.z = p;
    return s;
}

}  // namespace

TEST_CASE("log_histogram conserves counts") {
    auto d5 = delta_range(5);
    auto h = log_histogram(d5, 4);
    CHECK(std::accumulate(h.counts.begin(), h.counts.end(), uint64_t(0)) == 10);
    CHECK(h.bin_edges.size() == 5);
    // frozen from a direct two-pass computation over {log 1, ..., log 80}
    CHECK(h.mean == doctest::Approx(1.9332288527922139).epsilon(1e-12));
    CHECK(h.stddev == doctest::Approx(1.2742474418471146).epsilon(1e-12));
}

TEST_CASE("log_histogram singleton") {
    NeighborSet s{2, Nat(1), {Nat(7)}};
    auto h = log_histogram(s, 3);
    CHECK(h.stddev == 0.0);
    CHECK(h.mean == doctest::Approx(std::log(7.0)));
    CHECK(std::accumulate(h.counts.begin(), h.counts.end(), uint64_t(0)) == 1);
}

TEST_CASE("growth_by_prime") {
    std::map<uint64_t, NeighborSet> sets;
    sets[2] = NeighborSet{2, Nat(1), {Nat(1)}};
    sets[3] = NeighborSet{3, Nat(1), {Nat(1), Nat(2), Nat(3), Nat(8)}};
    auto g = growth_by_prime(sets);
    REQUIRE(g.size() == 1);
    CHECK(g[0] == std::pair<unsigned, int64_t>{2, 3});

    sets[5] = sets[3];  // identical consecutive sets -> difference 0
    auto g2 = growth_by_prime(sets);
    REQUIRE(g2.size() == 2);
    CHECK(g2[1] == std::pair<unsigned, int64_t>{3, 0});

    sets.erase(3);  // skipping a prime is an error
    CHECK_THROWS_AS(growth_by_prime(sets), MissingPrime);
}

TEST_CASE("classify_new_members") {
    auto d5 = delta_range(5);
    auto d7 = delta_range(7);
    auto c = classify_new_members(d5, d7);
    CHECK(c.unclassified.empty());
    // all 12 new members have largest prime factor 7 in b(b+1)
    REQUIRE(c.counts_by_prime.size() == 1);
    CHECK(c.counts_by_prime.at(Nat(7)) == 12);

    auto none = classify_new_members(d7, d7);
    CHECK(none.counts_by_prime.empty());
}

TEST_CASE("largest_per_prime over delta(1..5)") {
    auto out = largest_per_prime(delta_range(5));
    REQUIRE(out.size() == 3);
    CHECK(out[0] == std::pair<Nat, Nat>{2, 1});
    CHECK(out[1] == std::pair<Nat, Nat>{3, 8});
    CHECK(out[2] == std::pair<Nat, Nat>{5, 80});
}

TEST_CASE("largest_per_prime partitions the members") {
    auto d7 = delta_range(7);
    auto out = largest_per_prime(d7);
    // each member contributes to exactly one prime's bucket, so the maxima
    // are members and the primes are distinct
    for (size_t i = 1; i < out.size(); ++i) CHECK(out[i - 1].first < out[i].first);
    for (const auto& [q, b] : out) CHECK(d7.contains(b));
}

TEST_CASE("longest_runs") {
    auto d5 = delta_range(5);
    auto runs = longest_runs(d5, 7);
    // h=2 is the maximum member; h=3 the largest n with n, n+1 both present
    CHECK(runs[0].h == 2);
    CHECK(runs[0].n == 80);
    CHECK(runs[1].h == 3);
    CHECK(runs[1].n == 8);
    CHECK_FALSE(runs[0].lower_bound);  // the 5-smooth list is known complete

    auto d7 = delta_range(7);
    auto runs7 = longest_runs(d7, 3);
    CHECK(runs7[0].n == 2400);
    CHECK(runs7[0].lower_bound);  // delta(1..7) misses 4374
}

TEST_CASE("abc_measures") {
    auto m = abc_measures({Nat(2), Nat(25), Nat(27)});
    CHECK(m.z == 5);
    CHECK(m.radical == 30);
    CHECK(m.smoothness_index == doctest::Approx(2.04782).epsilon(1e-4));
    CHECK(m.quality == doctest::Approx(std::log(27.0) / std::log(30.0)).epsilon(1e-9));
    CHECK(m.smoothness_exponent ==
          doctest::Approx(std::log(5.0) / std::log(std::log(27.0))).epsilon(1e-9));

    Nat B("19316158377073923834000");
    auto m2 = abc_measures({Nat(1), B, B + 1});
    CHECK(m2.smoothness_index == doctest::Approx(11.0719).epsilon(1e-3));

    CHECK_THROWS_AS(abc_measures({Nat(2), Nat(4), Nat(6)}), std::invalid_argument);
    CHECK_THROWS_AS(abc_measures({Nat(3), Nat(2), Nat(5)}), std::invalid_argument);
}

TEST_CASE("maximally_smooth_scan small limits") {
    auto r4 = maximally_smooth_scan(4);
    REQUIRE(r4.size() == 1);
    CHECK(r4[0].triple.A == 1);
    CHECK(r4[0].triple.B == 3);
    CHECK(r4[0].triple.C == 4);
    CHECK(r4[0].smoothness_index == doctest::Approx(1.262).epsilon(1e-3));

    auto r9 = maximally_smooth_scan(9);
    REQUIRE(r9.size() == 3);
    CHECK(r9[1].triple.C == 8);
    CHECK(r9[2].triple.A == 1);
    CHECK(r9[2].triple.B == 8);
    CHECK(r9[2].triple.C == 9);
    CHECK(r9[2].smoothness_index == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("maximally_smooth_scan records beat everything before them") {
    // independent oracle: direct lpf by division, full re-scan below each record
    auto lpf = [](uint64_t n) {
        uint64_t best = 1;
        for (uint64_t p = 2; p * p <= n; ++p)
            while (n % p == 0) {
                best = p;
                n /= p;
            }
        return n > 1 ? n : best;
    };
    auto records = maximally_smooth_scan(2000);
    for (const auto& r : records) {
        uint64_t C = r.triple.C.get_ui(), A = r.triple.A.get_ui();
        double s = r.smoothness_index;
        for (uint64_t c = 4; c <= C; ++c)
            for (uint64_t a = 1; a <= c / 2; ++a) {
                if (c == C && a >= A) break;
                if (std::gcd(a, c - a) != 1) continue;
                uint64_t z = std::max({a > 1 ? lpf(a) : 1, lpf(c - a), lpf(c)});
                CHECK(std::log(double(c)) / std::log(double(z)) < s + 1e-9);
            }
    }
}
