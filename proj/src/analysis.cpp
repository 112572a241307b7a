#include "sn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <mpfr.h>

namespace sn {

namespace {

double log_nat(const Nat& n) {
    signed long exp;
    double d = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(d) + static_cast<double>(exp) * std::log(2.0);
}

}  // namespace

Histogram log_histogram(const NeighborSet& s, unsigned bins) {
    if (s.members.empty()) throw std::invalid_argument("log_histogram requires a nonempty set");
    if (bins == 0) throw std::invalid_argument("log_histogram requires bins >= 1");
    std::vector<double> logs;
    logs.reserve(s.members.size());
    for (const Nat& m : s.members) logs.push_back(log_nat(m));

    Histogram h;
    double lo = logs.front(), hi = logs.back();
    if (lo == hi) hi = lo + 1.0;  // degenerate single-point set
    h.bin_edges.resize(bins + 1);
    for (unsigned i = 0; i <= bins; ++i)
        h.bin_edges[i] = lo + (hi - lo) * static_cast<double>(i) / bins;
    h.counts.assign(bins, 0);
    for (double v : logs) {
        auto idx = static_cast<size_t>((v - lo) / (hi - lo) * bins);
        if (idx >= bins) idx = bins - 1;  // top edge is inclusive
        ++h.counts[idx];
    }
    double sum = std::accumulate(logs.begin(), logs.end(), 0.0);
    h.mean = sum / static_cast<double>(logs.size());
    double ss = 0;
    for (double v : logs) ss += (v - h.mean) * (v - h.mean);
    h.stddev = logs.size() > 1 ? std::sqrt(ss / static_cast<double>(logs.size() - 1)) : 0.0;
    return h;
}

std::vector<std::pair<unsigned, int64_t>> growth_by_prime(
    const std::map<uint64_t, NeighborSet>& results) {
    if (results.size() < 2) return {};
    auto primes = primes_up_to(results.rbegin()->first);
    // locate the first supplied prime in the global sequence
    auto first = std::find(primes.begin(), primes.end(), results.begin()->first);
    if (first == primes.end())
        throw MissingPrime("bound " + std::to_string(results.begin()->first) + " is not prime");
    std::vector<std::pair<unsigned, int64_t>> out;
    auto it = results.begin();
    auto prev = it++;
    auto pit = first;
    for (; it != results.end(); ++it, ++prev) {
        ++pit;
        if (pit == primes.end() || *pit != it->first)
            throw MissingPrime("expected bound " +
                               (pit == primes.end() ? std::string("?") : std::to_string(*pit)) +
                               ", got " + std::to_string(it->first));
        auto n = static_cast<unsigned>(pit - primes.begin()) + 1;  // 1-based prime index
        out.emplace_back(n, static_cast<int64_t>(it->second.members.size()) -
                                static_cast<int64_t>(prev->second.members.size()));
    }
    return out;
}

Classification classify_new_members(const NeighborSet& old_set, const NeighborSet& new_set,
                                    const EffortConfig& effort) {
    std::vector<Nat> fresh;
    std::set_difference(new_set.members.begin(), new_set.members.end(), old_set.members.begin(),
                        old_set.members.end(), std::back_inserter(fresh));
    Classification c;
    for (const Nat& m : fresh) {
        try {
            c.counts_by_prime[largest_prime_factor(m * (m + 1), effort)] += 1;
        } catch (const FactorizationGaveUp&) {
            c.unclassified.push_back(m);
        }
    }
    return c;
}

std::vector<std::pair<Nat, Nat>> largest_per_prime(const NeighborSet& s) {
    if (s.z < 2) throw std::invalid_argument("largest_per_prime requires a declared bound");
    SmoothBound bound(s.z);
    std::map<Nat, Nat> best;
    for (const Nat& m : s.members) {
        auto [f, cofactor] = smooth_part(m * (m + 1), bound);
        if (cofactor != 1)
            throw std::invalid_argument("member " + to_string(m) + " is not " +
                                        std::to_string(s.z) + "-smooth");
        const Nat& q = f.back().prime;
        auto it = best.find(q);
        if (it == best.end() || it->second < m) best[q] = m;
    }
    return {best.begin(), best.end()};
}

std::vector<RunRecord> longest_runs(const NeighborSet& s, unsigned h_max) {
    if (h_max < 2) throw std::invalid_argument("longest_runs requires h_max >= 2");
    if (s.members.empty()) return {};
    // complete lists are known only for p <= 41 excluding 7 and 41
    bool complete = s.z >= 2 && s.z <= 41 && s.z != 7 && s.z != 41;

    // maximal blocks of consecutive members: (start, length)
    std::vector<std::pair<Nat, uint64_t>> blocks;
    Nat start = s.members.front();
    uint64_t len = 1;
    for (size_t i = 1; i < s.members.size(); ++i) {
        if (s.members[i] == s.members[i - 1] + 1) {
            ++len;
        } else {
            blocks.emplace_back(start, len);
            start = s.members[i];
            len = 1;
        }
    }
    blocks.emplace_back(start, len);

    std::vector<RunRecord> out;
    for (unsigned h = 2; h <= h_max; ++h) {
        uint64_t need = h - 1;  // members n .. n+h-2
        std::optional<Nat> best;
        for (const auto& [bstart, blen] : blocks) {
            if (blen < need) continue;
            Nat n = bstart + static_cast<unsigned long>(blen - need);
            if (!best || *best < n) best = n;
        }
        if (best) out.push_back({s.z, h, *best, !complete});
    }
    return out;
}

AbcMeasures abc_measures(const AbcTriple& t, const EffortConfig& effort) {
    if (t.A < 1 || t.A > t.B || t.A + t.B != t.C)
        throw std::invalid_argument("need 1 <= A <= B and A + B = C");
    Nat g;
    mpz_gcd(g.get_mpz_t(), t.A.get_mpz_t(), t.B.get_mpz_t());
    if (g != 1) throw std::invalid_argument("ABC triple must be coprime");

    std::map<Nat, unsigned> primes;
    for (const Nat* n : {&t.A, &t.B, &t.C}) {
        if (*n == 1) continue;
        for (const auto& [p, e] : factorize(*n, effort)) primes[p] += e;
    }
    AbcMeasures m;
    m.radical = 1;
    for (const auto& [p, e] : primes) m.radical *= p;
    m.z = primes.rbegin()->first;
    double log_c = log_nat(t.C);
    double log_z = log_nat(m.z);
    m.quality = log_c / log_nat(m.radical);
    m.smoothness_index = log_c / log_z;
    m.smoothness_exponent = log_z / std::log(log_c);
    return m;
}

namespace {

// sign of s(C1, z1) - s(C2, z2) at 256-bit precision
int cmp_index_hp(uint64_t c1, uint64_t z1, uint64_t c2, uint64_t z2) {
    mpfr_t lc1, lz1, lc2, lz2, lhs, rhs;
    mpfr_inits2(256, lc1, lz1, lc2, lz2, lhs, rhs, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_ui(lc1, c1, MPFR_RNDN);
    mpfr_log(lc1, lc1, MPFR_RNDN);
    mpfr_set_ui(lz1, z1, MPFR_RNDN);
    mpfr_log(lz1, lz1, MPFR_RNDN);
    mpfr_set_ui(lc2, c2, MPFR_RNDN);
    mpfr_log(lc2, lc2, MPFR_RNDN);
    mpfr_set_ui(lz2, z2, MPFR_RNDN);
    mpfr_log(lz2, lz2, MPFR_RNDN);
    mpfr_mul(lhs, lc1, lz2, MPFR_RNDN);
    mpfr_mul(rhs, lc2, lz1, MPFR_RNDN);
    int c = mpfr_cmp(lhs, rhs);
    mpfr_clears(lc1, lz1, lc2, lz2, lhs, rhs, static_cast<mpfr_ptr>(nullptr));
    return c;
}

int cmp_index(uint64_t c1, uint64_t z1, uint64_t c2, uint64_t z2) {
    double lhs = std::log(static_cast<double>(c1)) * std::log(static_cast<double>(z2));
    double rhs = std::log(static_cast<double>(c2)) * std::log(static_cast<double>(z1));
    double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
    if (std::fabs(lhs - rhs) > 1e-9 * scale) return lhs > rhs ? 1 : -1;
    return cmp_index_hp(c1, z1, c2, z2);
}

}  // namespace

std::vector<SmoothRecord> maximally_smooth_scan(uint64_t c_limit) {
    if (c_limit < 4) throw std::invalid_argument("maximally_smooth_scan requires C >= 4");
    // largest-prime-factor sieve
    std::vector<uint32_t> lpf(c_limit + 1, 0);
    for (uint64_t p = 2; p <= c_limit; ++p)
        if (lpf[p] == 0)
            for (uint64_t j = p; j <= c_limit; j += p) lpf[j] = static_cast<uint32_t>(p);

    std::vector<SmoothRecord> records;
    std::optional<std::pair<uint64_t, uint64_t>> best;  // (C, z) of the record holder
    for (uint64_t c = 4; c <= c_limit; ++c) {
        // any triple at this C has z >= lpf(C)
        if (best && cmp_index(c, lpf[c], best->first, best->second) <= 0) continue;
        for (uint64_t a = 1; a <= c / 2; ++a) {
            uint64_t b = c - a;
            uint64_t z = std::max({a > 1 ? lpf[a] : 0u, lpf[b], lpf[c]});
            if (best && cmp_index(c, z, best->first, best->second) <= 0) continue;
            if (std::gcd(a, b) != 1) continue;
            best = {c, z};
            SmoothRecord r;
            r.triple = {Nat(static_cast<unsigned long>(a)), Nat(static_cast<unsigned long>(b)),
                        Nat(static_cast<unsigned long>(c))};
            r.z = z;
            r.smoothness_index =
                std::log(static_cast<double>(c)) / std::log(static_cast<double>(z));
            records.push_back(std::move(r));
        }
    }
    return records;
}

}  // namespace sn
