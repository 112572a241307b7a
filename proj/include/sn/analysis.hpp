#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sn/arith.hpp"
#include "sn/closure.hpp"
#include "sn/nat.hpp"

namespace sn {

struct Histogram {
    std::vector<double> bin_edges;  // bins + 1 edges over the log values
    std::vector<uint64_t> counts;   // sums to the member count
    double mean = 0;
    double stddev = 0;  // sample standard deviation
};

Histogram log_histogram(const NeighborSet& s, unsigned bins);

struct MissingPrime : std::invalid_argument {
    explicit MissingPrime(const std::string& what) : std::invalid_argument(what) {}
};

// Successive member-count differences (n, |z_{p_n}| - |z_{p_{n-1}}|) indexed
// by 1-based prime index; requires consecutive primes in the map.
std::vector<std::pair<unsigned, int64_t>> growth_by_prime(
    const std::map<uint64_t, NeighborSet>& results);

struct Classification {
    std::map<Nat, uint64_t> counts_by_prime;  // lpf of b(b+1) -> member count
    std::vector<Nat> unclassified;            // members whose factorization gave up
};

Classification classify_new_members(const NeighborSet& old_set, const NeighborSet& new_set,
                                    const EffortConfig& effort = {});

// For each prime q <= s.z: the largest member b with q | b(b+1) and every
// prime factor of b(b+1) at most q. Primes with no such member are omitted.
std::vector<std::pair<Nat, Nat>> largest_per_prime(const NeighborSet& s);

struct RunRecord {
    uint64_t z;
    unsigned h;       // run length >= 2
    Nat n;            // largest start of a run of h consecutive smooth integers
    bool lower_bound; // set when the member list is not known complete
};

std::vector<RunRecord> longest_runs(const NeighborSet& s, unsigned h_max);

struct AbcTriple {
    Nat A, B, C;  // A + B = C, A <= B, gcd(A, B) = 1
};

struct AbcMeasures {
    Nat radical;
    Nat z;  // largest prime factor of ABC
    double quality;             // log C / log rad(ABC)
    double smoothness_index;    // log C / log z
    double smoothness_exponent; // log z / log log C
};

AbcMeasures abc_measures(const AbcTriple& t, const EffortConfig& effort = {});

struct SmoothRecord {
    AbcTriple triple;
    double smoothness_index;
    uint64_t z;
};

// Scans coprime A + B = C, A <= B, C <= c_limit in (C, A) order and emits
// each new strict record of smoothness index. Near-tie comparisons fall back
// to high-precision evaluation so records never flip on rounding.
std::vector<SmoothRecord> maximally_smooth_scan(uint64_t c_limit);

}  // namespace sn
