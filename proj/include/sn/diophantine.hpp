#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sn/arith.hpp"
#include "sn/nat.hpp"

namespace sn {

// The full solution record for F(b,B) = beta:
//   b = g*u, B = g*v, beta = h*u, beta+1 = v*x, B+1 = h*y, gcd(u,v) = 1,
//   hy - gv = vx - hu = xy - gu = 1 and uh + gv = hv - 1.
struct MergeWitness {
    Nat b, B, beta, g, h, u, v, x, y;
};

struct NotAMerge : std::invalid_argument {
    explicit NotAMerge(const std::string& what) : std::invalid_argument(what) {}
};

// No positive g solves uh + gv = hv - 1 for the given (h, v); the smallest
// case is (h, v) = (1, 2).
struct NoPositiveSolution : std::invalid_argument {
    explicit NoPositiveSolution(const std::string& what) : std::invalid_argument(what) {}
};

MergeWitness witness_from_pair(const Nat& b, const Nat& B);

// Inverse direction: given coprime h >= 1, v >= 2, solve uh + gv = hv - 1
// with u in [1, v-1] by u = -h^{-1} mod v, then g = (h(v-u) - 1)/v.
MergeWitness pair_from_hv(const Nat& h, const Nat& v);

struct ParentPair {
    Nat u, v;  // u | beta, v | beta+1, u < v
    Nat b, B;  // the pair with F(b,B) = beta
};

// Enumerates parent pairs of beta in increasing (u, v) order, skipping
// candidates with b < 1. The callback returns false to stop early.
void for_each_parent(const Nat& beta, const Factorization& fbeta, const Factorization& fbeta1,
                     const std::function<bool(const ParentPair&)>& fn);

std::vector<ParentPair> parents_from_beta(const Nat& beta, const Factorization& fbeta,
                                          const Factorization& fbeta1);

struct MinSmoothnessResult {
    Nat p_min;                               // least over pairs of lpf(b(b+1)B(B+1))
    std::vector<std::pair<Nat, Nat>> best_pairs;  // every pair achieving it, (u,v) order
    uint64_t grid_size = 0;                  // d(beta) * d(beta+1), before filters
    uint64_t pairs_scanned = 0;              // pairs surviving the u<v, b>=1 filters
    uint64_t skipped = 0;                    // scanned pairs not achieving the minimum
};

// The minimal-largest-prime search over every parent pair of beta. Pairs
// whose b(b+1)B(B+1) is not prime_cap-smooth are rejected early; the
// incumbent minimum tightens the rejection bound as the scan proceeds.
MinSmoothnessResult min_smoothness_over_parents(const Nat& beta, const SmoothBound& prime_cap,
                                                const EffortConfig& effort = {},
                                                int threads = 0);

}  // namespace sn
