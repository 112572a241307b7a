#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sn/nat.hpp"

namespace sn {

// The merge F(b,B): reduce b(B+k)/((b+k)B) to n/d and, when the result has
// the shape beta/(beta+k), return beta. For k=1 this is exactly "return n
// when d = n+1". Every returned beta is re-checked against the exact
// identity b(B+k)(beta+k) = (b+k)B*beta.
std::optional<Nat> merge(const Nat& b, const Nat& B, const Nat& k = Nat(1));

// The even-difference variant: combine members b < B of a difference-1 set
// and look for beta/(beta+2). A reduced result n/(n+2) gives beta = n (odd);
// n/(n+1) gives beta = 2n (even).
std::optional<Nat> mixed_merge_even(const Nat& b, const Nat& B);

struct NeighborSet {
    uint64_t z = 0;            // declared smoothness bound of the run
    Nat k{1};                  // neighbor difference
    std::vector<Nat> members;  // strictly increasing

    bool contains(const Nat& m) const;
};

struct ClosureTrace {
    // new members per round, in order; round 0 is the first derived round
    std::vector<std::vector<Nat>> rounds;
    // member -> the lexicographically least pair (b, B) producing it
    std::map<Nat, std::pair<Nat, Nat>> provenance;
};

struct RunLimits {
    std::optional<uint64_t> max_rounds;
    std::optional<uint64_t> max_members;
    std::optional<double> wall_time_seconds;
};

struct DeltaResult {
    NeighborSet set;
    ClosureTrace trace;
    bool complete = true;  // false when a limit tripped first
    uint64_t rounds_run = 0;
};

// One round of the fixpoint: all beta not yet in `members` produced by a
// pair {b,B} with at least one element in `frontier`. Sorted, deduplicated,
// with the least producing pair per candidate. OpenMP-parallel over the
// frontier; the result is independent of the worker count.
std::vector<std::pair<Nat, std::pair<Nat, Nat>>> closure_round(
    const std::vector<Nat>& members, const std::vector<Nat>& frontier, const Nat& k,
    int threads = 0);

// Serial reference: full rescan of every pair, no frontier, no provenance
// pruning. Quadratic per round; kept as the oracle the parallel engine is
// tested against.
std::vector<Nat> closure_round_reference(const std::vector<Nat>& members, const Nat& k);

// Resumable fixpoint engine. State is exactly what the checkpoint carries.
class ClosureEngine {
public:
    ClosureEngine(std::span<const Nat> seed, Nat k, uint64_t z, bool track_provenance = true);

    // Runs rounds until the fixpoint or a limit trips. Returns true when the
    // fixpoint was reached.
    bool run(const RunLimits& limits, int threads = 0);

    // Advances a single round; returns the number of new members.
    size_t step(int threads = 0);

    const std::vector<Nat>& members() const { return members_; }
    const std::vector<Nat>& frontier() const { return frontier_; }
    const ClosureTrace& trace() const { return trace_; }
    uint64_t round_index() const { return round_index_; }
    bool at_fixpoint() const { return frontier_.empty(); }
    const Nat& k() const { return k_; }
    uint64_t z() const { return z_; }

    std::string to_checkpoint_json() const;
    static ClosureEngine from_checkpoint_json(const std::string& json_text);

private:
    ClosureEngine() = default;

    Nat k_{1};
    uint64_t z_ = 0;
    uint64_t round_index_ = 0;
    bool track_provenance_ = true;
    std::vector<Nat> members_;   // sorted
    std::vector<Nat> frontier_;  // sorted subset of members_
    std::unordered_set<Nat, NatHash> index_;
    ClosureTrace trace_;
};

DeltaResult delta(std::span<const Nat> seed, const Nat& k = Nat(1), const RunLimits& limits = {},
                  uint64_t z = 0, int threads = 0);

// Reference fixpoint built on closure_round_reference; serial, for testing.
std::vector<Nat> delta_reference(std::span<const Nat> seed, const Nat& k = Nat(1));

// Difference-2 saturation per the modified even process: candidates come
// from mixed merges of a difference-1 member set.
std::vector<Nat> even_neighbors_from(const std::vector<Nat>& base_members, int threads = 0);

}  // namespace sn
