#include "sn/closure.hpp"

#include <algorithm>
#include <stdexcept>

#include <omp.h>

#include <json.hpp>

namespace sn {

std::optional<Nat> merge(const Nat& b, const Nat& B, const Nat& k) {
    if (b < 1 || B <= b || k < 1) throw std::invalid_argument("merge requires 1 <= b < B, k >= 1");
    Nat p = b * (B + k);       // numerator before reduction
    Nat diff = k * (B - b);    // (b+k)B - b(B+k)
    Nat g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), diff.get_mpz_t());
    Nat t = diff / g;          // d - n of the reduced fraction
    if (!mpz_divisible_p(k.get_mpz_t(), t.get_mpz_t())) return std::nullopt;
    Nat beta = (p / g) * (k / t);
    // exact identity b(B+k)(beta+k) = (b+k)B*beta
    if (b * (B + k) * (beta + k) != (b + k) * B * beta) return std::nullopt;
    return beta;
}

std::optional<Nat> mixed_merge_even(const Nat& b, const Nat& B) {
    if (b < 1 || B <= b) throw std::invalid_argument("mixed_merge_even requires 1 <= b < B");
    Nat p = b * (B + 1);
    Nat diff = B - b;
    Nat g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), diff.get_mpz_t());
    Nat n = p / g;
    Nat t = diff / g;
    Nat beta;
    if (t == 2)
        beta = n;      // beta odd
    else if (t == 1)
        beta = 2 * n;  // beta even: beta/(beta+2) reduces to n/(n+1)
    else
        return std::nullopt;
    if (b * (B + 1) * (beta + 2) != (b + 1) * B * beta) return std::nullopt;
    return beta;
}

bool NeighborSet::contains(const Nat& m) const {
    return std::binary_search(members.begin(), members.end(), m);
}

using Candidate = std::pair<Nat, std::pair<Nat, Nat>>;  // beta -> producing pair

std::vector<Candidate> closure_round(const std::vector<Nat>& members,
                                     const std::vector<Nat>& frontier, const Nat& k,
                                     int threads) {
    std::unordered_set<Nat, NatHash> frontier_set(frontier.begin(), frontier.end());
    std::unordered_set<Nat, NatHash> member_set(members.begin(), members.end());

    int nthreads = threads > 0 ? threads : omp_get_max_threads();
    std::vector<std::vector<Candidate>> local(nthreads);

    const long fn = static_cast<long>(frontier.size());
#pragma omp parallel num_threads(nthreads)
    {
        auto& out = local[omp_get_thread_num()];
#pragma omp for schedule(dynamic, 1)
        for (long i = 0; i < fn; ++i) {
            const Nat& f = frontier[i];
            for (const Nat& m : members) {
                if (m == f) continue;
                // frontier-frontier pairs are handled once, by the smaller element
                if (m > f && frontier_set.count(m)) continue;
                const Nat& lo = m < f ? m : f;
                const Nat& hi = m < f ? f : m;
                auto beta = merge(lo, hi, k);
                if (beta && !member_set.count(*beta))
                    out.emplace_back(std::move(*beta), std::make_pair(lo, hi));
            }
        }
    }

    std::vector<Candidate> cands;
    for (auto& v : local) {
        cands.insert(cands.end(), std::make_move_iterator(v.begin()),
                     std::make_move_iterator(v.end()));
    }
    // least producing pair per beta, then one entry per beta
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end(),
                            [](const Candidate& a, const Candidate& b) {
                                return a.first == b.first;
                            }),
                cands.end());
    return cands;
}

std::vector<Nat> closure_round_reference(const std::vector<Nat>& members, const Nat& k) {
    std::vector<Nat> out;
    for (size_t i = 0; i < members.size(); ++i)
        for (size_t j = i + 1; j < members.size(); ++j) {
            auto beta = merge(members[i], members[j], k);
            if (beta && !std::binary_search(members.begin(), members.end(), *beta))
                out.push_back(std::move(*beta));
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ClosureEngine::ClosureEngine(std::span<const Nat> seed, Nat k, uint64_t z, bool track_provenance)
    : k_(std::move(k)), z_(z), track_provenance_(track_provenance) {
    if (seed.empty()) throw std::invalid_argument("seed must be nonempty");
    members_.assign(seed.begin(), seed.end());
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (members_.front() < 1) throw std::invalid_argument("seed members must be >= 1");
    frontier_ = members_;
    index_.insert(members_.begin(), members_.end());
}

size_t ClosureEngine::step(int threads) {
    if (frontier_.empty()) return 0;
    auto cands = closure_round(members_, frontier_, k_, threads);
    std::vector<Nat> added;
    added.reserve(cands.size());
    for (auto& [beta, pair] : cands) {
        if (track_provenance_) trace_.provenance.emplace(beta, pair);
        index_.insert(beta);
        added.push_back(std::move(beta));
    }
    trace_.rounds.push_back(added);
    frontier_ = std::move(added);
    std::vector<Nat> merged;
    merged.reserve(members_.size() + frontier_.size());
    std::merge(members_.begin(), members_.end(), frontier_.begin(), frontier_.end(),
               std::back_inserter(merged));
    members_ = std::move(merged);
    ++round_index_;
    return frontier_.size();
}

bool ClosureEngine::run(const RunLimits& limits, int threads) {
    auto start = std::chrono::steady_clock::now();
    uint64_t rounds_done = 0;
    while (!frontier_.empty()) {
        if (limits.max_rounds && rounds_done >= *limits.max_rounds) return false;
        if (limits.max_members && members_.size() >= *limits.max_members) return false;
        if (limits.wall_time_seconds) {
            double elapsed = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
            if (elapsed >= *limits.wall_time_seconds) return false;
        }
        step(threads);
        ++rounds_done;
    }
    return true;
}

std::string ClosureEngine::to_checkpoint_json() const {
    nlohmann::ordered_json j;
    j["k"] = to_string(k_);
    j["z"] = z_;
    j["round_index"] = round_index_;
    j["members"] = nlohmann::json::array();
    for (const Nat& m : members_) j["members"].push_back(to_string(m));
    j["frontier"] = nlohmann::json::array();
    for (const Nat& m : frontier_) j["frontier"].push_back(to_string(m));
    j["provenance"] = nlohmann::json::array();
    for (const auto& [beta, pair] : trace_.provenance)
        j["provenance"].push_back({to_string(beta), to_string(pair.first), to_string(pair.second)});
    return j.dump(2);
}

ClosureEngine ClosureEngine::from_checkpoint_json(const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    ClosureEngine e;
    e.k_ = parse_nat(j.at("k").get<std::string>());
    e.z_ = j.at("z").get<uint64_t>();
    e.round_index_ = j.at("round_index").get<uint64_t>();
    for (const auto& s : j.at("members")) e.members_.push_back(parse_nat(s.get<std::string>()));
    for (const auto& s : j.at("frontier")) e.frontier_.push_back(parse_nat(s.get<std::string>()));
    if (!std::is_sorted(e.members_.begin(), e.members_.end()))
        throw std::invalid_argument("checkpoint members not sorted");
    for (const auto& entry : j.at("provenance")) {
        e.trace_.provenance.emplace(parse_nat(entry.at(0).get<std::string>()),
                                    std::make_pair(parse_nat(entry.at(1).get<std::string>()),
                                                   parse_nat(entry.at(2).get<std::string>())));
    }
    e.index_.insert(e.members_.begin(), e.members_.end());
    e.track_provenance_ = true;
    return e;
}

DeltaResult delta(std::span<const Nat> seed, const Nat& k, const RunLimits& limits, uint64_t z,
                  int threads) {
    ClosureEngine engine(seed, k, z);
    bool complete = engine.run(limits, threads);
    DeltaResult r;
    r.set.z = z;
    r.set.k = k;
    r.set.members = engine.members();
    r.trace = engine.trace();
    r.complete = complete;
    r.rounds_run = engine.round_index();
    return r;
}

std::vector<Nat> delta_reference(std::span<const Nat> seed, const Nat& k) {
    std::vector<Nat> members(seed.begin(), seed.end());
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (;;) {
        auto fresh = closure_round_reference(members, k);
        if (fresh.empty()) return members;
        std::vector<Nat> merged;
        std::merge(members.begin(), members.end(), fresh.begin(), fresh.end(),
                   std::back_inserter(merged));
        members = std::move(merged);
    }
}

std::vector<Nat> even_neighbors_from(const std::vector<Nat>& base_members, int threads) {
    int nthreads = threads > 0 ? threads : omp_get_max_threads();
    std::vector<std::vector<Nat>> local(nthreads);
    const long n = static_cast<long>(base_members.size());
#pragma omp parallel num_threads(nthreads)
    {
        auto& out = local[omp_get_thread_num()];
#pragma omp for schedule(dynamic, 4)
        for (long i = 0; i < n; ++i)
            for (long j = i + 1; j < n; ++j) {
                auto beta = mixed_merge_even(base_members[i], base_members[j]);
                if (beta) out.push_back(std::move(*beta));
            }
    }
    std::vector<Nat> all;
    for (auto& v : local)
        all.insert(all.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

}  // namespace sn
