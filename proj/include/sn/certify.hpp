#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sn/arith.hpp"
#include "sn/closure.hpp"
#include "sn/nat.hpp"

namespace sn {

// Binary certificate tree: every inner node value is the merge of its
// children, every leaf carries a checkable membership attestation.
struct DecompTree {
    Nat value;
    // leaf fields
    bool is_seed = false;       // attested against the caller's seed list
    std::string base_id;        // attested against a named base set
    // inner fields
    std::unique_ptr<DecompTree> left, right;

    bool is_leaf() const { return !left; }
};

// Membership authority for one base-set id: either an explicit member list
// or a smoothness bound (membership taken as "m(m+1) is z-smooth", for bases
// too large to ship, such as the full 199-smooth list).
struct SmoothnessBase {
    uint64_t z;
};
using BaseAuthority = std::variant<std::shared_ptr<const NeighborSet>, SmoothnessBase>;
using BaseSets = std::map<std::string, BaseAuthority>;

struct VerificationReport {
    struct Entry {
        std::string what;
        bool ok;
    };
    std::vector<Entry> checks;
    bool pass = true;

    void add(std::string what, bool ok) {
        pass = pass && ok;
        checks.push_back({std::move(what), ok});
    }
};

// Checks every inner merge identity exactly and every leaf attestation by
// membership (or smoothness) lookup. Failures are report entries, never
// exceptions. Consults nothing but the tree and the provided bases.
VerificationReport verify_tree(const DecompTree& t, const BaseSets& bases,
                               const std::vector<Nat>& seeds = {});

struct BuildOptions {
    unsigned depth_limit = 16;
    EffortConfig effort;
};

// Searches for a decomposition of beta over the given base: leaves must be
// base members. Parent pairs with both children in the base are tried first,
// then one-in-base, then by the smallest max prime factor of b(b+1)B(B+1);
// failed values are memoized. Absence of a result is not a proof of
// non-membership.
std::optional<DecompTree> build_tree(const Nat& beta, const NeighborSet& base,
                                     const std::string& base_id, const BuildOptions& opts = {});

// Certificate JSON (decimal-string values, explicit nesting, named bases).
std::string tree_to_json(const DecompTree& t);
DecompTree tree_from_json(const std::string& json_text);

DecompTree load_certificate(const std::string& path);
void save_certificate(const DecompTree& t, const std::string& path);

}  // namespace sn
