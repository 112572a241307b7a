#include "sn/certify.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "sn/diophantine.hpp"

namespace sn {

namespace {

bool base_contains(const BaseAuthority& auth, const Nat& m) {
    if (std::holds_alternative<SmoothnessBase>(auth)) {
        SmoothBound z(std::get<SmoothnessBase>(auth).z);
        return is_smooth(m * (m + 1), z);
    }
    return std::get<std::shared_ptr<const NeighborSet>>(auth)->contains(m);
}

void verify_node(const DecompTree& t, const BaseSets& bases, const std::vector<Nat>& seeds,
                 VerificationReport& report) {
    if (t.is_leaf()) {
        if (t.is_seed) {
            bool ok = std::find(seeds.begin(), seeds.end(), t.value) != seeds.end();
            report.add("seed " + to_string(t.value), ok);
        } else {
            auto it = bases.find(t.base_id);
            if (it == bases.end()) {
                report.add(to_string(t.value) + " in " + t.base_id + " (base set missing)", false);
            } else {
                report.add(to_string(t.value) + " in " + t.base_id,
                           base_contains(it->second, t.value));
            }
        }
        return;
    }
    if (!t.right) {
        report.add("node " + to_string(t.value) + " has a single child", false);
        return;
    }
    bool ordered = t.left->value < t.right->value;
    bool merges = false;
    if (ordered) {
        auto beta = merge(t.left->value, t.right->value);
        merges = beta && *beta == t.value;
    }
    report.add("F(" + to_string(t.left->value) + ", " + to_string(t.right->value) + ") = " +
                   to_string(t.value),
               ordered && merges);
    verify_node(*t.left, bases, seeds, report);
    verify_node(*t.right, bases, seeds, report);
}

}  // namespace

VerificationReport verify_tree(const DecompTree& t, const BaseSets& bases,
                               const std::vector<Nat>& seeds) {
    VerificationReport report;
    verify_node(t, bases, seeds, report);
    return report;
}

namespace {

struct TreeSearch {
    const NeighborSet& base;
    const std::string& base_id;
    const BuildOptions& opts;
    std::optional<SmoothBound> bound;  // set when the base declares z
    std::unordered_set<Nat, NatHash> failed;

    std::optional<DecompTree> search(const Nat& beta, unsigned depth) {
        if (base.contains(beta)) {
            DecompTree leaf;
            leaf.value = beta;
            leaf.base_id = base_id;
            return leaf;
        }
        if (depth == 0 || failed.count(beta)) return std::nullopt;

        Factorization fb, fb1;
        try {
            fb = factorize(beta, opts.effort);
            fb1 = factorize(beta + 1, opts.effort);
        } catch (const FactorizationGaveUp&) {
            failed.insert(beta);
            return std::nullopt;
        }

        struct Cand {
            int in_base;       // children already in the base, 0..2
            uint64_t max_prime;
            ParentPair pair;
        };
        std::vector<Cand> cands;
        for_each_parent(beta, fb, fb1, [&](const ParentPair& p) {
            uint64_t maxp = 0;
            if (bound) {
                // a subtree can only bottom out in base members if every
                // value on the way down is bound-smooth
                Nat vals[4] = {p.b, p.b + 1, p.B, p.B + 1};
                for (Nat& n : vals) {
                    auto [f, cof] = smooth_part(n, *bound);
                    if (cof != 1) return true;  // skip this pair
                    if (!f.empty()) maxp = std::max(maxp, f.back().prime.get_ui());
                }
            }
            cands.push_back({(base.contains(p.b) ? 1 : 0) + (base.contains(p.B) ? 1 : 0), maxp, p});
            return true;
        });
        std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            if (a.in_base != b.in_base) return a.in_base > b.in_base;
            return a.max_prime < b.max_prime;
        });

        for (const Cand& c : cands) {
            auto l = search(c.pair.b, depth - 1);
            if (!l) continue;
            auto r = search(c.pair.B, depth - 1);
            if (!r) continue;
            DecompTree node;
            node.value = beta;
            node.left = std::make_unique<DecompTree>(std::move(*l));
            node.right = std::make_unique<DecompTree>(std::move(*r));
            return node;
        }
        failed.insert(beta);
        return std::nullopt;
    }
};

}  // namespace

std::optional<DecompTree> build_tree(const Nat& beta, const NeighborSet& base,
                                     const std::string& base_id, const BuildOptions& opts) {
    if (beta < 1) throw std::invalid_argument("build_tree requires beta >= 1");
    TreeSearch search{base, base_id, opts, std::nullopt, {}};
    if (base.z != 0) search.bound.emplace(base.z);
    return search.search(beta, opts.depth_limit);
}

namespace {

nlohmann::ordered_json node_to_json(const DecompTree& t) {
    nlohmann::ordered_json j;
    j["value"] = to_string(t.value);
    if (t.is_leaf()) {
        if (t.is_seed)
            j["seed"] = true;
        else
            j["base"] = t.base_id;
    } else {
        j["left"] = node_to_json(*t.left);
        j["right"] = node_to_json(*t.right);
    }
    return j;
}

DecompTree node_from_json(const nlohmann::json& j) {
    DecompTree t;
    t.value = parse_nat(j.at("value").get<std::string>());
    if (j.contains("left") || j.contains("right")) {
        t.left = std::make_unique<DecompTree>(node_from_json(j.at("left")));
        t.right = std::make_unique<DecompTree>(node_from_json(j.at("right")));
    } else if (j.contains("seed")) {
        t.is_seed = j.at("seed").get<bool>();
    } else {
        t.base_id = j.at("base").get<std::string>();
    }
    return t;
}

}  // namespace

std::string tree_to_json(const DecompTree& t) {
    nlohmann::ordered_json j;
    j["format"] = "smooth-neighbors-cert-v1";
    j["root"] = node_to_json(t);
    return j.dump(2);
}

DecompTree tree_from_json(const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    if (j.value("format", "") != std::string("smooth-neighbors-cert-v1"))
        throw std::invalid_argument("unrecognized certificate format");
    return node_from_json(j.at("root"));
}

DecompTree load_certificate(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open certificate: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return tree_from_json(ss.str());
}

void save_certificate(const DecompTree& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write certificate: " + path);
    out << tree_to_json(t) << "\n";
}

}  // namespace sn
