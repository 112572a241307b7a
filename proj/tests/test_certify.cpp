#include <doctest.h>

#include <cstdio>
#include <memory>

#include "sn/certify.hpp"
#include "sn/closure.hpp"

using namespace sn;

namespace {

DecompTree leaf_seed(unsigned long v) {
    DecompTree t;
    t.value = Nat(v);
    t.is_seed = true;
    return t;
}

DecompTree inner(unsigned long v, DecompTree l, DecompTree r) {
    DecompTree t;
    t.value = Nat(v);
    t.left = std::make_unique<DecompTree>(std::move(l));
    t.right = std::make_unique<DecompTree>(std::move(r));
    return t;
}

// The worked tree for 601425 over seeds {6,7,8,11,14,15,17,18,19}.
DecompTree tree_601425() {
    auto n75 = inner(75, leaf_seed(15), leaf_seed(19));
    auto n32 = inner(32, leaf_seed(8), leaf_seed(11));
    auto n56a = inner(56, leaf_seed(14), leaf_seed(19));
    auto n76 = inner(76, std::move(n32), std::move(n56a));
    auto n5775 = inner(5775, std::move(n75), std::move(n76));

    auto n323 = inner(323, leaf_seed(17), leaf_seed(18));
    auto n48 = inner(48, leaf_seed(6), leaf_seed(7));
    auto n56b = inner(56, leaf_seed(14), leaf_seed(19));
    auto n342 = inner(342, std::move(n48), std::move(n56b));
    auto n5831 = inner(5831, std::move(n323), std::move(n342));

    return inner(601425, std::move(n5775), std::move(n5831));
}

std::vector<Nat> seeds_601425() {
    std::vector<Nat> s;
    for (unsigned long v : {6, 7, 8, 11, 14, 15, 17, 18, 19}) s.push_back(Nat(v));
    return s;
}

std::vector<Nat> range_seed(unsigned long lo, unsigned long hi) {
    std::vector<Nat> s;
    for (unsigned long i = lo; i <= hi; ++i) s.push_back(Nat(i));
    return s;
}

}  // namespace

TEST_CASE("verify the worked tree for 601425") {
    auto t = tree_601425();
    auto report = verify_tree(t, {}, seeds_601425());
    CHECK(report.pass);
    // root merge F(5775, 5831) = 601425 is among the checked equations
    bool saw_root = false;
    for (const auto& e : report.checks)
        if (e.what == "F(5775, 5831) = 601425") saw_root = e.ok;
    CHECK(saw_root);
}

TEST_CASE("a corrupted node fails and is identified") {
    auto t = tree_601425();
    t.left->left->value = Nat(74);  // was 75
    auto report = verify_tree(t, {}, seeds_601425());
    CHECK_FALSE(report.pass);
    bool named = false;
    for (const auto& e : report.checks)
        if (!e.ok && e.what.find("74") != std::string::npos) named = true;
    CHECK(named);
}

TEST_CASE("missing base set is a failure entry, not a crash") {
    DecompTree t;
    t.value = Nat(80);
    t.base_id = "nowhere";
    auto report = verify_tree(t, {});
    CHECK_FALSE(report.pass);
}

TEST_CASE("smoothness-backed base attestation") {
    DecompTree t;
    t.value = Nat(4374);
    t.base_id = "z7";
    BaseSets bases;
    bases.emplace("z7", SmoothnessBase{7});
    CHECK(verify_tree(t, bases).pass);
    t.value = Nat(10);  // 10*11 is not 7-smooth
    CHECK_FALSE(verify_tree(t, bases).pass);
}

TEST_CASE("build_tree base case") {
    auto d5 = delta(range_seed(1, 5)).set;
    d5.z = 5;
    auto t = build_tree(Nat(24), d5, "d5");
    REQUIRE(t);
    CHECK(t->is_leaf());
    CHECK(t->value == 24);
}

TEST_CASE("build_tree decomposes 80 over delta(1..5) minus 80") {
    auto d5 = delta(range_seed(1, 5)).set;
    d5.members.pop_back();  // drop 80 itself
    d5.z = 5;
    auto t = build_tree(Nat(80), d5, "d5");
    REQUIRE(t);
    CHECK_FALSE(t->is_leaf());
    BaseSets bases;
    bases.emplace("d5", std::make_shared<const NeighborSet>(d5));
    CHECK(verify_tree(*t, bases).pass);
}

TEST_CASE("build_tree decomposes 601425 over delta(1..20) minus 601425") {
    auto d20 = delta(range_seed(1, 20)).set;
    REQUIRE(d20.contains(Nat(601425)));
    std::erase(d20.members, Nat(601425));
    d20.z = 19;
    auto t = build_tree(Nat(601425), d20, "d20");
    REQUIRE(t);
    BaseSets bases;
    bases.emplace("d20", std::make_shared<const NeighborSet>(d20));
    CHECK(verify_tree(*t, bases).pass);
}

TEST_CASE("certificate json round trip") {
    auto t = tree_601425();
    auto text = tree_to_json(t);
    auto back = tree_from_json(text);
    CHECK(tree_to_json(back) == text);
    CHECK(verify_tree(back, {}, seeds_601425()).pass);
}

TEST_CASE("bundled certificate: all merges hold, leaves smooth under their base") {
    auto t = load_certificate(std::string(SN_DATA_DIR) + "/cert_9591468737351909375.json");
    CHECK(t.value == Nat("9591468737351909375"));
    BaseSets bases;
    bases.emplace("z199", SmoothnessBase{199});
    bases.emplace("z227", SmoothnessBase{227});
    auto report = verify_tree(t, bases);
    CHECK(report.pass);
    CHECK(report.checks.size() > 40);
}
