#include <doctest.h>

#include <algorithm>
#include <random>

#include "sn/arith.hpp"
#include "sn/closure.hpp"

using namespace sn;

namespace {

std::vector<Nat> range_seed(unsigned long lo, unsigned long hi) {
    std::vector<Nat> s;
    for (unsigned long i = lo; i <= hi; ++i) s.push_back(Nat(i));
    return s;
}

std::vector<Nat> nats(std::initializer_list<unsigned long> vals) {
    std::vector<Nat> s;
    for (auto v : vals) s.push_back(Nat(v));
    return s;
}

}  // namespace

TEST_CASE("merge") {
    CHECK(merge(Nat(3), Nat(4)) == Nat(15));    // 15/16 = 3/4 * 5/4
    CHECK(merge(Nat(14), Nat(19)) == Nat(56));  // 14/15 * 20/19 = 56/57
    CHECK(merge(Nat(3), Nat(8)) == std::nullopt);
    CHECK(merge(Nat(2), Nat(4)) == Nat(5));
    CHECK(merge(Nat(1), Nat(3), Nat(3)) == Nat(3));  // 1/4 * 6/3 = 1/2 = 3/6
    CHECK_THROWS_AS(merge(Nat(4), Nat(4)), std::invalid_argument);
}

TEST_CASE("mixed_merge_even") {
    CHECK(mixed_merge_even(Nat(3), Nat(4)) == Nat(30));  // 15/16 -> 30/32
    CHECK(mixed_merge_even(Nat(1), Nat(3)) == Nat(4));   // 2/3 -> 4/6
    CHECK(mixed_merge_even(Nat(1), Nat(2)) == Nat(6));   // 3/4 -> 6/8
}

TEST_CASE("closure_round") {
    auto members = range_seed(1, 5);
    auto cands = closure_round(members, members, Nat(1));
    std::vector<Nat> fresh;
    for (auto& [beta, pair] : cands) fresh.push_back(beta);
    CHECK(fresh == nats({8, 9, 15, 24}));

    auto s1 = nats({1, 2, 3, 4, 5, 8, 9, 15, 24});
    auto cands2 = closure_round(s1, nats({8, 9, 15, 24}), Nat(1));
    REQUIRE(cands2.size() == 1);
    CHECK(cands2[0].first == 80);

    CHECK(closure_round(nats({1}), nats({1}), Nat(1)).empty());
}

TEST_CASE("delta 1..5 with trace") {
    auto seed = range_seed(1, 5);
    auto r = delta(seed);
    CHECK(r.complete);
    CHECK(r.set.members == nats({1, 2, 3, 4, 5, 8, 9, 15, 24, 80}));
    REQUIRE(r.trace.rounds.size() == 3);  // two productive rounds, one empty
    CHECK(r.trace.rounds[0] == nats({8, 9, 15, 24}));
    CHECK(r.trace.rounds[1] == nats({80}));
    CHECK(r.trace.rounds[2].empty());
    // provenance: every derived member re-merges from its recorded pair
    for (auto& [beta, pair] : r.trace.provenance) CHECK(merge(pair.first, pair.second) == beta);
}

TEST_CASE("delta 1..7") {
    auto r = delta(range_seed(1, 7));
    CHECK(r.set.members == nats({1, 2, 3, 4, 5, 6, 7, 8, 9, 14, 15, 20, 24, 27, 35, 48, 49, 63,
                                 80, 125, 224, 2400}));
}

TEST_CASE("delta {1,2,5,6,10}") {
    auto r = delta(nats({1, 2, 5, 6, 10}));
    CHECK(r.set.members.size() == 40);
    CHECK(r.set.contains(Nat(4374)));
    CHECK(r.set.contains(Nat(9800)));
    CHECK(r.set.contains(Nat(3024)));
}

TEST_CASE("parallel engine matches the serial reference") {
    for (auto seed : {range_seed(1, 7), nats({1, 2, 5, 6, 10}), range_seed(1, 13)}) {
        auto ref = delta_reference(seed);
        auto r = delta(seed);
        CHECK(r.set.members == ref);
    }
}

TEST_CASE("order independence across worker counts and seed order") {
    auto seed = nats({1, 2, 5, 6, 10});
    auto base = delta(seed, Nat(1), {}, 0, 1).set.members;
    for (int threads : {2, 3, 4, 8})
        CHECK(delta(seed, Nat(1), {}, 0, threads).set.members == base);
    std::mt19937 rng(7);
    std::shuffle(seed.begin(), seed.end(), rng);
    CHECK(delta(seed).set.members == base);
}

TEST_CASE("idempotence and monotonicity") {
    auto seed = nats({1, 2, 5, 6, 10});
    auto once = delta(seed).set.members;
    CHECK(delta(once).set.members == once);
    for (const Nat& s : seed) CHECK(std::binary_search(once.begin(), once.end(), s));
}

TEST_CASE("frontier completeness at the fixpoint") {
    auto fix = delta(range_seed(1, 7)).set.members;
    CHECK(closure_round(fix, fix, Nat(1)).empty());
    CHECK(closure_round_reference(fix, Nat(1)).empty());
}

TEST_CASE("soundness: smooth seeds give smooth members") {
    SmoothBound z(13);
    auto r = delta(range_seed(1, 13));
    for (const Nat& m : r.set.members) CHECK(is_smooth(m * (m + 1), z));
}

TEST_CASE("limits flag partial results") {
    RunLimits limits;
    limits.max_rounds = 1;
    auto r = delta(range_seed(1, 7), Nat(1), limits);
    CHECK_FALSE(r.complete);
    CHECK(r.rounds_run == 1);
    CHECK(r.set.members.size() < 22);
}

TEST_CASE("checkpoint round trip resumes to the same fixpoint") {
    auto seed = range_seed(1, 13);
    auto straight = delta(seed).set.members;

    ClosureEngine engine(seed, Nat(1), 13);
    engine.step();
    engine.step();
    std::string json = engine.to_checkpoint_json();
    ClosureEngine resumed = ClosureEngine::from_checkpoint_json(json);
    CHECK(resumed.members() == engine.members());
    CHECK(resumed.frontier() == engine.frontier());
    CHECK(resumed.round_index() == engine.round_index());
    resumed.run({});
    CHECK(resumed.members() == straight);
}

TEST_CASE("delta_k difference 3") {
    // seeds with b(b+3) 3-smooth: 1*4=4, 3*6=18, 9*12=108
    auto r = delta(nats({1, 3, 9}), Nat(3));
    CHECK(r.complete);
    SmoothBound z(3);
    for (const Nat& m : r.set.members) CHECK(is_smooth(m * (m + 3), z));
}

TEST_CASE("even difference members from a k=1 base") {
    auto base = delta(range_seed(1, 5)).set.members;
    auto evens = even_neighbors_from(base);
    CHECK(!evens.empty());
    // every output solves b(b+2) z-smooth for the base bound
    SmoothBound z(5);
    for (const Nat& m : evens) CHECK(is_smooth(m * (m + 2), z));
    // the worked examples: F(3,4) -> 30, F(1,2) -> 6, F(1,3) -> 4
    for (unsigned long v : {30, 6, 4})
        CHECK(std::binary_search(evens.begin(), evens.end(), Nat(v)));
}
