#include "sn/diophantine.hpp"

#include <algorithm>
#include <atomic>

#include <omp.h>

#include "sn/closure.hpp"

namespace sn {

namespace {

void check_witness(const MergeWitness& w) {
    if (w.h * w.y - w.g * w.v != 1 || w.v * w.x - w.h * w.u != 1 || w.x * w.y - w.g * w.u != 1 ||
        w.u * w.h + w.g * w.v != w.h * w.v - 1)
        throw std::logic_error("merge witness relations violated");
}

}  // namespace

MergeWitness witness_from_pair(const Nat& b, const Nat& B) {
    auto beta = merge(b, B);
    if (!beta)
        throw NotAMerge("F(" + to_string(b) + ", " + to_string(B) + ") has no solution");
    MergeWitness w;
    w.b = b;
    w.B = B;
    w.beta = *beta;
    mpz_gcd(w.g.get_mpz_t(), b.get_mpz_t(), B.get_mpz_t());
    w.u = b / w.g;
    w.v = B / w.g;
    w.h = w.beta / w.u;
    w.x = (w.beta + 1) / w.v;
    w.y = (B + 1) / w.h;
    check_witness(w);
    return w;
}

MergeWitness pair_from_hv(const Nat& h, const Nat& v) {
    if (h < 1 || v < 2) throw std::invalid_argument("pair_from_hv requires h >= 1, v >= 2");
    Nat g;
    mpz_gcd(g.get_mpz_t(), h.get_mpz_t(), v.get_mpz_t());
    if (g != 1) throw std::invalid_argument("pair_from_hv requires gcd(h, v) = 1");
    Nat hinv;
    if (!mpz_invert(hinv.get_mpz_t(), h.get_mpz_t(), v.get_mpz_t()))
        throw std::invalid_argument("h not invertible mod v");
    Nat u = (v - hinv) % v;  // u = -h^{-1} mod v, in [0, v-1]
    if (u == 0) u = v;       // never hit when gcd(h,v)=1 and v>=2, kept for safety
    Nat gg = (h * (v - u) - 1) / v;
    if (gg < 1)
        throw NoPositiveSolution("uh + gv = hv - 1 has no positive g for h=" + to_string(h) +
                                 ", v=" + to_string(v));
    MergeWitness w;
    w.g = gg;
    w.h = h;
    w.u = u;
    w.v = v;
    w.b = gg * u;
    w.B = gg * v;
    w.beta = h * u;
    w.x = (w.beta + 1) / v;
    w.y = (w.B + 1) / h;
    check_witness(w);
    return w;
}

void for_each_parent(const Nat& beta, const Factorization& fbeta, const Factorization& fbeta1,
                     const std::function<bool(const ParentPair&)>& fn) {
    std::vector<Nat> us = divisors(fbeta);
    std::vector<Nat> vs = divisors(fbeta1);
    std::vector<Nat> xs;  // (beta+1)/v aligned with vs
    xs.reserve(vs.size());
    const Nat beta1 = beta + 1;
    for (const Nat& v : vs) xs.push_back(beta1 / v);
    for (const Nat& u : us) {
        for (size_t j = 0; j < vs.size(); ++j) {
            const Nat& v = vs[j];
            if (u >= v) continue;
            Nat b = beta - u * xs[j];
            if (b < 1) continue;
            ParentPair p;
            p.u = u;
            p.v = v;
            p.B = v * (b / u);
            p.b = std::move(b);
            if (!fn(p)) return;
        }
    }
}

std::vector<ParentPair> parents_from_beta(const Nat& beta, const Factorization& fbeta,
                                          const Factorization& fbeta1) {
    std::vector<ParentPair> out;
    for_each_parent(beta, fbeta, fbeta1, [&](const ParentPair& p) {
        out.push_back(p);
        return true;
    });
    return out;
}

namespace {

// Largest prime <= cap dividing any of the four values, or nullopt when some
// value has a factor above cap.
std::optional<uint64_t> lpf_under_cap(const Nat& b, const Nat& B, uint64_t cap,
                                      const std::vector<uint64_t>& primes) {
    Nat vals[4] = {b, b + 1, B, B + 1};
    uint64_t maxp = 0;
    for (Nat& n : vals) {
        for (uint64_t p : primes) {
            if (p > cap) break;
            if (n == 1) break;
            if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                do {
                    mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                } while (mpz_divisible_ui_p(n.get_mpz_t(), p));
                maxp = std::max(maxp, p);
            }
        }
        if (n != 1) return std::nullopt;
    }
    return maxp;
}

}  // namespace

MinSmoothnessResult min_smoothness_over_parents(const Nat& beta, const SmoothBound& prime_cap,
                                                const EffortConfig& effort, int threads) {
    Factorization fbeta = factorize(beta, effort);
    Factorization fbeta1 = factorize(beta + 1, effort);
    std::vector<Nat> us = divisors(fbeta);
    std::vector<Nat> vs = divisors(fbeta1);
    const Nat beta1 = beta + 1;
    std::vector<Nat> xs;
    xs.reserve(vs.size());
    for (const Nat& v : vs) xs.push_back(beta1 / v);

    MinSmoothnessResult result;
    result.grid_size = static_cast<uint64_t>(us.size()) * vs.size();

    struct Hit {
        Nat u, v, b, B;
        uint64_t lpf;
    };
    int nthreads = threads > 0 ? threads : omp_get_max_threads();
    std::vector<std::vector<Hit>> local(nthreads);
    std::atomic<uint64_t> incumbent{prime_cap.value()};
    std::atomic<uint64_t> scanned{0};
    const std::vector<uint64_t>& primes = prime_cap.primes();
    const long un = static_cast<long>(us.size());

#pragma omp parallel num_threads(nthreads)
    {
        auto& hits = local[omp_get_thread_num()];
        uint64_t my_scanned = 0;
#pragma omp for schedule(dynamic, 1)
        for (long i = 0; i < un; ++i) {
            const Nat& u = us[i];
            Nat b, B;
            for (size_t j = 0; j < vs.size(); ++j) {
                if (u >= vs[j]) continue;
                b = beta - u * xs[j];
                if (b < 1) continue;
                ++my_scanned;
                B = vs[j] * (b / u);
                // a stale (larger) incumbent only costs extra division work
                uint64_t cap = incumbent.load(std::memory_order_relaxed);
                auto lpf = lpf_under_cap(b, B, cap, primes);
                if (!lpf) continue;
                uint64_t cur = incumbent.load(std::memory_order_relaxed);
                while (*lpf < cur &&
                       !incumbent.compare_exchange_weak(cur, *lpf, std::memory_order_relaxed)) {
                }
                hits.push_back({u, vs[j], b, B, *lpf});
            }
        }
        scanned += my_scanned;
    }

    uint64_t best = prime_cap.value() + 1;
    for (const auto& h : local)
        for (const auto& hit : h) best = std::min(best, hit.lpf);
    if (best > prime_cap.value())
        throw FactorizationGaveUp("no parent pair of " + to_string(beta) + " is " +
                                  std::to_string(prime_cap.value()) + "-smooth");

    std::vector<Hit> winners;
    for (auto& h : local)
        for (auto& hit : h)
            if (hit.lpf == best) winners.push_back(std::move(hit));
    std::sort(winners.begin(), winners.end(), [](const Hit& a, const Hit& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    result.p_min = Nat(static_cast<unsigned long>(best));
    for (auto& w : winners) result.best_pairs.emplace_back(std::move(w.b), std::move(w.B));
    result.pairs_scanned = scanned.load();
    result.skipped = result.pairs_scanned - winners.size();
    return result;
}

}  // namespace sn
