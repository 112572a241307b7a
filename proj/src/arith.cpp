#include "sn/arith.hpp"

#include <algorithm>
#include <map>

namespace sn {

std::vector<uint64_t> primes_up_to(uint64_t z) {
    if (z < 2) throw std::invalid_argument("primes_up_to requires z >= 2");
    std::vector<bool> composite(z + 1, false);
    std::vector<uint64_t> primes;
    for (uint64_t i = 2; i <= z; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (uint64_t j = i * i; j <= z; j += i) composite[j] = true;
    }
    return primes;
}

bool is_prime_u64(uint64_t n) {
    Nat m(static_cast<unsigned long>(n));
    return mpz_probab_prime_p(m.get_mpz_t(), 32) != 0;
}

SmoothBound::SmoothBound(uint64_t z) : z_(z) {
    if (!is_prime_u64(z))
        throw std::invalid_argument("smoothness bound must be prime, got " + std::to_string(z));
    primes_ = std::make_shared<const std::vector<uint64_t>>(primes_up_to(z));
}

std::pair<Factorization, Nat> smooth_part(const Nat& n, const SmoothBound& z) {
    if (n < 1) throw std::invalid_argument("smooth_part requires n >= 1");
    Factorization f;
    Nat rest = n;
    for (uint64_t p : z.primes()) {
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            unsigned e = 0;
            do {
                mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
                ++e;
            } while (mpz_divisible_ui_p(rest.get_mpz_t(), p));
            f.push_back({Nat(static_cast<unsigned long>(p)), e});
        }
        if (rest == 1) break;
    }
    return {std::move(f), std::move(rest)};
}

bool is_smooth(const Nat& n, const SmoothBound& z) {
    if (n < 1) throw std::invalid_argument("is_smooth requires n >= 1");
    Nat rest = n;
    for (uint64_t p : z.primes()) {
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p))
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        if (rest == 1) return true;
    }
    return rest == 1;
}

namespace {

bool is_probable_prime(const Nat& n) { return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0; }

// Brent's variant of Pollard rho. Returns a nontrivial factor of n or 0.
Nat rho_factor(const Nat& n, unsigned long c, uint64_t max_iters) {
    Nat x(2), y(2), d(1), diff, prod(1);
    uint64_t iters = 0;
    const unsigned batch = 128;
    while (iters < max_iters) {
        Nat saved_x = x, saved_y = y;
        for (unsigned i = 0; i < batch && iters < max_iters; ++i, ++iters) {
            // x -> x^2 + c, y advances twice
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            diff = x - y;
            if (diff == 0) return Nat(0);  // cycle collapsed, try another c
            prod = (prod * diff) % n;
        }
        mpz_gcd(d.get_mpz_t(), prod.get_mpz_t(), n.get_mpz_t());
        if (d != 1) {
            if (d != n) return d;
            // backtrack one step at a time
            x = saved_x;
            y = saved_y;
            for (unsigned i = 0; i < batch; ++i) {
                x = (x * x + c) % n;
                y = (y * y + c) % n;
                y = (y * y + c) % n;
                diff = x - y;
                mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
                if (d != 1) return d == n ? Nat(0) : d;
            }
            return Nat(0);
        }
    }
    return Nat(0);
}

void factor_rec(const Nat& n, const EffortConfig& effort, std::map<Nat, unsigned>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out[n] += 1;
        return;
    }
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        Nat r;
        mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
        factor_rec(r, effort, out);
        factor_rec(r, effort, out);
        return;
    }
    for (unsigned long c = 1; c <= effort.rho_attempts; ++c) {
        Nat d = rho_factor(n, c, effort.rho_iterations);
        if (d != 0 && d != 1 && d != n) {
            factor_rec(d, effort, out);
            factor_rec(n / d, effort, out);
            return;
        }
    }
    throw FactorizationGaveUp("could not factor " + to_string(n) +
                              " within the configured effort");
}

}  // namespace

Factorization factorize(const Nat& n, const EffortConfig& effort) {
    if (n < 1) throw std::invalid_argument("factorize requires n >= 1");
    std::map<Nat, unsigned> acc;
    Nat rest = n;
    // shared, lazily built trial-division table
    static const std::vector<uint64_t> small_primes = primes_up_to(1'000'000);
    for (uint64_t p : small_primes) {
        if (p > effort.trial_division_limit) break;
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            unsigned e = 0;
            do {
                mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
                ++e;
            } while (mpz_divisible_ui_p(rest.get_mpz_t(), p));
            acc[Nat(static_cast<unsigned long>(p))] = e;
        }
        if (rest == 1) break;
        if (Nat(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p) > rest) {
            acc[rest] += 1;
            rest = 1;
            break;
        }
    }
    if (rest != 1) factor_rec(rest, effort, acc);
    Factorization f;
    f.reserve(acc.size());
    for (auto& [p, e] : acc) f.push_back({p, e});
    return f;
}

Nat largest_prime_factor(const Nat& n, const EffortConfig& effort) {
    if (n < 2) throw std::invalid_argument("largest_prime_factor requires n >= 2");
    Factorization f = factorize(n, effort);
    return f.back().prime;
}

std::vector<Nat> divisors(const Factorization& f) {
    std::vector<Nat> divs{Nat(1)};
    for (const auto& [p, e] : f) {
        size_t base = divs.size();
        Nat pk(1);
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

Nat radical(const Factorization& f) {
    Nat r(1);
    for (const auto& [p, e] : f) r *= p;
    return r;
}

Nat factored_value(const Factorization& f) {
    Nat v(1), pk;
    for (const auto& [p, e] : f) {
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), e);
        v *= pk;
    }
    return v;
}

}  // namespace sn
