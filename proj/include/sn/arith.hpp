#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sn/nat.hpp"

namespace sn {

struct Factor {
    Nat prime;
    unsigned exp;
    bool operator==(const Factor&) const = default;
};

// Sorted by prime; product of prime^exp is the factored value.
using Factorization = std::vector<Factor>;

// Raised when the configured factoring effort is exhausted. The caller must
// treat the value as unknown, never as smooth.
struct FactorizationGaveUp : std::runtime_error {
    explicit FactorizationGaveUp(const std::string& what) : std::runtime_error(what) {}
};

struct EffortConfig {
    uint64_t trial_division_limit = 1'000'000;
    unsigned rho_attempts = 64;
    uint64_t rho_iterations = 4'000'000;
};

std::vector<uint64_t> primes_up_to(uint64_t z);

bool is_prime_u64(uint64_t n);

// A prime smoothness ceiling with its prime table, immutable after
// construction and shareable across workers.
class SmoothBound {
public:
    explicit SmoothBound(uint64_t z);

    uint64_t value() const { return z_; }
    const std::vector<uint64_t>& primes() const { return *primes_; }

private:
    uint64_t z_;
    std::shared_ptr<const std::vector<uint64_t>> primes_;
};

// Splits n into its z-smooth part and a cofactor with no prime factor <= z.
// n is z-smooth iff the cofactor is 1. Never needs full factorization.
std::pair<Factorization, Nat> smooth_part(const Nat& n, const SmoothBound& z);

bool is_smooth(const Nat& n, const SmoothBound& z);

// Full factorization: trial division by primes below the configured limit,
// then Brent-cycle Pollard rho on the remaining cofactor.
Factorization factorize(const Nat& n, const EffortConfig& effort = {});

Nat largest_prime_factor(const Nat& n, const EffortConfig& effort = {});

// All divisors in increasing order; count is the product of (exp_i + 1).
std::vector<Nat> divisors(const Factorization& f);

Nat radical(const Factorization& f);

Nat factored_value(const Factorization& f);

}  // namespace sn
