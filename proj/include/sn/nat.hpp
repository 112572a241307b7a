#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace sn {

// Arbitrary-precision non-negative integer. Members of the sets we compute
// reach ~6e23 and intermediate products exceed 1e47, so everything integer
// in this library is a Nat.
using Nat = mpz_class;

inline Nat parse_nat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    for (char c : s)
        if (c < '0' || c > '9')
            throw std::invalid_argument("not a decimal non-negative integer: " + s);
    return Nat(s, 10);
}

inline std::string to_string(const Nat& n) { return n.get_str(10); }

// Hash over the limb data; used for O(1) membership checks in the closure
// inner loop.
struct NatHash {
    size_t operator()(const Nat& n) const noexcept {
        const mpz_srcptr z = n.get_mpz_t();
        size_t h = static_cast<size_t>(z->_mp_size) * 0x9e3779b97f4a7c15ULL;
        for (int i = 0; i < std::abs(z->_mp_size); ++i) {
            h ^= static_cast<size_t>(z->_mp_d[i]);
            h *= 0x100000001b3ULL;
        }
        return h;
    }
};

}  // namespace sn
