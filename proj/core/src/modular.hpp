#pragma once

#include "freearr/rational.hpp"

#include <cstdint>
#include <vector>

namespace freearr::detail {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

inline u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }
inline u64 add_mod(u64 a, u64 b, u64 p) {
    const u64 s = a + b;
    return s >= p ? s - p : s;
}
inline u64 sub_mod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

u64 pow_mod(u64 base, u64 exp, u64 p);
u64 inv_mod(u64 a, u64 p);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(u64 n);

/// Primes below 2^62 in decreasing order, deterministic.
class PrimeSequence {
public:
    u64 next();

private:
    u64 cursor_ = (u64(1) << 62);
};

struct ModRref {
    std::vector<u64> entries;  // rows x cols, reduced echelon, first `rank` rows meaningful
    std::size_t rows = 0, cols = 0;
    std::vector<std::size_t> pivots;
};

/// In-place Gauss-Jordan elimination modulo p.
void rref_mod(ModRref& m, u64 p);

/// n/d with |n|, d <= sqrt(m/2) and n = a d (mod m); false when none exists.
bool rational_reconstruct(const Integer& a, const Integer& m, Rational& out);

}  // namespace freearr::detail
