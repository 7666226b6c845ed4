#ifndef GOPPA_INTMATH_HPP
#define GOPPA_INTMATH_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace goppa {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 base, u64 exp, u64 mod);

bool is_prime(u64 n);

// Prime factorization, ascending, as (prime, exponent) pairs.  Trial division
// for small factors, Brent's rho for the rest.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

u64 euler_phi(u64 n);

// Smallest d >= 1 with a^d = 1 (mod m); requires gcd(a, m) = 1.
u64 multiplicative_order_mod(u64 a, u64 m);

// n = p^t for prime p; nullopt if n is not a prime power.
std::optional<std::pair<u64, unsigned>> prime_power_split(u64 n);

// base^exp, or nullopt on u64 overflow.
std::optional<u64> checked_pow(u64 base, u64 exp);

} // namespace goppa

#endif
