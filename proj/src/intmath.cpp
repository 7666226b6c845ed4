#include "goppa/intmath.hpp"

#include <algorithm>
#include <numeric>

#include "goppa/errors.hpp"

namespace goppa {

u64 powmod(u64 base, u64 exp, u64 mod) {
    if (mod == 1) return 0;
    u64 result = 1;
    base %= mod;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, mod);
        base = mulmod(base, base, mod);
        exp >>= 1;
    }
    return result;
}

namespace {

bool miller_rabin(u64 n, u64 a) {
    if (a % n == 0) return true;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

u64 brent_rho(u64 n) {
    if ((n & 1) == 0) return 2;
    // deterministic restart sequence; n is composite and odd here
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        u64 power = 1, lam = 1;
        while (d == 1) {
            if (power == lam) { x = y; power <<= 1; lam = 0; }
            y = (mulmod(y, y, n) + c) % n;
            ++lam;
            u64 diff = x > y ? x - y : y - x;
            d = std::gcd(diff, n);
        }
        if (d != n) return d;
    }
}

} // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // deterministic witness set for 64-bit inputs
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (!miller_rabin(n, a)) return false;
    return true;
}

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    if (n < 2) return out;
    for (u64 p = 2; p < 100000 && p * p <= n; p == 2 ? p = 3 : p += 2) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
    }
    // whatever is left is either 1, prime, or a product of primes > 10^5
    std::vector<u64> stack;
    if (n > 1) stack.push_back(n);
    std::vector<u64> primes;
    while (!stack.empty()) {
        u64 m = stack.back();
        stack.pop_back();
        if (is_prime(m)) {
            primes.push_back(m);
            continue;
        }
        u64 d = brent_rho(m);
        stack.push_back(d);
        stack.push_back(m / d);
    }
    std::sort(primes.begin(), primes.end());
    for (std::size_t i = 0; i < primes.size();) {
        std::size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        out.emplace_back(primes[i], static_cast<unsigned>(j - i));
        i = j;
    }
    std::sort(out.begin(), out.end());
    return out;
}

u64 euler_phi(u64 n) {
    u64 phi = 1;
    for (auto [p, e] : factorize(n)) {
        phi *= p - 1;
        for (unsigned i = 1; i < e; ++i) phi *= p;
    }
    return phi;
}

u64 multiplicative_order_mod(u64 a, u64 m) {
    if (m == 0 || std::gcd(a % m, m) != 1)
        throw parameter_error("multiplicative_order_mod: arguments must be coprime");
    if (m == 1) return 1;
    u64 d = euler_phi(m);
    for (auto [p, e] : factorize(d)) {
        (void)e;
        while (d % p == 0 && powmod(a, d / p, m) == 1) d /= p;
    }
    return d;
}

std::optional<std::pair<u64, unsigned>> prime_power_split(u64 n) {
    if (n < 2) return std::nullopt;
    auto f = factorize(n);
    if (f.size() != 1) return std::nullopt;
    return std::make_pair(f[0].first, f[0].second);
}

std::optional<u64> checked_pow(u64 base, u64 exp) {
    u64 result = 1;
    while (exp) {
        if (exp & 1) {
            if (base != 0 && result > UINT64_MAX / base) return std::nullopt;
            result *= base;
        }
        exp >>= 1;
        if (exp) {
            if (base != 0 && base > UINT64_MAX / base) return std::nullopt;
            base *= base;
        }
    }
    return result;
}

} // namespace goppa
