#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "goppa/errors.hpp"
#include "goppa/intmath.hpp"

using namespace goppa;

TEST_CASE("primality") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(11));
    CHECK(is_prime(601));
    CHECK(is_prime(1801));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(4));
    CHECK_FALSE(is_prime(2047)); // 23 * 89
    CHECK(is_prime(u64{1000000007}));
    CHECK_FALSE(is_prime(u64{1000000007} * 1000000007));
}

TEST_CASE("factorization recombines") {
    for (u64 n : {u64{2}, u64{12}, u64{360}, u64{2047}, u64{33554431}, (u64{1} << 44) - 1, u64{10460353203}}) {
        u64 prod = 1;
        for (auto [p, e] : factorize(n)) {
            CHECK(is_prime(p));
            for (unsigned i = 0; i < e; ++i) prod *= p;
        }
        CHECK(prod == n);
    }
}

TEST_CASE("2^25-1 factors") {
    auto f = factorize((u64{1} << 25) - 1);
    REQUIRE(f.size() == 3);
    CHECK(f[0].first == 31);
    CHECK(f[1].first == 601);
    CHECK(f[2].first == 1801);
}

TEST_CASE("euler phi") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(7) == 6);
    CHECK(euler_phi(28) == 12);
    CHECK(euler_phi(13) == 12);
}

TEST_CASE("multiplicative order") {
    CHECK(multiplicative_order_mod(2, 7) == 3);
    CHECK(multiplicative_order_mod(27, 7) == 2);
    CHECK(multiplicative_order_mod(5, 1) == 1);
    CHECK_THROWS_AS(multiplicative_order_mod(6, 9), parameter_error);
    // brute-force cross-check on small moduli
    for (u64 m = 2; m < 60; ++m) {
        for (u64 a = 1; a < m; ++a) {
            if (std::gcd(a, m) != 1) continue;
            u64 d = 1, x = a % m;
            while (x != 1) {
                x = x * a % m;
                ++d;
            }
            CHECK(multiplicative_order_mod(a, m) == d);
        }
    }
}

TEST_CASE("prime power split") {
    auto s = prime_power_split(27);
    REQUIRE(s.has_value());
    CHECK(s->first == 3);
    CHECK(s->second == 3);
    CHECK(prime_power_split(4)->first == 2);
    CHECK_FALSE(prime_power_split(6).has_value());
    CHECK_FALSE(prime_power_split(1).has_value());
}

TEST_CASE("checked pow") {
    CHECK(checked_pow(2, 62).value() == u64{1} << 62);
    CHECK_FALSE(checked_pow(2, 64).has_value());
    CHECK(checked_pow(3, 21).value() == 10460353203ull);
    CHECK_FALSE(checked_pow(11, 143).has_value());
}
