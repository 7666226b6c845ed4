#ifndef GOPPA_BIGINT_HPP
#define GOPPA_BIGINT_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "goppa/intmath.hpp"

namespace goppa {

// Unsigned arbitrary-precision integer.  Every quantity in this project is an
// exact non-negative integer; subtraction below zero throws.  Just the
// operations the counting formulas need: no general division.
class BigUint {
  public:
    BigUint() = default;
    BigUint(u64 v) { // NOLINT(google-explicit-constructor)
        if (v) limbs_.push_back(v);
    }

    static BigUint pow(u64 base, u64 exp);

    BigUint& operator+=(const BigUint& rhs);
    BigUint& operator-=(const BigUint& rhs); // throws internal_error on underflow
    BigUint operator*(const BigUint& rhs) const;

    friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }
    friend BigUint operator-(BigUint a, const BigUint& b) { return a -= b; }
    BigUint& operator*=(const BigUint& rhs) { return *this = *this * rhs; }

    // quotient in-place, returns remainder; d must be nonzero
    u64 divmod_u64(u64 d);

    bool operator==(const BigUint& rhs) const = default;
    std::strong_ordering operator<=>(const BigUint& rhs) const;

    bool is_zero() const { return limbs_.empty(); }
    bool fits_u64() const { return limbs_.size() <= 1; }
    u64 to_u64() const; // throws internal_error if it does not fit
    unsigned bit_length() const;

    std::string to_string() const;

  private:
    void trim();
    std::vector<u64> limbs_; // little-endian, no trailing zero limbs; empty == 0
};

} // namespace goppa

#endif
