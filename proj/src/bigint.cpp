#include "goppa/bigint.hpp"

#include <algorithm>

#include "goppa/errors.hpp"

namespace goppa {

using u128 = unsigned __int128;

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint BigUint::pow(u64 base, u64 exp) {
    BigUint result{1};
    BigUint b{base};
    while (exp) {
        if (exp & 1) result *= b;
        exp >>= 1;
        if (exp) b *= b;
    }
    return result;
}

BigUint& BigUint::operator+=(const BigUint& rhs) {
    if (rhs.limbs_.size() > limbs_.size()) limbs_.resize(rhs.limbs_.size(), 0);
    u64 carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        u128 s = static_cast<u128>(limbs_[i]) + carry + (i < rhs.limbs_.size() ? rhs.limbs_[i] : 0);
        limbs_[i] = static_cast<u64>(s);
        carry = static_cast<u64>(s >> 64);
    }
    if (carry) limbs_.push_back(carry);
    return *this;
}

BigUint& BigUint::operator-=(const BigUint& rhs) {
    if (*this < rhs) throw internal_error("BigUint: subtraction underflow");
    u64 borrow = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        u128 sub = static_cast<u128>(i < rhs.limbs_.size() ? rhs.limbs_[i] : 0) + borrow;
        if (static_cast<u128>(limbs_[i]) >= sub) {
            limbs_[i] -= static_cast<u64>(sub);
            borrow = 0;
        } else {
            limbs_[i] = static_cast<u64>((static_cast<u128>(1) << 64) + limbs_[i] - sub);
            borrow = 1;
        }
    }
    trim();
    return *this;
}

BigUint BigUint::operator*(const BigUint& rhs) const {
    if (is_zero() || rhs.is_zero()) return {};
    BigUint out;
    out.limbs_.assign(limbs_.size() + rhs.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        u64 carry = 0;
        for (std::size_t j = 0; j < rhs.limbs_.size(); ++j) {
            u128 cur = static_cast<u128>(limbs_[i]) * rhs.limbs_[j] + out.limbs_[i + j] + carry;
            out.limbs_[i + j] = static_cast<u64>(cur);
            carry = static_cast<u64>(cur >> 64);
        }
        out.limbs_[i + rhs.limbs_.size()] = carry;
    }
    out.trim();
    return out;
}

u64 BigUint::divmod_u64(u64 d) {
    if (d == 0) throw parameter_error("BigUint: division by zero");
    u128 rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        u128 cur = (rem << 64) | limbs_[i];
        limbs_[i] = static_cast<u64>(cur / d);
        rem = cur % d;
    }
    trim();
    return static_cast<u64>(rem);
}

std::strong_ordering BigUint::operator<=>(const BigUint& rhs) const {
    if (limbs_.size() != rhs.limbs_.size()) return limbs_.size() <=> rhs.limbs_.size();
    for (std::size_t i = limbs_.size(); i-- > 0;)
        if (limbs_[i] != rhs.limbs_[i]) return limbs_[i] <=> rhs.limbs_[i];
    return std::strong_ordering::equal;
}

u64 BigUint::to_u64() const {
    if (!fits_u64()) throw internal_error("BigUint: value exceeds 64 bits");
    return limbs_.empty() ? 0 : limbs_[0];
}

unsigned BigUint::bit_length() const {
    if (limbs_.empty()) return 0;
    unsigned top = 64;
    u64 hi = limbs_.back();
    while (!(hi >> 63)) { hi <<= 1; --top; }
    return static_cast<unsigned>((limbs_.size() - 1) * 64) + top;
}

std::string BigUint::to_string() const {
    if (is_zero()) return "0";
    BigUint tmp = *this;
    std::string out;
    while (!tmp.is_zero()) {
        u64 chunk = tmp.divmod_u64(10000000000000000000ull); // 10^19
        std::string part = std::to_string(chunk);
        if (tmp.is_zero()) {
            out.insert(0, part);
        } else {
            out.insert(0, std::string(19 - part.size(), '0') + part);
        }
    }
    return out;
}

} // namespace goppa
