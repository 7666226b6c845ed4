#ifndef GOPPA_GF_HPP
#define GOPPA_GF_HPP

#include <cstdint>
#include <vector>

#include "goppa/intmath.hpp"

namespace goppa {

enum class Backend { Auto, LogTables, Polynomial };

// F_{p^m} with elements represented as handles: the base-p encoding of the
// coefficient vector of the canonical residue mod the field modulus.  Handle 0
// is the additive identity, handle 1 the multiplicative identity.
//
// The modulus is the lexicographically smallest monic irreducible polynomial
// of degree m over F_p (smallest handle encoding), found by deterministic
// ascending search with a gcd-based irreducibility test, so two builds of the
// same field are bit-identical.
//
// Two interchangeable backends: discrete log/antilog tables (O(1) mul/inv,
// order-sized memory) and direct polynomial arithmetic with modular reduction.
// Under Backend::Auto, tables are built iff order <= table_limit.
class Field {
  public:
    static constexpr u64 kDefaultTableLimit = u64{1} << 24;

    Field(u64 p, unsigned m, Backend backend = Backend::Auto, u64 table_limit = kDefaultTableLimit);

    // Construction from a known modulus + primitive element (cache loads).
    // Both are re-verified; throws internal_error if they do not check out.
    static Field from_parts(u64 p, unsigned m, std::vector<u32> modulus, u64 primitive,
                            Backend backend, u64 table_limit, std::vector<u32> exp_table = {});

    u64 characteristic() const { return p_; }
    unsigned degree() const { return m_; }
    u64 order() const { return order_; }
    const std::vector<u32>& modulus() const { return modulus_; }
    u64 primitive_element() const { return primitive_; }
    bool uses_tables() const { return !exp_.empty(); }

    u64 add(u64 a, u64 b) const {
        if (p_ == 2) return a ^ b;
        return add_slow(a, b);
    }
    u64 neg(u64 a) const;
    u64 sub(u64 a, u64 b) const { return add(a, neg(b)); }

    u64 mul(u64 a, u64 b) const {
        if (!exp_.empty()) {
            if (a == 0 || b == 0) return 0;
            u64 s = u64{log_[a]} + log_[b];
            if (s >= group_order_) s -= group_order_;
            return exp_[s];
        }
        return mul_poly(a, b);
    }

    u64 inv(u64 a) const; // throws domain_error on 0
    u64 pow(u64 a, u64 e) const;

    // a^(p^k)
    u64 frob_p(u64 a, u64 k) const;

    // handle <-> coefficient vector (little-endian, length m)
    std::vector<u32> to_coeffs(u64 h) const;
    u64 from_coeffs(const std::vector<u32>& c) const;

    // Raw table access for hot loops; nullptr under the polynomial backend.
    const u32* exp_data() const { return exp_.empty() ? nullptr : exp_.data(); }
    const u32* log_data() const { return log_.empty() ? nullptr : log_.data(); }
    const std::vector<u32>& exp_table() const { return exp_; }

    // Multiplicative order of the whole group, order() - 1.
    u64 group_order() const { return group_order_; }

  private:
    Field() = default;
    void init_checked(u64 p, unsigned m, Backend backend, u64 table_limit);
    void build_tables();
    u64 add_slow(u64 a, u64 b) const;
    u64 mul_poly(u64 a, u64 b) const;

    u64 p_ = 0;
    unsigned m_ = 0;
    u64 order_ = 0;
    u64 group_order_ = 0;
    std::vector<u32> modulus_; // m+1 coefficients, monic
    u64 modulus_mask_ = 0;     // p=2 only: modulus as bit pattern
    u64 primitive_ = 0;
    std::vector<u32> exp_; // size order: exp_[k] = g^k for k < order-1, exp_[order-1] = 1
    std::vector<u32> log_; // size order: log_[0] = sentinel
};

} // namespace goppa

#endif
