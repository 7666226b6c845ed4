#include "goppa/gf.hpp"

#include <algorithm>
#include <random>

#include "goppa/errors.hpp"

namespace goppa {

namespace {

// Dense little-endian coefficient vectors over F_p.  Cold-path machinery: the
// modulus search, inverses under the polynomial backend, table construction.
using PolyVec = std::vector<u32>;

int poly_deg(const PolyVec& a) {
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i]) return static_cast<int>(i);
    return -1;
}

void poly_trim(PolyVec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 scalar_inv(u64 c, u64 p) { return powmod(c, p - 2, p); }

// a mod b, b != 0
PolyVec poly_rem(PolyVec a, const PolyVec& b, u64 p) {
    int db = poly_deg(b);
    u64 lead_inv = scalar_inv(b[static_cast<std::size_t>(db)], p);
    for (int i = poly_deg(a); i >= db; i = poly_deg(a)) {
        u64 c = mulmod(a[static_cast<std::size_t>(i)], lead_inv, p);
        for (int j = 0; j <= db; ++j) {
            u64 sub = mulmod(c, b[static_cast<std::size_t>(j)], p);
            u32& tgt = a[static_cast<std::size_t>(i - db + j)];
            tgt = static_cast<u32>((tgt + p - sub) % p);
        }
    }
    poly_trim(a);
    return a;
}

PolyVec poly_mulmod(const PolyVec& a, const PolyVec& b, const PolyVec& f, u64 p) {
    if (a.empty() || b.empty()) return {};
    PolyVec c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (!b[j]) continue;
            c[i + j] = static_cast<u32>((c[i + j] + mulmod(a[i], b[j], p)) % p);
        }
    }
    return poly_rem(std::move(c), f, p);
}

PolyVec poly_powmod(PolyVec base, u64 e, const PolyVec& f, u64 p) {
    PolyVec result{1};
    base = poly_rem(std::move(base), f, p);
    while (e) {
        if (e & 1) result = poly_mulmod(result, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return result;
}

PolyVec poly_gcd(PolyVec a, PolyVec b, u64 p) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        PolyVec r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// gcd(x^{p^i} - x, f) == 1 for every i <= deg(f)/2
bool poly_is_irreducible(const PolyVec& f, u64 p) {
    int d = poly_deg(f);
    if (d < 1) return false;
    PolyVec u{0, 1}; // x
    for (int i = 1; i <= d / 2; ++i) {
        u = poly_powmod(std::move(u), p, f, p);
        PolyVec diff = u;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = static_cast<u32>((diff[1] + p - 1) % p);
        if (poly_deg(poly_gcd(diff, f, p)) != 0) return false;
    }
    return true;
}

// u with u * a == 1 mod f; a nonzero mod f
PolyVec poly_invmod(const PolyVec& a, const PolyVec& f, u64 p) {
    PolyVec r0 = f, r1 = poly_rem(a, f, p);
    PolyVec t0{}, t1{1};
    while (!r1.empty()) {
        // one long-division step: r0 = q*r1 + r
        int d1 = poly_deg(r1);
        u64 lead_inv = scalar_inv(r1[static_cast<std::size_t>(d1)], p);
        PolyVec q(static_cast<std::size_t>(std::max(poly_deg(r0) - d1 + 1, 1)), 0);
        PolyVec r = r0;
        for (int i = poly_deg(r); i >= d1; i = poly_deg(r)) {
            u64 c = mulmod(r[static_cast<std::size_t>(i)], lead_inv, p);
            q[static_cast<std::size_t>(i - d1)] = static_cast<u32>(c);
            for (int j = 0; j <= d1; ++j) {
                u64 sub = mulmod(c, r1[static_cast<std::size_t>(j)], p);
                u32& tgt = r[static_cast<std::size_t>(i - d1 + j)];
                tgt = static_cast<u32>((tgt + p - sub) % p);
            }
        }
        poly_trim(r);
        // t = t0 - q*t1
        PolyVec qt(q.size() + t1.size(), 0);
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (!q[i]) continue;
            for (std::size_t j = 0; j < t1.size(); ++j)
                qt[i + j] = static_cast<u32>((qt[i + j] + mulmod(q[i], t1[j], p)) % p);
        }
        PolyVec t(std::max(t0.size(), qt.size()), 0);
        for (std::size_t i = 0; i < t.size(); ++i) {
            u64 v0 = i < t0.size() ? t0[i] : 0;
            u64 v1 = i < qt.size() ? qt[i] : 0;
            t[i] = static_cast<u32>((v0 + p - v1 % p) % p);
        }
        poly_trim(t);
        r0 = std::move(r1);
        r1 = std::move(r);
        t0 = std::move(t1);
        t1 = std::move(t);
    }
    if (poly_deg(r0) != 0) throw internal_error("poly_invmod: element not invertible");
    u64 c = scalar_inv(r0[0], p);
    for (auto& x : t0) x = static_cast<u32>(mulmod(x, c, p));
    poly_trim(t0);
    return t0;
}

} // namespace

std::vector<u32> Field::to_coeffs(u64 h) const {
    std::vector<u32> c(m_, 0);
    for (unsigned i = 0; i < m_ && h; ++i) {
        c[i] = static_cast<u32>(h % p_);
        h /= p_;
    }
    return c;
}

u64 Field::from_coeffs(const std::vector<u32>& c) const {
    u64 h = 0;
    for (std::size_t i = c.size(); i-- > 0;) h = h * p_ + c[i] % p_;
    return h;
}

u64 Field::add_slow(u64 a, u64 b) const {
    u64 out = 0, place = 1;
    while (a || b) {
        u64 s = a % p_ + b % p_;
        if (s >= p_) s -= p_;
        out += s * place;
        a /= p_;
        b /= p_;
        place *= p_;
    }
    return out;
}

u64 Field::neg(u64 a) const {
    if (p_ == 2) return a;
    u64 out = 0, place = 1;
    while (a) {
        u64 d = a % p_;
        if (d) out += (p_ - d) * place;
        a /= p_;
        place *= p_;
    }
    return out;
}

u64 Field::mul_poly(u64 a, u64 b) const {
    if (a == 0 || b == 0) return 0;
    if (p_ == 2) {
        u64 r = 0;
        while (b) {
            if (b & 1) r ^= a;
            b >>= 1;
            a <<= 1;
            if (a & (u64{1} << m_)) a ^= modulus_mask_;
        }
        return r;
    }
    PolyVec pa = to_coeffs(a), pb = to_coeffs(b);
    return from_coeffs(poly_mulmod(pa, pb, modulus_, p_));
}

u64 Field::inv(u64 a) const {
    if (a == 0) throw domain_error("Field::inv: division by zero");
    if (!exp_.empty()) return exp_[group_order_ - log_[a]];
    return from_coeffs(poly_invmod(to_coeffs(a), modulus_, p_));
}

u64 Field::pow(u64 a, u64 e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    if (!exp_.empty()) {
        u64 idx = mulmod(log_[a], e % group_order_, group_order_);
        return exp_[idx];
    }
    u64 result = 1;
    while (e) {
        if (e & 1) result = mul(result, a);
        a = mul(a, a);
        e >>= 1;
    }
    return result;
}

u64 Field::frob_p(u64 a, u64 k) const {
    if (a == 0) return 0;
    if (!exp_.empty()) {
        u64 e = powmod(p_, k, group_order_);
        return exp_[mulmod(log_[a], e, group_order_)];
    }
    u64 out = a;
    for (u64 i = 0; i < k % (m_); ++i) out = pow(out, p_);
    return out;
}

Field::Field(u64 p, unsigned m, Backend backend, u64 table_limit) {
    init_checked(p, m, backend, table_limit);

    // deterministic ascending search for the lexicographically smallest
    // monic irreducible modulus
    PolyVec f(m_ + 1, 0);
    f[m_] = 1;
    bool found = false;
    for (u64 low = 0; low < order_; ++low) {
        u64 h = low;
        for (unsigned i = 0; i < m_; ++i) {
            f[i] = static_cast<u32>(h % p_);
            h /= p_;
        }
        if (poly_is_irreducible(f, p_)) {
            found = true;
            break;
        }
    }
    if (!found) throw internal_error("Field: no irreducible modulus found");
    modulus_ = f;
    if (p_ == 2) {
        modulus_mask_ = 0;
        for (unsigned i = 0; i <= m_; ++i)
            if (f[i]) modulus_mask_ |= u64{1} << i;
    }

    if (group_order_ == 1) {
        primitive_ = 1;
    } else {
        auto factors = factorize(group_order_);
        for (u64 h = 2; h < order_; ++h) {
            bool ok = true;
            for (auto [ell, e] : factors) {
                (void)e;
                if (from_coeffs(poly_powmod(to_coeffs(h), group_order_ / ell, modulus_, p_)) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                primitive_ = h;
                break;
            }
        }
        if (primitive_ == 0) throw internal_error("Field: no primitive element found");
    }

    bool want_tables = backend == Backend::LogTables || (backend == Backend::Auto && order_ <= table_limit);
    if (want_tables) build_tables();
}

void Field::init_checked(u64 p, unsigned m, Backend backend, u64 table_limit) {
    if (!is_prime(p)) throw parameter_error("Field: characteristic must be prime");
    if (p >= (u64{1} << 15)) throw parameter_error("Field: characteristic too large");
    if (m < 1) throw parameter_error("Field: extension degree must be positive");
    auto ord = checked_pow(p, m);
    if (!ord || *ord > (u64{1} << 62)) throw capacity_error("Field: order exceeds 2^62");
    p_ = p;
    m_ = m;
    order_ = *ord;
    group_order_ = order_ - 1;
    if (backend == Backend::LogTables && order_ > (u64{1} << 31))
        throw capacity_error("Field: order too large for log tables");
    (void)table_limit;
}

void Field::build_tables() {
    if (order_ > (u64{1} << 31)) throw capacity_error("Field: order too large for log tables");
    exp_.assign(order_, 0);
    log_.assign(order_, 0xFFFFFFFFu);

    if (p_ == 2) {
        std::vector<u64> gshift(m_); // g * x^i mod f
        gshift[0] = primitive_;
        for (unsigned i = 1; i < m_; ++i) {
            u64 v = gshift[i - 1] << 1;
            if (v & (u64{1} << m_)) v ^= modulus_mask_;
            gshift[i] = v;
        }
        u64 cur = 1;
        for (u64 k = 0; k < group_order_; ++k) {
            exp_[k] = static_cast<u32>(cur);
            log_[cur] = static_cast<u32>(k);
            u64 nxt = 0, t = cur;
            unsigned i = 0;
            while (t) {
                if (t & 1) nxt ^= gshift[i];
                t >>= 1;
                ++i;
            }
            cur = nxt;
        }
        if (cur != 1) throw internal_error("Field: primitive element does not close the cycle");
    } else {
        std::vector<PolyVec> gshift(m_);
        gshift[0] = to_coeffs(primitive_);
        gshift[0].resize(m_, 0);
        for (unsigned i = 1; i < m_; ++i) {
            PolyVec v(m_, 0);
            const PolyVec& prev = gshift[i - 1];
            u32 top = prev[m_ - 1];
            for (unsigned j = m_ - 1; j > 0; --j) v[j] = prev[j - 1];
            v[0] = 0;
            if (top) {
                for (unsigned j = 0; j < m_; ++j) {
                    u64 sub = mulmod(top, modulus_[j], p_);
                    v[j] = static_cast<u32>((v[j] + p_ - sub) % p_);
                }
            }
            gshift[i] = std::move(v);
        }
        PolyVec cur(m_, 0);
        cur[0] = 1;
        PolyVec nxt(m_, 0);
        for (u64 k = 0; k < group_order_; ++k) {
            u64 h = 0;
            for (unsigned i = m_; i-- > 0;) h = h * p_ + cur[i];
            exp_[k] = static_cast<u32>(h);
            log_[h] = static_cast<u32>(k);
            for (unsigned j = 0; j < m_; ++j) {
                u64 acc = 0;
                for (unsigned i = 0; i < m_; ++i) acc += u64{cur[i]} * gshift[i][j];
                nxt[j] = static_cast<u32>(acc % p_);
            }
            cur.swap(nxt);
        }
        u64 h = 0;
        for (unsigned i = m_; i-- > 0;) h = h * p_ + cur[i];
        if (h != 1) throw internal_error("Field: primitive element does not close the cycle");
    }
    exp_[group_order_] = 1;
}

Field Field::from_parts(u64 p, unsigned m, std::vector<u32> modulus, u64 primitive, Backend backend,
                        u64 table_limit, std::vector<u32> exp_table) {
    Field F;
    F.init_checked(p, m, Backend::Polynomial, table_limit);
    if (modulus.size() != m + 1 || modulus[m] != 1) throw internal_error("Field::from_parts: bad modulus shape");
    for (u32 c : modulus)
        if (c >= p) throw internal_error("Field::from_parts: modulus coefficient out of range");
    if (!poly_is_irreducible(modulus, p)) throw internal_error("Field::from_parts: modulus not irreducible");
    F.modulus_ = std::move(modulus);
    if (p == 2) {
        for (unsigned i = 0; i <= m; ++i)
            if (F.modulus_[i]) F.modulus_mask_ |= u64{1} << i;
    }
    if (primitive == 0 || primitive >= F.order_) throw internal_error("Field::from_parts: bad primitive element");
    if (F.group_order_ > 1) {
        for (auto [ell, e] : factorize(F.group_order_)) {
            (void)e;
            if (F.from_coeffs(poly_powmod(F.to_coeffs(primitive), F.group_order_ / ell, F.modulus_, p)) == 1)
                throw internal_error("Field::from_parts: element is not primitive");
        }
    }
    F.primitive_ = primitive;

    bool want_tables = backend == Backend::LogTables || (backend == Backend::Auto && F.order_ <= table_limit);
    if (!exp_table.empty()) {
        if (!want_tables) {
            exp_table.clear();
        } else {
            if (exp_table.size() != F.order_) throw internal_error("Field::from_parts: exp table size mismatch");
            F.exp_ = std::move(exp_table);
            F.log_.assign(F.order_, 0xFFFFFFFFu);
            if (F.exp_[0] != 1 || F.exp_[F.group_order_] != 1 || F.exp_[1] != primitive)
                throw internal_error("Field::from_parts: exp table corrupt");
            for (u64 k = 0; k < F.group_order_; ++k) {
                u32 h = F.exp_[k];
                if (h == 0 || h >= F.order_ || F.log_[h] != 0xFFFFFFFFu)
                    throw internal_error("Field::from_parts: exp table corrupt");
                F.log_[h] = static_cast<u32>(k);
            }
            // spot-check the cycle against independent polynomial arithmetic
            std::mt19937_64 rng(0x47504358u);
            for (int i = 0; i < 64; ++i) {
                u64 k = rng() % F.group_order_;
                u64 expect = F.mul_poly(F.exp_[k], primitive);
                if (F.exp_[(k + 1) % F.group_order_] != expect)
                    throw internal_error("Field::from_parts: exp table corrupt");
            }
        }
    }
    if (want_tables && F.exp_.empty()) F.build_tables();
    return F;
}

} // namespace goppa
