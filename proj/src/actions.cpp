#include "goppa/actions.hpp"

#include <algorithm>
#include <numeric>

#include "goppa/errors.hpp"

namespace goppa {

Matrix2 mat_mul(const Field& F, const Matrix2& x, const Matrix2& y) {
    return Matrix2{
        F.add(F.mul(x.a, y.a), F.mul(x.b, y.c)),
        F.add(F.mul(x.a, y.b), F.mul(x.b, y.d)),
        F.add(F.mul(x.c, y.a), F.mul(x.d, y.c)),
        F.add(F.mul(x.c, y.b), F.mul(x.d, y.d)),
    };
}

Matrix2 mat_pow(const Field& F, Matrix2 x, u64 e) {
    Matrix2 result{};
    while (e) {
        if (e & 1) result = mat_mul(F, result, x);
        x = mat_mul(F, x, x);
        e >>= 1;
    }
    return result;
}

u64 mat_det(const Field& F, const Matrix2& x) { return F.sub(F.mul(x.a, x.d), F.mul(x.b, x.c)); }

bool mat_is_identity(const Matrix2& x) { return x.a == 1 && x.b == 0 && x.c == 0 && x.d == 1; }

bool mat_is_scalar(const Field& F, const Matrix2& x) {
    (void)F;
    return x.b == 0 && x.c == 0 && x.a == x.d && x.a != 0;
}

ProjectiveMap projectivize(const Field& F, const Matrix2& m) {
    if (mat_det(F, m) == 0) throw parameter_error("projectivize: matrix is singular");
    u64 lead = m.a ? m.a : (m.b ? m.b : (m.c ? m.c : m.d));
    u64 s = F.inv(lead);
    return ProjectiveMap{Matrix2{F.mul(m.a, s), F.mul(m.b, s), F.mul(m.c, s), F.mul(m.d, s)}};
}

u64 projective_order(const Field& F, const ProjectiveMap& m, u64 entry_field_size) {
    u64 Q = entry_field_size;
    // exponent of GL(2,Q): semisimple elements divide Q^2-1, the rest p(Q-1)
    u64 exponent = std::lcm(Q * Q - 1, F.characteristic() * (Q - 1));
    u64 order = exponent;
    for (auto [ell, e] : factorize(exponent)) {
        (void)e;
        while (order % ell == 0 && mat_is_identity(mat_pow(F, m.rep, order / ell))) order /= ell;
    }
    if (!mat_is_identity(mat_pow(F, m.rep, order)))
        throw internal_error("projective_order: exponent bound violated");
    // projective order: smallest divisor d of `order` with m^d scalar
    std::vector<u64> divisors{1};
    for (auto [ell, e] : factorize(order)) {
        std::size_t existing = divisors.size();
        u64 pe = 1;
        for (unsigned i = 0; i < e; ++i) {
            pe *= ell;
            for (std::size_t j = 0; j < existing; ++j) divisors.push_back(divisors[j] * pe);
        }
    }
    std::sort(divisors.begin(), divisors.end());
    for (u64 d : divisors)
        if (mat_is_scalar(F, mat_pow(F, m.rep, d))) return d;
    throw internal_error("projective_order: no divisor reached a scalar");
}

void validate_gl2(const Tower& T, const Matrix2& m) {
    for (u64 v : {m.a, m.b, m.c, m.d})
        if (!T.in_level(v, Level::Fqn))
            throw parameter_error("matrix entries must lie in the F_q^n level");
    if (mat_det(T.field(), m) == 0) throw parameter_error("matrix must be invertible");
}

u64 affine_apply(const Tower& T, u64 a, u64 b, u64 alpha) {
    if (a == 0) throw parameter_error("affine_apply: a must be nonzero");
    if (alpha >= T.order()) throw parameter_error("affine_apply: element handle out of range");
    if (!T.in_level(a, Level::Fqn) || !T.in_level(b, Level::Fqn))
        throw parameter_error("affine_apply: coefficients must lie in the F_q^n level");
    const Field& F = T.field();
    return F.add(F.mul(a, alpha), b);
}

u64 pgl_apply(const Tower& T, const ProjectiveMap& m, u64 alpha) {
    if (alpha >= T.order()) throw parameter_error("pgl_apply: element handle out of range");
    const Field& F = T.field();
    u64 den = F.add(F.mul(m.rep.c, alpha), m.rep.d);
    if (den == 0) throw domain_error("pgl_apply: map has a pole at alpha (alpha not in S)");
    return F.mul(F.add(F.mul(m.rep.a, alpha), m.rep.b), F.inv(den));
}

namespace {

void require_in_S(const Tower& T, u64 alpha) {
    if (!T.in_S(alpha)) throw domain_error("alpha must have degree r over F_q^n");
}

} // namespace

std::vector<u64> affine_orbit(const Tower& T, u64 alpha) {
    require_in_S(T, alpha);
    const Field& F = T.field();
    const auto& sub = T.subfield(Level::Fqn);
    std::vector<u64> orbit;
    orbit.reserve(sub.size() * (sub.size() - 1));
    for (u64 a : sub) {
        if (a == 0) continue;
        u64 base = F.mul(a, alpha);
        for (u64 b : sub) orbit.push_back(F.add(base, b));
    }
    std::sort(orbit.begin(), orbit.end());
    if (std::adjacent_find(orbit.begin(), orbit.end()) != orbit.end())
        throw internal_error("affine_orbit: orbit elements repeat");
    return orbit;
}

u64 affine_set_id(const Tower& T, u64 alpha) {
    require_in_S(T, alpha);
    const Field& F = T.field();
    const auto& sub = T.subfield(Level::Fqn);
    u64 best = UINT64_MAX;
    for (u64 a : sub) {
        if (a == 0) continue;
        u64 base = F.mul(a, alpha);
        for (u64 b : sub) best = std::min(best, F.add(base, b));
    }
    return best;
}

namespace {

// visits every element of O(alpha) exactly once via the PGL(2,q^n) coset
// split: affine maps, then maps (a*x + b)/(x + d) with b != a*d
template <typename Fn>
void for_each_pl_image(const Tower& T, u64 alpha, Fn&& fn) {
    const Field& F = T.field();
    const auto& sub = T.subfield(Level::Fqn);
    for (u64 a : sub) {
        if (a == 0) continue;
        u64 base = F.mul(a, alpha);
        for (u64 b : sub) fn(F.add(base, b));
    }
    for (u64 a : sub) {
        u64 num_a = F.mul(a, alpha);
        for (u64 d : sub) {
            u64 den = F.inv(F.add(alpha, d)); // alpha not in F_q^n, never zero
            u64 ad = F.mul(a, d);
            for (u64 b : sub) {
                if (b == ad) continue;
                fn(F.mul(F.add(num_a, b), den));
            }
        }
    }
}

} // namespace

std::vector<u64> pl_orbit(const Tower& T, u64 alpha) {
    require_in_S(T, alpha);
    std::vector<u64> orbit;
    for_each_pl_image(T, alpha, [&](u64 v) { orbit.push_back(v); });
    std::sort(orbit.begin(), orbit.end());
    if (std::adjacent_find(orbit.begin(), orbit.end()) != orbit.end())
        throw internal_error("pl_orbit: orbit elements repeat");
    return orbit;
}

u64 pl_set_id(const Tower& T, u64 alpha) {
    require_in_S(T, alpha);
    u64 best = UINT64_MAX;
    for_each_pl_image(T, alpha, [&](u64 v) { best = std::min(best, v); });
    return best;
}

std::vector<u64> decompose_pl_set(const Tower& T, u64 alpha) {
    require_in_S(T, alpha);
    const Field& F = T.field();
    std::vector<u64> ids;
    ids.push_back(affine_set_id(T, alpha));
    for (u64 xi : T.subfield(Level::Fqn)) ids.push_back(affine_set_id(T, F.inv(F.add(alpha, xi))));
    std::vector<u64> sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw internal_error("decompose_pl_set: affine set ids repeat");
    return ids;
}

u64 frobenius_on_affine_set(const Tower& T, u64 id, u64 i) { return affine_set_id(T, T.frobenius(id, i)); }

u64 frobenius_on_pl_set(const Tower& T, u64 id, u64 i) { return pl_set_id(T, T.frobenius(id, i)); }

} // namespace goppa
