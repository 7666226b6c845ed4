#include "goppa/counting.hpp"

#include <algorithm>
#include <numeric>

#include "goppa/errors.hpp"

namespace goppa {

u64 multiplicative_order(u64 Q, u64 k) {
    if (k == 0 || std::gcd(Q % k, k) != 1)
        throw parameter_error("multiplicative_order: gcd(Q, k) must be 1");
    return multiplicative_order_mod(Q, k);
}

CyclotomicProfile cyclotomic_profile(u64 Q, u64 k) {
    auto pp = prime_power_split(Q);
    if (!pp) throw parameter_error("cyclotomic_profile: Q must be a prime power");
    if (k == 0) throw parameter_error("cyclotomic_profile: k must be positive");
    if (k % pp->first == 0)
        throw parameter_error("cyclotomic_profile: characteristic divides k (theorem hypothesis violated)");
    CyclotomicProfile out;
    out.k = k;
    out.field_size = Q;
    out.d = multiplicative_order(Q, k);
    u64 phi = euler_phi(k);
    if (phi % out.d != 0) throw internal_error("cyclotomic_profile: d does not divide phi(k)");
    out.factor_count = phi / out.d;
    out.quadratic_count = out.d == 2 ? phi / 2 : 0;
    return out;
}

MatrixOrderCount matrix_order_count(u64 Q, u64 k) {
    if (k == 0) throw parameter_error("matrix_order_count: k must be positive");
    if (Q < 2 || !prime_power_split(Q)) throw parameter_error("matrix_order_count: Q must be a prime power");
    if (Q > (u64{1} << 31)) throw capacity_error("matrix_order_count: Q too large for exact 64-bit arithmetic");
    MatrixOrderCount out;
    out.k = k;
    out.class_size = Q * (Q - 1);
    if (std::gcd(Q, k) != 1) {
        out.reason = "gcd(Q, k) != 1";
        return out;
    }
    if ((Q - 1) % k == 0) {
        out.reason = "k divides Q-1";
        return out;
    }
    if ((Q + 1) % k != 0) {
        out.reason = "k does not divide Q+1";
        return out;
    }
    out.hypotheses_met = true;
    u64 phi = euler_phi(k);
    out.conjugacy_classes = phi / 2;
    if (out.conjugacy_classes != 0 && out.class_size > UINT64_MAX / out.conjugacy_classes)
        throw capacity_error("matrix_order_count: total overflows 64 bits");
    out.total = out.conjugacy_classes * out.class_size;
    return out;
}

u64 enumerate_matrices_of_order(const Field& F, u64 k, u64 budget_q) {
    u64 Q = F.order();
    if (k == 0) throw parameter_error("enumerate_matrices_of_order: k must be positive");
    if (Q > budget_q) throw capacity_error("enumerate_matrices_of_order: Q^4 quadruples exceed the budget");

    // characteristic polynomials x^2 - tr x + det with a root in F_Q
    std::vector<char> splits(Q * Q, 0);
    for (u64 u = 0; u < Q; ++u)
        for (u64 v = 0; v < Q; ++v) splits[F.add(u, v) * Q + F.mul(u, v)] = 1;

    std::vector<std::pair<u64, unsigned>> k_factors = factorize(k);
    u64 count = 0;
    Matrix2 m;
    for (u64 a = 0; a < Q; ++a)
        for (u64 b = 0; b < Q; ++b)
            for (u64 c = 0; c < Q; ++c)
                for (u64 d = 0; d < Q; ++d) {
                    m = Matrix2{a, b, c, d};
                    if (mat_det(F, m) == 0) continue;
                    if (b == 0 && c == 0 && a == d) continue; // scalar: minimal polynomial linear
                    if (splits[F.add(a, d) * Q + mat_det(F, m)]) continue;
                    if (!mat_is_identity(mat_pow(F, m, k))) continue;
                    bool exact = true;
                    for (auto [ell, e] : k_factors) {
                        (void)e;
                        if (mat_is_identity(mat_pow(F, m, k / ell))) {
                            exact = false;
                            break;
                        }
                    }
                    if (exact) ++count;
                }
    return count;
}

FsDegreeProfile fs_factor_degrees(const Field& F, const Matrix2& m, u64 entry_field_size, u64 s) {
    if (s < 1) throw parameter_error("fs_factor_degrees: s must be positive");
    ProjectiveMap pm = projectivize(F, m);
    if (pm.is_identity()) throw parameter_error("fs_factor_degrees: matrix is a multiple of the identity");
    FsDegreeProfile out;
    out.projective_order = projective_order(F, pm, entry_field_size);
    out.s = s;
    out.twisted_degrees.push_back(out.projective_order * s);
    for (u64 k = 1; k < s; ++k) {
        if (s % k) continue;
        u64 mm = s / k;
        if (std::gcd(mm, out.projective_order) == 1) out.twisted_degrees.push_back(out.projective_order * k);
    }
    std::sort(out.twisted_degrees.begin(), out.twisted_degrees.end());
    out.twisted_degrees.erase(std::unique(out.twisted_degrees.begin(), out.twisted_degrees.end()),
                              out.twisted_degrees.end());
    return out;
}

u64 fs_roots_in_S(const Tower& T, const Matrix2& m, u64 s, Level coeff_level, unsigned budget_bits) {
    if (s < 1) throw parameter_error("fs_roots_in_S: s must be positive");
    if (coeff_level != Level::Fq && coeff_level != Level::Fqn)
        throw parameter_error("fs_roots_in_S: coefficients live in the F_q or F_q^n level");
    for (u64 v : {m.a, m.b, m.c, m.d})
        if (!T.in_level(v, coeff_level)) throw parameter_error("fs_roots_in_S: matrix entry outside coeff_level");
    if (mat_det(T.field(), m) == 0) throw parameter_error("fs_roots_in_S: matrix must be invertible");
    if (budget_bits >= 63 || T.order() > (u64{1} << budget_bits))
        throw capacity_error("fs_roots_in_S: field too large to scan");

    const Field& F = T.field();
    u64 frob_steps = static_cast<u64>(T.level_degree(coeff_level)) * s;
    u64 count = 0;
    for (u64 alpha = 0; alpha < T.order(); ++alpha) {
        if (!T.in_S(alpha)) continue;
        u64 twisted = T.frobenius(alpha, frob_steps); // alpha^{Q^s}
        u64 lhs = F.add(F.mul(m.c, F.mul(twisted, alpha)), F.mul(m.d, twisted));
        u64 rhs = F.add(F.mul(m.a, alpha), m.b);
        if (lhs == rhs) ++count;
    }
    return count;
}

} // namespace goppa
