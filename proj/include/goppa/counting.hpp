#ifndef GOPPA_COUNTING_HPP
#define GOPPA_COUNTING_HPP

#include <string>
#include <vector>

#include "goppa/actions.hpp"
#include "goppa/tower.hpp"

namespace goppa {

// smallest d >= 1 with Q^d = 1 (mod k); requires gcd(Q, k) = 1
u64 multiplicative_order(u64 Q, u64 k);

// Factorization shape of the k-th cyclotomic polynomial over F_Q: phi(k)/d
// distinct monic irreducible factors, all of degree d = ord_k(Q).  The
// quadratic count is phi(k)/2 when d = 2 and 0 otherwise.
struct CyclotomicProfile {
    u64 k = 0;
    u64 field_size = 0;
    u64 d = 0;
    u64 factor_count = 0;
    u64 quadratic_count = 0;
};

// requires p (the characteristic of F_Q) not to divide k
CyclotomicProfile cyclotomic_profile(u64 Q, u64 k);

// Count of matrices of order k in GL(2,Q) whose minimal polynomial is an
// irreducible quadratic: phi(k) * Q * (Q-1) / 2 when gcd(Q,k) = 1, k | Q+1 and
// k does not divide Q-1.  Outside those hypotheses the result carries
// hypotheses_met = false and the reason; never a silent zero.
struct MatrixOrderCount {
    u64 k = 0;
    bool hypotheses_met = false;
    std::string reason;
    u64 conjugacy_classes = 0; // rho = phi(k)/2
    u64 class_size = 0;        // mu = Q(Q-1)
    u64 total = 0;
};

MatrixOrderCount matrix_order_count(u64 Q, u64 k);

// Brute-force oracle: scans all Q^4 matrix quadruples of GL(2,Q) and counts
// those of order exactly k whose characteristic polynomial is irreducible
// (equivalently, non-scalar with irreducible quadratic minimal polynomial).
u64 enumerate_matrices_of_order(const Field& F, u64 k, u64 budget_q = 32);

// Permitted irreducible factor degrees of F_s(x) = c x^{Q^s+1} + d x^{Q^s}
// - a x - b over F_Q for a non-identity class of projective order D: degree
// D*s, degrees D*k for k < s with s = k*m and gcd(m, D) = 1, and degrees <= 2.
struct FsDegreeProfile {
    u64 projective_order = 0;
    u64 s = 0;
    std::vector<u64> twisted_degrees; // the D*s and D*k clauses, ascending
    bool linear_or_quadratic = true;  // degrees <= 2 always permitted
};

FsDegreeProfile fs_factor_degrees(const Field& F, const Matrix2& m, u64 entry_field_size, u64 s);

// Number of alpha in S with c alpha^{Q^s+1} + d alpha^{Q^s} - a alpha - b = 0,
// by direct evaluation over all of S; Q is the size of coeff_level.
u64 fs_roots_in_S(const Tower& T, const Matrix2& m, u64 s, Level coeff_level, unsigned budget_bits = 26);

} // namespace goppa

#endif
