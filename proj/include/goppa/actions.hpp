#ifndef GOPPA_ACTIONS_HPP
#define GOPPA_ACTIONS_HPP

#include <vector>

#include "goppa/tower.hpp"

namespace goppa {

// 2x2 matrix with entries given as field handles.  Arithmetic is parameterized
// by the field the entries live in; for tower work the entries are constrained
// to the F_{q^n} level.
struct Matrix2 {
    u64 a = 1, b = 0, c = 0, d = 1;
    bool operator==(const Matrix2&) const = default;
};

Matrix2 mat_mul(const Field& F, const Matrix2& x, const Matrix2& y);
Matrix2 mat_pow(const Field& F, Matrix2 x, u64 e);
u64 mat_det(const Field& F, const Matrix2& x);
bool mat_is_identity(const Matrix2& x);
bool mat_is_scalar(const Field& F, const Matrix2& x);

// Image of an invertible matrix in PGL(2): the canonical representative has
// its first nonzero entry (in the order a, b, c, d) scaled to 1, so equality
// of representatives is equality of projective classes.
struct ProjectiveMap {
    Matrix2 rep;
    bool operator==(const ProjectiveMap&) const = default;
    bool is_identity() const { return mat_is_identity(rep); }
};

// requires det != 0
ProjectiveMap projectivize(const Field& F, const Matrix2& m);

// Order of the class in PGL(2) over the entry field of size entry_field_size
// (the smallest D >= 1 with m^D scalar), computed by descending through the
// divisors of a known group exponent rather than naive iteration.
u64 projective_order(const Field& F, const ProjectiveMap& m, u64 entry_field_size);

// checks entries lie in the F_{q^n} level and det != 0
void validate_gl2(const Tower& T, const Matrix2& m);

// alpha -> a*alpha + b with a != 0 and a, b in the F_{q^n} level
u64 affine_apply(const Tower& T, u64 a, u64 b, u64 alpha);

// alpha -> (a*alpha + b) / (c*alpha + d)
u64 pgl_apply(const Tower& T, const ProjectiveMap& m, u64 alpha);

// Orbits of alpha in S under the affine group F and under PGL(2,q^n); sorted
// ascending by handle.  Desk-scale: the affine orbit has q^n(q^n-1) elements,
// the projective linear orbit q^{3n}-q^n.
std::vector<u64> affine_orbit(const Tower& T, u64 alpha);
std::vector<u64> pl_orbit(const Tower& T, u64 alpha);

// canonical orbit identifiers: the minimal member handle
u64 affine_set_id(const Tower& T, u64 alpha);
u64 pl_set_id(const Tower& T, u64 alpha);

// The q^n+1 affine sets partitioning O(alpha): A(alpha) followed by
// A(1/(alpha+xi)) for xi running over F_{q^n} ascending by handle.
std::vector<u64> decompose_pl_set(const Tower& T, u64 alpha);

// induced Frobenius action on orbit identifiers
u64 frobenius_on_affine_set(const Tower& T, u64 id, u64 i);
u64 frobenius_on_pl_set(const Tower& T, u64 id, u64 i);

} // namespace goppa

#endif
