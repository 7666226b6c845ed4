#ifndef GOPPA_CODES_HPP
#define GOPPA_CODES_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "goppa/tower.hpp"

namespace goppa {

// Codewords and parity entries are F_q values written as digits 0..q-1: the
// index of the element in the handle-sorted enumeration of the F_q level.
using FqWord = std::vector<std::uint8_t>;

// L = the F_{q^n} level in handle order; the column ordering of every parity
// check matrix.
struct CodeLocus {
    std::vector<u64> points;
};

struct GoppaCode {
    u64 alpha = 0;
    u64 q = 0;
    u64 length = 0;                    // q^n
    CodeLocus locus;
    std::vector<FqWord> parity_rows;   // n*r rows over F_q
    unsigned rank = 0;
    unsigned dimension = 0;            // length - rank
    std::vector<FqWord> kernel_basis;  // dimension words
};

struct ExtendedGoppaCode {
    u64 alpha = 0;
    u64 q = 0;
    u64 length = 0;                    // q^n + 1
    std::vector<FqWord> parity_rows;   // n*r + 1 rows (overall parity row last)
    unsigned rank = 0;
    unsigned dimension = 0;
    std::vector<FqWord> kernel_basis;
};

// H(alpha) = (1/(alpha - zeta_i))_i expanded over a fixed F_q-basis of
// F_{q^nr} (powers of the tower primitive element); the code is the right
// kernel over F_q.  Requires alpha of degree r over F_{q^n}.
GoppaCode parity_check(const Tower& T, u64 alpha);

// sum c_i/(alpha - zeta_i) = 0 evaluated at alpha and at every conjugate
// alpha^{q^{n j}}, j < r (the mod-g congruence checked at all roots of g)
bool syndrome_check(const Tower& T, const FqWord& word, u64 alpha);

// parity-extended code: first q^n coordinates in C(alpha), total sum zero
ExtendedGoppaCode extend(const Tower& T, const GoppaCode& code);

enum class WitnessKind { Frobenius, Affine };

struct WitnessSpec {
    WitnessKind kind = WitnessKind::Frobenius;
    u64 i = 1;        // Frobenius: alpha -> alpha^{q^i}
    u64 a = 1, b = 0; // Affine: alpha -> a*alpha + b
};

// Column permutation (plus parity-check scaling) certifying that the chosen
// map sends C(alpha) to an equivalent code: a word c lies in C(image_alpha)
// iff j -> c[permutation[j]] lies in C(alpha).  Verified exhaustively on the
// kernel basis of C(image_alpha) before being returned.
struct EquivalenceWitness {
    u64 alpha = 0;
    u64 image_alpha = 0;
    std::vector<u32> permutation;
    u64 scale = 1; // H(image_alpha) permuted equals scale * H(alpha)
    bool verified = false;
};

EquivalenceWitness equivalence_witness(const Tower& T, u64 alpha, const WitnessSpec& spec);

// plain-text export: header line with p, t, n, r and the alpha handle, then
// one row of F_q digits per line (space-separated when q > 10)
void write_parity_text(const Tower& T, const GoppaCode& code, std::ostream& os);
void write_parity_text(const Tower& T, const ExtendedGoppaCode& code, std::ostream& os);

} // namespace goppa

#endif
