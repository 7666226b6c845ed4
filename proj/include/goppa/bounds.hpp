#ifndef GOPPA_BOUNDS_HPP
#define GOPPA_BOUNDS_HPP

#include <string>
#include <vector>

#include "goppa/bigint.hpp"
#include "goppa/intmath.hpp"

namespace goppa {

// Cyclic subgroup <sigma^e> of the Frobenius group G = <sigma>, sigma: x -> x^q.
// |G| = n*r (n != r) or n^2 (n = r); fresh_elements counts the group elements
// generating exactly this subgroup (the table column "No. of elements not in
// previous subgroup").
struct SubgroupSpec {
    unsigned exponent = 0; // generator sigma^exponent
    u64 subgroup_order = 0;
    u64 fresh_elements = 0;
    std::string name;
};

// listed as in the tables: trivial subgroup first, <sigma> last
std::vector<SubgroupSpec> subgroup_lattice(unsigned n, unsigned r);

// Divisibility flags steering the case analyses.  For n = r the flags are on
// n; the member names keep r for the generic n != r reading.
struct CaseFlags {
    bool r_eq_p = false;
    bool r_div_qm1 = false;  // r | q-1
    bool r_div_qnm1 = false; // r | q^n-1
    bool r_div_qp1 = false;  // r | q+1
    bool r_div_qnp1 = false; // r | q^n+1
};

CaseFlags case_flags(u64 q, unsigned n, unsigned r);

// Which closed-form branch of the final theorems applies; TableDerived when no
// stated branch condition matches (possible for n != r, e.g. r | q^n-1 with
// r dividing neither q-1 nor q+1) and the per-subgroup table is authoritative.
enum class Branch { B1 = 1, B2 = 2, B3 = 3, B4 = 4, TableDerived = 0 };

struct CaseLabel {
    CaseFlags flags;
    Branch branch = Branch::TableDerived;
    std::string description;
};

CaseLabel classify_case(u64 q, unsigned n, unsigned r);

// |S(n,r)| = q^{nr} - q^n (= q^{n^2} - q^n when n = r)
BigUint s_size(u64 q, unsigned n, unsigned r);

BigUint affine_class_count(u64 q, unsigned n, unsigned r); // |A| = |S| / q^n(q^n-1)
BigUint pl_class_count(u64 q, unsigned n, unsigned r);     // |O| = |S| / (q^{3n}-q^n)

// fixed-set counts per subgroup (the theorems on affine sets and the
// projective-linear case analyses)
BigUint affine_fixed_count(u64 q, unsigned n, unsigned r, const SubgroupSpec& subgroup);
BigUint pl_fixed_count(u64 q, unsigned n, unsigned r, const SubgroupSpec& subgroup);

// (1/|G|) sum fresh_i * fixed_i, with |G| = sum fresh_i; exact divisibility is
// asserted and an internal_error raised otherwise (never rounded).
BigUint burnside(const std::vector<SubgroupSpec>& lattice, const std::vector<BigUint>& fixed_counts);

struct FixedCountRow {
    SubgroupSpec subgroup;
    BigUint fixed_affine;
    BigUint fixed_pl;
};

struct BoundReport {
    u64 p = 0;
    unsigned t = 0;
    u64 q = 0;
    unsigned n = 0, r = 0;
    u64 group_order = 0;
    BigUint s;
    BigUint affine_classes; // |A|
    BigUint pl_classes;     // |O|
    std::vector<FixedCountRow> table;
    BigUint extended_bound;     // Burnside on O: upper bound for extended codes
    BigUint affine_orbit_bound; // Burnside on A: upper bound for (unextended) codes
    CaseLabel label;
    bool closed_form_checked = false; // extended bound re-derived from the branch formula
    bool n_eq_2_warning = false;      // outside the range the arguments were written for
};

BoundReport bound_report(u64 q, unsigned n, unsigned r);

BigUint extended_bound(u64 q, unsigned n, unsigned r);
BigUint affine_orbit_bound(u64 q, unsigned n, unsigned r);

} // namespace goppa

#endif
