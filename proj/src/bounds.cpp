#include "goppa/bounds.hpp"

#include "goppa/errors.hpp"

namespace goppa {

namespace {

void validate(u64 q, unsigned n, unsigned r) {
    auto pp = prime_power_split(q);
    if (!pp) throw parameter_error("bounds: q must be a prime power");
    if (!is_prime(n)) throw parameter_error("bounds: n must be prime");
    if (!is_prime(r)) throw parameter_error("bounds: r must be prime");
    if (r < 3) throw parameter_error("bounds: r must exceed 2");
}

u64 characteristic(u64 q) { return prime_power_split(q)->first; }

// sum_{j<terms} q^{step*j}  (exact geometric form of the table quotients)
BigUint geom_sum(u64 q, unsigned step, u64 terms) {
    BigUint acc{0};
    BigUint term{1};
    BigUint factor = BigUint::pow(q, step);
    for (u64 j = 0; j < terms; ++j) {
        acc += term;
        term *= factor;
    }
    return acc;
}

} // namespace

std::vector<SubgroupSpec> subgroup_lattice(unsigned n, unsigned r) {
    std::vector<SubgroupSpec> out;
    if (n == r) {
        u64 g = u64{n} * n;
        out.push_back({n * n, 1, 1, "<sigma^" + std::to_string(n * n) + ">"});
        out.push_back({n, n, n - 1, "<sigma^" + std::to_string(n) + ">"});
        out.push_back({1, g, g - n, "<sigma>"});
    } else {
        u64 g = u64{n} * r;
        out.push_back({n * r, 1, 1, "<sigma^" + std::to_string(n * r) + ">"});
        out.push_back({n, r, u64{r} - 1, "<sigma^" + std::to_string(n) + ">"});
        out.push_back({r, n, u64{n} - 1, "<sigma^" + std::to_string(r) + ">"});
        out.push_back({1, g, u64{n - 1} * (r - 1), "<sigma>"});
    }
    return out;
}

CaseFlags case_flags(u64 q, unsigned n, unsigned r) {
    validate(q, n, r);
    unsigned s = r; // the prime steering the cases; n plays that role when n = r
    CaseFlags f;
    f.r_eq_p = characteristic(q) == s;
    u64 qn = powmod(q, n, s);
    f.r_div_qm1 = q % s == 1;
    f.r_div_qp1 = (q + 1) % s == 0;
    f.r_div_qnm1 = qn == 1;
    f.r_div_qnp1 = (qn + 1) % s == 0;
    return f;
}

CaseLabel classify_case(u64 q, unsigned n, unsigned r) {
    CaseLabel label;
    label.flags = case_flags(q, n, r);
    const CaseFlags& f = label.flags;
    if (n == r) {
        if (f.r_eq_p) {
            label.branch = Branch::B1;
            label.description = "n = p";
        } else if (f.r_div_qnm1) {
            label.branch = Branch::B2;
            label.description = "n != p, n | q^n-1";
        } else if (f.r_div_qnp1) {
            label.branch = Branch::B3;
            label.description = "n != p, n does not divide q^n-1, n | q^n+1";
        } else {
            label.branch = Branch::B4;
            label.description = "n != p, n divides neither q^n-1 nor q^n+1";
        }
        return label;
    }
    if (f.r_eq_p) {
        label.branch = Branch::B1;
        label.description = "r = p";
    } else if (f.r_div_qm1 || (f.r_div_qnm1 && !f.r_div_qm1 && f.r_div_qp1) ||
               (!f.r_div_qnm1 && f.r_div_qnp1 && f.r_div_qp1)) {
        label.branch = Branch::B2;
        label.description = "r != p with r | q-1, or r | q^n-1 and r | q+1, or r | q^n+1 and r | q+1";
    } else if (!f.r_div_qnm1 && f.r_div_qnp1 && !f.r_div_qp1) {
        label.branch = Branch::B3;
        label.description = "r != p, r | q^n+1 only";
    } else if (!f.r_div_qnm1 && !f.r_div_qnp1) {
        label.branch = Branch::B4;
        label.description = "r != p, r divides neither q^n-1 nor q^n+1";
    } else {
        label.branch = Branch::TableDerived;
        label.description = "r | q^n-1 with r dividing neither q-1 nor q+1; no stated branch applies";
    }
    return label;
}

BigUint s_size(u64 q, unsigned n, unsigned r) {
    validate(q, n, r);
    return BigUint::pow(q, u64{n} * r) - BigUint::pow(q, n);
}

BigUint affine_class_count(u64 q, unsigned n, unsigned r) {
    validate(q, n, r);
    // (q^{nr} - q^n) / (q^n (q^n - 1)) = 1 + q^n + ... + q^{n(r-2)}
    return geom_sum(q, n, u64{r} - 1);
}

BigUint pl_class_count(u64 q, unsigned n, unsigned r) {
    validate(q, n, r);
    // (q^{nr} - q^n) / (q^{3n} - q^n) = 1 + q^{2n} + ... + q^{2n((r-1)/2 - 1)}
    return geom_sum(q, 2 * n, (u64{r} - 1) / 2);
}

BigUint affine_fixed_count(u64 q, unsigned n, unsigned r, const SubgroupSpec& subgroup) {
    validate(q, n, r);
    CaseFlags f = case_flags(q, n, r);
    unsigned e = subgroup.exponent;
    if (e == n * r) return affine_class_count(q, n, r); // identity fixes everything
    if (n == r) {
        // <sigma^n> and <sigma> fix the same number of affine sets
        if (e != n && e != 1) throw parameter_error("affine_fixed_count: exponent outside the lattice");
        if (f.r_eq_p) return 1;
        return f.r_div_qnm1 ? BigUint{u64{n} - 1} : BigUint{0};
    }
    if (e == n) { // subgroup of order r
        if (f.r_eq_p) return 1;
        return f.r_div_qnm1 ? BigUint{u64{r} - 1} : BigUint{0};
    }
    if (e == r) { // subgroup of order n: (q^{r-1} - 1)/(q - 1)
        return geom_sum(q, 1, u64{r} - 1);
    }
    if (e == 1) {
        if (f.r_eq_p) return 1;
        return f.r_div_qm1 ? BigUint{u64{r} - 1} : BigUint{0};
    }
    throw parameter_error("affine_fixed_count: exponent outside the lattice");
}

BigUint pl_fixed_count(u64 q, unsigned n, unsigned r, const SubgroupSpec& subgroup) {
    validate(q, n, r);
    CaseFlags f = case_flags(q, n, r);
    unsigned e = subgroup.exponent;
    if (e == n * r) return pl_class_count(q, n, r);
    if (n == r) {
        if (e != n && e != 1) throw parameter_error("pl_fixed_count: exponent outside the lattice");
        if (f.r_eq_p) return 1;
        if (f.r_div_qnm1) return (u64{n} - 1) / 2;
        if (f.r_div_qnp1) return (u64{n} - 1) / 2;
        return 0;
    }
    if (e == n) { // subgroup of order r
        if (f.r_eq_p) return 1;
        if (f.r_div_qnm1) return (u64{r} - 1) / 2; // covers r | q-1 as well
        if (f.r_div_qnp1) return (u64{r} - 1) / 2;
        return 0;
    }
    if (e == r) { // subgroup of order n: (q^{r-1} - 1)/(q^2 - 1), unconditionally
        return geom_sum(q, 2, (u64{r} - 1) / 2);
    }
    if (e == 1) {
        if (f.r_eq_p) return 1;
        if (f.r_div_qm1) return (u64{r} - 1) / 2;
        if (f.r_div_qnm1 && !f.r_div_qm1 && f.r_div_qp1) return (u64{r} - 1) / 2;
        if (f.r_div_qnm1 && !f.r_div_qm1 && !f.r_div_qp1) return 0;
        if (!f.r_div_qnm1 && f.r_div_qp1) return (u64{r} - 1) / 2;
        return 0; // r | q^n+1 with r not dividing q+1, and the divides-neither case
    }
    throw parameter_error("pl_fixed_count: exponent outside the lattice");
}

BigUint burnside(const std::vector<SubgroupSpec>& lattice, const std::vector<BigUint>& fixed_counts) {
    if (lattice.size() != fixed_counts.size()) throw parameter_error("burnside: table size mismatch");
    u64 group_order = 0;
    BigUint sum{0};
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        group_order += lattice[i].fresh_elements;
        sum += BigUint{lattice[i].fresh_elements} * fixed_counts[i];
    }
    if (group_order == 0) throw parameter_error("burnside: empty group");
    u64 rem = sum.divmod_u64(group_order);
    if (rem != 0)
        throw internal_error("burnside: orbit sum not divisible by the group order (fixed-count bug)");
    return sum;
}

namespace {

// bracket contents of the final theorems, divided by |G| afterwards
BigUint closed_form_extended(u64 q, unsigned n, unsigned r, Branch branch) {
    BigUint O = pl_class_count(q, n, r);
    if (n == r) {
        u64 nn = n;
        BigUint sum = O;
        switch (branch) {
        case Branch::B1: sum += BigUint{nn * nn - 1}; break;
        case Branch::B2: sum += BigUint{(nn * nn - 1) * (nn - 1) / 2}; break;
        case Branch::B3: sum += BigUint{(nn + 1) * (nn - 1) * (nn - 1) / 2}; break;
        case Branch::B4: break;
        default: throw internal_error("closed_form_extended: no branch for n = r");
        }
        u64 rem = sum.divmod_u64(nn * nn);
        if (rem != 0) throw internal_error("closed_form_extended: branch value not integral");
        return sum;
    }
    BigUint T = geom_sum(q, 2, (u64{r} - 1) / 2); // (q^{r-1}-1)/(q^2-1)
    BigUint sum = O + BigUint{u64{n} - 1} * T;
    switch (branch) {
    case Branch::B1: sum += BigUint{u64{n} * (r - 1)}; break;
    case Branch::B2: sum += BigUint{u64{n} * (r - 1) * (r - 1) / 2}; break;
    case Branch::B3: sum += BigUint{u64{r - 1} * (r - 1) / 2}; break;
    case Branch::B4: break;
    default: throw internal_error("closed_form_extended: table-derived case has no branch formula");
    }
    u64 rem = sum.divmod_u64(u64{n} * r);
    if (rem != 0) throw internal_error("closed_form_extended: branch value not integral");
    return sum;
}

} // namespace

BoundReport bound_report(u64 q, unsigned n, unsigned r) {
    validate(q, n, r);
    auto pp = prime_power_split(q);
    BoundReport rep;
    rep.p = pp->first;
    rep.t = pp->second;
    rep.q = q;
    rep.n = n;
    rep.r = r;
    rep.n_eq_2_warning = n == 2;
    rep.s = s_size(q, n, r);
    rep.affine_classes = affine_class_count(q, n, r);
    rep.pl_classes = pl_class_count(q, n, r);
    rep.label = classify_case(q, n, r);

    auto lattice = subgroup_lattice(n, r);
    rep.group_order = 0;
    std::vector<BigUint> fixed_affine, fixed_pl;
    for (const auto& sub : lattice) {
        rep.group_order += sub.fresh_elements;
        FixedCountRow row;
        row.subgroup = sub;
        row.fixed_affine = affine_fixed_count(q, n, r, sub);
        row.fixed_pl = pl_fixed_count(q, n, r, sub);
        fixed_affine.push_back(row.fixed_affine);
        fixed_pl.push_back(row.fixed_pl);
        rep.table.push_back(std::move(row));
    }
    rep.extended_bound = burnside(lattice, fixed_pl);
    rep.affine_orbit_bound = burnside(lattice, fixed_affine);

    if (rep.label.branch != Branch::TableDerived) {
        BigUint branch_value = closed_form_extended(q, n, r, rep.label.branch);
        if (branch_value != rep.extended_bound)
            throw internal_error("bound_report: table-derived Burnside disagrees with the branch formula");
        rep.closed_form_checked = true;
    }

    if (rep.extended_bound > rep.pl_classes || rep.affine_orbit_bound > rep.affine_classes)
        throw internal_error("bound_report: bound exceeds the class count");
    return rep;
}

BigUint extended_bound(u64 q, unsigned n, unsigned r) { return bound_report(q, n, r).extended_bound; }

BigUint affine_orbit_bound(u64 q, unsigned n, unsigned r) { return bound_report(q, n, r).affine_orbit_bound; }

} // namespace goppa
