// Acceptance suite: every criterion is exact-integer equality (no tolerances)
// plus the stated runtime/memory limits.  One pass/fail line per criterion;
// the exit status is the number of failed criteria.

#include <sys/resource.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "goppa/actions.hpp"
#include "goppa/bounds.hpp"
#include "goppa/codes.hpp"
#include "goppa/counting.hpp"
#include "goppa/errors.hpp"
#include "goppa/oracle.hpp"

using namespace goppa;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what) {
    std::printf("%s  criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, what.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

u64 peak_rss_bytes() {
    struct rusage ru{};
    if (getrusage(RUSAGE_SELF, &ru) == 0 && ru.ru_maxrss > 0)
        return static_cast<u64>(ru.ru_maxrss) * 1024;
    std::ifstream status("/proc/self/status");
    std::string line;
    while (std::getline(status, line)) {
        if (line.rfind("VmHWM:", 0) == 0) {
            std::istringstream is(line.substr(6));
            u64 kib = 0;
            is >> kib;
            return kib * 1024;
        }
    }
    return 0;
}

// --- criterion 1: Example-1 reproduction ------------------------------------

void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    MatrixOrderCount closed = matrix_order_count(27, 7);
    Field F27(3, 3);
    u64 brute = enumerate_matrices_of_order(F27, 7);
    double wall = seconds_since(t0);
    bool pass = closed.hypotheses_met && closed.total == 2106 && brute == 2106 && wall < 10.0;
    std::ostringstream os;
    os << "matrix_order_count(27,7) = " << closed.total << ", brute force over 531441 quadruples = " << brute
       << ", " << wall << " s (< 10 s)";
    report(1, pass, os.str());
}

// --- criterion 2: Example-2 reproduction over F_2^25 -------------------------

void criterion_2() {
    auto t0 = std::chrono::steady_clock::now();
    BigUint closed = extended_bound(2, 5, 5);
    OracleOptions options;
    options.budget_bits = 26;
    options.workers = 2;
    VerificationReport rep = verify_bound(2, 5, 5, options);
    double wall = seconds_since(t0);
    u64 rss = peak_rss_bytes();
    // fall back to the report's own allocation accounting if the platform
    // exposes no peak-RSS counter; a zero reading must not pass vacuously
    u64 peak = rss ? rss : rep.table_bytes + rep.work_bytes;
    bool pass = closed.to_u64() == 41 && rep.pass && rep.pgl_g_orbits == 41 && wall < 600.0 && peak > 0 &&
                peak < (u64{2} << 30);
    std::ostringstream os;
    os << "extended_bound(2,5,5) = " << closed.to_string() << ", oracle over 33554400 elements measured "
       << rep.pgl_g_orbits << " PGL*G orbits, " << wall << " s (< 600 s), peak memory " << peak / (1 << 20)
       << " MiB (< 2048 MiB)";
    report(2, pass, os.str());
}

// --- criterion 3: Example-4 reproduction, formula only -----------------------

void criterion_3() {
    BigUint value = extended_bound(2, 11, 5);
    bool pass = value == BigUint{76261};
    report(3, pass, "extended_bound(2,11,5) = " + value.to_string() + " (expected 76261)");
}

// --- criteria 4-6: oracle/formula grid, structural invariants, fixed counts --

struct GridOutcome {
    bool all_pass = true;
    bool structure_pass = true;
    bool fixed_pass = true;
    double wall = 0;
    std::string detail;
};

GridOutcome run_grid() {
    GridOutcome out;
    auto t0 = std::chrono::steady_clock::now();
    struct Triple {
        u64 q;
        unsigned n, r;
    };
    std::vector<Triple> grid{{2, 3, 3}, {2, 3, 5}, {2, 3, 7}, {2, 5, 3}, {3, 3, 3}, {5, 3, 3}, {3, 3, 5}};
    std::ostringstream detail;
    for (const auto& [q, n, r] : grid) {
        VerificationReport rep = verify_bound(q, n, r);
        if (!rep.pass) {
            out.all_pass = false;
            detail << " (" << q << "," << n << "," << r << ") FAILED at " << rep.first_failure << ";";
        } else {
            detail << " (" << q << "," << n << "," << r << ")=" << rep.pgl_g_orbits << ";";
        }
        for (const auto& item : rep.items) {
            bool structural = item.name == "s_size" || item.name == "affine_class_count" ||
                              item.name == "pl_class_count" ||
                              item.name.rfind("affine_class_size", 0) == 0 ||
                              item.name.rfind("pl_class_size", 0) == 0 ||
                              item.name.rfind("pl_decomposition", 0) == 0;
            bool fixed = item.name.rfind("fixed_", 0) == 0;
            if (structural && !item.pass) out.structure_pass = false;
            if (fixed && !item.pass) out.fixed_pass = false;
        }
    }
    out.wall = seconds_since(t0);
    out.detail = detail.str();
    return out;
}

// --- criterion 7: Burnside integrality and branch agreement scan -------------

void criterion_7() {
    std::vector<u64> q_list;
    for (u64 q = 2; q_list.size() < 40; ++q)
        if (prime_power_split(q)) q_list.push_back(q);
    unsigned primes[] = {2, 3, 5, 7, 11, 13};
    u64 triples = 0, branch_checked = 0;
    bool pass = true;
    std::string first_failure;
    for (u64 q : q_list)
        for (unsigned n : primes)
            for (unsigned r : primes) {
                if (r < 3) continue;
                try {
                    // burnside() inside asserts exact divisibility by |G|;
                    // bound_report cross-checks the closed-form branch
                    BoundReport rep = bound_report(q, n, r);
                    if (rep.label.branch != Branch::TableDerived) {
                        if (!rep.closed_form_checked) throw internal_error("branch not cross-checked");
                        ++branch_checked;
                    }
                } catch (const std::exception& e) {
                    if (pass)
                        first_failure = "(" + std::to_string(q) + "," + std::to_string(n) + "," +
                                        std::to_string(r) + "): " + e.what();
                    pass = false;
                }
                ++triples;
            }
    std::ostringstream os;
    os << triples << " triples scanned (primes n,r <= 13, q over " << q_list.size()
       << " prime powers), Burnside sums all divisible by |G|, " << branch_checked
       << " closed-form branches matched exactly";
    if (!pass) os << "; first failure " << first_failure;
    report(7, pass && triples >= 1000, os.str());
}

// --- criterion 8: F_s properties at q=2, n=3, r=3 -----------------------------

void criterion_8() {
    Tower T = build_tower({2, 1, 3, 3});
    const Field& F = T.field();
    const auto& sub = T.subfield(Level::Fqn);
    std::set<std::pair<u64, u64>> splits;
    for (u64 u : sub)
        for (u64 v : sub) splits.insert({F.add(u, v), F.mul(u, v)});

    u64 maps_checked = 0;
    bool each_nine = true;
    std::set<u64> union_of_roots;
    for (u64 a : sub)
        for (u64 b : sub)
            for (u64 c : sub)
                for (u64 d : sub) {
                    Matrix2 m{a, b, c, d};
                    if (mat_det(F, m) == 0) continue;
                    if (b == 0 && c == 0 && a == d) continue;
                    if (splits.count({F.add(a, d), mat_det(F, m)})) continue;
                    if (!mat_is_identity(mat_pow(F, m, 3))) continue;
                    // order-3 map with irreducible quadratic minimal polynomial
                    ++maps_checked;
                    u64 roots = fs_roots_in_S(T, m, 1, Level::Fqn);
                    if (roots != 9) each_nine = false;
                    for (u64 alpha = 0; alpha < T.order(); ++alpha) {
                        if (!T.in_S(alpha)) continue;
                        u64 tw = T.frobenius(alpha, 3);
                        if (F.add(F.mul(m.c, F.mul(tw, alpha)), F.mul(m.d, tw)) ==
                            F.add(F.mul(m.a, alpha), m.b))
                            union_of_roots.insert(alpha);
                    }
                }
    // |S_F| = q^n(q^n-1)(q^n+1)(n-1)/2 = 8*7*9*1 = 504
    bool pass = maps_checked == 56 && each_nine && union_of_roots.size() == 504;
    std::ostringstream os;
    os << maps_checked << " order-3 maps, each with 9 = q^n+1 roots in S: " << (each_nine ? "yes" : "NO")
       << ", |S_F| = " << union_of_roots.size() << " (expected 504)";
    report(8, pass, os.str());
}

// --- criterion 9: codes ------------------------------------------------------

bool word_in_kernel(const Tower& T, const GoppaCode& code, const FqWord& w) {
    const Field& F = T.field();
    const auto& fq = T.subfield(Level::Fq);
    for (const auto& row : code.parity_rows) {
        u64 acc = 0;
        for (std::size_t i = 0; i < w.size(); ++i) acc = F.add(acc, F.mul(fq[row[i]], fq[w[i]]));
        if (acc != 0) return false;
    }
    return true;
}

void criterion_9() {
    bool agreement = true, sums_zero = true, certificates = true;
    std::mt19937_64 rng(0x60994);

    { // ten codes at (2,3,3): syndrome/kernel agreement, extension, certificates
        Tower T = build_tower({2, 1, 3, 3});
        auto S = enumerate_S(T);
        const auto& sub = T.subfield(Level::Fqn);
        const auto& fq = T.subfield(Level::Fq);
        for (int c = 0; c < 10; ++c) {
            u64 alpha = S[rng() % S.size()];
            GoppaCode code = parity_check(T, alpha);
            for (int i = 0; i < 100; ++i) {
                FqWord w(code.length);
                for (auto& d : w) d = static_cast<std::uint8_t>(rng() % code.q);
                if (syndrome_check(T, w, alpha) != word_in_kernel(T, code, w)) agreement = false;
            }
            ExtendedGoppaCode ext = extend(T, code);
            for (const auto& v : ext.kernel_basis) {
                u64 sum = 0;
                for (auto d : v) sum = T.field().add(sum, fq[d]);
                if (sum != 0) sums_zero = false;
            }
            try {
                WitnessSpec affine{WitnessKind::Affine, 0, sub[1 + rng() % (sub.size() - 1)],
                                   sub[rng() % sub.size()]};
                if (!equivalence_witness(T, alpha, affine).verified) certificates = false;
                WitnessSpec frob{WitnessKind::Frobenius, 1, 1, 0};
                if (!equivalence_witness(T, alpha, frob).verified) certificates = false;
            } catch (const std::exception&) {
                certificates = false;
            }
        }
    }

    { // (2,5,3): dimension-17 codes exercise the certificates on real kernels
        Tower T = build_tower({2, 1, 5, 3});
        auto S = enumerate_S(T);
        const auto& sub = T.subfield(Level::Fqn);
        for (int c = 0; c < 2; ++c) {
            u64 alpha = S[rng() % S.size()];
            GoppaCode code = parity_check(T, alpha);
            if (code.kernel_basis.empty()) certificates = false;
            ExtendedGoppaCode ext = extend(T, code);
            const auto& fq = T.subfield(Level::Fq);
            for (const auto& v : ext.kernel_basis) {
                u64 sum = 0;
                for (auto d : v) sum = T.field().add(sum, fq[d]);
                if (sum != 0) sums_zero = false;
            }
            try {
                WitnessSpec affine{WitnessKind::Affine, 0, sub[1 + rng() % (sub.size() - 1)],
                                   sub[rng() % sub.size()]};
                if (!equivalence_witness(T, alpha, affine).verified) certificates = false;
                WitnessSpec frob{WitnessKind::Frobenius, 1, 1, 0};
                if (!equivalence_witness(T, alpha, frob).verified) certificates = false;
            } catch (const std::exception&) {
                certificates = false;
            }
        }
    }

    bool pass = agreement && sums_zero && certificates;
    std::ostringstream os;
    os << "syndrome/kernel agreement on 100 words x 10 codes at (2,3,3): " << (agreement ? "yes" : "NO")
       << "; extended kernel sums zero: " << (sums_zero ? "yes" : "NO")
       << "; affine+frobenius certificates on full kernel bases (incl. dim-17 codes at (2,5,3)): "
       << (certificates ? "yes" : "NO");
    report(9, pass, os.str());
}

} // namespace

int main() {
    std::printf("acceptance suite: exact-integer criteria, stated runtime limits\n");
    criterion_1();
    criterion_2();
    criterion_3();

    GridOutcome grid = run_grid();
    {
        std::ostringstream os;
        os << "verify_bound exact-equality grid:" << grid.detail << " total " << grid.wall
           << " s (< 900 s)";
        report(4, grid.all_pass && grid.wall < 900.0, os.str());
        report(5, grid.structure_pass,
               "structural invariants exhaustive at oracle scale: |A(a)| = q^n(q^n-1), |O(a)| = q^3n-q^n, "
               "q^n+1 affine sets per PL set, partitions of S");
        report(6, grid.fixed_pass,
               "measured fixed affine/PL sets equal the piecewise closed forms for every subgroup on "
               "every grid triple");
    }

    criterion_7();
    criterion_8();
    criterion_9();

    std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ALL PASS" : "RESULT", failures);
    return failures;
}
