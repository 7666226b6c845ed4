#include "goppa/codes.hpp"

#include <algorithm>
#include <ostream>

#include "goppa/errors.hpp"

namespace goppa {

namespace {

// F_q digit arithmetic backed by the tower: digit <-> handle translation plus
// dense add/mul tables for the Gaussian elimination below.
struct FqArith {
    u64 q;
    std::vector<u64> handles;            // digit -> handle, ascending
    std::vector<std::uint8_t> add_table; // q*q
    std::vector<std::uint8_t> mul_table;
    std::vector<std::uint8_t> neg_table;
    std::vector<std::uint8_t> inv_table;

    explicit FqArith(const Tower& T) : q(T.level_size(Level::Fq)), handles(T.subfield(Level::Fq)) {
        if (q > 255) throw capacity_error("codes: alphabets beyond 255 digits are unsupported");
        const Field& F = T.field();
        add_table.resize(q * q);
        mul_table.resize(q * q);
        neg_table.resize(q);
        inv_table.resize(q, 0);
        for (u64 x = 0; x < q; ++x) {
            neg_table[x] = digit(F.neg(handles[x]));
            if (x) inv_table[x] = digit(F.inv(handles[x]));
            for (u64 y = 0; y < q; ++y) {
                add_table[x * q + y] = digit(F.add(handles[x], handles[y]));
                mul_table[x * q + y] = digit(F.mul(handles[x], handles[y]));
            }
        }
    }

    std::uint8_t digit(u64 handle) const {
        auto it = std::lower_bound(handles.begin(), handles.end(), handle);
        if (it == handles.end() || *it != handle) throw internal_error("codes: handle outside the F_q level");
        return static_cast<std::uint8_t>(it - handles.begin());
    }

    std::uint8_t add(std::uint8_t x, std::uint8_t y) const { return add_table[u64{x} * q + y]; }
    std::uint8_t mul(std::uint8_t x, std::uint8_t y) const { return mul_table[u64{x} * q + y]; }
    std::uint8_t neg(std::uint8_t x) const { return neg_table[x]; }
    std::uint8_t inv(std::uint8_t x) const { return inv_table[x]; }
};

// row-reduce over F_q; returns rank and fills the right kernel basis
unsigned row_reduce(const FqArith& fq, std::vector<FqWord>& rows, std::vector<FqWord>* kernel) {
    if (rows.empty()) return 0;
    std::size_t cols = rows[0].size();
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t sel = rank;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        std::uint8_t lead_inv = fq.inv(rows[rank][col]);
        for (std::size_t j = col; j < cols; ++j) rows[rank][j] = fq.mul(rows[rank][j], lead_inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            std::uint8_t factor = rows[i][col];
            for (std::size_t j = col; j < cols; ++j)
                rows[i][j] = fq.add(rows[i][j], fq.neg(fq.mul(factor, rows[rank][j])));
        }
        pivot_col.push_back(col);
        ++rank;
    }
    if (kernel) {
        kernel->clear();
        std::vector<char> is_pivot(cols, 0);
        for (std::size_t c : pivot_col) is_pivot[c] = 1;
        for (std::size_t free_col = 0; free_col < cols; ++free_col) {
            if (is_pivot[free_col]) continue;
            FqWord v(cols, 0);
            v[free_col] = 1;
            for (std::size_t i = 0; i < rank; ++i)
                v[pivot_col[i]] = fq.neg(rows[i][free_col]);
            kernel->push_back(std::move(v));
        }
    }
    return static_cast<unsigned>(rank);
}

// Coordinates of field elements over the F_q-basis {g^j * gq^k}: g the tower
// primitive element (j < n*r), gq the F_q-level generator (k < t).  Realized
// as an inverted F_p change-of-basis matrix from the handle digit basis.
struct FqExpansion {
    const Tower& T;
    unsigned dim;     // n*r
    unsigned t;
    u64 p;
    std::vector<std::vector<u32>> minv; // (t*dim) x (t*dim) over F_p
    std::vector<u64> fq_basis;          // gq^k handles

    explicit FqExpansion(const Tower& tower) : T(tower) {
        const Field& F = T.field();
        p = T.params().p;
        t = T.params().t;
        dim = T.ext_degree();
        unsigned full = t * dim;
        fq_basis.resize(t);
        u64 gq = T.level_primitive(Level::Fq);
        fq_basis[0] = 1;
        for (unsigned k = 1; k < t; ++k) fq_basis[k] = F.mul(fq_basis[k - 1], gq);

        // columns: coefficient vectors of g^j * gq^k
        std::vector<std::vector<u32>> m(full, std::vector<u32>(full, 0));
        u64 gj = 1;
        for (unsigned j = 0; j < dim; ++j) {
            for (unsigned k = 0; k < t; ++k) {
                auto coeffs = F.to_coeffs(F.mul(gj, fq_basis[k]));
                for (unsigned row = 0; row < full; ++row) m[row][j * t + k] = coeffs[row];
            }
            gj = F.mul(gj, F.primitive_element());
        }
        minv = invert(m, full);
    }

    std::vector<std::vector<u32>> invert(std::vector<std::vector<u32>> m, unsigned nn) const {
        std::vector<std::vector<u32>> inv(nn, std::vector<u32>(nn, 0));
        for (unsigned i = 0; i < nn; ++i) inv[i][i] = 1;
        for (unsigned col = 0, row = 0; col < nn; ++col, ++row) {
            unsigned sel = row;
            while (sel < nn && m[sel][col] == 0) ++sel;
            if (sel == nn) throw internal_error("codes: expansion basis is singular");
            std::swap(m[row], m[sel]);
            std::swap(inv[row], inv[sel]);
            u64 lead_inv = powmod(m[row][col], p - 2, p);
            for (unsigned j = 0; j < nn; ++j) {
                m[row][j] = static_cast<u32>(mulmod(m[row][j], lead_inv, p));
                inv[row][j] = static_cast<u32>(mulmod(inv[row][j], lead_inv, p));
            }
            for (unsigned i = 0; i < nn; ++i) {
                if (i == row || m[i][col] == 0) continue;
                u64 f = m[i][col];
                for (unsigned j = 0; j < nn; ++j) {
                    m[i][j] = static_cast<u32>((m[i][j] + p - mulmod(f, m[row][j], p)) % p);
                    inv[i][j] = static_cast<u32>((inv[i][j] + p - mulmod(f, inv[row][j], p)) % p);
                }
            }
        }
        return inv;
    }

    // e -> its n*r F_q-coordinates, as digits of the FqArith
    void expand(const FqArith& fq, u64 e, std::vector<std::uint8_t>& out) const {
        const Field& F = T.field();
        unsigned full = t * dim;
        auto x = F.to_coeffs(e);
        out.resize(dim);
        for (unsigned j = 0; j < dim; ++j) {
            u64 handle = 0;
            for (unsigned k = 0; k < t; ++k) {
                u64 coord = 0;
                unsigned idx = j * t + k;
                for (unsigned col = 0; col < full; ++col) coord = (coord + mulmod(minv[idx][col], x[col], p)) % p;
                // F_p scalars are the constant handles 0..p-1
                handle = F.add(handle, F.mul(coord, fq_basis[k]));
            }
            out[j] = fq.digit(handle);
        }
    }
};

void require_in_S(const Tower& T, u64 alpha) {
    if (!T.in_S(alpha)) throw domain_error("codes: alpha must have degree r over F_q^n");
}

} // namespace

GoppaCode parity_check(const Tower& T, u64 alpha) {
    require_in_S(T, alpha);
    const Field& F = T.field();
    FqArith fq(T);
    FqExpansion expansion(T);

    GoppaCode code;
    code.alpha = alpha;
    code.q = fq.q;
    code.locus.points = T.subfield(Level::Fqn);
    code.length = code.locus.points.size();

    unsigned nrows = T.ext_degree();
    code.parity_rows.assign(nrows, FqWord(code.length, 0));
    std::vector<std::uint8_t> coords;
    for (std::size_t i = 0; i < code.locus.points.size(); ++i) {
        u64 entry = F.inv(F.sub(alpha, code.locus.points[i])); // alpha - zeta_i != 0 since alpha not in F_q^n
        expansion.expand(fq, entry, coords);
        for (unsigned row = 0; row < nrows; ++row) code.parity_rows[row][i] = coords[row];
    }

    std::vector<FqWord> work = code.parity_rows;
    code.rank = row_reduce(fq, work, &code.kernel_basis);
    code.dimension = static_cast<unsigned>(code.length) - code.rank;
    return code;
}

bool syndrome_check(const Tower& T, const FqWord& word, u64 alpha) {
    require_in_S(T, alpha);
    const Field& F = T.field();
    FqArith fq(T);
    const auto& locus = T.subfield(Level::Fqn);
    if (word.size() != locus.size()) throw parameter_error("syndrome_check: word length must equal q^n");
    unsigned n = T.params().n, r = T.params().r;
    for (unsigned j = 0; j < r; ++j) {
        u64 conj = T.frobenius(alpha, u64{j} * n);
        u64 sum = 0;
        for (std::size_t i = 0; i < locus.size(); ++i) {
            if (word[i] == 0) continue;
            if (word[i] >= fq.q) throw parameter_error("syndrome_check: digit outside F_q");
            u64 c = fq.handles[word[i]];
            sum = F.add(sum, F.mul(c, F.inv(F.sub(conj, locus[i]))));
        }
        if (sum != 0) return false;
    }
    return true;
}

ExtendedGoppaCode extend(const Tower& T, const GoppaCode& code) {
    FqArith fq(T);
    ExtendedGoppaCode ext;
    ext.alpha = code.alpha;
    ext.q = code.q;
    ext.length = code.length + 1;
    ext.parity_rows.reserve(code.parity_rows.size() + 1);
    for (const auto& row : code.parity_rows) {
        FqWord padded = row;
        padded.push_back(0);
        ext.parity_rows.push_back(std::move(padded));
    }
    ext.parity_rows.emplace_back(ext.length, 1); // overall coordinate sum
    std::vector<FqWord> work = ext.parity_rows;
    ext.rank = row_reduce(fq, work, &ext.kernel_basis);
    ext.dimension = static_cast<unsigned>(ext.length) - ext.rank;
    return ext;
}

EquivalenceWitness equivalence_witness(const Tower& T, u64 alpha, const WitnessSpec& spec) {
    require_in_S(T, alpha);
    const Field& F = T.field();
    const auto& locus = T.subfield(Level::Fqn);

    EquivalenceWitness w;
    w.alpha = alpha;

    auto locus_index = [&](u64 handle) -> u32 {
        auto it = std::lower_bound(locus.begin(), locus.end(), handle);
        if (it == locus.end() || *it != handle) throw internal_error("equivalence_witness: point left the locus");
        return static_cast<u32>(it - locus.begin());
    };

    w.permutation.resize(locus.size());
    if (spec.kind == WitnessKind::Affine) {
        if (spec.a == 0) throw parameter_error("equivalence_witness: a must be nonzero");
        if (!T.in_level(spec.a, Level::Fqn) || !T.in_level(spec.b, Level::Fqn))
            throw parameter_error("equivalence_witness: affine coefficients must lie in F_q^n");
        w.image_alpha = F.add(F.mul(spec.a, alpha), spec.b);
        w.scale = F.inv(spec.a);
        for (std::size_t j = 0; j < locus.size(); ++j)
            w.permutation[j] = locus_index(F.add(F.mul(spec.a, locus[j]), spec.b));
    } else {
        w.image_alpha = T.frobenius(alpha, spec.i);
        w.scale = 1;
        for (std::size_t j = 0; j < locus.size(); ++j)
            w.permutation[j] = locus_index(T.frobenius(locus[j], spec.i));
    }

    // verify on the full kernel basis of the image code
    GoppaCode image = parity_check(T, w.image_alpha);
    for (const auto& word : image.kernel_basis) {
        FqWord permuted(word.size());
        for (std::size_t j = 0; j < permuted.size(); ++j) permuted[j] = word[w.permutation[j]];
        if (!syndrome_check(T, permuted, alpha))
            throw internal_error("equivalence_witness: certificate failed on a kernel basis vector");
    }
    GoppaCode base = parity_check(T, alpha);
    if (base.dimension != image.dimension)
        throw internal_error("equivalence_witness: equivalent codes with different dimensions");
    w.verified = true;
    return w;
}

namespace {

void write_rows(u64 p, unsigned t, unsigned n, unsigned r, u64 alpha, u64 q,
                const std::vector<FqWord>& rows, std::ostream& os) {
    os << "# goppa-parity p=" << p << " t=" << t << " n=" << n << " r=" << r << " alpha=" << alpha
       << " rows=" << rows.size() << " cols=" << (rows.empty() ? 0 : rows[0].size()) << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (q > 10 && i) os << ' ';
            os << unsigned{row[i]};
        }
        os << "\n";
    }
}

} // namespace

void write_parity_text(const Tower& T, const GoppaCode& code, std::ostream& os) {
    const auto& p = T.params();
    write_rows(p.p, p.t, p.n, p.r, code.alpha, code.q, code.parity_rows, os);
}

void write_parity_text(const Tower& T, const ExtendedGoppaCode& code, std::ostream& os) {
    const auto& p = T.params();
    write_rows(p.p, p.t, p.n, p.r, code.alpha, code.q, code.parity_rows, os);
}

} // namespace goppa
