#include "goppa/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <memory>
#include <thread>

#include "goppa/errors.hpp"

namespace goppa {

const char* generator_set_name(GeneratorSet g) {
    switch (g) {
    case GeneratorSet::AffineOnly: return "affine_only";
    case GeneratorSet::PglOnly: return "pgl_only";
    case GeneratorSet::AffineG: return "affine_G";
    case GeneratorSet::PglG: return "pgl_G";
    case GeneratorSet::FrobeniusOnly: return "frobenius_only";
    }
    return "?";
}

namespace {

void check_budget(u64 q, unsigned ext_degree, unsigned budget_bits) {
    if (budget_bits >= 32)
        throw capacity_error("oracle: budgets beyond 2^31 elements are not supported (32-bit S-indices)");
    BigUint order = BigUint::pow(q, ext_degree);
    if (order > BigUint::pow(2, budget_bits)) {
        unsigned bits = order.bit_length();
        if (BigUint::pow(2, bits - 1) == order) --bits; // exact power of two
        throw capacity_error("oracle: enumeration requires 2^" + std::to_string(bits) +
                             " elements, beyond the 2^" + std::to_string(budget_bits) + " budget");
    }
}

void check_budget(const Tower& tower, unsigned budget_bits) {
    check_budget(tower.q(), tower.ext_degree(), budget_bits);
}

struct Gen {
    enum class Kind { Add, Mul, Inv, Frob } kind;
    u64 operand = 0; // Add/Mul constant; Frob: i with x -> x^{q^i}
};

std::vector<Gen> generator_list(const Tower& tower, GeneratorSet set) {
    std::vector<Gen> gens;
    bool translations = set != GeneratorSet::FrobeniusOnly;
    if (translations) {
        // F_p-basis of the F_{q^n} level: powers of its multiplicative generator
        const Field& F = tower.field();
        u64 gn = tower.level_primitive(Level::Fqn);
        unsigned dim = tower.params().t * tower.params().n;
        u64 cur = 1;
        for (unsigned j = 0; j < dim; ++j) {
            gens.push_back({Gen::Kind::Add, cur});
            cur = F.mul(cur, gn);
        }
        if (gn != 1) gens.push_back({Gen::Kind::Mul, gn});
    }
    if (set == GeneratorSet::PglOnly || set == GeneratorSet::PglG) gens.push_back({Gen::Kind::Inv, 0});
    if (set == GeneratorSet::AffineG || set == GeneratorSet::PglG || set == GeneratorSet::FrobeniusOnly)
        gens.push_back({Gen::Kind::Frob, 1});
    return gens;
}

inline u64 apply_gen(const Tower& tower, const Gen& g, u64 h) {
    const Field& F = tower.field();
    switch (g.kind) {
    case Gen::Kind::Add: return F.add(h, g.operand);
    case Gen::Kind::Mul: return F.mul(h, g.operand);
    case Gen::Kind::Inv: return F.inv(h);
    case Gen::Kind::Frob: return tower.frobenius(h, g.operand);
    }
    return h;
}

class UnionFind {
  public:
    explicit UnionFind(u64 n) : parent_(n), size_(n, 1) {
        for (u64 i = 0; i < n; ++i) parent_[i] = static_cast<u32>(i);
    }

    u32 find(u32 x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]]; // path halving
            x = parent_[x];
        }
        return x;
    }

    void unite(u32 a, u32 b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

    u64 size() const { return parent_.size(); }
    u64 component_size(u32 root) const { return size_[root]; }

  private:
    std::vector<u32> parent_;
    std::vector<u32> size_;
};

// One pass: for every alpha in S and every generator g, unite alpha with
// g(alpha).  With workers > 1 the generator images of a block are computed in
// parallel and the unions applied serially; the finalized partition is the
// set of connected components either way, so the result is schedule-free.
void close_under(const Tower& tower, const SIndexer& idx, UnionFind& uf, const std::vector<Gen>& gens,
                 unsigned workers) {
    u64 order = tower.order();
    if (workers <= 1) {
        for (u64 h = 0; h < order; ++h) {
            u32 i = idx.rank(h);
            if (i == SIndexer::kNotInS) continue;
            for (const Gen& g : gens) uf.unite(i, idx.rank(apply_gen(tower, g, h)));
        }
        return;
    }
    const u64 block = u64{1} << 20;
    std::vector<u32> targets(gens.size() * block);
    for (u64 base = 0; base < order; base += block) {
        u64 end = std::min(order, base + block);
        u64 span = end - base;
        u64 chunk = (span + workers - 1) / workers;
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            u64 lo = base + w * chunk;
            u64 hi = std::min(end, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                for (u64 h = lo; h < hi; ++h) {
                    u64 slot = (h - base) * gens.size();
                    if (idx.rank(h) == SIndexer::kNotInS) {
                        for (std::size_t g = 0; g < gens.size(); ++g) targets[slot + g] = SIndexer::kNotInS;
                        continue;
                    }
                    for (std::size_t g = 0; g < gens.size(); ++g)
                        targets[slot + g] = idx.rank(apply_gen(tower, gens[g], h));
                }
            });
        }
        for (auto& th : pool) th.join();
        for (u64 h = base; h < end; ++h) {
            u32 i = idx.rank(h);
            if (i == SIndexer::kNotInS) continue;
            u64 slot = (h - base) * gens.size();
            for (std::size_t g = 0; g < gens.size(); ++g) uf.unite(i, targets[slot + g]);
        }
    }
}

// canonicalize to minimal-member class ids; id arrays optional for count-only
OrbitPartition finalize(GeneratorSet set, UnionFind& uf, bool keep_ids) {
    OrbitPartition part;
    part.generators = set;
    u64 n = uf.size();
    std::map<u64, u64> hist;
    if (keep_ids) {
        std::vector<u32> canonical(n, SIndexer::kNotInS);
        part.class_id.resize(n);
        for (u64 i = 0; i < n; ++i) {
            u32 root = uf.find(static_cast<u32>(i));
            if (canonical[root] == SIndexer::kNotInS) {
                canonical[root] = static_cast<u32>(i); // first visit in ascending order = minimum
                ++part.orbit_count;
                ++hist[uf.component_size(root)];
            }
            part.class_id[i] = canonical[root];
        }
    } else {
        for (u64 i = 0; i < n; ++i) {
            u32 root = uf.find(static_cast<u32>(i));
            if (root == i) {
                ++part.orbit_count;
                ++hist[uf.component_size(root)];
            }
        }
    }
    part.size_histogram.assign(hist.begin(), hist.end());
    return part;
}

} // namespace

SIndexer::SIndexer(const Tower& tower, unsigned budget_bits) {
    check_budget(tower, budget_bits);
    u64 order = tower.order();
    rank_.assign(order, kNotInS);
    for (u64 h = 0; h < order; ++h) {
        if (tower.in_S(h)) rank_[h] = static_cast<u32>(count_++);
    }
}

std::vector<u64> enumerate_S(const Tower& tower, unsigned budget_bits) {
    check_budget(tower, budget_bits);
    std::vector<u64> out;
    for (u64 h = 0; h < tower.order(); ++h)
        if (tower.in_S(h)) out.push_back(h);
    return out;
}

OrbitPartition orbit_partition(const Tower& tower, const SIndexer& idx, GeneratorSet generators,
                               unsigned workers) {
    UnionFind uf(idx.count());
    close_under(tower, idx, uf, generator_list(tower, generators), workers);
    return finalize(generators, uf, true);
}

u64 fixed_sets_bruteforce(const Tower& tower, const SIndexer& idx, const OrbitPartition& partition,
                          unsigned exponent) {
    if (partition.class_id.empty()) throw parameter_error("fixed_sets_bruteforce: partition has no class ids");
    u64 fixed = 0;
    for (u64 h = 0; h < tower.order(); ++h) {
        u32 rank = idx.rank(h);
        if (rank == SIndexer::kNotInS) continue;
        if (partition.class_id[rank] == rank) { // representative (minimal member)
            u64 img = tower.frobenius(h, exponent);
            if (partition.class_id[idx.rank(img)] == rank) ++fixed;
        }
    }
    return fixed;
}

bool dump_partition(const OrbitPartition& partition, const std::string& path) {
    std::unique_ptr<std::FILE, int (*)(std::FILE*)> f(std::fopen(path.c_str(), "wb"), &std::fclose);
    if (!f) return false;
    for (u32 id : partition.class_id) {
        unsigned char b[4];
        for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(id >> (8 * i));
        if (std::fwrite(b, 1, 4, f.get()) != 4) return false;
    }
    return true;
}

namespace {

struct ReportBuilder {
    VerificationReport rep;

    void compare(const std::string& name, const BigUint& expected, u64 measured) {
        VerificationItem item;
        item.name = name;
        item.expected = expected.to_string();
        item.measured = BigUint{measured}.to_string();
        item.pass = expected == BigUint{measured};
        if (!item.pass && rep.first_failure.empty()) rep.first_failure = name;
        rep.items.push_back(std::move(item));
    }

    void compare_bool(const std::string& name, bool ok, const std::string& expected,
                      const std::string& measured) {
        VerificationItem item{name, expected, measured, ok};
        if (!ok && rep.first_failure.empty()) rep.first_failure = name;
        rep.items.push_back(std::move(item));
    }
};

} // namespace

VerificationReport verify_bound(u64 q, unsigned n, unsigned r, const OracleOptions& options) {
    auto t0 = std::chrono::steady_clock::now();
    BoundReport bounds = bound_report(q, n, r);
    TowerParams params{bounds.p, bounds.t, n, r};
    check_budget(q, params.ext_degree(), options.budget_bits);

    // the oracle wants O(1) arithmetic; let tables grow to the enumeration
    // budget unless the caller pinned a limit
    u64 table_limit = options.table_limit ? options.table_limit : (u64{1} << options.budget_bits);
    Tower tower = build_tower_cached(params, options.cache_dir, options.backend, table_limit);

    ReportBuilder b;
    b.rep.params = params;

    SIndexer idx(tower, options.budget_bits);
    b.rep.s_count = idx.count();
    b.compare("s_size", bounds.s, idx.count());

    u64 qn = tower.level_size(Level::Fqn);
    u64 affine_orbit_size = qn * (qn - 1);
    u64 pl_orbit_size = qn * qn * qn - qn;

    // affine closure, then extend: +sigma for FG, +inversion for PGL, +sigma for PGL*G
    UnionFind uf(idx.count());
    close_under(tower, idx, uf, generator_list(tower, GeneratorSet::AffineOnly), options.workers);
    UnionFind uf_fg = uf;
    close_under(tower, idx, uf_fg, {{Gen::Kind::Frob, 1}}, options.workers);
    OrbitPartition fg = finalize(GeneratorSet::AffineG, uf_fg, false);
    b.rep.affine_g_orbits = fg.orbit_count;
    { // release before the PGL stage
        UnionFind tmp{0};
        std::swap(uf_fg, tmp);
    }
    OrbitPartition affine = finalize(GeneratorSet::AffineOnly, uf, true);
    b.rep.affine_classes = affine.orbit_count;

    close_under(tower, idx, uf, {{Gen::Kind::Inv, 0}}, options.workers);
    UnionFind uf_og = uf;
    close_under(tower, idx, uf_og, {{Gen::Kind::Frob, 1}}, options.workers);
    OrbitPartition og = finalize(GeneratorSet::PglG, uf_og, !options.dump_path.empty());
    b.rep.pgl_g_orbits = og.orbit_count;
    if (!options.dump_path.empty() && !dump_partition(og, options.dump_path))
        throw parameter_error("oracle: cannot write partition dump to " + options.dump_path);
    og.class_id.clear();
    og.class_id.shrink_to_fit();
    {
        UnionFind tmp{0};
        std::swap(uf_og, tmp);
    }
    OrbitPartition pl = finalize(GeneratorSet::PglOnly, uf, true);
    b.rep.pl_classes = pl.orbit_count;
    {
        UnionFind tmp{0};
        std::swap(uf, tmp);
    }

    b.compare("affine_class_count", bounds.affine_classes, affine.orbit_count);
    bool affine_sizes_ok = affine.size_histogram.size() == 1 &&
                           affine.size_histogram[0].first == affine_orbit_size;
    b.compare_bool("affine_class_size=q^n(q^n-1)", affine_sizes_ok, std::to_string(affine_orbit_size),
                   affine.size_histogram.size() == 1 ? std::to_string(affine.size_histogram[0].first)
                                                     : "mixed sizes");
    b.compare("pl_class_count", bounds.pl_classes, pl.orbit_count);
    bool pl_sizes_ok = pl.size_histogram.size() == 1 && pl.size_histogram[0].first == pl_orbit_size;
    b.compare_bool("pl_class_size=q^3n-q^n", pl_sizes_ok, std::to_string(pl_orbit_size),
                   pl.size_histogram.size() == 1 ? std::to_string(pl.size_histogram[0].first) : "mixed sizes");

    // every PL class splits into exactly q^n+1 affine classes
    {
        std::map<u32, u64> per_pl;
        for (u64 h = 0; h < tower.order(); ++h) {
            u32 rank = idx.rank(h);
            if (rank == SIndexer::kNotInS) continue;
            if (affine.class_id[rank] == rank) ++per_pl[pl.class_id[rank]];
        }
        bool ok = per_pl.size() == pl.orbit_count;
        for (const auto& [pl_id, count] : per_pl)
            if (count != qn + 1) ok = false;
        b.compare_bool("pl_decomposition(q^n+1 affine sets)", ok, std::to_string(qn + 1),
                       ok ? std::to_string(qn + 1) : "mismatch");
    }

    // fixed-set counts per subgroup, affine and projective-linear
    for (const auto& row : bounds.table) {
        u64 measured_affine = fixed_sets_bruteforce(tower, idx, affine, row.subgroup.exponent);
        u64 measured_pl = fixed_sets_bruteforce(tower, idx, pl, row.subgroup.exponent);
        b.compare("fixed_affine" + row.subgroup.name, row.fixed_affine, measured_affine);
        b.compare("fixed_pl" + row.subgroup.name, row.fixed_pl, measured_pl);
    }

    b.compare("affine_orbit_bound(FG orbits)", bounds.affine_orbit_bound, fg.orbit_count);
    b.compare("extended_bound(PGL*G orbits)", bounds.extended_bound, og.orbit_count);

    b.rep.pass = b.rep.first_failure.empty();
    b.rep.table_bytes = tower.field().uses_tables() ? 2 * tower.order() * sizeof(u32) : 0;
    b.rep.work_bytes = tower.order() * sizeof(u32)          // rank
                       + 4 * idx.count() * sizeof(u32)      // union-find peak (two copies)
                       + 2 * idx.count() * sizeof(u32);     // two retained partitions
    b.rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return b.rep;
}

} // namespace goppa
