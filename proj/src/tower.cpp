#include "goppa/tower.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <memory>

#include "goppa/errors.hpp"

namespace goppa {

u64 TowerParams::q() const {
    auto v = checked_pow(p, t);
    if (!v) throw parameter_error("TowerParams: q = p^t overflows");
    return *v;
}

const char* level_name(Level l) {
    switch (l) {
    case Level::Fq: return "F_q";
    case Level::Fqn: return "F_q^n";
    case Level::Fqr: return "F_q^r";
    case Level::Fqnr: return "F_q^nr";
    }
    return "?";
}

namespace {

void validate_params(const TowerParams& p) {
    if (!is_prime(p.p)) throw parameter_error("tower: p must be prime");
    if (p.t < 1) throw parameter_error("tower: t must be positive");
    if (!is_prime(p.n)) throw parameter_error("tower: n must be prime");
    if (!is_prime(p.r)) throw parameter_error("tower: r must be prime");
    if (p.r < 3) throw parameter_error("tower: r must exceed 2");
}

int level_index(Level l) {
    switch (l) {
    case Level::Fq: return 0;
    case Level::Fqn: return 1;
    case Level::Fqr: return 2;
    default: return -1;
    }
}

} // namespace

Tower::Tower(TowerParams params, Field field) : params_(params), field_(std::move(field)), q_(params.q()) {}

unsigned Tower::level_degree(Level l) const {
    switch (l) {
    case Level::Fq: return 1;
    case Level::Fqn: return params_.n;
    case Level::Fqr: return params_.r;
    case Level::Fqnr: return params_.n * params_.r;
    }
    return 0;
}

u64 Tower::level_size(Level l) const {
    if (!has_level(l)) throw parameter_error("tower: F_q^r level absent when n = r");
    return *checked_pow(q_, level_degree(l));
}

u64 Tower::frobenius(u64 a, u64 i) const {
    if (a >= order()) throw parameter_error("tower: element handle out of range");
    i %= ext_degree();
    return field_.frob_p(a, i * params_.t);
}

bool Tower::in_level(u64 a, Level l) const {
    if (a >= order()) throw parameter_error("tower: element handle out of range");
    if (!has_level(l)) throw parameter_error("tower: F_q^r level absent when n = r");
    if (l == Level::Fqnr) return true;
    if (a == 0) return true;
    if (field_.uses_tables()) {
        u64 step = field_.group_order() / (level_size(l) - 1);
        return field_.log_data()[a] % step == 0;
    }
    return frobenius(a, level_degree(l)) == a;
}

unsigned Tower::degree_over(u64 a, Level l) const {
    if (l == Level::Fqn) return in_level(a, Level::Fqn) ? 1 : params_.r;
    if (l != Level::Fq) throw parameter_error("tower: degree_over supports F_q and F_q^n");
    unsigned n = params_.n, r = params_.r;
    std::vector<unsigned> divisors{1, std::min(n, r), std::max(n, r), n * r};
    divisors.erase(std::unique(divisors.begin(), divisors.end()), divisors.end());
    for (unsigned d : divisors)
        if (frobenius(a, d) == a) return d;
    return n * r;
}

const std::vector<u64>& Tower::subfield(Level l) const {
    int idx = level_index(l);
    if (idx < 0) throw parameter_error("tower: whole-field enumeration is not a subfield query");
    if (!has_level(l)) throw parameter_error("tower: F_q^r level absent when n = r");
    return subfields_[static_cast<std::size_t>(idx)];
}

u64 Tower::level_primitive(Level l) const {
    int idx = level_index(l);
    if (idx < 0 || !has_level(l)) throw parameter_error("tower: no primitive for that level");
    return level_prims_[static_cast<std::size_t>(idx)];
}

void Tower::build_subfields() {
    for (Level l : {Level::Fq, Level::Fqn, Level::Fqr}) {
        if (!has_level(l)) continue;
        unsigned d = level_degree(l);
        u64 size = level_size(l);
        u64 step = field_.group_order() / (size - 1);
        u64 gen = field_.pow(field_.primitive_element(), step);
        std::vector<u64> elems;
        elems.reserve(size);
        elems.push_back(0);
        u64 cur = 1;
        for (u64 k = 0; k + 1 < size; ++k) {
            elems.push_back(cur);
            cur = field_.mul(cur, gen);
        }
        if (cur != 1) throw internal_error("tower: subfield generator has wrong order");
        std::sort(elems.begin(), elems.end());
        if (std::adjacent_find(elems.begin(), elems.end()) != elems.end())
            throw internal_error("tower: subfield enumeration repeats elements");
        // cross-check the power construction against the Frobenius fixed-point
        // characterization of the level
        for (u64 e : elems)
            if (frobenius(e, d) != e) throw internal_error("tower: subfield element fails fixed-point check");
        if (elems.size() != size || elems[0] != 0 || elems[1] != 1)
            throw internal_error("tower: subfield enumeration malformed");
        subfields_[static_cast<std::size_t>(level_index(l))] = std::move(elems);
        level_prims_[static_cast<std::size_t>(level_index(l))] = gen;
    }
}

Tower build_tower(const TowerParams& params, Backend backend, u64 table_limit) {
    validate_params(params);
    unsigned m = params.t * params.n * params.r;
    Field F(params.p, m, backend, table_limit);
    Tower tower(params, std::move(F));
    tower.build_subfields();
    return tower;
}

// ---------------------------------------------------------------------------
// cache format: "GPCX" | u8 version | u64 p | u32 t | u32 n | u32 r |
//               u32 modlen | u32*modlen coefficients | u64 primitive |
//               u8 has_tables | [u64 count | u32*count exp table]
// all integers little-endian fixed width
// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'G', 'P', 'C', 'X'};
constexpr unsigned char kVersion = 1;

void put_u32(std::FILE* f, u32 v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    std::fwrite(b, 1, 4, f);
}

void put_u64(std::FILE* f, u64 v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    std::fwrite(b, 1, 8, f);
}

bool get_u32(std::FILE* f, u32& v) {
    unsigned char b[4];
    if (std::fread(b, 1, 4, f) != 4) return false;
    v = 0;
    for (int i = 0; i < 4; ++i) v |= u32{b[i]} << (8 * i);
    return true;
}

bool get_u64(std::FILE* f, u64& v) {
    unsigned char b[8];
    if (std::fread(b, 1, 8, f) != 8) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= u64{b[i]} << (8 * i);
    return true;
}

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};

} // namespace

std::string tower_cache_filename(const TowerParams& p) {
    return "gpcx_p" + std::to_string(p.p) + "_t" + std::to_string(p.t) + "_n" + std::to_string(p.n) + "_r" +
           std::to_string(p.r) + ".bin";
}

bool save_tower_cache(const Tower& tower, const std::string& path, bool include_tables) {
    std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "wb"));
    if (!f) return false;
    std::fwrite(kMagic, 1, 4, f.get());
    unsigned char ver = kVersion;
    std::fwrite(&ver, 1, 1, f.get());
    const auto& p = tower.params();
    put_u64(f.get(), p.p);
    put_u32(f.get(), p.t);
    put_u32(f.get(), p.n);
    put_u32(f.get(), p.r);
    const auto& mod = tower.field().modulus();
    put_u32(f.get(), static_cast<u32>(mod.size()));
    for (u32 c : mod) put_u32(f.get(), c);
    put_u64(f.get(), tower.field().primitive_element());
    unsigned char has_tables = include_tables && tower.field().uses_tables() ? 1 : 0;
    std::fwrite(&has_tables, 1, 1, f.get());
    if (has_tables) {
        const auto& exp = tower.field().exp_table();
        put_u64(f.get(), exp.size());
        for (u32 v : exp) put_u32(f.get(), v);
    }
    return std::ferror(f.get()) == 0;
}

std::optional<Tower> load_tower_cache(const TowerParams& params, const std::string& path, Backend backend,
                                      u64 table_limit) {
    validate_params(params);
    std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "rb"));
    if (!f) return std::nullopt;
    char magic[4];
    unsigned char ver = 0;
    if (std::fread(magic, 1, 4, f.get()) != 4 || std::memcmp(magic, kMagic, 4) != 0) return std::nullopt;
    if (std::fread(&ver, 1, 1, f.get()) != 1 || ver != kVersion) return std::nullopt;
    u64 p;
    u32 t, n, r, modlen;
    if (!get_u64(f.get(), p) || !get_u32(f.get(), t) || !get_u32(f.get(), n) || !get_u32(f.get(), r))
        return std::nullopt;
    if (p != params.p || t != params.t || n != params.n || r != params.r) return std::nullopt;
    if (!get_u32(f.get(), modlen) || modlen != params.t * params.n * params.r + 1) return std::nullopt;
    std::vector<u32> mod(modlen);
    for (auto& c : mod)
        if (!get_u32(f.get(), c)) return std::nullopt;
    u64 primitive;
    unsigned char has_tables;
    if (!get_u64(f.get(), primitive)) return std::nullopt;
    if (std::fread(&has_tables, 1, 1, f.get()) != 1) return std::nullopt;
    std::vector<u32> exp;
    if (has_tables) {
        u64 count;
        if (!get_u64(f.get(), count)) return std::nullopt;
        if (count > (u64{1} << 31)) return std::nullopt;
        exp.resize(count);
        for (auto& v : exp)
            if (!get_u32(f.get(), v)) return std::nullopt;
    }
    try {
        Field F = Field::from_parts(params.p, params.t * params.n * params.r, std::move(mod), primitive, backend,
                                    table_limit, std::move(exp));
        Tower tower(params, std::move(F));
        tower.build_subfields();
        return tower;
    } catch (const internal_error&) {
        return std::nullopt; // corrupt or stale cache entry; caller rebuilds
    } catch (const capacity_error&) {
        return std::nullopt;
    }
}

Tower build_tower_cached(const TowerParams& params, const std::string& cache_dir, Backend backend, u64 table_limit) {
    if (cache_dir.empty()) return build_tower(params, backend, table_limit);
    std::filesystem::path dir(cache_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::string path = (dir / tower_cache_filename(params)).string();
    if (auto cached = load_tower_cache(params, path, backend, table_limit)) return std::move(*cached);
    Tower tower = build_tower(params, backend, table_limit);
    // tables are cheap to rebuild relative to their file size; cache without
    save_tower_cache(tower, path, false);
    return tower;
}

} // namespace goppa
