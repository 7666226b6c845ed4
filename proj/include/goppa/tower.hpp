#ifndef GOPPA_TOWER_HPP
#define GOPPA_TOWER_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "goppa/gf.hpp"
#include "goppa/intmath.hpp"

namespace goppa {

// q = p^t; n and r prime, r >= 3.  The tower is F_p c F_q c F_{q^n} (c F_{q^r}
// when n != r) c F_{q^nr}.
struct TowerParams {
    u64 p = 2;
    unsigned t = 1;
    unsigned n = 3;
    unsigned r = 3;

    u64 q() const;
    unsigned ext_degree() const { return n * r; } // of F_{q^nr} over F_q
};

enum class Level { Fq, Fqn, Fqr, Fqnr };

const char* level_name(Level l);

// The explicit field F_{q^nr} together with its subfield structure.  Immutable
// after construction; all queries are const and safe to share across threads.
class Tower {
  public:
    const TowerParams& params() const { return params_; }
    const Field& field() const { return field_; }
    u64 q() const { return q_; }
    u64 order() const { return field_.order(); }
    u64 primitive_element() const { return field_.primitive_element(); }
    unsigned ext_degree() const { return params_.ext_degree(); }

    bool has_level(Level l) const { return l != Level::Fqr || params_.n != params_.r; }
    unsigned level_degree(Level l) const; // over F_q
    u64 level_size(Level l) const;

    // a^(q^i); i taken mod n*r
    u64 frobenius(u64 a, u64 i) const;

    bool in_level(u64 a, Level l) const;

    // degree of the minimal polynomial of a over the named subfield
    unsigned degree_over(u64 a, Level l) const;

    // S = elements of degree r over F_{q^n}; since [F_{q^nr} : F_{q^n}] = r is
    // prime this is exactly the complement of the F_{q^n} level.
    bool in_S(u64 a) const { return !in_level(a, Level::Fqn); }

    // all q^deg elements of a level, ascending by handle (levels Fq, Fqn, Fqr)
    const std::vector<u64>& subfield(Level l) const;

    // generator of the level's multiplicative group
    u64 level_primitive(Level l) const;

    friend Tower build_tower(const TowerParams&, Backend, u64);
    friend std::optional<Tower> load_tower_cache(const TowerParams&, const std::string&, Backend, u64);

  private:
    Tower(TowerParams params, Field field);
    void build_subfields();

    TowerParams params_;
    Field field_;
    u64 q_ = 0;
    std::array<std::vector<u64>, 3> subfields_; // Fq, Fqn, Fqr
    std::array<u64, 3> level_prims_{0, 0, 0};
};

Tower build_tower(const TowerParams& params, Backend backend = Backend::Auto,
                  u64 table_limit = Field::kDefaultTableLimit);

// Binary tower cache ("GPCX"): an optimization only; a loaded tower is
// re-verified and must be identical to a fresh build.
bool save_tower_cache(const Tower& tower, const std::string& path, bool include_tables);
std::optional<Tower> load_tower_cache(const TowerParams& params, const std::string& path,
                                      Backend backend = Backend::Auto,
                                      u64 table_limit = Field::kDefaultTableLimit);
std::string tower_cache_filename(const TowerParams& params);

// Cache-aware build: consults cache_dir when nonempty, writing a fresh entry
// on miss.  Results are identical with caching disabled.
Tower build_tower_cached(const TowerParams& params, const std::string& cache_dir,
                         Backend backend = Backend::Auto,
                         u64 table_limit = Field::kDefaultTableLimit);

} // namespace goppa

#endif
