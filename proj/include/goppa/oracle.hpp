#ifndef GOPPA_ORACLE_HPP
#define GOPPA_ORACLE_HPP

#include <string>
#include <vector>

#include "goppa/bounds.hpp"
#include "goppa/tower.hpp"

namespace goppa {

// Generating sets for orbit closure over S.  Translations by an F_p-basis of
// the F_{q^n} level plus one primitive scaling generate the affine group;
// adding inversion generates PGL(2,q^n); sigma extends either by the Frobenius
// group G.
enum class GeneratorSet { AffineOnly, PglOnly, AffineG, PglG, FrobeniusOnly };

const char* generator_set_name(GeneratorSet g);

struct OracleOptions {
    unsigned budget_bits = 26; // enumeration refused above 2^budget_bits field elements
    Backend backend = Backend::Auto;
    u64 table_limit = 0; // 0: allow log tables up to the enumeration budget
    unsigned workers = 1;
    std::string cache_dir;  // optional tower cache directory
    std::string dump_path;  // when set, the PGL*G partition is written here
};

// Dense rank table over field handles: handle -> S-index, ascending by handle.
class SIndexer {
  public:
    SIndexer(const Tower& tower, unsigned budget_bits);

    u64 count() const { return count_; }
    static constexpr u32 kNotInS = 0xFFFFFFFFu;
    u32 rank(u64 handle) const { return rank_[handle]; }

  private:
    std::vector<u32> rank_;
    u64 count_ = 0;
};

struct OrbitPartition {
    GeneratorSet generators = GeneratorSet::AffineOnly;
    u64 orbit_count = 0;
    // per S-index: the S-index of the orbit's minimal-handle member; empty for
    // count-only runs
    std::vector<u32> class_id;
    std::vector<std::pair<u64, u64>> size_histogram; // (orbit size, how many), ascending
};

// all elements of degree r over F_{q^n}, ascending by handle
std::vector<u64> enumerate_S(const Tower& tower, unsigned budget_bits = 26);

OrbitPartition orbit_partition(const Tower& tower, const SIndexer& idx, GeneratorSet generators,
                               unsigned workers = 1);

// Orbit classes of `partition` fixed (as sets) by sigma^exponent, measured by
// mapping each class representative.
u64 fixed_sets_bruteforce(const Tower& tower, const SIndexer& idx, const OrbitPartition& partition,
                          unsigned exponent);

struct VerificationItem {
    std::string name;
    std::string expected; // decimal
    std::string measured;
    bool pass = false;
};

struct VerificationReport {
    TowerParams params;
    bool pass = false;
    std::string first_failure; // name of the first differing quantity
    std::vector<VerificationItem> items;
    u64 s_count = 0;
    u64 affine_classes = 0, pl_classes = 0;
    u64 affine_g_orbits = 0, pgl_g_orbits = 0;
    double wall_seconds = 0.0;
    u64 table_bytes = 0; // field log/antilog tables
    u64 work_bytes = 0;  // rank table + union-find + partitions
};

// End-to-end certification of the closed-form bounds against exhaustive orbit
// enumeration; every comparison is exact integer equality.
VerificationReport verify_bound(u64 q, unsigned n, unsigned r, const OracleOptions& options = {});

// raw dump: one little-endian u32 class id per S-index
bool dump_partition(const OrbitPartition& partition, const std::string& path);

} // namespace goppa

#endif
