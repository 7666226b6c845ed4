#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>
#include <set>

#include "goppa/errors.hpp"
#include "goppa/tower.hpp"

using namespace goppa;

TEST_CASE("orders and parameter validation") {
    Tower t233 = build_tower({2, 1, 3, 3});
    CHECK(t233.order() == 512);
    CHECK(t233.q() == 2);
    CHECK_FALSE(t233.has_level(Level::Fqr));

    Tower t337 = build_tower({3, 1, 3, 7});
    CHECK(t337.order() == 10460353203ull); // 3^21

    CHECK_THROWS_AS(build_tower({4, 1, 3, 3}), parameter_error);
    CHECK_THROWS_AS(build_tower({2, 1, 4, 3}), parameter_error);
    CHECK_THROWS_AS(build_tower({2, 1, 3, 2}), parameter_error); // r > 2 required
    CHECK_THROWS_AS(build_tower({2, 1, 9, 7}), parameter_error);
}

TEST_CASE("subfield sizes and fixed points") {
    Tower T = build_tower({2, 1, 3, 5});
    CHECK(T.subfield(Level::Fq) == std::vector<u64>{0, 1});
    CHECK(T.subfield(Level::Fqn).size() == 8);
    CHECK(T.subfield(Level::Fqr).size() == 32);
    for (Level l : {Level::Fq, Level::Fqn, Level::Fqr}) {
        unsigned d = T.level_degree(l);
        for (u64 e : T.subfield(l)) CHECK(T.frobenius(e, d) == e);
    }
    // fixed-point counts equal the subfield sizes exactly
    u64 cq = 0, cqn = 0, cqr = 0;
    for (u64 h = 0; h < T.order(); ++h) {
        cq += T.in_level(h, Level::Fq);
        cqn += T.in_level(h, Level::Fqn);
        cqr += T.in_level(h, Level::Fqr);
    }
    CHECK(cq == 2);
    CHECK(cqn == 8);
    CHECK(cqr == 32);
}

TEST_CASE("lattice partition of the tower") {
    // n != r: |S| = q^nr - q^n, with F_{q^r} \ F_q inside S, so the
    // inclusion-exclusion identity q^nr = #deg-nr + q^n + q^r - q holds for
    // the elements of full degree over F_q
    Tower T = build_tower({2, 1, 3, 5});
    u64 s_count = 0, full_degree = 0, in_qr_not_q = 0;
    for (u64 h = 0; h < T.order(); ++h) {
        bool in_s = T.in_S(h);
        s_count += in_s;
        bool full = T.degree_over(h, Level::Fq) == T.ext_degree();
        full_degree += full;
        bool qr_only = T.in_level(h, Level::Fqr) && !T.in_level(h, Level::Fq);
        in_qr_not_q += qr_only;
        CHECK(in_s == (full || qr_only));
    }
    CHECK(s_count == 32760);
    CHECK(T.order() == s_count + 8);
    CHECK(T.order() == full_degree + 8 + 32 - 2);

    // n = r: q^{n^2} = |S| + q^n
    Tower E = build_tower({2, 1, 3, 3});
    u64 s2 = 0;
    for (u64 h = 0; h < E.order(); ++h) s2 += E.in_S(h);
    CHECK(E.order() == s2 + 8);
    CHECK(s2 == 504);
}

TEST_CASE("frobenius examples") {
    Tower T = build_tower({2, 1, 3, 5});
    std::mt19937_64 rng(42);
    for (int i = 0; i < 100; ++i) {
        u64 a = rng() % T.order(), b = rng() % T.order();
        CHECK(T.frobenius(a, 0) == a);
        CHECK(T.frobenius(T.frobenius(a, 1), T.ext_degree() - 1) == a);
        // additivity against the pow-based route
        CHECK(T.frobenius(T.field().add(a, b), 1) ==
              T.field().add(T.frobenius(a, 1), T.frobenius(b, 1)));
        CHECK(T.frobenius(a, 1) == T.field().pow(a, T.q()));
    }
    for (u64 c : T.subfield(Level::Fq)) CHECK(T.frobenius(c, 1) == c);
}

TEST_CASE("frobenius is a field automorphism (exhaustive small tower)") {
    Tower T = build_tower({2, 1, 3, 3});
    const Field& F = T.field();
    for (u64 a = 0; a < 512; ++a)
        for (u64 b = 0; b < 512; b += 7) {
            CHECK(T.frobenius(F.add(a, b), 1) == F.add(T.frobenius(a, 1), T.frobenius(b, 1)));
            CHECK(T.frobenius(F.mul(a, b), 1) == F.mul(T.frobenius(a, 1), T.frobenius(b, 1)));
        }
}

TEST_CASE("degree_over") {
    Tower T = build_tower({2, 1, 3, 5});
    // subfield elements have degree 1
    for (u64 e : T.subfield(Level::Fqn)) CHECK(T.degree_over(e, Level::Fqn) == 1);
    // the primitive element lies in no proper subfield
    CHECK(T.degree_over(T.primitive_element(), Level::Fqn) == 5);
    CHECK(T.degree_over(T.primitive_element(), Level::Fq) == 15);
    // |{a : degree 5 over F_q^n}| = q^nr - q^n
    u64 count = 0;
    for (u64 h = 0; h < T.order(); ++h) count += T.degree_over(h, Level::Fqn) == 5;
    CHECK(count == 32760);
    // over F_q the degrees follow the subfield lattice
    u64 d1 = 0, d3 = 0, d5 = 0, d15 = 0;
    for (u64 h = 0; h < T.order(); ++h) {
        switch (T.degree_over(h, Level::Fq)) {
        case 1: ++d1; break;
        case 3: ++d3; break;
        case 5: ++d5; break;
        default: ++d15; break;
        }
    }
    CHECK(d1 == 2);
    CHECK(d3 == 6);  // F_8 minus F_2
    CHECK(d5 == 30); // F_32 minus F_2
    CHECK(d15 == 32768 - 2 - 6 - 30);
}

TEST_CASE("backend-independent results") {
    Tower a = build_tower({2, 1, 3, 3}, Backend::LogTables);
    Tower b = build_tower({2, 1, 3, 3}, Backend::Polynomial);
    CHECK(a.field().modulus() == b.field().modulus());
    CHECK(a.primitive_element() == b.primitive_element());
    CHECK(a.subfield(Level::Fqn) == b.subfield(Level::Fqn));
    for (u64 h = 0; h < 512; ++h) {
        CHECK(a.in_S(h) == b.in_S(h));
        CHECK(a.frobenius(h, 1) == b.frobenius(h, 1));
    }
}

TEST_CASE("cache round trip") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "goppa_cache_test";
    fs::create_directories(dir);
    TowerParams params{2, 1, 3, 5};
    fs::path file = dir / tower_cache_filename(params);
    std::error_code ec;
    fs::remove(file, ec);

    Tower fresh = build_tower(params);
    REQUIRE(save_tower_cache(fresh, file.string(), true));
    auto loaded = load_tower_cache(params, file.string());
    REQUIRE(loaded.has_value());
    CHECK(loaded->field().modulus() == fresh.field().modulus());
    CHECK(loaded->primitive_element() == fresh.primitive_element());
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        u64 a = rng() % fresh.order(), b = rng() % fresh.order();
        CHECK(loaded->field().mul(a, b) == fresh.field().mul(a, b));
    }

    // param mismatch is a miss, not an error
    CHECK_FALSE(load_tower_cache({2, 1, 3, 7}, file.string()).has_value());

    // a stale or corrupt entry is either rejected or verified identical
    {
        std::FILE* f = std::fopen(file.string().c_str(), "r+b");
        REQUIRE(f);
        std::fseek(f, 30, SEEK_SET);
        std::fputc(0xFF, f);
        std::fclose(f);
    }
    auto corrupt = load_tower_cache(params, file.string());
    if (corrupt) {
        CHECK(corrupt->field().modulus() == fresh.field().modulus());
        CHECK(corrupt->primitive_element() == fresh.primitive_element());
    }

    // cached build equals uncached build
    fs::remove(file, ec);
    Tower via_cache = build_tower_cached(params, dir.string());
    CHECK(via_cache.field().modulus() == fresh.field().modulus());
    CHECK(fs::exists(file));
    Tower via_cache2 = build_tower_cached(params, dir.string());
    CHECK(via_cache2.primitive_element() == fresh.primitive_element());
    fs::remove_all(dir, ec);
}

TEST_CASE("level primitive generates the level") {
    Tower T = build_tower({3, 1, 3, 5});
    u64 gn = T.level_primitive(Level::Fqn);
    u64 size = T.level_size(Level::Fqn);
    u64 cur = 1;
    std::set<u64> seen;
    for (u64 k = 0; k + 1 < size; ++k) {
        seen.insert(cur);
        cur = T.field().mul(cur, gn);
    }
    CHECK(cur == 1);
    CHECK(seen.size() == size - 1);
}
