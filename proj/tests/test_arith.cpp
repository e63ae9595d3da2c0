#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "descent/arith.hpp"

#include <cstdio>
#include <random>

using namespace descent;

TEST_CASE("primality") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(1000000007));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(561));  // Carmichael
    CHECK_FALSE(is_prime(1105)); // Carmichael
    CHECK_FALSE(is_prime(Int("1000000007") * Int("1000000009")));
    CHECK(is_prime(Int("170141183460469231731687303715884105727"))); // 2^127 - 1
}

TEST_CASE("factorize basics") {
    Factorization f = factorize(Int(-360));
    CHECK(f.sign == -1);
    REQUIRE(f.primes.size() == 3);
    CHECK(f.primes[0] == std::pair<Int, unsigned>{2, 3});
    CHECK(f.primes[1] == std::pair<Int, unsigned>{3, 2});
    CHECK(f.primes[2] == std::pair<Int, unsigned>{5, 1});
    CHECK(f.value() == -360);
    CHECK(factorize(1).primes.empty());
    CHECK_THROWS_AS(factorize(0), std::domain_error);
}

TEST_CASE("factorize round-trips on random values") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
        long v = (long)(rng() % 2000000000) + 2;
        Factorization f = factorize(Int(v));
        CHECK(f.value() == v);
        for (auto& [p, e] : f.primes) CHECK(is_prime(p));
    }
}

TEST_CASE("factorize beyond trial division range") {
    Int n = Int("1000003") * Int("1000033") * Int("1000003");
    Factorization f = factorize(n);
    CHECK(f.value() == n);
    REQUIRE(f.primes.size() == 2);
    CHECK(f.primes[0] == std::pair<Int, unsigned>{Int("1000003"), 2u});
}

TEST_CASE("squarefree_part") {
    auto [s, t] = squarefree_part(Int(360)); // 360 = 10 * 6^2
    CHECK(s == 10);
    CHECK(t == 6);
    CHECK(s * t * t == 360);
    auto [s2, t2] = squarefree_part(Int(-48));
    CHECK(s2 == -3);
    CHECK(t2 == 4);
    CHECK(squarefree_kernel(Int(1)) == 1);
    std::mt19937_64 rng(8);
    for (int i = 0; i < 200; ++i) {
        Int n = Int((long)(rng() % 1000000) + 1);
        auto [sf, sq] = squarefree_part(n);
        CHECK(sf * sq * sq == n);
        for (auto& [p, e] : factorize(sf).primes) CHECK(e == 1);
    }
}

TEST_CASE("cubefree_decompose") {
    CubeFreeParts p = cubefree_decompose(Int(2 * 2 * 2 * 2 * 3 * 3 * 5)); // 2^4 3^2 5
    CHECK(p.A == 10);
    CHECK(p.B == 3);
    CHECK(p.C == 2);
    CHECK(p.A * p.B * p.B * p.C * p.C * p.C == 720);
    CHECK_THROWS_AS(cubefree_decompose(Int(-5)), std::domain_error);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 200; ++i) {
        Int n = Int((long)(rng() % 1000000) + 1);
        CubeFreeParts q = cubefree_decompose(n);
        CHECK(q.A * q.B * q.B * q.C * q.C * q.C == n);
        CHECK(gcd(q.A, q.B) == 1);
        for (auto& [pp, e] : factorize(q.A * q.B).primes) CHECK(e == 1);
    }
}

TEST_CASE("perfect_root") {
    CHECK(*perfect_root(Int(64), 3) == 4);
    CHECK(*perfect_root(Int(-27), 3) == -3);
    CHECK(*perfect_root(Int(81), 2) == 9);
    CHECK_FALSE(perfect_root(Int(80), 2));
    CHECK_FALSE(perfect_root(Int(-4), 2));
}

TEST_CASE("sixth_power_free_reduce") {
    auto [b, u] = sixth_power_free_reduce(Int(64 * 5)); // 2^6 * 5
    CHECK(b == 5);
    CHECK(u == 2);
    auto [b2, u2] = sixth_power_free_reduce(Int(-128)); // -2^7
    CHECK(b2 == -2);
    CHECK(u2 == 2);
    Int p6;
    mpz_ui_pow_ui(p6.get_mpz_t(), 6, 6);
    auto [b3, u3] = sixth_power_free_reduce(p6 * 7);
    CHECK(b3 == 7);
    CHECK(u3 == 6);
}

TEST_CASE("rational parsing and rendering") {
    CHECK(rational_str(parse_rational("3/4")) == "3/4");
    CHECK(rational_str(parse_rational("-6/8")) == "-3/4");
    CHECK(rational_str(parse_rational("5")) == "5");
    CHECK(rational_str(parse_rational("0/7")) == "0");
    CHECK_THROWS(parse_rational("abc"));
    CHECK_THROWS(parse_rational("1/0"));
}

TEST_CASE("factor cache persists entries") {
    std::string path = "test_factor_cache.tmp";
    std::remove(path.c_str());
    {
        FactorCache cache(path);
        set_factor_cache(&cache);
        Factorization f = factorize(Int(360));
        CHECK(f.value() == 360);
        set_factor_cache(nullptr);
    }
    {
        FactorCache cache(path);
        auto hit = cache.lookup(Int(360));
        REQUIRE(hit.has_value());
        CHECK(hit->value() == 360);
        CHECK_FALSE(cache.lookup(Int(361)).has_value());
    }
    std::remove(path.c_str());
}
