#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "descent/eisenstein.hpp"

#include <random>

using namespace descent;

namespace {

EisInt random_eis(std::mt19937_64& rng, long range) {
    long u = (long)(rng() % (2 * range + 1)) - range;
    long v = (long)(rng() % (2 * range + 1)) - range;
    return EisInt(u, v);
}

} // namespace

TEST_CASE("unit table") {
    auto& units = eis_units();
    // eps^k for k = 0..5: 1, eps, omega, -1, -eps, -omega
    CHECK(units[0] == EisInt(1, 0));
    CHECK(units[1] == EisInt(0, 1));
    CHECK(units[2] == EisInt(-1, 1));
    CHECK(units[3] == EisInt(-1, 0));
    CHECK(units[4] == EisInt(0, -1));
    CHECK(units[5] == EisInt(1, -1));
    EisInt eps(0, 1), acc(1, 0);
    for (int k = 0; k < 6; ++k) {
        CHECK(acc == units[k]);
        CHECK(eis_norm(units[k]) == 1);
        CHECK(eis_is_unit(units[k]));
        acc = acc * eps;
    }
    CHECK(acc == EisInt(1, 0)); // eps^6 = 1
    CHECK(eis_omega() == units[2]);
    CHECK(eis_sqrt_m3() * eis_sqrt_m3() == EisInt(-3, 0));
    CHECK(eis_omega() * eis_omega() * eis_omega() == EisInt(1, 0));
}

TEST_CASE("norm is multiplicative") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 10000; ++i) {
        EisInt a = random_eis(rng, 1000), b = random_eis(rng, 1000);
        CHECK(eis_norm(a * b) == eis_norm(a) * eis_norm(b));
    }
}

TEST_CASE("conjugation") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 1000; ++i) {
        EisInt a = random_eis(rng, 1000);
        CHECK(eis_conj(eis_conj(a)) == a);
        CHECK(a * eis_conj(a) == EisInt(eis_norm(a), 0));
    }
}

TEST_CASE("divmod reduces the norm") {
    std::mt19937_64 rng(23);
    int done = 0;
    while (done < 10000) {
        EisInt a = random_eis(rng, 1000), b = random_eis(rng, 1000);
        if (b.is_zero()) continue;
        auto [q, r] = eis_divmod(a, b);
        CHECK(q * b + r == a);
        CHECK(eis_norm(r) < eis_norm(b));
        ++done;
    }
    CHECK_THROWS_AS(eis_divmod(EisInt(1, 1), EisInt(0, 0)), std::domain_error);
}

TEST_CASE("gcd divides both arguments and is canonical") {
    std::mt19937_64 rng(24);
    for (int i = 0; i < 2000; ++i) {
        EisInt a = random_eis(rng, 200), b = random_eis(rng, 200);
        if (a.is_zero() && b.is_zero()) continue;
        EisInt g = eis_gcd(a, b);
        CHECK_FALSE(g.is_zero());
        CHECK(eis_divides(g, a));
        CHECK(eis_divides(g, b));
        CHECK(g.u > 0);
        CHECK(g.v >= 0);
        // common multiplier divides the gcd
        EisInt d = random_eis(rng, 10);
        if (d.is_zero()) continue;
        EisInt g2 = eis_gcd(a * d, b * d);
        CHECK(eis_divides(d, g2));
    }
}

TEST_CASE("canonical associate is unique and in the sector") {
    std::mt19937_64 rng(25);
    for (int i = 0; i < 2000; ++i) {
        EisInt a = random_eis(rng, 1000);
        if (a.is_zero()) continue;
        auto [assoc, unit] = eis_canonical(a);
        CHECK(assoc.u > 0);
        CHECK(assoc.v >= 0);
        CHECK(eis_is_unit(unit));
        CHECK(unit * assoc == a);
        int in_sector = 0;
        for (const EisInt& u : eis_units()) {
            EisInt cand = a * u;
            if (cand.u > 0 && cand.v >= 0) ++in_sector;
        }
        CHECK(in_sector == 1);
    }
}

TEST_CASE("factorization round-trips and yields primes") {
    std::mt19937_64 rng(26);
    int done = 0;
    while (done < 1000) {
        EisInt a = random_eis(rng, 1000);
        if (a.is_zero()) continue;
        EisFactorization f = eis_factor(a);
        CHECK(f.value() == a);
        for (auto& [p, e] : f.primes) {
            Int n = eis_norm(p);
            // prime iff norm is a rational prime, or p is inert with prime norm sqrt
            if (!is_prime(n)) {
                Int s;
                mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
                CHECK(s * s == n);
                CHECK(is_prime(s));
                CHECK(s % 3 == 2);
            }
            CHECK(p.u > 0);
            CHECK(p.v >= 0);
        }
        ++done;
    }
}

TEST_CASE("known splittings") {
    // 3 ramifies: 3 = -(sqrt(-3))^2, canonical prime (1,1)
    EisFactorization f3 = eis_factor(EisInt(3, 0));
    REQUIRE(f3.primes.size() == 1);
    CHECK(f3.primes[0].first == EisInt(1, 1));
    CHECK(f3.primes[0].second == 2);
    // 7 = 1 mod 3 splits into two distinct primes of norm 7
    EisFactorization f7 = eis_factor(EisInt(7, 0));
    REQUIRE(f7.primes.size() == 2);
    CHECK(eis_norm(f7.primes[0].first) == 7);
    CHECK(eis_norm(f7.primes[1].first) == 7);
    // 5 = 2 mod 3 is inert
    EisFactorization f5 = eis_factor(EisInt(5, 0));
    REQUIRE(f5.primes.size() == 1);
    CHECK(f5.primes[0].first == EisInt(5, 0));
}

TEST_CASE("cube roots") {
    std::mt19937_64 rng(27);
    for (int i = 0; i < 2000; ++i) {
        EisInt r = random_eis(rng, 300);
        EisInt cube = r * r * r;
        auto root = eis_cuberoot(cube);
        REQUIRE(root.has_value());
        CHECK(*root * *root * *root == cube);
    }
    CHECK_FALSE(eis_cuberoot(EisInt(2, 0)).has_value());
    CHECK_FALSE(eis_cuberoot(EisInt(0, 1)).has_value()); // eps is not a cube
}

TEST_CASE("cube classes") {
    std::mt19937_64 rng(28);
    for (int i = 0; i < 500; ++i) {
        EisInt a = random_eis(rng, 60);
        EisInt c = random_eis(rng, 10);
        if (a.is_zero() || c.is_zero()) continue;
        EisCubeClass cls = eis_cube_class(a);
        // multiplying by a cube does not change the class
        CHECK(eis_cube_class(a * c * c * c) == cls);
        // A and B are coprime and square-free by construction
        CHECK(eis_gcd(cls.A, cls.B) == EisInt(1, 0));
        // class of a^3 is the identity
        CHECK(eis_cube_class(a * a * a).is_identity());
        // group structure: cls * cls^-1 = identity
        CHECK(eis_cube_class_mul(cls, eis_cube_class_inv(cls)).is_identity());
    }
    CHECK(eis_cube_class(EisInt(1, 0)).is_identity());
    CHECK(eis_cube_class(EisInt(-1, 0)).is_identity()); // -1 is a unit cube
    CHECK(eis_cube_class(EisInt(0, 1)).eta == EisInt(0, 1));
    // ratio: class(num/den) = class(num * den^2)
    std::mt19937_64 rng2(29);
    for (int i = 0; i < 200; ++i) {
        EisInt num = random_eis(rng2, 40), den = random_eis(rng2, 40);
        if (num.is_zero() || den.is_zero()) continue;
        CHECK(eis_cube_class_ratio(num, den) ==
              eis_cube_class_mul(eis_cube_class(num),
                                 eis_cube_class_inv(eis_cube_class(den))));
    }
}
