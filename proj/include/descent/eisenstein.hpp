#pragma once

#include "descent/arith.hpp"

#include <array>

namespace descent {

// Element u + v*eps of Z[eps], eps = (1 + sqrt(-3))/2, eps^2 = eps - 1.
struct EisInt {
    Int u, v;
    EisInt() : u(0), v(0) {}
    EisInt(Int uu, Int vv) : u(std::move(uu)), v(std::move(vv)) {}
    EisInt(long uu, long vv) : u(uu), v(vv) {}
    bool is_zero() const { return u == 0 && v == 0; }
    bool operator==(const EisInt& o) const { return u == o.u && v == o.v; }
};

EisInt operator+(const EisInt& a, const EisInt& b);
EisInt operator-(const EisInt& a, const EisInt& b);
EisInt operator-(const EisInt& a);
EisInt operator*(const EisInt& a, const EisInt& b);
EisInt eis_conj(const EisInt& a); // complex conjugate: eps -> 1 - eps
Int eis_norm(const EisInt& a);    // u^2 + uv + v^2
std::string eis_str(const EisInt& a);
bool eis_less(const EisInt& a, const EisInt& b); // lexicographic (u, v)

// The six units: eps^k for k = 0..5 (eps is a primitive sixth root of unity).
const std::array<EisInt, 6>& eis_units();
bool eis_is_unit(const EisInt& a);

// sqrt(-3) = 2*eps - 1; omega = eps - 1 (primitive cube root of unity).
inline EisInt eis_sqrt_m3() { return EisInt(-1, 2); }
inline EisInt eis_omega() { return EisInt(-1, 1); }

// Euclidean division: a = q*b + r with N(r) < N(b). b != 0.
std::pair<EisInt, EisInt> eis_divmod(const EisInt& a, const EisInt& b);
bool eis_divides(const EisInt& d, const EisInt& a);
EisInt eis_divexact(const EisInt& a, const EisInt& d);
EisInt eis_gcd(EisInt a, EisInt b); // canonical associate of the gcd

// The unique associate with u > 0, v >= 0 (the half-open 60 degree sector).
// Returns (associate, unit) with a = unit * associate.
std::pair<EisInt, EisInt> eis_canonical(const EisInt& a);

struct EisFactorization {
    EisInt unit;                                     // one of the six units
    std::vector<std::pair<EisInt, unsigned>> primes; // canonical, sorted by (norm, u, v)
    EisInt value() const;
};
EisFactorization eis_factor(const EisInt& a); // a != 0

// Exact cube root in Z[eps], if one exists.
std::optional<EisInt> eis_cuberoot(const EisInt& a);

// Cube class eta * A * B^2 of a nonzero element (or ratio): eta in {1, eps, omega}
// modulo the cubes of units {1, -1}; A, B products of distinct canonical primes.
struct EisCubeClass {
    EisInt eta, A, B;
    bool operator==(const EisCubeClass& o) const {
        return eta == o.eta && A == o.A && B == o.B;
    }
    bool is_identity() const;
};
EisCubeClass eis_cube_class(const EisInt& a);
EisCubeClass eis_cube_class_ratio(const EisInt& num, const EisInt& den);

// Canonical primes above the rational prime factors of n (both conjugates for
// split primes), sorted by (norm, u, v).
std::vector<EisInt> eis_primes_above(const Int& n);

// Cube class of an element whose class is supported on the given primes: the
// cofactor after stripping them is a unit times a cube, recognized without
// factoring it. Falls back to eis_cube_class when the structure is absent.
EisCubeClass eis_cube_class_hint(const EisInt& a, const std::vector<EisInt>& primes);
EisCubeClass eis_cube_class_mul(const EisCubeClass& a, const EisCubeClass& b);
EisCubeClass eis_cube_class_inv(const EisCubeClass& a);
std::string eis_cube_class_str(const EisCubeClass& c);
bool eis_cube_class_less(const EisCubeClass& a, const EisCubeClass& b);

} // namespace descent
