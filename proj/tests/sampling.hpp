#pragma once

// Shared generators of rational points on the two curve families, used by the
// property tests and the acceptance suite.

#include "descent/three_descent.hpp"
#include "descent/two_descent.hpp"

#include <random>
#include <vector>

namespace descent::sampling {

// Curves y^2 = x^3 + e^2 with a known point:
// (u^2 - v^2, u^3 - u v^2) lies on it with e = |v^3 - u^2 v|.
struct CubeFamilySample {
    Int e;
    CurveW E, Et;
    Point p;
    CubeFamilySample(const Int& e_, CurveW E_, CurveW Et_, Point p_)
        : e(e_), E(std::move(E_)), Et(std::move(Et_)), p(std::move(p_)) {}
};

inline std::vector<CubeFamilySample> cube_family_samples(size_t count, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<CubeFamilySample> out;
    while (out.size() < count) {
        long u = (long)(rng() % 25) + 2;
        long v = (long)(rng() % 25) + 2;
        Int e = abs(Int(v) * v * v - Int(u) * u * v);
        if (e == 0) continue;
        CurveW E((Rat(0)), Rat(e * e));
        CurveW Et((Rat(0)), Rat(-27 * e * e));
        Point base = E.point(Rat(Int(u) * u - Int(v) * v), Rat(Int(u) * u * u - Int(u) * v * v));
        long k = (long)(rng() % 3) + 1;
        Point p = E.mul(k, base);
        if (p.inf || p.x == 0) continue;
        out.emplace_back(e, E, Et, p);
    }
    return out;
}

// Curves y^2 = x^3 + a x - c^3 - a c with 2-torsion (c, 0) and a known point
// (c + 1, y0): pick c, y0 and solve for a.
struct TwoFamilySample {
    Int a, c;
    CurveW E, Et;
    Point p;
    TwoFamilySample(const Int& a_, const Int& c_, CurveW E_, CurveW Et_, Point p_)
        : a(a_), c(c_), E(std::move(E_)), Et(std::move(Et_)), p(std::move(p_)) {}
};

inline std::vector<TwoFamilySample> two_family_samples(size_t count, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<TwoFamilySample> out;
    while (out.size() < count) {
        long c = (long)(rng() % 41) - 20;
        long y0 = (long)(rng() % 60) + 1;
        // (c+1)^3 + a(c+1) - c^3 - ac = y0^2  =>  a = y0^2 - (c+1)^3 + c^3
        Int a = Int(y0) * y0 - Int(c + 1) * (c + 1) * (c + 1) + Int(c) * c * c;
        try {
            TwoDescentPair pair = make_two_descent_pair(a, Int(c));
            Point base = pair.E.point(Rat(c + 1), Rat(y0));
            long k = (long)(rng() % 3) + 1;
            Point p = pair.E.mul(k, base);
            if (p.inf || p.x == pair.c) continue;
            out.emplace_back(a, Int(c), pair.E, pair.Et, p);
        } catch (const SingularCurveError&) {
            continue;
        }
    }
    return out;
}

} // namespace descent::sampling
