#pragma once

#include "descent/weierstrass.hpp"

#include <optional>

namespace descent {

// E: y^2 = x^3 + a x - c^3 - a c  with rational 2-torsion point (c, 0),
// and its associated curve with at = -4a - 15c^2, ct = -2c.
struct TwoDescentPair {
    Int a, c, B;    // B = 3c^2 + a
    Int at, ct, Bt; // Bt = 3ct^2 + at = -3c^2 - 4a
    CurveW E, Et;
};
TwoDescentPair make_two_descent_pair(const Int& a, const Int& c);

// The degree-2 isogeny E -> Et and its dual Et -> E, in generic form:
// the source curve has parameters (a, c), the target is its associate.
Point isogeny2(const Rat& a, const Rat& c, const CurveW& target, const Point& p);
Point isogeny2_dual(const Rat& at, const Rat& ct, const CurveW& target, const Point& p);
Point psi2(const TwoDescentPair& pair, const Point& p);       // E -> Et
Point psi2_tilde(const TwoDescentPair& pair, const Point& p); // Et -> E

// Square-free representative of a nonzero rational modulo squares.
Int square_class(const Rat& r);
Int square_class_mul(const Int& u, const Int& v);

// alpha(P) = x - c mod squares; alpha(inf) = 1, alpha((c,0)) = B.
Int alpha2(const Int& a, const Int& c, const Point& p);

enum class ClassStatus { ProvedIn, ProvedOut, Unknown };
std::string status_str(ClassStatus s);

struct ClassReport {
    Int cls;
    ClassStatus status = ClassStatus::Unknown;
    std::string certificate; // witness point, modulus list, or empty
    std::optional<Point> witness;
};

struct DescentBounds {
    long search_bound = 200;
    long local_bound = 81;
};

// Status of every square class +-(square-free divisor of B) for the curve
// with parameters (a, c). Torsion seeds, quartic space search, local
// obstructions, subgroup closure.
std::vector<ClassReport> alpha2_image(const Int& a, const Int& c,
                                      const DescentBounds& bounds);

int kernel_index(const TwoDescentPair& pair);    // [Ker dual : Ker dual meet psi(E)]
int two_torsion_order(const TwoDescentPair& pair); // |E_2|, 2 or 4

struct RankBounds {
    int lower = 0, upper = 0;
    int unknown_classes = 0; // unresolved classes across both sides
};

struct TwoDescentResult {
    std::vector<ClassReport> e_classes, et_classes;
    int kernel_index = 1, two_torsion = 2;
    RankBounds rank;
};
TwoDescentResult two_descent(const TwoDescentPair& pair, const DescentBounds& bounds);

} // namespace descent
