#pragma once

#include "descent/eisenstein.hpp"
#include "descent/two_descent.hpp"

namespace descent {

// Cube class A * B^2 of a nonzero rational (A, B positive coprime square-free;
// signs are absorbed since -1 is a cube).
struct CubeClass {
    Int A, B;
    bool operator==(const CubeClass& o) const { return A == o.A && B == o.B; }
    bool is_identity() const { return A == 1 && B == 1; }
};
CubeClass cube_class(const Rat& r);
CubeClass cube_class_mul(const CubeClass& a, const CubeClass& b);
CubeClass cube_class_inv(const CubeClass& a);
std::string cube_class_str(const CubeClass& c);
bool cube_class_less(const CubeClass& a, const CubeClass& b);

// E: y^2 = x^3 + e^2 and Et: y^2 = x^3 - 27 e^2 for cube-free e > 1,
// connected by dual 3-isogenies.
struct ThreeDescentPair {
    Int e;
    CurveW E, Et;
};
ThreeDescentPair make_three_descent_pair(const Int& e);

Point isogeny3(const Rat& e, const CurveW& target, const Point& p);      // E -> Et
Point isogeny3_dual(const Rat& e, const CurveW& target, const Point& p); // Et -> E
Point psi3(const ThreeDescentPair& pair, const Point& p);
Point psi3_tilde(const ThreeDescentPair& pair, const Point& p);

// Descent maps into Q*/Q*^3 resp. K*/K*^3, K = Q(sqrt(-3)).
CubeClass alpha3_minus(const Int& e, const Point& p); // y - e; (0,e) -> 1/(2e)
CubeClass alpha3_plus(const Int& e, const Point& p);  // y + e; (0,-e) -> -1/(2e)
EisCubeClass alpha3t_minus(const Int& e, const Point& p); // yt - 3 sqrt(-3) e
EisCubeClass alpha3t_plus(const Int& e, const Point& p);  // yt + 3 sqrt(-3) e

// All candidate classes: (A,B) coprime square-free positive divisor pairs of 2e,
// resp. (eta, A, B) over the canonical primes dividing 6 sqrt(-3) e.
std::vector<CubeClass> cube_class_candidates(const Int& e);
std::vector<EisCubeClass> eis_class_candidates(const Int& e);

struct CubeClassReport {
    CubeClass cls;
    ClassStatus status = ClassStatus::Unknown;
    std::string certificate;
    std::optional<Point> witness;
};
struct EisClassReport {
    EisCubeClass cls;
    ClassStatus status = ClassStatus::Unknown;
    std::string certificate;
    std::optional<Point> witness;
};

struct ThreeDescentBounds {
    long search_bound = 200;
    long local_bound = 121;
    long eis_search_bound = 8; // coordinate bound for ring element searches
};

std::vector<CubeClassReport> alpha3_image(const ThreeDescentPair& pair,
                                          const ThreeDescentBounds& bounds);
std::vector<EisClassReport> alpha3_tilde_image(const ThreeDescentPair& pair,
                                               const ThreeDescentBounds& bounds);

struct ThreeDescentResult {
    std::vector<CubeClassReport> e_classes;
    std::vector<EisClassReport> et_classes;
    RankBounds rank;
};
ThreeDescentResult three_descent(const ThreeDescentPair& pair,
                                 const ThreeDescentBounds& bounds);

} // namespace descent
