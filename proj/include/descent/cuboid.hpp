#pragma once

#include "descent/weierstrass.hpp"

#include <variant>

namespace descent {

struct DegenerateParameters : std::domain_error {
    explicit DegenerateParameters(const std::string& what) : std::domain_error(what) {}
};

enum class Family { P1, P2 };

// Term-list data for F and the two coefficient numerators; both evaluators
// read the same table.
class CoeffTable {
public:
    static CoeffTable load(const std::string& path);
    static const CoeffTable& standard(); // the file shipped in data/

    Rat eval_F(const Rat& b, const Rat& c) const;
    // Grouped Horner evaluation.
    Rat eval_P(Family which, const Rat& b, const Rat& c) const;
    // Independent term-by-term evaluation in stored term order.
    Rat eval_P_termwise(Family which, const Rat& b, const Rat& c) const;

    struct Term {
        unsigned bexp, cexp;
        Int coeff;
    };
    const std::vector<Term>& terms(const std::string& section) const;

private:
    std::vector<Term> f_, p1_, p2_;
    Rat eval_sum_horner(const std::vector<Term>& terms, const Rat& b, const Rat& c) const;
    Rat eval_sum_termwise(const std::vector<Term>& terms, const Rat& b, const Rat& c) const;
};

// P as an irreducible fraction N/R, R > 0. Throws DegenerateParameters when
// F(b,c) = 0, and reports P = 0 as degenerate too (no curve).
struct FamilyFraction {
    Int N, R;
};
FamilyFraction family_fraction(const CoeffTable& table, Family which, const Rat& b,
                               const Rat& c);

// The curve y^2 = x^3 + 16 R^4 N^2 attached to P = N/R, plus the substitution
// w = y / (4 R^2 N), alpha = x / (2 R N).
CurveW family_curve(const FamilyFraction& f);
// Checks 2R(w^2 - 1) = N alpha^3 for the (w, alpha) image of an affine point.
bool roundtrip_ok(const FamilyFraction& f, const Point& p);

struct CubeCase {
    Int M; // 4 R^2 N = 8 M^3
};
struct GeneralCase {
    Int e, u; // 16 R^4 N^2 = u^6 e^2, e cube-free, e > 1
};
using CurveClass = std::variant<CubeCase, GeneralCase>;
CurveClass classify_curve(const FamilyFraction& f);

// The full group of rational points of y^2 = x^3 + 64 M^6 (rank 0, six points).
std::vector<Point> cube_case_points(const Int& M);

} // namespace descent
