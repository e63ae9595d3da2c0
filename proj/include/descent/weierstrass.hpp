#pragma once

#include "descent/arith.hpp"

#include <vector>

namespace descent {

struct SingularCurveError : std::domain_error {
    SingularCurveError() : std::domain_error("singular curve: discriminant is zero") {}
};
struct PointNotOnCurve : std::domain_error {
    PointNotOnCurve() : std::domain_error("point does not satisfy the curve equation") {}
};

struct Point {
    bool inf = true;
    Rat x, y;
    static Point infinity() { return Point{}; }
    static Point affine(Rat px, Rat py) { return Point{false, std::move(px), std::move(py)}; }
    bool operator==(const Point& o) const {
        if (inf || o.inf) return inf == o.inf;
        return x == o.x && y == o.y;
    }
};

// Total order on points (infinity first), for deterministic output.
bool point_less(const Point& p, const Point& q);
std::string point_str(const Point& p);

// y^2 = x^3 + a x + b, nonsingular.
class CurveW {
public:
    CurveW(Rat a, Rat b);
    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }
    const Rat& disc() const { return disc_; } // -4a^3 - 27b^2

    bool contains(const Point& p) const;
    Point point(Rat x, Rat y) const; // validates
    Point negate(const Point& p) const;
    Point add(const Point& p, const Point& q) const;
    Point sub(const Point& p, const Point& q) const { return add(p, negate(q)); }
    Point mul(const Int& n, const Point& p) const;

    bool operator==(const CurveW& o) const { return a_ == o.a_ && b_ == o.b_; }

private:
    void check(const Point& p) const;
    Rat a_, b_, disc_;
};

// All torsion points of a curve with integer coefficients (integral bound on y,
// group-order sweep up to 12).
std::vector<Point> torsion_subgroup(const CurveW& curve);

// Order of p in the torsion subgroup; 0 if p is not torsion (order > 12).
int point_order(const CurveW& curve, const Point& p);

// Torsion shape of y^2 = x^3 + b for sixth-power-free integer b.
enum class TorsionShape { Trivial, Z2, Z3, Z6 };
TorsionShape torsion_shape_x3b(const Int& b);

} // namespace descent
