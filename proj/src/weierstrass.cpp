#include "descent/weierstrass.hpp"

#include <algorithm>

namespace descent {

bool point_less(const Point& p, const Point& q) {
    if (p.inf != q.inf) return p.inf;
    if (p.inf) return false;
    if (p.x != q.x) return p.x < q.x;
    return p.y < q.y;
}

std::string point_str(const Point& p) {
    if (p.inf) return "inf";
    return "(" + rational_str(p.x) + ", " + rational_str(p.y) + ")";
}

CurveW::CurveW(Rat a, Rat b) : a_(std::move(a)), b_(std::move(b)) {
    disc_ = -4 * a_ * a_ * a_ - 27 * b_ * b_;
    if (disc_ == 0) throw SingularCurveError();
}

bool CurveW::contains(const Point& p) const {
    if (p.inf) return true;
    return p.y * p.y == p.x * p.x * p.x + a_ * p.x + b_;
}

Point CurveW::point(Rat x, Rat y) const {
    Point p = Point::affine(std::move(x), std::move(y));
    check(p);
    return p;
}

void CurveW::check(const Point& p) const {
    if (!contains(p)) throw PointNotOnCurve();
}

Point CurveW::negate(const Point& p) const {
    check(p);
    if (p.inf) return p;
    return Point::affine(p.x, -p.y);
}

Point CurveW::add(const Point& p, const Point& q) const {
    check(p);
    check(q);
    if (p.inf) return q;
    if (q.inf) return p;
    Rat k;
    if (p.x == q.x) {
        if (p.y != q.y || p.y == 0) return Point::infinity();
        k = (3 * p.x * p.x + a_) / (2 * p.y);
    } else {
        k = (q.y - p.y) / (q.x - p.x);
    }
    Rat x3 = k * k - p.x - q.x;
    Rat y3 = k * (p.x - x3) - p.y;
    return Point::affine(x3, y3);
}

Point CurveW::mul(const Int& n, const Point& p) const {
    check(p);
    Int m = abs(n);
    Point base = n < 0 ? negate(p) : p;
    Point acc = Point::infinity();
    for (long bit = (long)mpz_sizeinbase(m.get_mpz_t(), 2) - 1; bit >= 0; --bit) {
        acc = add(acc, acc);
        if (mpz_tstbit(m.get_mpz_t(), bit)) acc = add(acc, base);
    }
    if (m == 0) return Point::infinity();
    return acc;
}

namespace {

// Integer roots of x^3 + a x + k by exact binary search on monotone pieces.
std::vector<Int> integer_cubic_roots(const Int& a, const Int& k) {
    auto f = [&](const Int& x) -> Int { return x * x * x + a * x + k; };
    Int bound = 2 + std::max(abs(a), abs(k));
    std::vector<Int> cuts{-bound, bound};
    if (a < 0) {
        // critical points at +-s, s = sqrt(-a/3); with t = floor(s) the piece
        // [-t, t] is monotone and [t, t+1], [-t-1, -t] have unit length, so
        // every remaining piece is either monotone or endpoint-checkable
        Int t;
        mpz_sqrt(t.get_mpz_t(), Int(-a / 3).get_mpz_t());
        for (Int c : std::vector<Int>{Int(-t - 1), Int(-t), t, Int(t + 1)})
            if (abs(c) < bound) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<Int> roots;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        Int lo = cuts[i], hi = cuts[i + 1];
        Int flo = f(lo), fhi = f(hi);
        if (flo == 0) roots.push_back(lo);
        if (sgn(flo) * sgn(fhi) >= 0) continue;
        while (hi - lo > 1) {
            Int mid = (lo + hi) / 2;
            Int fm = f(mid);
            if (fm == 0) {
                roots.push_back(mid);
                break;
            }
            if (sgn(fm) == sgn(flo)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
    }
    Int fend = f(cuts.back());
    if (fend == 0) roots.push_back(cuts.back());
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::vector<Int> positive_divisors(const Int& n) {
    Factorization f = factorize(n);
    std::vector<Int> divs{1};
    for (auto& [p, e] : f.primes) {
        size_t sz = divs.size();
        Int pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

} // namespace

int point_order(const CurveW& curve, const Point& p) {
    Point acc = p;
    for (int n = 1; n <= 12; ++n) {
        if (acc.inf) return n;
        acc = curve.add(acc, p);
    }
    return 0;
}

std::vector<Point> torsion_subgroup(const CurveW& curve) {
    if (curve.a().get_den() != 1 || curve.b().get_den() != 1)
        throw std::domain_error("torsion_subgroup requires integer coefficients");
    Int a = curve.a().get_num(), b = curve.b().get_num();
    Int D = abs(curve.disc().get_num());
    std::vector<Int> ys{0};
    for (const Int& d : positive_divisors(D)) ys.push_back(d);
    std::vector<Point> pts{Point::infinity()};
    for (const Int& y : ys) {
        for (const Int& x : integer_cubic_roots(a, b - y * y)) {
            Point p = curve.point(Rat(x), Rat(y));
            if (point_order(curve, p) == 0) continue;
            pts.push_back(p);
            if (y != 0) pts.push_back(curve.negate(p));
        }
    }
    std::sort(pts.begin(), pts.end(), point_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

TorsionShape torsion_shape_x3b(const Int& b) {
    auto [bp, u] = sixth_power_free_reduce(b);
    if (bp != b) throw std::domain_error("torsion_shape_x3b requires sixth-power-free b");
    if (b == 1) return TorsionShape::Z6;
    if (b == -432 || perfect_root(b, 2)) return TorsionShape::Z3;
    if (perfect_root(b, 3)) return TorsionShape::Z2;
    return TorsionShape::Trivial;
}

} // namespace descent
